from roomvoice.hotword.gru import (
    HOTWORD_CLASS,
    GruState,
    GruWeights,
    WeightShapeError,
    classify_frame,
    gru_step,
)
from roomvoice.hotword.detector import (
    HotwordDetector,
    PosteriorSmoother,
    TriggerConfig,
    TriggerEvent,
)
from roomvoice.hotword.weights_io import WeightFileError, load_weights, save_weights
from roomvoice.hotword.toy import make_tone_detector_weights, tone_mel_bin

__all__ = [
    "HOTWORD_CLASS", "GruState", "GruWeights", "WeightShapeError",
    "classify_frame", "gru_step",
    "HotwordDetector", "PosteriorSmoother", "TriggerConfig", "TriggerEvent",
    "WeightFileError", "load_weights", "save_weights",
    "make_tone_detector_weights", "tone_mel_bin",
]
