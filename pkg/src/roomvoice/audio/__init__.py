from roomvoice.audio.framing import (
    FRAME_SIZE,
    HOP_SIZE,
    SAMPLE_RATE,
    AudioConfigError,
    AudioFrame,
    SampleBuffer,
    StreamFramer,
)
from roomvoice.audio.features import (
    EPS_FLOOR,
    N_MELS,
    FeatureFrame,
    LogMelExtractor,
    compute_logmel,
    mel_center_frequencies,
    mel_filterbank,
)
from roomvoice.audio.vad import EnergyVad, VadDecision
from roomvoice.audio.segmenter import (
    CLOSED_CANCELLED,
    CLOSED_MAX_LENGTH,
    CLOSED_SILENCE,
    BufferReleasedError,
    SegmenterEvent,
    UtteranceSegmenter,
    UtteranceSpan,
)
from roomvoice.audio.wavio import pcm_from_wav_bytes, read_wav, wav_bytes, write_wav

__all__ = [
    "FRAME_SIZE", "HOP_SIZE", "SAMPLE_RATE", "N_MELS", "EPS_FLOOR",
    "AudioConfigError", "AudioFrame", "SampleBuffer", "StreamFramer",
    "FeatureFrame", "LogMelExtractor", "compute_logmel",
    "mel_center_frequencies", "mel_filterbank",
    "EnergyVad", "VadDecision",
    "CLOSED_CANCELLED", "CLOSED_MAX_LENGTH", "CLOSED_SILENCE",
    "BufferReleasedError", "SegmenterEvent", "UtteranceSegmenter", "UtteranceSpan",
    "pcm_from_wav_bytes", "read_wav", "wav_bytes", "write_wav",
]
