"""Energy-threshold voice activity detection with an adaptive noise floor."""

from dataclasses import dataclass

from roomvoice.audio.features import FeatureFrame

MARGIN_DB = 9.0
FLOOR_ALPHA = 0.05
INIT_FRAMES = 10


@dataclass
class VadDecision:
    frame_index: int
    is_speech: bool
    noise_floor_db: float


class EnergyVad:
    """Flags frames whose energy clears the noise floor by a fixed margin.

    The floor is seeded with the mean energy of the first 10 frames, then
    tracks non-speech frames with an exponential moving average; speech
    frames never move it.
    """

    def __init__(self, margin_db: float = MARGIN_DB, alpha: float = FLOOR_ALPHA,
                 init_frames: int = INIT_FRAMES):
        self.margin_db = margin_db
        self.alpha = alpha
        self.init_frames = init_frames
        self._floor = None
        self._seen = 0

    @property
    def noise_floor_db(self) -> float | None:
        return self._floor

    def step(self, feature: FeatureFrame) -> VadDecision:
        e = feature.energy_db
        if self._seen < self.init_frames:
            # Warm-up: running mean, everything counts as non-speech.
            self._seen += 1
            if self._floor is None:
                self._floor = e
            else:
                self._floor += (e - self._floor) / self._seen
            return VadDecision(feature.frame_index, False, self._floor)
        is_speech = e > self._floor + self.margin_db
        if not is_speech:
            self._floor = (1.0 - self.alpha) * self._floor + self.alpha * e
        return VadDecision(feature.frame_index, is_speech, self._floor)
