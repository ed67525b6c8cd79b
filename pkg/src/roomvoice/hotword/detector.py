"""Posterior smoothing and the refractory trigger policy."""

from collections import deque
from dataclasses import dataclass

from roomvoice.audio.features import FeatureFrame
from roomvoice.hotword.gru import GruState, GruWeights, classify_frame


@dataclass
class TriggerConfig:
    threshold: float = 0.85
    smooth_window: int = 30
    refractory_s: float = 1.0

    def validate(self) -> "TriggerConfig":
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")
        if self.smooth_window < 1:
            raise ValueError("smooth_window must be >= 1")
        if self.refractory_s < 0:
            raise ValueError("refractory_s must be >= 0")
        return self


@dataclass
class TriggerEvent:
    time_s: float
    smoothed: float


class PosteriorSmoother:
    """Moving-average smoothing plus at-most-one-trigger-per-refractory."""

    def __init__(self, cfg: TriggerConfig):
        self.cfg = cfg.validate()
        self._window = deque(maxlen=cfg.smooth_window)
        self._last_trigger: float | None = None

    def step(self, posterior: float, time_s: float) -> TriggerEvent | None:
        self._window.append(posterior)
        smoothed = sum(self._window) / len(self._window)
        if smoothed <= self.cfg.threshold:
            return None
        if (self._last_trigger is not None
                and time_s - self._last_trigger < self.cfg.refractory_s):
            return None
        self._last_trigger = time_s
        return TriggerEvent(time_s=time_s, smoothed=smoothed)

    def reset(self) -> None:
        """Clear the smoothing window (keeps the refractory clock)."""
        self._window.clear()


class HotwordDetector:
    """Full per-stream detector: GRU rollout feeding the trigger policy."""

    def __init__(self, weights: GruWeights, cfg: TriggerConfig | None = None):
        self.weights = weights.validate()
        self.cfg = (cfg or TriggerConfig()).validate()
        self.state = GruState.initial(weights.hidden_dim)
        self.smoother = PosteriorSmoother(self.cfg)

    def step(self, feature: FeatureFrame, time_s: float | None = None):
        """Process one feature frame; returns (posterior, trigger-or-None)."""
        t = feature.frame_index * 0.01 if time_s is None else time_s
        posterior = classify_frame(feature.logmel, self.state, self.weights)
        return posterior, self.smoother.step(posterior, t)

    def reset(self) -> None:
        """Fresh recurrent state and smoothing window for a new listening turn."""
        self.state = GruState.initial(self.weights.hidden_dim)
        self.smoother.reset()
