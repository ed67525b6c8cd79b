"""Deterministic signal synthesis for fixtures and demos."""

import numpy as np

from roomvoice.audio.framing import SAMPLE_RATE


def silence(duration_s: float) -> np.ndarray:
    return np.zeros(int(round(duration_s * SAMPLE_RATE)))


def tone(freq_hz: float, duration_s: float, amplitude: float = 8192.0,
         phase: float = 0.0) -> np.ndarray:
    t = np.arange(int(round(duration_s * SAMPLE_RATE))) / SAMPLE_RATE
    return amplitude * np.sin(2.0 * np.pi * freq_hz * t + phase)


def noise_burst(duration_s: float, amplitude: float = 4096.0,
                seed: int = 0) -> np.ndarray:
    """Seeded broadband burst, the stand-in for command speech in fixtures."""
    rng = np.random.default_rng(seed)
    n = int(round(duration_s * SAMPLE_RATE))
    return amplitude * rng.uniform(-1.0, 1.0, n)


def concat(*parts) -> np.ndarray:
    return np.concatenate([np.asarray(p, dtype=np.float64) for p in parts])
