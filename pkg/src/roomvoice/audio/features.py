"""Log-mel front end: Hamming window, 512-point power spectrum, 40 mel bands."""

from dataclasses import dataclass

import numpy as np

from roomvoice.audio.framing import FRAME_SIZE, SAMPLE_RATE, AudioFrame

N_MELS = 40
N_FFT = 512
FMIN = 0.0
FMAX = 8000.0
EPS_FLOOR = 1e-10
PCM_FULL_SCALE = 32768.0

_HAMMING = np.hamming(FRAME_SIZE)


@dataclass
class FeatureFrame:
    """40 log-mel coefficients plus the frame energy for one hop."""

    logmel: np.ndarray
    energy_db: float
    frame_index: int


def hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


def mel_center_frequencies(n_mels: int = N_MELS, fmin: float = FMIN,
                           fmax: float = FMAX) -> np.ndarray:
    """Center frequency in Hz of each triangular filter."""
    edges = mel_to_hz(np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_mels + 2))
    return edges[1:-1]


def mel_filterbank(n_mels: int = N_MELS, n_fft: int = N_FFT,
                   sample_rate: int = SAMPLE_RATE, fmin: float = FMIN,
                   fmax: float = FMAX) -> np.ndarray:
    """Triangular mel filters as an (n_mels, n_fft//2 + 1) weight matrix."""
    n_bins = n_fft // 2 + 1
    bin_freqs = np.arange(n_bins) * sample_rate / n_fft
    edges = mel_to_hz(np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_mels + 2))
    weights = np.zeros((n_mels, n_bins))
    for m in range(n_mels):
        lo, center, hi = edges[m], edges[m + 1], edges[m + 2]
        up = (bin_freqs - lo) / (center - lo)
        down = (hi - bin_freqs) / (hi - center)
        weights[m] = np.clip(np.minimum(up, down), 0.0, None)
    return weights


class LogMelExtractor:
    """Per-frame feature computation; stateless apart from the cached filterbank."""

    def __init__(self):
        self._filters = mel_filterbank()

    def compute(self, frame: AudioFrame) -> FeatureFrame:
        samples = frame.samples
        if samples.shape[0] != FRAME_SIZE:
            raise ValueError(f"frame must hold {FRAME_SIZE} samples")
        energy_db = 10.0 * np.log10(
            np.mean(samples ** 2) / PCM_FULL_SCALE ** 2 + EPS_FLOOR
        )
        centered = (samples - samples.mean()) / PCM_FULL_SCALE
        spectrum = np.abs(np.fft.rfft(centered * _HAMMING, N_FFT)) ** 2
        mel = self._filters @ spectrum
        logmel = np.log(np.maximum(mel, EPS_FLOOR))
        return FeatureFrame(logmel=logmel, energy_db=float(energy_db),
                            frame_index=frame.index)


_default_extractor: LogMelExtractor | None = None


def compute_logmel(frame: AudioFrame) -> FeatureFrame:
    """Module-level convenience over a shared extractor."""
    global _default_extractor
    if _default_extractor is None:
        _default_extractor = LogMelExtractor()
    return _default_extractor.compute(frame)
