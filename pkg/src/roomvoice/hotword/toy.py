"""Deterministic toy wake-word weights.

Training is out of scope here, so the repo ships a hand-built network whose
wake word is a pure tone: unit 0 measures the contrast between the mel band
containing ``tone_hz`` and all the other bands, and the readout turns that
contrast into a confident two-class posterior. Good enough to drive the
full trigger/capture chain deterministically; no detection-quality claims.
"""

import numpy as np

from roomvoice.audio.features import N_MELS, mel_center_frequencies
from roomvoice.hotword.gru import GruWeights

DEFAULT_TONE_HZ = 1000.0


def tone_mel_bin(tone_hz: float = DEFAULT_TONE_HZ) -> int:
    centers = mel_center_frequencies()
    return int(np.argmin(np.abs(centers - tone_hz)))


def make_tone_detector_weights(tone_hz: float = DEFAULT_TONE_HZ,
                               hidden_dim: int = 8,
                               contrast_bias: float = 8.0,
                               readout_gain: float = 3.0) -> GruWeights:
    """Build weights that report the wake word while ``tone_hz`` is sounding."""
    d, n = N_MELS, hidden_dim
    k = tone_mel_bin(tone_hz)

    W_h = np.zeros((n, d))
    W_h[0, :] = -1.0 / (d - 1)
    W_h[0, k] = 1.0
    b_h = np.zeros(n)
    b_h[0] = -contrast_bias

    W_out = np.zeros((2, n))
    W_out[0, 0] = readout_gain
    W_out[1, 0] = -readout_gain

    return GruWeights(
        input_dim=d,
        hidden_dim=n,
        W_z=np.zeros((n, d)),
        W_r=np.zeros((n, d)),
        W_h=W_h,
        U_z=np.zeros((n, n)),
        U_r=np.zeros((n, n)),
        U_h=np.zeros((n, n)),
        b_z=np.full(n, 10.0),  # update gate pinned open: h follows the candidate
        b_r=np.zeros(n),
        b_h=b_h,
        W_out=W_out,
        b_out=np.zeros(2),
    ).validate()
