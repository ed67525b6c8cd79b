"""GRU wake-word classifier: recurrent cell plus a 2-way softmax readout.

The gate convention is fixed so weight files stay unambiguous:

    z = sigmoid(W_z x + U_z h + b_z)
    r = sigmoid(W_r x + U_r h + b_r)
    h~ = tanh(W_h x + U_h (r * h) + b_h)
    h' = (1 - z) * h + z * h~

i.e. the update gate z gates the candidate, and (1 - z) carries the old
state. Class 0 of the readout is the wake word, class 1 the filler.
"""

from dataclasses import dataclass, field

import numpy as np

HOTWORD_CLASS = 0

_MATRICES = ("W_z", "W_r", "W_h", "U_z", "U_r", "U_h")
_VECTORS = ("b_z", "b_r", "b_h")


class WeightShapeError(ValueError):
    """Array sizes inconsistent with the declared dimensions."""


@dataclass
class GruWeights:
    input_dim: int
    hidden_dim: int
    W_z: np.ndarray
    W_r: np.ndarray
    W_h: np.ndarray
    U_z: np.ndarray
    U_r: np.ndarray
    U_h: np.ndarray
    b_z: np.ndarray
    b_r: np.ndarray
    b_h: np.ndarray
    W_out: np.ndarray
    b_out: np.ndarray

    def validate(self) -> "GruWeights":
        n, d = self.hidden_dim, self.input_dim
        if n <= 0 or d <= 0:
            raise WeightShapeError("dimensions must be positive")
        expected = {name: (n, d) for name in ("W_z", "W_r", "W_h")}
        expected.update({name: (n, n) for name in ("U_z", "U_r", "U_h")})
        expected.update({name: (n,) for name in _VECTORS})
        expected["W_out"] = (2, n)
        expected["b_out"] = (2,)
        for name, shape in expected.items():
            arr = getattr(self, name)
            if arr.shape != shape:
                raise WeightShapeError(
                    f"{name}: expected shape {shape}, got {arr.shape}"
                )
            if not np.all(np.isfinite(arr)):
                raise WeightShapeError(f"{name}: contains non-finite entries")
        return self

    def field_names(self) -> tuple[str, ...]:
        return _MATRICES[:3] + _MATRICES[3:] + _VECTORS + ("W_out", "b_out")


@dataclass
class GruState:
    h: np.ndarray

    @classmethod
    def initial(cls, hidden_dim: int) -> "GruState":
        return cls(h=np.zeros(hidden_dim))


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def gru_step(x: np.ndarray, h_prev: np.ndarray, w: GruWeights) -> np.ndarray:
    """Advance the recurrent state one frame."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (w.input_dim,):
        raise WeightShapeError(
            f"input: expected shape ({w.input_dim},), got {x.shape}"
        )
    if h_prev.shape != (w.hidden_dim,):
        raise WeightShapeError(
            f"state: expected shape ({w.hidden_dim},), got {h_prev.shape}"
        )
    z = _sigmoid(w.W_z @ x + w.U_z @ h_prev + w.b_z)
    r = _sigmoid(w.W_r @ x + w.U_r @ h_prev + w.b_r)
    h_tilde = np.tanh(w.W_h @ x + w.U_h @ (r * h_prev) + w.b_h)
    return (1.0 - z) * h_prev + z * h_tilde


def classify_frame(logmel: np.ndarray, state: GruState, w: GruWeights) -> float:
    """Advance the state in place and return the wake-word posterior."""
    state.h = gru_step(logmel, state.h, w)
    logits = w.W_out @ state.h + w.b_out
    logits = logits - logits.max()
    probs = np.exp(logits)
    probs /= probs.sum()
    return float(probs[HOTWORD_CLASS])
