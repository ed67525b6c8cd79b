"""Textual weight files: self-describing dims plus one row-major array per field.

Format, one entry per line:

    input_dim: 40
    hidden_dim: 64
    W_z: 0.01 -0.02 ...          # hidden_dim * input_dim values, row-major

Blank lines and '#' comments are ignored. Every field of the classifier
must be present exactly once.
"""

import numpy as np

from roomvoice.hotword.gru import GruWeights, WeightShapeError


class WeightFileError(ValueError):
    """Missing, duplicated, or unparsable weight file content."""


def _shape_table(input_dim: int, hidden_dim: int) -> dict[str, tuple[int, ...]]:
    n, d = hidden_dim, input_dim
    return {
        "W_z": (n, d), "W_r": (n, d), "W_h": (n, d),
        "U_z": (n, n), "U_r": (n, n), "U_h": (n, n),
        "b_z": (n,), "b_r": (n,), "b_h": (n,),
        "W_out": (2, n), "b_out": (2,),
    }


def load_weights(path) -> GruWeights:
    try:
        text = open(path, encoding="utf-8").read()
    except FileNotFoundError:
        raise WeightFileError(f"weight file not found: {path}") from None

    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise WeightFileError(f"{path}:{lineno}: expected 'name: values'")
        name, value = line.split(":", 1)
        name = name.strip()
        if name in entries:
            raise WeightFileError(f"{path}:{lineno}: duplicate field {name}")
        entries[name] = value.strip()

    for dim_field in ("input_dim", "hidden_dim"):
        if dim_field not in entries:
            raise WeightFileError(f"{path}: missing {dim_field}")
    try:
        input_dim = int(entries.pop("input_dim"))
        hidden_dim = int(entries.pop("hidden_dim"))
    except ValueError as exc:
        raise WeightFileError(f"{path}: bad dimension value: {exc}") from None

    shapes = _shape_table(input_dim, hidden_dim)
    arrays = {}
    for name, shape in shapes.items():
        if name not in entries:
            raise WeightFileError(f"{path}: missing array {name}")
        try:
            flat = np.array([float(v) for v in entries.pop(name).split()])
        except ValueError as exc:
            raise WeightFileError(f"{path}: {name}: {exc}") from None
        expected = int(np.prod(shape))
        if flat.size != expected:
            raise WeightFileError(
                f"{path}: {name}: expected {expected} values "
                f"({'x'.join(map(str, shape))}), got {flat.size}"
            )
        arrays[name] = flat.reshape(shape)
    if entries:
        raise WeightFileError(f"{path}: unknown fields: {sorted(entries)}")

    try:
        return GruWeights(input_dim=input_dim, hidden_dim=hidden_dim,
                          **arrays).validate()
    except WeightShapeError as exc:
        raise WeightFileError(f"{path}: {exc}") from None


def save_weights(weights: GruWeights, path) -> None:
    weights.validate()
    lines = [
        f"input_dim: {weights.input_dim}",
        f"hidden_dim: {weights.hidden_dim}",
    ]
    for name in weights.field_names():
        flat = getattr(weights, name).reshape(-1)
        lines.append(f"{name}: " + " ".join(repr(float(v)) for v in flat))
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
