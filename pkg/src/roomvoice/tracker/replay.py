"""Detection replay files: the ingestion format for tests, demos, and any
future live detector process.

One detection per line, whitespace-separated:

    timestamp x y w h confidence [appearance components ...]

Lines sharing a timestamp form one tracker step. '#' starts a comment.
"""

import numpy as np

from roomvoice.tracker.core import Detection


def parse_detections(text: str, source: str = "<detections>"):
    """Parse into a list of (timestamp, [Detection, ...]) steps, in file order."""
    steps: list[tuple[float, list[Detection]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 6:
            raise ValueError(
                f"{source}:{lineno}: expected 't x y w h conf [appearance...]'"
            )
        try:
            t, x, y, w, h, conf = (float(v) for v in parts[:6])
            appearance = None
            if len(parts) > 6:
                appearance = np.array([float(v) for v in parts[6:]])
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: {exc}") from None
        det = Detection(x=x, y=y, w=w, h=h, confidence=conf,
                        appearance=appearance, timestamp=t)
        if steps and steps[-1][0] == t:
            steps[-1][1].append(det)
        else:
            steps.append((t, [det]))
    return steps


def load_detections(path):
    return parse_detections(open(path, encoding="utf-8").read(), source=str(path))


def format_detection(t: float, det: Detection) -> str:
    cols = [f"{t:.3f}", f"{det.x:g}", f"{det.y:g}", f"{det.w:g}", f"{det.h:g}",
            f"{det.confidence:g}"]
    if det.appearance is not None:
        cols.extend(f"{v:.6f}" for v in det.appearance)
    return " ".join(cols)
