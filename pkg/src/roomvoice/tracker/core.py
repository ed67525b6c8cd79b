"""Participant tracking on the panorama: overlap association, a 6 s temporal
gate, and appearance-based disambiguation.

Unmatched tracks keep their last box (people barely move between frames),
survive up to 6 s of missed detections with their identity intact, and are
deleted past that gate. Near-tie associations are settled by cosine
similarity of appearance vectors when the detection carries one.
"""

import copy
from dataclasses import dataclass, field

import numpy as np

from roomvoice.tracker.geometry import PanoramaGeometry, azimuth_of_box, iou_wrap

TENTATIVE = "tentative"
CONFIRMED = "confirmed"
LOST = "lost"
DELETED = "deleted"


@dataclass
class TrackerConfig:
    iou_threshold: float = 0.3
    time_gap_s: float = 6.0
    confirm_hits: int = 3
    ambiguity_margin: float = 0.1
    appearance_alpha: float = 0.2

    def validate(self) -> "TrackerConfig":
        if not 0.0 < self.iou_threshold < 1.0:
            raise ValueError("iou_threshold must be in (0, 1)")
        if self.time_gap_s <= 0:
            raise ValueError("time_gap_s must be positive")
        return self


@dataclass
class Detection:
    x: float
    y: float
    w: float
    h: float
    confidence: float = 1.0
    appearance: np.ndarray | None = None
    timestamp: float = 0.0

    @property
    def box(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)

    def validate(self, geometry: PanoramaGeometry) -> "Detection":
        if not 0.0 < self.w <= geometry.width:
            raise ValueError(f"box width {self.w} outside (0, {geometry.width}]")
        if self.y < 0 or self.h <= 0 or self.y + self.h > geometry.height:
            raise ValueError("box vertical extent outside panorama")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")
        if self.appearance is not None:
            self.appearance = np.asarray(self.appearance, dtype=np.float64)
            norm = np.linalg.norm(self.appearance)
            if abs(norm - 1.0) > 1e-6:
                raise ValueError(f"appearance vector norm {norm} != 1")
        return self


@dataclass
class Track:
    track_id: int
    state: str
    box: tuple[float, float, float, float]
    last_seen: float
    hit_streak: int = 1
    appearance: np.ndarray | None = None
    was_confirmed: bool = False
    created_at: float = 0.0


@dataclass
class LifecycleEvent:
    kind: str  # "created" | "confirmed" | "lost" | "resumed" | "deleted"
    track_id: int
    timestamp: float


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    denom = np.linalg.norm(a) * np.linalg.norm(b)
    if denom == 0.0:
        return 0.0
    return float(np.dot(a, b) / denom)


def resolve_ambiguity(candidates: list[tuple[Track, float]], detection: Detection,
                      cfg: TrackerConfig) -> Track:
    """Pick among near-tie candidate tracks (IoUs within the ambiguity margin).

    Appearance wins when both sides have one; otherwise fall back to higher
    IoU, then lower track id.
    """
    if detection.appearance is not None:
        scored = [(t, iou) for t, iou in candidates if t.appearance is not None]
        if scored:
            return max(
                scored,
                key=lambda ti: (cosine_similarity(ti[0].appearance,
                                                  detection.appearance),
                                ti[1], -ti[0].track_id),
            )[0]
    return max(candidates, key=lambda ti: (ti[1], -ti[0].track_id))[0]


def associate(tracks: list[Track], detections: list[Detection],
              cfg: TrackerConfig, geometry: PanoramaGeometry,
              use_appearance: bool = False):
    """Greedy globally-best-IoU matching above the threshold.

    Returns (matches, unmatched_track_idx, unmatched_det_idx) where matches
    is a list of (track_index, detection_index) pairs. Exact ties prefer the
    lower track id, then the lower detection index. With ``use_appearance``,
    near-ties (IoU gap below the ambiguity margin) are settled by
    ``resolve_ambiguity`` instead of raw order.
    """
    iou = {}
    for ti, t in enumerate(tracks):
        for di, d in enumerate(detections):
            v = iou_wrap(t.box, d.box, geometry)
            if v >= cfg.iou_threshold:
                iou[(ti, di)] = v

    matches = []
    used_t: set[int] = set()
    used_d: set[int] = set()
    while True:
        pool = [(v, ti, di) for (ti, di), v in iou.items()
                if ti not in used_t and di not in used_d]
        if not pool:
            break
        best_v, best_ti, best_di = max(
            pool, key=lambda p: (p[0], -tracks[p[1]].track_id, -p[2])
        )
        if use_appearance:
            rivals = [
                (tracks[ti], v) for v, ti, di in pool
                if di == best_di and best_v - v < cfg.ambiguity_margin
            ]
            if len(rivals) > 1:
                chosen = resolve_ambiguity(rivals, detections[best_di], cfg)
                best_ti = next(ti for ti, t in enumerate(tracks)
                               if t.track_id == chosen.track_id)
        matches.append((best_ti, best_di))
        used_t.add(best_ti)
        used_d.add(best_di)

    unmatched_t = [ti for ti in range(len(tracks)) if ti not in used_t]
    unmatched_d = [di for di in range(len(detections)) if di not in used_d]
    return matches, unmatched_t, unmatched_d


@dataclass
class TrackerSnapshot:
    """Immutable copy of tracker state handed to skills."""

    timestamp: float
    tracks: list[Track]

    def count_confirmed(self) -> int:
        return sum(1 for t in self.tracks if t.state == CONFIRMED)

    def find(self, track_id: int) -> Track | None:
        for t in self.tracks:
            if t.track_id == track_id:
                return t
        return None


class PanoramaTracker:
    """One instance per camera stream, stepped with batches of detections."""

    def __init__(self, geometry: PanoramaGeometry,
                 config: TrackerConfig | None = None):
        self.geometry = geometry
        self.cfg = (config or TrackerConfig()).validate()
        self.tracks: list[Track] = []
        self._next_id = 1
        self._last_t: float | None = None

    def step(self, detections: list[Detection],
             timestamp: float) -> list[LifecycleEvent]:
        if self._last_t is not None and timestamp <= self._last_t:
            raise ValueError(
                f"timestamps must increase: {timestamp} after {self._last_t}"
            )
        for d in detections:
            d.validate(self.geometry)
        events: list[LifecycleEvent] = []

        # Temporal gate first: anything unseen for more than the gap is gone
        # before it can steal a match.
        survivors = []
        for t in self.tracks:
            if timestamp - t.last_seen > self.cfg.time_gap_s:
                t.state = DELETED
                events.append(LifecycleEvent("deleted", t.track_id, timestamp))
            else:
                survivors.append(t)
        self.tracks = survivors

        matches, unmatched_t, unmatched_d = associate(
            self.tracks, detections, self.cfg, self.geometry,
            use_appearance=True,
        )

        for ti, di in matches:
            t = self.tracks[ti]
            d = detections[di]
            resumed = t.state == LOST
            t.box = d.box
            t.last_seen = timestamp
            t.hit_streak += 1
            if d.appearance is not None:
                if t.appearance is None:
                    t.appearance = d.appearance.copy()
                else:
                    mixed = ((1.0 - self.cfg.appearance_alpha) * t.appearance
                             + self.cfg.appearance_alpha * d.appearance)
                    norm = np.linalg.norm(mixed)
                    t.appearance = mixed / norm if norm > 0 else mixed
            if t.was_confirmed:
                t.state = CONFIRMED
                if resumed:
                    events.append(LifecycleEvent("resumed", t.track_id, timestamp))
            elif t.hit_streak >= self.cfg.confirm_hits:
                t.state = CONFIRMED
                t.was_confirmed = True
                events.append(LifecycleEvent("confirmed", t.track_id, timestamp))
            else:
                t.state = TENTATIVE

        for ti in unmatched_t:
            t = self.tracks[ti]
            t.hit_streak = 0
            if t.state != LOST:
                t.state = LOST
                events.append(LifecycleEvent("lost", t.track_id, timestamp))

        for di in unmatched_d:
            d = detections[di]
            t = Track(track_id=self._next_id, state=TENTATIVE, box=d.box,
                      last_seen=timestamp, hit_streak=1,
                      appearance=None if d.appearance is None
                      else d.appearance.copy(),
                      created_at=timestamp)
            self._next_id += 1
            self.tracks.append(t)
            events.append(LifecycleEvent("created", t.track_id, timestamp))

        self._last_t = timestamp
        return events

    def count_confirmed(self) -> int:
        return sum(1 for t in self.tracks if t.state == CONFIRMED)

    def snapshot(self) -> TrackerSnapshot:
        ts = self._last_t if self._last_t is not None else 0.0
        return TrackerSnapshot(timestamp=ts, tracks=copy.deepcopy(self.tracks))

    def azimuth(self, track: Track) -> float:
        return azimuth_of_box(track.box, self.geometry)
