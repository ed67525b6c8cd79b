"""Audio-visual fusion skills.

Two directions of fusion exist: vision pushing to the voice side (speak
request notifications) and voice commands pulling vision state (participant
counts, vote counts over raised hands).
"""

import logging
from dataclasses import dataclass, field

from roomvoice.skills.registry import (
    CAP_GESTURE,
    CAP_VISION,
    CapabilityUnavailable,
    Skill,
    SkillContext,
    SkillDescriptor,
)
from roomvoice.nlu.model import Interpretation
from roomvoice.tracker.core import CONFIRMED, TrackerSnapshot
from roomvoice.tracker.geometry import PanoramaGeometry, azimuth_of_box

logger = logging.getLogger(__name__)

HAND_RAISED = "hand_raised"
HAND_LOWERED = "hand_lowered"

SNAPSHOT_MAX_AGE_S = 2.0
VOTE_WINDOW_TIMEOUT_S = 120.0


@dataclass
class GestureEvent:
    track_id: int
    gesture: str  # hand_raised | hand_lowered
    timestamp: float


@dataclass
class GestureBuffer:
    """Ordered gesture accumulator; timestamps must not regress per track."""

    events: list[GestureEvent] = field(default_factory=list)
    _last_per_track: dict[int, float] = field(default_factory=dict)

    def append(self, event: GestureEvent) -> None:
        last = self._last_per_track.get(event.track_id)
        if last is not None and event.timestamp < last:
            raise ValueError(
                f"gesture timestamps regress for track {event.track_id}"
            )
        self._last_per_track[event.track_id] = event.timestamp
        self.events.append(event)

    def in_window(self, start: float, end: float | None = None):
        return [e for e in self.events
                if e.timestamp >= start and (end is None or e.timestamp <= end)]


def parse_gesture_replay(text: str, source: str = "<gestures>"):
    """Replay file: one 'timestamp track_id gesture' record per line."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[2] not in (HAND_RAISED, HAND_LOWERED):
            raise ValueError(
                f"{source}:{lineno}: expected 'timestamp track_id "
                f"{HAND_RAISED}|{HAND_LOWERED}'"
            )
        events.append(GestureEvent(track_id=int(parts[1]), gesture=parts[2],
                                   timestamp=float(parts[0])))
    return events


def load_gesture_replay(path):
    return parse_gesture_replay(open(path, encoding="utf-8").read(),
                                source=str(path))


def count_raised_hands(events: list[GestureEvent], window_start: float,
                       window_end: float | None = None) -> int:
    """Distinct tracks whose latest gesture inside the window is a raise."""
    latest: dict[int, GestureEvent] = {}
    for e in events:
        if e.timestamp < window_start:
            continue
        if window_end is not None and e.timestamp > window_end:
            continue
        prev = latest.get(e.track_id)
        if prev is None or e.timestamp >= prev.timestamp:
            latest[e.track_id] = e
    return sum(1 for e in latest.values() if e.gesture == HAND_RAISED)


def notify_speak_request(event: GestureEvent, snapshot: TrackerSnapshot,
                         geometry: PanoramaGeometry) -> str | None:
    """Fusion push path: a confirmed participant raising a hand becomes a
    textual notification carrying their azimuth."""
    if event.gesture != HAND_RAISED:
        return None
    track = snapshot.find(event.track_id)
    if track is None:
        logger.warning("speak request for unknown track %d dropped",
                       event.track_id)
        return None
    if track.state != CONFIRMED:
        return None
    azimuth = azimuth_of_box(track.box, geometry)
    return (f"demande de parole: participant à {azimuth:.0f}° "
            "souhaite intervenir")


class ParticipantCountSkill(Skill):
    """Voice pulls vision: count the confirmed tracks right now."""

    def __init__(self):
        self.descriptor = SkillDescriptor(
            name="participants",
            intents=("count_participants",),
            required_capability=CAP_VISION,
        )

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        snapshot = context.snapshot
        if snapshot is None:
            raise CapabilityUnavailable("pas de vue caméra disponible")
        if context.now - snapshot.timestamp > SNAPSHOT_MAX_AGE_S:
            raise CapabilityUnavailable(
                f"vue caméra trop ancienne "
                f"({context.now - snapshot.timestamp:.1f}s)"
            )
        n = snapshot.count_confirmed()
        return f"{n} participant{'s' if n > 1 else ''}"


class VoteSkill(Skill):
    """Counts raised hands inside an explicit vote window."""

    def __init__(self, window_timeout_s: float = VOTE_WINDOW_TIMEOUT_S):
        self.descriptor = SkillDescriptor(
            name="votes",
            intents=("count_votes", "close_vote"),
            required_capability=CAP_GESTURE,
        )
        self.window_timeout_s = window_timeout_s
        self.window_opened_at: float | None = None
        self.polarity: str | None = None

    def _window_open(self, now: float) -> bool:
        if self.window_opened_at is None:
            return False
        if now - self.window_opened_at > self.window_timeout_s:
            self.window_opened_at = None
            return False
        return True

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        if interpretation.intent == "close_vote":
            if not self._window_open(context.now):
                raise CapabilityUnavailable("aucun vote en cours")
            self.window_opened_at = None
            return "vote clos"

        if context.gestures is None:
            raise CapabilityUnavailable("pas de source de gestes")
        polarity = next((e.value for e in interpretation.entities
                         if e.type == "polarity"), None)
        if not self._window_open(context.now):
            self.window_opened_at = context.now
            self.polarity = polarity
        count = count_raised_hands(context.gestures.events,
                                   self.window_opened_at, context.now)
        label = self.polarity or polarity
        suffix = f" {label}" if label else ""
        return f"{count} vote{'s' if count > 1 else ''}{suffix}"
