"""Utterance segmentation over the VAD decision stream.

An utterance opens after 5 consecutive speech frames (backdated by a 200 ms
pre-roll), closes after 500 ms of silence or at the 10 s cap, and is emitted
exactly once per open/close cycle. A capture that sees no speech for 5 s
signals a timeout instead.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from roomvoice.audio.framing import FRAME_SIZE, HOP_SIZE, SAMPLE_RATE, SampleBuffer
from roomvoice.audio.vad import VadDecision

K_ON = 5
K_OFF = 50
PREROLL_FRAMES = 20          # 200 ms
MAX_UTTERANCE_FRAMES = 1000  # 10 s from (backdated) start
ARM_TIMEOUT_S = 5.0

CLOSED_SILENCE = "silence"
CLOSED_MAX_LENGTH = "max_length"
CLOSED_CANCELLED = "cancelled"

_span_ids = itertools.count(1)


class BufferReleasedError(RuntimeError):
    """The utterance audio was already wiped under the privacy contract."""


@dataclass
class UtteranceSpan:
    """One captured utterance: frame extent, close reason, and (until
    released) the raw samples backing it."""

    start_frame: int
    end_frame: int
    closed_reason: str
    span_id: int = field(default_factory=lambda: next(_span_ids))
    _audio: np.ndarray | None = None
    released: bool = False

    @property
    def duration_s(self) -> float:
        return (self.end_frame - self.start_frame) * HOP_SIZE / SAMPLE_RATE

    @property
    def has_audio(self) -> bool:
        return self._audio is not None and not self.released

    @property
    def audio(self) -> np.ndarray:
        if self.released:
            raise BufferReleasedError(
                f"audio of utterance {self.span_id} was released"
            )
        if self._audio is None:
            raise BufferReleasedError(
                f"utterance {self.span_id} carries no audio"
            )
        return self._audio

    def release(self) -> bool:
        """Zero and drop the sample buffer. Returns False when already done."""
        if self.released:
            return False
        if self._audio is not None:
            self._audio[:] = 0.0
            self._audio = None
        self.released = True
        return True


@dataclass
class SegmenterEvent:
    kind: str  # "opened" | "span" | "timeout"
    span: UtteranceSpan | None = None
    frame_index: int | None = None


class UtteranceSegmenter:
    """Turns an in-order VAD decision stream into utterance spans.

    When built with a ``SampleBuffer`` the emitted spans carry the matching
    raw samples; without one they only carry frame extents (enough for the
    pure segmentation tests).
    """

    def __init__(self, k_on: int = K_ON, k_off: int = K_OFF,
                 preroll_frames: int = PREROLL_FRAMES,
                 max_frames: int = MAX_UTTERANCE_FRAMES,
                 arm_timeout_s: float = ARM_TIMEOUT_S,
                 sample_buffer: SampleBuffer | None = None):
        self.k_on = k_on
        self.k_off = k_off
        self.preroll_frames = preroll_frames
        self.max_frames = max_frames
        self.arm_timeout_s = arm_timeout_s
        self.sample_buffer = sample_buffer
        self._first_frame: int | None = None
        self._speech_streak = 0
        self._silence_streak = 0
        self._open_start: int | None = None
        self._first_speech: int | None = None
        self._last_speech: int | None = None
        self._last_frame: int | None = None
        self._prev_span_end = -1
        # The no-speech timeout only guards the window before the first
        # utterance; afterwards the session machine owns timing.
        self._arm_watch = True

    @property
    def is_open(self) -> bool:
        return self._open_start is not None

    def push(self, decision: VadDecision) -> list[SegmenterEvent]:
        events: list[SegmenterEvent] = []
        idx = decision.frame_index
        if self._first_frame is None:
            self._first_frame = idx
        self._last_frame = idx

        if decision.is_speech:
            self._speech_streak += 1
            self._silence_streak = 0
            if self._speech_streak == 1:
                self._first_speech = idx
            self._last_speech = idx
            if self._open_start is None and self._speech_streak >= self.k_on:
                start = max(self._first_speech - self.preroll_frames,
                            self._prev_span_end + 1, 0)
                self._open_start = start
                self._arm_watch = False
                events.append(SegmenterEvent("opened", frame_index=start))
        else:
            self._silence_streak += 1
            self._speech_streak = 0
            if self._arm_watch:
                elapsed = (idx - self._first_frame) * HOP_SIZE / SAMPLE_RATE
                if elapsed >= self.arm_timeout_s:
                    self._arm_watch = False
                    events.append(SegmenterEvent("timeout", frame_index=idx))
            if (self._open_start is not None
                    and self._silence_streak >= self.k_off):
                events.append(self._close(self._last_speech, CLOSED_SILENCE))
                return events

        if (self._open_start is not None
                and idx - self._open_start >= self.max_frames):
            events.append(self._close(self._open_start + self.max_frames,
                                      CLOSED_MAX_LENGTH))
        return events

    def cancel(self) -> UtteranceSpan | None:
        """Abort an in-progress utterance, returning it marked cancelled."""
        if self._open_start is None:
            return None
        end = max(self._last_frame, self._open_start + 1)
        return self._close(end, CLOSED_CANCELLED).span

    def _close(self, end_frame: int, reason: str) -> SegmenterEvent:
        start = self._open_start
        audio = None
        if self.sample_buffer is not None:
            lo = start * HOP_SIZE
            hi = end_frame * HOP_SIZE + FRAME_SIZE
            audio = self.sample_buffer.slice(lo, min(hi, self.sample_buffer.end_offset))
        span = UtteranceSpan(start_frame=start, end_frame=end_frame,
                             closed_reason=reason, _audio=audio)
        self._open_start = None
        self._first_speech = None
        self._speech_streak = 0
        self._silence_streak = 0
        self._prev_span_end = end_frame
        return SegmenterEvent("span", span=span)
