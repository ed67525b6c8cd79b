"""The command-mode service loop.

Pumps audio through hotword scanning while IDLE and through VAD capture
once armed, converts stage outputs into pipeline events, applies the pure
state machine, and executes the returned commands. Stage failures become
Error events and land back in IDLE; the loop itself never dies on them.

Time is stream time (derived from sample position), which makes offline
WAV replay fully deterministic.
"""

import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from roomvoice.asr.client import AsrError
from roomvoice.audio.framing import (
    HOP_SIZE,
    SAMPLE_RATE,
    AudioFrame,
    SampleBuffer,
    StreamFramer,
)
from roomvoice.audio.features import LogMelExtractor
from roomvoice.audio.segmenter import UtteranceSegmenter, UtteranceSpan
from roomvoice.audio.vad import EnergyVad
from roomvoice.audio.wavio import read_wav
from roomvoice.hotword.detector import HotwordDetector
from roomvoice.nlu.entities import EntitySpec
from roomvoice.nlu.model import IntentModel, interpret
from roomvoice.runtime.machine import (
    ARMED,
    IDLE,
    STATE_TIMEOUTS_S,
    Command,
    PipelineEvent,
    step,
)
from roomvoice.runtime.privacy import PrivacyPolicy, ReleaseLedger
from roomvoice.runtime.telemetry import ListSink, Telemetry
from roomvoice.skills.fusion import GestureBuffer, GestureEvent, notify_speak_request
from roomvoice.skills.registry import ActionResult, SkillContext, SkillRegistry

logger = logging.getLogger(__name__)

CHUNK_SAMPLES = 1600  # 100 ms


@dataclass
class RunReport:
    final_state: str
    dispatches: list[ActionResult] = field(default_factory=list)
    captured_utterances: int = 0
    release_receipts: int = 0
    timeouts: int = 0
    errors: int = 0
    notifications: list[str] = field(default_factory=list)
    device_commands: list[dict] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    audio_duration_s: float = 0.0


class CommandEngine:
    def __init__(self, detector: HotwordDetector, transcriber,
                 nlu_model: IntentModel, entity_specs: list[EntitySpec],
                 registry: SkillRegistry, capabilities: set[str],
                 policy: PrivacyPolicy | None = None,
                 sinks: list | None = None,
                 tracker=None):
        self.detector = detector
        self.transcriber = transcriber
        self.nlu_model = nlu_model
        self.entity_specs = entity_specs
        self.registry = registry
        self.capabilities = set(capabilities)
        self.policy = policy or PrivacyPolicy()
        self.tracker = tracker
        self.gestures = GestureBuffer()

        self.report_sink = ListSink()
        all_sinks = [self.report_sink] + list(sinks or [])
        self.telemetry = Telemetry(self.policy, all_sinks)

        self.state = IDLE
        self.entered_at = 0.0
        self.ledger = ReleaseLedger()
        self.captured = 0
        self.dispatches: list[ActionResult] = []
        self.notifications: list[str] = []
        self.device_commands: list[dict] = []
        self.timeouts = 0
        self.errors = 0

        self._framer = StreamFramer()
        self._samples = SampleBuffer()
        self._extract = LogMelExtractor()
        self._vad: EnergyVad | None = None
        self._segmenter: UtteranceSegmenter | None = None
        self._pending_spans: list[UtteranceSpan] = []
        self._queue: deque[PipelineEvent] = deque()
        self._draining = False
        self._now = 0.0

    # ---- audio input -----------------------------------------------------

    def push_chunk(self, chunk) -> None:
        """Feed PCM samples; drives the whole pipeline synchronously."""
        self._samples.push(chunk)
        for frame in self._framer.push_samples(chunk):
            self._process_frame(frame)

    def run_samples(self, samples, chunk_samples: int = CHUNK_SAMPLES) -> RunReport:
        samples = np.asarray(samples, dtype=np.float64)
        for start in range(0, len(samples), chunk_samples):
            self.push_chunk(samples[start:start + chunk_samples])
        return self.report(audio_duration_s=len(samples) / SAMPLE_RATE)

    def run_wav(self, path, chunk_samples: int = CHUNK_SAMPLES) -> RunReport:
        """Offline mode: deterministic replay of a WAV file."""
        return self.run_samples(read_wav(path), chunk_samples)

    def report(self, audio_duration_s: float = 0.0) -> RunReport:
        return RunReport(
            final_state=self.state,
            dispatches=list(self.dispatches),
            captured_utterances=self.captured,
            release_receipts=self.ledger.count(),
            timeouts=self.timeouts,
            errors=self.errors,
            notifications=list(self.notifications),
            device_commands=list(self.device_commands),
            events=list(self.report_sink.records),
            audio_duration_s=audio_duration_s,
        )

    # ---- gesture input (fusion strategy: vision pushes to voice) ---------

    def push_gesture(self, event: GestureEvent) -> None:
        self.gestures.append(event)
        if self.tracker is not None:
            note = notify_speak_request(event, self.tracker.snapshot(),
                                        self.tracker.geometry)
            if note:
                self.notifications.append(note)
                self.telemetry.record(event.timestamp, self.state,
                                      "SpeakRequest", reason=note)

    # ---- frame pump ------------------------------------------------------

    def _process_frame(self, frame: AudioFrame) -> None:
        t = frame.start_time
        self._now = t
        limit = STATE_TIMEOUTS_S.get(self.state)
        if limit is not None and t - self.entered_at > limit:
            self._submit(PipelineEvent.timeout(t, self.state))

        feature = self._extract.compute(frame)
        if self.state == IDLE:
            _, trigger = self.detector.step(feature, t)
            if trigger is not None:
                self._submit(PipelineEvent.hotword_trigger(t))
        elif self._segmenter is not None:
            decision = self._vad.step(feature)
            for ev in self._segmenter.push(decision):
                if ev.kind == "opened":
                    self._submit(PipelineEvent.speech_started(t))
                elif ev.kind == "span":
                    self.captured += 1
                    self._pending_spans.append(ev.span)
                    self._submit(PipelineEvent.utterance_ready(t, ev.span))
                elif ev.kind == "timeout" and self.state == ARMED:
                    self._submit(PipelineEvent.timeout(t, ARMED))

    # ---- event loop ------------------------------------------------------

    def _submit(self, event: PipelineEvent) -> None:
        self._queue.append(event)
        if self._draining:
            return
        self._draining = True
        try:
            while self._queue:
                self._apply(self._queue.popleft())
        finally:
            self._draining = False

    def _apply(self, event: PipelineEvent) -> None:
        result = step(self.state, event)
        self.telemetry.record(
            event.time_s, self.state, event.tag,
            **self._describe(event),
        )
        if result.ignored:
            logger.debug("ignored %s in %s", event.tag, self.state)
        if event.tag == "Timeout" and not result.ignored:
            self.timeouts += 1
        if event.tag == "Error":
            self.errors += 1
        if result.state != self.state:
            left_session = result.state == IDLE
            self.state = result.state
            self.entered_at = event.time_s
            if left_session:
                self._reset_listening()
        for command in result.commands:
            self._execute(command, event.time_s)

    def _describe(self, event: PipelineEvent) -> dict:
        if event.tag == "InterpretationReady":
            return {"intent": event.payload.intent}
        if event.tag == "ActionDone":
            return {"skill": event.payload.skill,
                    "outcome": event.payload.outcome,
                    "reason": event.payload.payload}
        if event.tag == "TranscriptReady":
            return {"text": " ".join(event.payload.tokens)}
        if event.tag == "Error":
            return {"stage": event.payload["stage"],
                    "reason": event.payload["detail"]}
        if event.tag == "Timeout":
            return {"reason": str(event.payload)}
        return {}

    def _execute(self, command: Command, t: float) -> None:
        if command.name == "start_capture":
            self._vad = EnergyVad()
            self._segmenter = UtteranceSegmenter(sample_buffer=self._samples)
        elif command.name == "transcribe":
            self._transcribe(command.payload, t)
        elif command.name == "interpret":
            self._interpret(command.payload, t)
        elif command.name == "dispatch":
            self._dispatch(command.payload, t)
        elif command.name == "release_buffers":
            self._release_all(t)
        elif command.name == "emit_diagnostic":
            logger.warning("pipeline error at %s: %s", t, command.payload)

    def _transcribe(self, span: UtteranceSpan, t: float) -> None:
        try:
            transcript = self.transcriber.transcribe(span)
        except AsrError as exc:
            self._queue.append(PipelineEvent.error(t, "asr", str(exc)))
            return
        except Exception as exc:
            self._queue.append(PipelineEvent.error(t, "asr",
                                                   f"unexpected: {exc}"))
            return
        finally:
            # The no-voice-data-persistence contract: audio dies the moment
            # transcription is over, successful or not.
            self.ledger.release(span, t)
            if span in self._pending_spans:
                self._pending_spans.remove(span)
        self._queue.append(PipelineEvent.transcript_ready(t, transcript))

    def _interpret(self, transcript, t: float) -> None:
        try:
            interpretation = interpret(transcript.text, self.nlu_model,
                                       self.entity_specs)
        except Exception as exc:
            self._queue.append(PipelineEvent.error(t, "nlu", str(exc)))
            return
        self._queue.append(PipelineEvent.interpretation_ready(t, interpretation))

    def _dispatch(self, interpretation, t: float) -> None:
        context = SkillContext(
            now=t,
            snapshot=self.tracker.snapshot() if self.tracker else None,
            gestures=self.gestures,
            device_commands=self.device_commands,
        )
        result = self.registry.dispatch(interpretation, self.capabilities,
                                        context)
        self.dispatches.append(result)
        self._queue.append(PipelineEvent.action_done(t, result))

    def _release_all(self, t: float) -> None:
        if self._segmenter is not None:
            cancelled = self._segmenter.cancel()
            if cancelled is not None:
                self.captured += 1
                self._pending_spans.append(cancelled)
        for span in self._pending_spans:
            self.ledger.release(span, t, reason="aborted")
        self._pending_spans.clear()
        self._reset_listening()

    def _reset_listening(self) -> None:
        """Back to hotword scanning with a clean slate."""
        self._vad = None
        self._segmenter = None
        self.detector.reset()
