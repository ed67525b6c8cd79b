"""Command-mode session state machine.

The transition function is pure and total: every (state, event) pair maps
to a defined outcome, with unlisted combinations ignored in place. Timeout
and Error always land back in IDLE within one step so the device can never
wedge.
"""

from dataclasses import dataclass, field
from typing import Any

IDLE = "IDLE"
ARMED = "ARMED"
CAPTURING = "CAPTURING"
TRANSCRIBING = "TRANSCRIBING"
UNDERSTANDING = "UNDERSTANDING"
EXECUTING = "EXECUTING"

STATES = (IDLE, ARMED, CAPTURING, TRANSCRIBING, UNDERSTANDING, EXECUTING)

# Seconds a state may hold before the session is forced back to IDLE.
STATE_TIMEOUTS_S = {
    ARMED: 5.0,
    CAPTURING: 12.0,    # utterance cap plus closing hangover
    TRANSCRIBING: 5.0,
    UNDERSTANDING: 5.0,
    EXECUTING: 10.0,
}


@dataclass
class PipelineEvent:
    tag: str
    time_s: float = 0.0
    payload: Any = None

    # Event constructors; payload meaning depends on the tag.
    @classmethod
    def hotword_trigger(cls, t: float) -> "PipelineEvent":
        return cls("HotwordTrigger", t)

    @classmethod
    def speech_started(cls, t: float) -> "PipelineEvent":
        return cls("SpeechStarted", t)

    @classmethod
    def utterance_ready(cls, t: float, span) -> "PipelineEvent":
        return cls("UtteranceReady", t, span)

    @classmethod
    def transcript_ready(cls, t: float, transcript) -> "PipelineEvent":
        return cls("TranscriptReady", t, transcript)

    @classmethod
    def interpretation_ready(cls, t: float, interpretation) -> "PipelineEvent":
        return cls("InterpretationReady", t, interpretation)

    @classmethod
    def action_done(cls, t: float, result) -> "PipelineEvent":
        return cls("ActionDone", t, result)

    @classmethod
    def timeout(cls, t: float, state: str) -> "PipelineEvent":
        return cls("Timeout", t, state)

    @classmethod
    def error(cls, t: float, stage: str, detail: str) -> "PipelineEvent":
        return cls("Error", t, {"stage": stage, "detail": detail})


EVENT_TAGS = ("HotwordTrigger", "SpeechStarted", "UtteranceReady",
              "TranscriptReady", "InterpretationReady", "ActionDone",
              "Timeout", "Error")


@dataclass
class Command:
    name: str  # start_capture | transcribe | interpret | dispatch
    #        | release_buffers | emit_diagnostic
    payload: Any = None


@dataclass
class StepResult:
    state: str
    commands: list[Command] = field(default_factory=list)
    ignored: bool = False


def step(state: str, event: PipelineEvent) -> StepResult:
    """Apply one event; unlisted combinations are ignored (and reported so)."""
    tag = event.tag

    if tag == "Error":
        return StepResult(IDLE, [Command("release_buffers"),
                                 Command("emit_diagnostic", event.payload)])

    if tag == "Timeout":
        if event.payload == state and state != IDLE:
            return StepResult(IDLE, [Command("release_buffers")])
        # Stale timer for a state we already left (or IDLE): no effect.
        return StepResult(state, [], ignored=(event.payload != state))

    if state == IDLE and tag == "HotwordTrigger":
        return StepResult(ARMED, [Command("start_capture")])
    if state == ARMED and tag == "SpeechStarted":
        return StepResult(CAPTURING, [])
    if state in (ARMED, CAPTURING) and tag == "UtteranceReady":
        return StepResult(TRANSCRIBING, [Command("transcribe", event.payload)])
    if state == TRANSCRIBING and tag == "TranscriptReady":
        return StepResult(UNDERSTANDING, [Command("interpret", event.payload)])
    if state == UNDERSTANDING and tag == "InterpretationReady":
        return StepResult(EXECUTING, [Command("dispatch", event.payload)])
    if state == EXECUTING and tag == "ActionDone":
        return StepResult(IDLE, [])

    return StepResult(state, [], ignored=True)
