from roomvoice.runtime.machine import (
    ARMED,
    CAPTURING,
    EVENT_TAGS,
    EXECUTING,
    IDLE,
    STATE_TIMEOUTS_S,
    STATES,
    TRANSCRIBING,
    UNDERSTANDING,
    Command,
    PipelineEvent,
    StepResult,
    step,
)
from roomvoice.runtime.privacy import (
    PrivacyPolicy,
    PrivacyViolationError,
    ReleaseLedger,
    ReleaseReceipt,
)
from roomvoice.runtime.telemetry import LineFileSink, ListSink, Telemetry
from roomvoice.runtime.config import ConfigError, RuntimeConfig, load_config, parse_config
from roomvoice.runtime.engine import CommandEngine, RunReport
from roomvoice.runtime.builder import build_engine, build_registry, build_transcriber

__all__ = [
    "ARMED", "CAPTURING", "EVENT_TAGS", "EXECUTING", "IDLE",
    "STATE_TIMEOUTS_S", "STATES", "TRANSCRIBING", "UNDERSTANDING",
    "Command", "PipelineEvent", "StepResult", "step",
    "PrivacyPolicy", "PrivacyViolationError", "ReleaseLedger", "ReleaseReceipt",
    "LineFileSink", "ListSink", "Telemetry",
    "ConfigError", "RuntimeConfig", "load_config", "parse_config",
    "CommandEngine", "RunReport",
    "build_engine", "build_registry", "build_transcriber",
]
