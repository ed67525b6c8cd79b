"""Telemetry and event logging with policy-driven redaction.

Every record passes through the privacy filter before reaching any sink:
only allow-listed scalar fields survive, transcript text only when the
policy says so, and non-scalar values (sample arrays, byte strings) are
structurally impossible to emit.
"""

import json
from dataclasses import dataclass, field

from roomvoice.runtime.privacy import PrivacyPolicy

_SCALARS = (str, int, float, bool)


@dataclass
class ListSink:
    """In-memory sink; also what instrumented tests use to audit output."""

    records: list[dict] = field(default_factory=list)

    def emit(self, record: dict) -> None:
        self.records.append(record)


class LineFileSink:
    """Line-delimited JSON event log."""

    def __init__(self, path):
        self._f = open(path, "a", encoding="utf-8")

    def emit(self, record: dict) -> None:
        self._f.write(json.dumps(record, ensure_ascii=False) + "\n")
        self._f.flush()

    def close(self) -> None:
        self._f.close()


class Telemetry:
    def __init__(self, policy: PrivacyPolicy, sinks: list | None = None):
        self.policy = policy
        self.sinks = sinks if sinks is not None else []

    def record(self, time_s: float, state: str, event_tag: str,
               **fields) -> dict:
        rec = {"t": round(float(time_s), 3), "state": state, "event": event_tag}
        for key, value in fields.items():
            if not isinstance(value, _SCALARS) or isinstance(value, bytes):
                continue
            if key == "text":
                if self.policy.persist_transcripts:
                    rec["text"] = value
                continue
            if key in self.policy.telemetry_fields:
                rec[key] = value
        for sink in self.sinks:
            sink.emit(rec)
        return rec
