"""Privacy enforcement: voice data never persists.

Utterance buffers are zeroed and dropped as soon as transcription finishes
or aborts, and a receipt proves the release without containing any audio.
``persist_audio`` is a constant False: no configuration can turn it on, and
attempts to are rejected at load time.
"""

import logging
from dataclasses import dataclass, field

from roomvoice.audio.segmenter import UtteranceSpan

logger = logging.getLogger(__name__)

DEFAULT_TELEMETRY_FIELDS = ("state", "event", "intent", "skill", "outcome",
                            "reason", "stage", "azimuth_deg", "count")


class PrivacyViolationError(ValueError):
    """A configuration tried to enable voice-data persistence."""


@dataclass
class PrivacyPolicy:
    persist_transcripts: bool = False
    telemetry_fields: tuple[str, ...] = DEFAULT_TELEMETRY_FIELDS

    # persist_audio is intentionally not a field: it cannot be represented,
    # let alone enabled.
    @property
    def persist_audio(self) -> bool:
        return False

    @classmethod
    def from_dict(cls, data: dict) -> "PrivacyPolicy":
        if data.get("persist_audio"):
            raise PrivacyViolationError(
                "persist_audio cannot be enabled: voice data is never stored"
            )
        allowed = {"persist_audio", "persist_transcripts", "telemetry_fields"}
        unknown = set(data) - allowed
        if unknown:
            raise PrivacyViolationError(
                f"unknown privacy policy fields: {sorted(unknown)}"
            )
        return cls(
            persist_transcripts=bool(data.get("persist_transcripts", False)),
            telemetry_fields=tuple(data.get("telemetry_fields",
                                            DEFAULT_TELEMETRY_FIELDS)),
        )


@dataclass
class ReleaseReceipt:
    span_id: int
    released_at: float
    reason: str


@dataclass
class ReleaseLedger:
    """Audit trail of buffer releases; conservation is checked against it."""

    receipts: list[ReleaseReceipt] = field(default_factory=list)

    def release(self, span: UtteranceSpan, now: float,
                reason: str = "transcribed") -> ReleaseReceipt | None:
        """Wipe a span's audio; idempotent, warns on double release."""
        if not span.release():
            logger.warning("utterance %d already released", span.span_id)
            return None
        receipt = ReleaseReceipt(span_id=span.span_id, released_at=now,
                                 reason=reason)
        self.receipts.append(receipt)
        return receipt

    def count(self) -> int:
        return len(self.receipts)
