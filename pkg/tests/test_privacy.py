import numpy as np
import pytest

from roomvoice.audio.segmenter import UtteranceSpan
from roomvoice.runtime.privacy import (
    PrivacyPolicy,
    PrivacyViolationError,
    ReleaseLedger,
)
from roomvoice.runtime.telemetry import ListSink, Telemetry


def span_with_audio():
    return UtteranceSpan(start_frame=0, end_frame=10, closed_reason="silence",
                         _audio=np.ones(2000))


class TestPolicy:
    def test_persist_audio_cannot_be_enabled(self):
        with pytest.raises(PrivacyViolationError):
            PrivacyPolicy.from_dict({"persist_audio": True})

    def test_persist_audio_false_is_tolerated(self):
        policy = PrivacyPolicy.from_dict({"persist_audio": False})
        assert policy.persist_audio is False

    def test_unknown_fields_rejected(self):
        with pytest.raises(PrivacyViolationError):
            PrivacyPolicy.from_dict({"store_wavs": True})

    def test_policy_has_no_persist_audio_attribute_to_set(self):
        policy = PrivacyPolicy()
        with pytest.raises(AttributeError):
            policy.persist_audio = True


class TestReleaseLedger:
    def test_release_issues_receipt(self):
        ledger = ReleaseLedger()
        span = span_with_audio()
        receipt = ledger.release(span, now=3.5)
        assert receipt.span_id == span.span_id
        assert receipt.released_at == 3.5
        assert ledger.count() == 1

    def test_double_release_is_idempotent_noop(self):
        ledger = ReleaseLedger()
        span = span_with_audio()
        ledger.release(span, now=1.0)
        assert ledger.release(span, now=2.0) is None
        assert ledger.count() == 1

    def test_receipts_contain_no_audio(self):
        ledger = ReleaseLedger()
        receipt = ledger.release(span_with_audio(), now=1.0)
        assert set(vars(receipt)) == {"span_id", "released_at", "reason"}


class TestTelemetryRedaction:
    def test_non_scalar_payloads_never_emitted(self):
        sink = ListSink()
        telemetry = Telemetry(PrivacyPolicy(), [sink])
        telemetry.record(1.0, "IDLE", "X", intent="a",
                         samples=np.ones(100), blob=b"\x00\x01",
                         nested={"x": 1})
        rec = sink.records[0]
        assert rec == {"t": 1.0, "state": "IDLE", "event": "X", "intent": "a"}

    def test_transcript_text_gated_by_policy(self):
        off, on = ListSink(), ListSink()
        Telemetry(PrivacyPolicy(), [off]).record(
            1.0, "S", "TranscriptReady", text="allume la lumière")
        Telemetry(PrivacyPolicy(persist_transcripts=True), [on]).record(
            1.0, "S", "TranscriptReady", text="allume la lumière")
        assert "text" not in off.records[0]
        assert on.records[0]["text"] == "allume la lumière"

    def test_allow_list_filters_fields(self):
        sink = ListSink()
        telemetry = Telemetry(PrivacyPolicy(telemetry_fields=("intent",)),
                              [sink])
        telemetry.record(1.0, "S", "E", intent="a", skill="b")
        assert "skill" not in sink.records[0]
        assert sink.records[0]["intent"] == "a"
