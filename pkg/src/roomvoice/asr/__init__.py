from roomvoice.asr.client import (
    DEFAULT_TIMEOUT_S,
    MODE_COMMAND,
    MODE_LARGE_VOCABULARY,
    MODES,
    AsrClient,
    AsrError,
    AsrProtocolError,
    AsrTimeoutError,
    Transcript,
    parse_transcript_response,
    utterance_fingerprint,
)
from roomvoice.asr.mock import MockAsrBackend, create_app, load_fixture
from roomvoice.asr.wer import (
    AlignmentOps,
    CorpusReport,
    evaluate_corpus,
    wer,
    word_align,
)

__all__ = [
    "DEFAULT_TIMEOUT_S", "MODE_COMMAND", "MODE_LARGE_VOCABULARY", "MODES",
    "AsrClient", "AsrError", "AsrProtocolError", "AsrTimeoutError",
    "Transcript", "parse_transcript_response", "utterance_fingerprint",
    "MockAsrBackend", "create_app", "load_fixture",
    "AlignmentOps", "CorpusReport", "evaluate_corpus", "wer", "word_align",
]
