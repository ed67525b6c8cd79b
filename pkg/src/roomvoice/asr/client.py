"""Transcription client: ships utterance WAVs to an ASR backend over HTTP.

Two backend modes exist, selected per request: "command" for short
in-domain commands and "large_vocabulary" for open dictation. The wire
contract is POST <endpoint>?mode=..., body = WAV bytes, response = a JSON
document with "text" and "confidence". Failures are surfaced as typed
errors the runtime can absorb without crashing.
"""

import hashlib
import json
from dataclasses import dataclass, field

import requests

from roomvoice.audio.framing import SAMPLE_RATE
from roomvoice.audio.segmenter import UtteranceSpan
from roomvoice.audio.wavio import wav_bytes
from roomvoice.textnorm import normalize_text, tokenize

MODE_COMMAND = "command"
MODE_LARGE_VOCABULARY = "large_vocabulary"
MODES = (MODE_COMMAND, MODE_LARGE_VOCABULARY)

DEFAULT_TIMEOUT_S = 5.0


class AsrError(Exception):
    """Base class for transcription failures."""

    retriable = False


class AsrTimeoutError(AsrError):
    """Backend did not answer in time (or was unreachable); retriable."""

    retriable = True


class AsrProtocolError(AsrError):
    """Backend answered with something that is not a transcript."""


@dataclass
class Transcript:
    text: str
    tokens: list[str] = field(default_factory=list)
    confidence: float = 1.0
    mode: str = MODE_COMMAND
    duration_s: float = 0.0

    @classmethod
    def from_text(cls, raw_text: str, confidence: float = 1.0,
                  mode: str = MODE_COMMAND, duration_s: float = 0.0) -> "Transcript":
        return cls(text=normalize_text(raw_text), tokens=tokenize(raw_text),
                   confidence=float(confidence), mode=mode,
                   duration_s=duration_s)


def utterance_fingerprint(samples) -> str:
    """Stable content key of an utterance's raw PCM (first 16 hex chars)."""
    import numpy as np

    pcm = np.clip(np.asarray(samples), -32768, 32767).astype("<i2")
    return hashlib.sha256(pcm.tobytes()).hexdigest()[:16]


def parse_transcript_response(body: bytes, mode: str,
                              duration_s: float) -> Transcript:
    try:
        data = json.loads(body.decode("utf-8"))
        text = data["text"]
        confidence = float(data.get("confidence", 1.0))
    except (ValueError, KeyError, UnicodeDecodeError) as exc:
        raise AsrProtocolError(f"malformed backend response: {exc}") from None
    if not isinstance(text, str) or not 0.0 <= confidence <= 1.0:
        raise AsrProtocolError("backend response fields out of contract")
    return Transcript.from_text(text, confidence=confidence, mode=mode,
                                duration_s=duration_s)


class AsrClient:
    """HTTP transcription client; stateless apart from its configuration."""

    def __init__(self, endpoint: str, mode: str = MODE_COMMAND,
                 timeout_s: float = DEFAULT_TIMEOUT_S, session=None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.endpoint = endpoint
        self.mode = mode
        self.timeout_s = timeout_s
        self._session = session or requests.Session()

    def transcribe(self, span: UtteranceSpan,
                   mode: str | None = None) -> Transcript:
        mode = mode or self.mode
        audio = span.audio
        duration = len(audio) / SAMPLE_RATE
        try:
            resp = self._session.post(
                self.endpoint,
                params={"mode": mode},
                data=wav_bytes(audio),
                headers={"Content-Type": "audio/wav"},
                timeout=self.timeout_s,
            )
        except (requests.Timeout, requests.ConnectionError) as exc:
            raise AsrTimeoutError(
                f"ASR backend unreachable within {self.timeout_s}s: {exc}"
            ) from None
        if resp.status_code != 200:
            raise AsrProtocolError(
                f"ASR backend returned HTTP {resp.status_code}"
            )
        return parse_transcript_response(resp.content, mode, duration)
