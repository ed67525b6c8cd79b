"""Scripted ASR backend for tests and offline runs.

Transcripts are keyed by utterance fingerprint (content hash of the PCM),
with an optional default for anything unscripted. Usable in-process (the
deterministic path) or served over HTTP with the exact same contract as a
real backend.
"""

import json

from roomvoice.asr.client import (
    MODE_COMMAND,
    Transcript,
    utterance_fingerprint,
)
from roomvoice.audio.segmenter import UtteranceSpan
from roomvoice.audio.framing import SAMPLE_RATE

DEFAULT_KEY = "_default"


class MockAsrBackend:
    def __init__(self, script: dict | None = None,
                 default: dict | None = None):
        self.script = dict(script or {})
        self.default = default
        self.requests_seen: list[str] = []

    def add(self, fingerprint: str, text: str, confidence: float = 1.0) -> None:
        self.script[fingerprint] = {"text": text, "confidence": confidence}

    def lookup(self, samples) -> dict:
        fp = utterance_fingerprint(samples)
        self.requests_seen.append(fp)
        entry = self.script.get(fp, self.default)
        if entry is None:
            return {"text": "", "confidence": 0.0}
        return entry

    def transcribe(self, span: UtteranceSpan,
                   mode: str = MODE_COMMAND) -> Transcript:
        """In-process stand-in satisfying the AsrClient interface."""
        audio = span.audio
        entry = self.lookup(audio)
        return Transcript.from_text(entry["text"],
                                    confidence=entry.get("confidence", 1.0),
                                    mode=mode,
                                    duration_s=len(audio) / SAMPLE_RATE)

    @property
    def mode(self) -> str:
        return MODE_COMMAND


def load_fixture(path) -> MockAsrBackend:
    """Fixture file: JSON object mapping fingerprints to transcript entries.

    The key "_default" supplies the fallback for unscripted utterances.
    """
    data = json.loads(open(path, encoding="utf-8").read())
    default = data.pop(DEFAULT_KEY, None)
    return MockAsrBackend(script=data, default=default)


def create_app(backend: MockAsrBackend):
    """HTTP wrapper with the same contract as a real ASR backend."""
    from fastapi import FastAPI, Request

    from roomvoice.audio.wavio import pcm_from_wav_bytes

    app = FastAPI(title="mock ASR backend")

    @app.post("/transcribe")
    async def transcribe(request: Request, mode: str = MODE_COMMAND):
        samples = pcm_from_wav_bytes(await request.body())
        return backend.lookup(samples)

    return app
