"""WAV I/O for the one format the runtime accepts: 16 kHz, 16-bit, mono."""

import io
import wave

import numpy as np

from roomvoice.audio.framing import SAMPLE_RATE, AudioConfigError


def read_wav(path) -> np.ndarray:
    """Load a 16 kHz 16-bit mono WAV as a float array of int16 amplitudes."""
    with wave.open(str(path), "rb") as f:
        if f.getframerate() != SAMPLE_RATE:
            raise AudioConfigError(
                f"expected {SAMPLE_RATE} Hz, got {f.getframerate()} ({path})"
            )
        if f.getnchannels() != 1:
            raise AudioConfigError(f"expected mono audio, got {f.getnchannels()} channels")
        if f.getsampwidth() != 2:
            raise AudioConfigError("expected 16-bit samples")
        raw = f.readframes(f.getnframes())
    return np.frombuffer(raw, dtype="<i2").astype(np.float64)


def write_wav(path, samples) -> None:
    with open(path, "wb") as f:
        f.write(wav_bytes(samples))


def wav_bytes(samples) -> bytes:
    """Encode samples (int16 amplitude scale) as an in-memory WAV file."""
    pcm = np.clip(np.asarray(samples), -32768, 32767).astype("<i2")
    buf = io.BytesIO()
    with wave.open(buf, "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(SAMPLE_RATE)
        f.writeframes(pcm.tobytes())
    return buf.getvalue()


def pcm_from_wav_bytes(data: bytes) -> np.ndarray:
    """Decode an in-memory WAV back to the sample array (server side)."""
    with wave.open(io.BytesIO(data), "rb") as f:
        if f.getframerate() != SAMPLE_RATE or f.getnchannels() != 1 or f.getsampwidth() != 2:
            raise AudioConfigError("WAV payload is not 16 kHz 16-bit mono")
        raw = f.readframes(f.getnframes())
    return np.frombuffer(raw, dtype="<i2").astype(np.float64)
