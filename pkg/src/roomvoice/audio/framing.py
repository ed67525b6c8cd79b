"""Stream framing: raw 16 kHz PCM in, overlapping 25 ms / 10 ms frames out."""

from dataclasses import dataclass

import numpy as np

SAMPLE_RATE = 16000
FRAME_SIZE = 400   # 25 ms at 16 kHz
HOP_SIZE = 160     # 10 ms at 16 kHz


class AudioConfigError(ValueError):
    """Stream parameters incompatible with the 16 kHz mono contract."""


@dataclass
class AudioFrame:
    """One analysis window of the input stream.

    ``samples`` is a length-400 float array of raw int16 amplitudes;
    ``index`` counts frames from stream start, advancing one hop each.
    """

    samples: np.ndarray
    index: int

    @property
    def start_time(self) -> float:
        return self.index * HOP_SIZE / SAMPLE_RATE


class StreamFramer:
    """Splits arbitrarily-chunked sample input into overlapping frames.

    Residual samples are retained between pushes, so the emitted frame
    sequence is identical however the caller chunks the stream.
    """

    def __init__(self, sample_rate: int = SAMPLE_RATE):
        if sample_rate != SAMPLE_RATE:
            raise AudioConfigError(
                f"sample rate must be {SAMPLE_RATE} Hz, got {sample_rate}"
            )
        self._residue = np.empty(0, dtype=np.float64)
        self._next_index = 0

    def push_samples(self, chunk) -> list[AudioFrame]:
        """Append a chunk of PCM samples, returning every newly complete frame."""
        chunk = np.asarray(chunk, dtype=np.float64)
        if chunk.size == 0:
            raise AudioConfigError("empty chunk pushed")
        buf = np.concatenate([self._residue, chunk])
        frames = []
        pos = 0
        while pos + FRAME_SIZE <= buf.size:
            frames.append(AudioFrame(buf[pos:pos + FRAME_SIZE].copy(), self._next_index))
            self._next_index += 1
            pos += HOP_SIZE
        self._residue = buf[pos:]
        return frames


class SampleBuffer:
    """Rolling window of recent raw samples, addressable by absolute offset.

    Keeps enough history to cut a capped utterance plus its pre-roll out of
    the live stream (default ~12 s).
    """

    def __init__(self, capacity: int = 12 * SAMPLE_RATE):
        self.capacity = capacity
        self._data = np.empty(0, dtype=np.float64)
        self._base = 0  # absolute offset of _data[0]

    def push(self, chunk) -> None:
        chunk = np.asarray(chunk, dtype=np.float64)
        self._data = np.concatenate([self._data, chunk])
        if self._data.size > self.capacity:
            drop = self._data.size - self.capacity
            self._data = self._data[drop:]
            self._base += drop

    @property
    def end_offset(self) -> int:
        return self._base + self._data.size

    def slice(self, start: int, end: int) -> np.ndarray:
        """Samples for absolute offsets [start, end); raises if evicted."""
        if start < self._base:
            raise ValueError(
                f"samples before offset {self._base} were already discarded"
            )
        if end > self.end_offset:
            raise ValueError("requested samples beyond buffered stream position")
        return self._data[start - self._base:end - self._base].copy()
