"""Audio front end walkthrough: framing, log-mel features, VAD, segmentation.

Synthesizes one second of silence followed by a short tone "utterance" and
shows every intermediate product of the capture chain.

    python demos/01_feature_extraction.py
"""

import numpy as np

from roomvoice.audio import (
    EnergyVad,
    LogMelExtractor,
    SampleBuffer,
    StreamFramer,
    UtteranceSegmenter,
)
from roomvoice.audio.synth import concat, silence, tone

signal = concat(silence(1.0), tone(440, 1.2, amplitude=16384), silence(1.0))
print(f"signal: {len(signal)} samples ({len(signal) / 16000:.2f} s)")

framer = StreamFramer()
extractor = LogMelExtractor()
vad = EnergyVad()
buffer = SampleBuffer()
segmenter = UtteranceSegmenter(sample_buffer=buffer)

speech_frames = 0
spans = []
# Feed the stream in 100 ms chunks, exactly like the live loop would.
for start in range(0, len(signal), 1600):
    chunk = signal[start:start + 1600]
    buffer.push(chunk)
    for frame in framer.push_samples(chunk):
        feature = extractor.compute(frame)
        decision = vad.step(feature)
        speech_frames += decision.is_speech
        for event in segmenter.push(decision):
            if event.kind == "span":
                spans.append(event.span)

print(f"frames: {framer._next_index}, flagged as speech: {speech_frames}")
for span in spans:
    audio = span.audio
    print(f"utterance: frames {span.start_frame}..{span.end_frame} "
          f"({span.duration_s:.2f} s, closed by {span.closed_reason}), "
          f"{len(audio)} samples, peak {np.abs(audio).max():.0f}")

# A frame in the middle of the tone: the 440 Hz band dominates.
mid = StreamFramer().push_samples(tone(440, 0.025, amplitude=16384)[:400])[0]
feature = extractor.compute(mid)
print(f"energy of a tone frame: {feature.energy_db:.1f} dBFS, "
      f"strongest mel band: {int(np.argmax(feature.logmel))}")
