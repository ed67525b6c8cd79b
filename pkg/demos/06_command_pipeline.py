"""The full command chain, offline and deterministic: wake tone -> VAD
capture -> (mock) transcription -> intent -> skill dispatch -> IDLE.

Also demonstrates the privacy ledger: every captured utterance buffer is
zeroed and receipted once transcription is over.

    python demos/06_command_pipeline.py
"""

from roomvoice.asr.mock import MockAsrBackend
from roomvoice.audio.synth import concat, noise_burst, silence, tone
from roomvoice.runtime.builder import build_engine
from roomvoice.runtime.config import RuntimeConfig
from roomvoice.skills.fusion import GestureEvent
from roomvoice.tracker import Detection, PanoramaGeometry, PanoramaTracker

# A camera view with two confirmed participants. The camera keeps stepping
# while audio plays, so the snapshot is fresh when the skill fires (~3.2 s
# of stream time).
tracker = PanoramaTracker(PanoramaGeometry(640, 320))
for i in range(7):
    tracker.step([Detection(x=100, y=120, w=40, h=120),
                  Detection(x=400, y=120, w=40, h=120)], 0.5 * (i + 1))

backend = MockAsrBackend(default={"text": "compte les participants",
                                  "confidence": 0.93})
engine = build_engine(
    RuntimeConfig(capabilities={"audio", "vision", "gesture"}),
    transcriber=backend,
    tracker=tracker,
)

# Someone raises a hand before the command: fusion strategy 1 pushes a
# speak-request notification with the participant's azimuth.
engine.push_gesture(GestureEvent(track_id=1, gesture="hand_raised",
                                 timestamp=0.4))

signal = concat(silence(0.5), tone(1000, 0.6), silence(0.4),
                noise_burst(1.2, seed=7), silence(1.0))
report = engine.run_samples(signal)

print("event log (redacted per privacy policy):")
for event in report.events:
    print(f"  {event}")

print(f"\nnotifications: {report.notifications}")
for d in report.dispatches:
    print(f"action: [{d.skill}] {d.outcome}: {d.payload}")
print(f"final state: {report.final_state}")
print(f"utterances captured: {report.captured_utterances}, "
      f"buffers wiped and receipted: {report.release_receipts}")
