"""Wake-word detection on a synthetic stream with the bundled toy weights.

The toy network wakes on a 1 kHz tone. The demo plays silence, two wake
tones in quick succession (the refractory window suppresses the second),
and background noise that must stay quiet.

    python demos/02_hotword.py
"""

from roomvoice.audio import LogMelExtractor, StreamFramer
from roomvoice.audio.synth import concat, noise_burst, silence, tone
from roomvoice.hotword import HotwordDetector, TriggerConfig, make_tone_detector_weights

signal = concat(
    silence(1.0),
    tone(1000, 0.6),        # wake tone -> one trigger
    silence(0.05),
    tone(1000, 0.4),        # inside the refractory second -> suppressed
    silence(1.0),
    noise_burst(1.5, seed=4),  # broadband noise -> no trigger
    silence(0.5),
)

detector = HotwordDetector(make_tone_detector_weights(),
                           TriggerConfig(threshold=0.85, smooth_window=30,
                                         refractory_s=1.0))
extractor = LogMelExtractor()

triggers = []
for frame in StreamFramer().push_samples(signal):
    posterior, trigger = detector.step(extractor.compute(frame))
    if trigger:
        triggers.append(trigger)
        print(f"trigger at t={trigger.time_s:.2f}s "
              f"(smoothed posterior {trigger.smoothed:.3f})")

print(f"total triggers: {len(triggers)} (expected 1: the second tone falls "
      "in the refractory window)")
