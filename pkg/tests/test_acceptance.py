"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.
"""

import json
import math
import os
import random
import threading
import time
from contextlib import contextmanager

import numpy as np
import pytest

from roomvoice.asr.mock import MockAsrBackend
from roomvoice.audio.synth import concat, noise_burst, silence, tone
from roomvoice.audio.wavio import write_wav
from roomvoice.hotword.detector import PosteriorSmoother, TriggerConfig
from roomvoice.runtime.builder import build_engine
from roomvoice.runtime.config import RuntimeConfig


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\n[FAIL] {name}")
        raise
    print(f"\n[PASS] {name}")


# --- 1. GRU oracle equivalence ---------------------------------------------

def test_gru_oracle_equivalence():
    from tests.test_gru import oracle_step, random_weights
    from roomvoice.hotword.gru import gru_step

    with criterion("GRU oracle equivalence (100 nets, tol 1e-9, < 5 s)"):
        rng = random.Random(123)
        started = time.monotonic()
        for _ in range(100):
            d = rng.randint(1, 6)
            n = rng.randint(1, 8)
            w = random_weights(rng, d, n, scale=1.0)
            h_fast = np.zeros(n)
            h_slow = [0.0] * n
            for _ in range(rng.randint(1, 20)):
                x = [rng.uniform(-2.0, 2.0) for _ in range(d)]
                h_fast = gru_step(np.array(x), h_fast, w)
                h_slow = oracle_step(x, h_slow, w)
                assert max(abs(a - b) for a, b in zip(h_fast, h_slow)) <= 1e-9
        assert time.monotonic() - started < 5.0


# --- 2. Hotword trigger discipline ------------------------------------------

def trigger_times(posteriors):
    smoother = PosteriorSmoother(TriggerConfig())
    out = []
    for i, p in enumerate(posteriors):
        event = smoother.step(p, i * 0.01)
        if event:
            out.append(event.time_s)
    return out


def test_hotword_trigger_discipline():
    with criterion("Hotword trigger discipline (5 events -> 5 triggers, "
                   "noise -> 0, deterministic)"):
        stream = np.zeros(6000)  # 60 s of 10 ms frames
        event_starts = [500, 1500, 2500, 3500, 4500]
        for start in event_starts:
            stream[start:start + 50] = 1.0
        times = trigger_times(stream)
        assert len(times) == 5
        for got, start in zip(times, event_starts):
            assert abs(got - start * 0.01) < 0.5

        rng = np.random.default_rng(2718)
        noise = rng.uniform(0.0, 0.5, 6000)
        assert trigger_times(noise) == []

        assert trigger_times(stream) == times  # bitwise re-run


# --- 3. WER oracle -----------------------------------------------------------

def test_wer_oracle():
    from tests.test_wer import brute_force_distance
    from roomvoice.asr.wer import wer, word_align

    with criterion("WER oracle (200 random pairs == brute force; "
                   "0, 1/3, 2/4 reproduce)"):
        rng = random.Random(424242)
        for _ in range(200):
            ref = [rng.choice("abcd") for _ in range(rng.randint(1, 6))]
            hyp = [rng.choice("abcd") for _ in range(rng.randint(0, 6))]
            assert word_align(ref, hyp).errors == brute_force_distance(ref, hyp)
        assert wer("allume la lumière", "allume la lumière") == 0.0
        assert wer("allume la lumière", "allume lumière") == pytest.approx(1 / 3)
        assert wer("projette le document budget",
                   "projette un document du budget") == pytest.approx(2 / 4)


# --- 4. NLU fixture ----------------------------------------------------------

def test_nlu_fixture():
    from roomvoice.nlu.corpus import load_bundled_corpus, split_corpus
    from roomvoice.nlu.model import interpret, train

    with criterion("NLU fixture (100% training, >= 90% held-out, "
                   "light command always routed)"):
        corpus = load_bundled_corpus()
        model = train(corpus)
        assert all(interpret(ex.text, model).intent == ex.intent
                   for ex in corpus)

        train_set, holdout = split_corpus(corpus)
        assert len(holdout) == pytest.approx(len(corpus) * 0.2)
        holdout_model = train(train_set)
        hits = sum(1 for ex in holdout
                   if interpret(ex.text, holdout_model).intent == ex.intent)
        assert hits / len(holdout) >= 0.9

        for candidate in (model, holdout_model,
                          train(list(reversed(corpus)))):
            assert interpret("allume la lumière", candidate).intent == "light_on"


# --- 5. State machine totality ----------------------------------------------

def test_state_machine_totality():
    from roomvoice.runtime.machine import (EVENT_TAGS, IDLE, STATES,
                                           PipelineEvent, step)

    with criterion("State machine totality (6 states x all events defined, "
                   "Timeout -> IDLE in one step)"):
        for state in STATES:
            for tag in EVENT_TAGS:
                if tag == "Timeout":
                    for target in STATES:
                        result = step(state, PipelineEvent.timeout(1.0, target))
                        assert result.state in STATES
                elif tag == "Error":
                    result = step(state, PipelineEvent.error(1.0, "s", "d"))
                    assert result.state == IDLE
                else:
                    result = step(state, PipelineEvent(tag, 1.0, None))
                    assert result.state in STATES
        for state in STATES:
            assert step(state, PipelineEvent.timeout(1.0, state)).state == IDLE


# --- 6. Privacy conservation --------------------------------------------------

def test_privacy_conservation(tmp_path):
    from roomvoice.fleet.store import FleetError, FleetStore, ManualClock
    from roomvoice.runtime.privacy import PrivacyViolationError
    from roomvoice.runtime.config import parse_config

    with criterion("Privacy conservation (3 WAVs: zero audio writes, "
                   "receipts == captures; persist_audio rejected twice)"):
        fixtures = {
            "command.wav": concat(silence(0.5), tone(1000, 0.6), silence(0.4),
                                  noise_burst(1.2, seed=7), silence(1.0)),
            "timeout.wav": concat(silence(0.5), tone(1000, 0.6), silence(6.0)),
            "two_commands.wav": concat(
                silence(0.5), tone(1000, 0.6), silence(0.4),
                noise_burst(1.0, seed=5), silence(1.0),
                tone(1000, 0.6), silence(0.4),
                noise_burst(1.0, seed=6), silence(1.0)),
        }

        class AuditSink:
            def __init__(self):
                self.records = []

            def emit(self, record):
                self.records.append(record)

        for name, signal in fixtures.items():
            path = tmp_path / name
            write_wav(path, signal)
            sink = AuditSink()
            engine = build_engine(
                RuntimeConfig(),
                transcriber=MockAsrBackend(
                    default={"text": "allume la lumière", "confidence": 0.9}),
                sinks=[sink])
            report = engine.run_wav(path)
            assert report.captured_utterances == report.release_receipts, name
            for record in sink.records:
                for value in record.values():
                    assert isinstance(value, (str, int, float, bool))
                    assert not isinstance(value, (bytes, bytearray))

        with pytest.raises(PrivacyViolationError):
            parse_config({"privacy": {"persist_audio": True}})
        store = FleetStore(clock=ManualClock(0.0))
        store.register("r")
        with pytest.raises(FleetError) as err:
            store.put_config("r", {"privacy": {"persist_audio": True}}, 1)
        assert err.value.code == "privacy_violation"


# --- 7. Wrap-IoU oracle --------------------------------------------------------

def test_wrap_iou_oracle():
    from tests.test_tracker_geometry import brute_force_iou
    from roomvoice.tracker.geometry import PanoramaGeometry, iou_wrap

    with criterion("Wrap-IoU oracle (500 random pairs tol 1e-9; "
                   "1/7 and 1/3 reproduce)"):
        rng = random.Random(31337)
        seam_cases = 0
        for _ in range(500):
            width = rng.randint(8, 64)
            height = rng.randint(8, 64)
            g = PanoramaGeometry(width, height)

            def box():
                w = rng.randint(1, width)
                h = rng.randint(1, height)
                x = rng.randint(0, width - 1)
                y = rng.randint(0, height - h)
                return (x, y, w, h)

            a, b = box(), box()
            if a[0] + a[2] > width or b[0] + b[2] > width:
                seam_cases += 1
            assert iou_wrap(a, b, g) == pytest.approx(
                brute_force_iou(a, b, width, height), abs=1e-9)
        assert seam_cases > 50  # the draw really exercises the seam

        g100 = PanoramaGeometry(100, 100)
        assert iou_wrap((0, 0, 10, 10), (5, 5, 10, 10), g100) == \
            pytest.approx(1 / 7, abs=1e-12)
        assert iou_wrap((95, 0, 10, 10), (0, 0, 10, 10), g100) == \
            pytest.approx(1 / 3, abs=1e-12)


# --- 8. Temporal gate -----------------------------------------------------------

def test_temporal_gate():
    from roomvoice.tracker.core import Detection, PanoramaTracker
    from roomvoice.tracker.geometry import PanoramaGeometry

    with criterion("Temporal gate (5.9 s keeps id, 6.1 s reissues; "
                   "zero switches over 120 s x 3 people)"):
        def person(x):
            return Detection(x=x, y=60, w=20, h=60)

        g = PanoramaGeometry(360, 180)

        tracker = PanoramaTracker(g)
        for i in range(3):
            tracker.step([person(100)], 1.0 + 0.5 * i)
        kept_id = tracker.tracks[0].track_id
        tracker.step([], 2.5)
        tracker.step([person(101)], 2.0 + 5.9)
        assert tracker.tracks[0].track_id == kept_id
        assert tracker.tracks[0].state == "confirmed"

        tracker = PanoramaTracker(g)
        for i in range(3):
            tracker.step([person(100)], 1.0 + 0.5 * i)
        old_id = tracker.tracks[0].track_id
        tracker.step([], 2.5)
        tracker.step([person(100)], 2.0 + 6.1)
        live = [t for t in tracker.tracks if t.state != "deleted"]
        assert len(live) == 1 and live[0].track_id != old_id

        # 3 non-overlapping people, 0.5 s cadence, sporadic dropouts, 120 s
        rng = np.random.default_rng(42)
        anchors = [60.0, 180.0, 300.0]
        tracker = PanoramaTracker(g)
        owner = {}
        switches = 0
        for step_idx in range(240):
            t = 0.5 * (step_idx + 1)
            dets = [person(anchors[p] + float(rng.uniform(-1.5, 1.5)))
                    for p in range(3) if (step_idx + p * 7) % 13 != 0]
            tracker.step(dets, t)
            for track in tracker.tracks:
                if track.state != "confirmed":
                    continue
                center = (track.box[0] + track.box[2] / 2) % 360
                p = min(range(3), key=lambda i: abs(center - anchors[i] - 10))
                if owner.setdefault(track.track_id, p) != p:
                    switches += 1
        assert switches == 0
        assert len(owner) == 3


# --- 9. Fleet protocol -----------------------------------------------------------

def test_fleet_protocol(tmp_path, monkeypatch):
    from roomvoice.fleet.store import FleetError, FleetStore, ManualClock

    with criterion("Fleet protocol (online +60 s / offline +91 s, one "
                   "config winner, snapshot survives fault injection)"):
        clock = ManualClock(1000.0)
        store = FleetStore(clock=clock, heartbeat_interval_s=30.0)
        store.register("room-1", name="Salle A", capabilities={"audio"})
        store.heartbeat("room-1")
        clock.advance(60.0)
        assert store.list_devices()[0]["online"] is True
        clock.advance(31.0)
        assert store.list_devices()[0]["online"] is False

        barrier = threading.Barrier(2)
        outcomes = []

        def pusher():
            barrier.wait()
            try:
                store.put_config("room-1", {"asr": {"mode": "command"}}, 1)
                outcomes.append("ok")
            except FleetError as exc:
                outcomes.append(exc.code)

        threads = [threading.Thread(target=pusher) for _ in range(2)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        assert sorted(outcomes) == ["conflict", "ok"]
        assert store.get_config("room-1").version == 2

        path = tmp_path / "state.json"
        store.persist_snapshot(path)
        good = path.read_text()
        store.register("room-2")

        def boom(src, dst):
            raise OSError("simulated crash before rename")

        monkeypatch.setattr(os, "replace", boom)
        with pytest.raises(OSError):
            store.persist_snapshot(path)
        monkeypatch.undo()
        assert path.read_text() == good
        recovered = FleetStore()
        recovered.load_snapshot(path)
        assert [d["device_id"] for d in recovered.list_devices()] == ["room-1"]
        assert recovered.get_config("room-1").version == 2


# --- 10. End-to-end command fixture ----------------------------------------------

def test_end_to_end_command_fixture(tmp_path):
    with criterion("End-to-end command fixture (one dispatch, back to IDLE, "
                   "< 2x audio duration)"):
        signal = concat(silence(0.5), tone(1000, 0.6), silence(0.4),
                        noise_burst(1.2, seed=7), silence(1.0))
        path = tmp_path / "command.wav"
        write_wav(path, signal)
        engine = build_engine(
            RuntimeConfig(),
            transcriber=MockAsrBackend(
                default={"text": "allume la lumière", "confidence": 0.95}))
        started = time.monotonic()
        report = engine.run_wav(path)
        wall = time.monotonic() - started

        assert len(report.dispatches) == 1
        dispatch = report.dispatches[0]
        assert (dispatch.skill, dispatch.outcome) == ("lights", "ok")
        assert report.final_state == "IDLE"
        assert wall < 2.0 * report.audio_duration_s
