import json
import os
import threading

import pytest

from roomvoice.fleet.store import (
    ConfigBundle,
    FleetError,
    FleetStore,
    ManualClock,
    SnapshotError,
    default_config_body,
    validate_config_body,
)


def make_store(start=1000.0, interval=30.0):
    clock = ManualClock(start)
    return FleetStore(clock=clock, heartbeat_interval_s=interval), clock


class TestRegistration:
    def test_fresh_device_gets_config_v1(self):
        store, _ = make_store()
        record, bundle = store.register("room-1", name="Salle A",
                                        capabilities={"audio"})
        assert record.device_id == "room-1"
        assert bundle.version == 1

    def test_reregistration_is_idempotent(self):
        store, _ = make_store()
        store.register("room-1", name="Salle A")
        store.put_config("room-1", default_config_body(), expected_version=1)
        record, bundle = store.register("room-1", name="Salle A (rénovée)")
        assert bundle.version == 2  # config version preserved
        assert record.name == "Salle A (rénovée)"
        assert len(store.list_devices()) == 1

    def test_empty_id_rejected(self):
        store, _ = make_store()
        with pytest.raises(FleetError) as err:
            store.register("")
        assert err.value.code == "invalid"
        with pytest.raises(FleetError):
            store.register("   ")

    def test_unknown_capability_rejected(self):
        store, _ = make_store()
        with pytest.raises(FleetError):
            store.register("r", capabilities={"telepathy"})


class TestLiveness:
    def test_online_at_60s_offline_at_91s(self):
        store, clock = make_store(start=1000.0, interval=30.0)
        store.register("room-1")
        store.heartbeat("room-1")
        clock.advance(60.0)
        assert store.list_devices()[0]["online"] is True
        clock.advance(31.0)  # now 91 s past the heartbeat
        assert store.list_devices()[0]["online"] is False

    def test_boundary_exactly_90s(self):
        store, clock = make_store(interval=30.0)
        store.register("room-1")
        store.heartbeat("room-1")
        clock.advance(90.0)
        assert store.list_devices()[0]["online"] is True

    def test_heartbeat_returns_config_version(self):
        store, _ = make_store()
        store.register("room-1")
        store.put_config("room-1", default_config_body(), 1)
        assert store.heartbeat("room-1") == {"config_version": 2}

    def test_unknown_device_heartbeat(self):
        store, _ = make_store()
        with pytest.raises(FleetError) as err:
            store.heartbeat("ghost")
        assert err.value.code == "not_found"

    def test_online_is_pure_function_of_clock(self):
        store, clock = make_store(interval=10.0)
        store.register("r")
        import random

        rng = random.Random(4)
        for _ in range(100):
            dt = rng.uniform(0, 60)
            clock.advance(dt)
            record = store.get_device("r")
            age = clock.now() - record["last_heartbeat"]
            assert record["online"] == (age <= 30.0)


class TestConfig:
    def test_put_bumps_version(self):
        store, _ = make_store()
        store.register("r")
        bundle = store.put_config("r", {"hotword": {"threshold": 0.9}}, 1)
        assert bundle.version == 2

    def test_version_conflict_reports_current(self):
        store, _ = make_store()
        store.register("r")
        store.put_config("r", {}, 1)
        with pytest.raises(FleetError) as err:
            store.put_config("r", {}, 1)
        assert err.value.code == "conflict"
        assert err.value.extra["current_version"] == 2

    def test_persist_audio_rejected(self):
        store, _ = make_store()
        store.register("r")
        with pytest.raises(FleetError) as err:
            store.put_config("r", {"privacy": {"persist_audio": True}}, 1)
        assert err.value.code == "privacy_violation"
        assert store.get_config("r").version == 1

    def test_persist_audio_false_stripped(self):
        clean = validate_config_body({"privacy": {"persist_audio": False}})
        assert "persist_audio" not in clean["privacy"]

    def test_invalid_threshold_rejected(self):
        with pytest.raises(FleetError) as err:
            validate_config_body({"hotword": {"threshold": 1.5}})
        assert err.value.code == "invalid"
        assert err.value.extra["field"] == "hotword.threshold"

    def test_get_config_not_modified(self):
        store, _ = make_store()
        store.register("r")
        assert store.get_config("r", have_version=1) is None
        assert store.get_config("r", have_version=0).version == 1

    def test_concurrent_puts_one_success_per_version(self):
        store, _ = make_store()
        store.register("r")
        barrier = threading.Barrier(2)
        outcomes = []

        def pusher(label):
            barrier.wait()
            try:
                bundle = store.put_config("r", {"asr": {"mode": "command"}}, 1)
                outcomes.append(("ok", label, bundle.version))
            except FleetError as exc:
                outcomes.append((exc.code, label,
                                 exc.extra.get("current_version")))

        threads = [threading.Thread(target=pusher, args=(i,))
                   for i in range(2)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        oks = [o for o in outcomes if o[0] == "ok"]
        conflicts = [o for o in outcomes if o[0] == "conflict"]
        assert len(oks) == 1 and len(conflicts) == 1
        assert store.get_config("r").version == 2

    def test_versions_strictly_monotone_under_interleaving(self):
        store, _ = make_store()
        store.register("r")
        versions = [1]

        def worker():
            for _ in range(20):
                current = store.get_config("r").version
                try:
                    bundle = store.put_config("r", {}, current)
                    versions.append(bundle.version)
                except FleetError:
                    pass

        threads = [threading.Thread(target=worker) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(set(versions)) == sorted(versions)  # no duplicates


class TestEventsFeed:
    def test_append_and_poll(self):
        store, _ = make_store()
        store.register("r")
        next_idx = store.append_events("r", [{"t": 1, "event": "X"}])
        assert next_idx == 1
        events, cursor = store.get_events("r", since=0)
        assert events == [{"t": 1, "event": "X"}]
        events, _ = store.get_events("r", since=cursor)
        assert events == []

    def test_capacity_keeps_cursor_semantics(self):
        store, _ = make_store()
        store.register("r")
        for i in range(1100):
            store.append_events("r", [{"i": i}])
        events, cursor = store.get_events("r", since=1090)
        assert [e["i"] for e in events] == list(range(1090, 1100))
        assert cursor == 1100


class TestSnapshot:
    def populate(self, store):
        store.register("room-1", name="A", capabilities={"audio", "vision"})
        store.register("room-2", name="B")
        store.put_config("room-1", {"hotword": {"threshold": 0.7}}, 1)

    def test_round_trip_lossless(self, tmp_path):
        store, clock = make_store()
        self.populate(store)
        path = tmp_path / "state.json"
        store.persist_snapshot(path)
        restored = FleetStore(clock=clock)
        restored.load_snapshot(path)
        assert restored.snapshot_dict() == store.snapshot_dict()
        assert restored.get_config("room-1").version == 2

    def test_random_stores_round_trip(self, tmp_path):
        import random

        rng = random.Random(8)
        for trial in range(10):
            store, clock = make_store(start=rng.uniform(0, 1e6))
            for d in range(rng.randint(1, 6)):
                device = f"dev-{trial}-{d}"
                store.register(device, name=f"salle {d}")
                for _ in range(rng.randint(0, 3)):
                    v = store.get_config(device).version
                    store.put_config(device, default_config_body(), v)
            path = tmp_path / f"s{trial}.json"
            store.persist_snapshot(path)
            restored = FleetStore(clock=clock)
            restored.load_snapshot(path)
            assert restored.snapshot_dict() == store.snapshot_dict()

    def test_crash_before_rename_preserves_previous(self, tmp_path,
                                                    monkeypatch):
        store, _ = make_store()
        self.populate(store)
        path = tmp_path / "state.json"
        store.persist_snapshot(path)
        good = path.read_text()

        store.register("room-3")

        def boom(src, dst):
            raise OSError("simulated crash before rename")

        monkeypatch.setattr(os, "replace", boom)
        with pytest.raises(OSError):
            store.persist_snapshot(path)
        monkeypatch.undo()
        assert path.read_text() == good
        restored = FleetStore()
        restored.load_snapshot(path)
        assert len(restored.list_devices()) == 2

    def test_truncated_snapshot_refuses_start(self, tmp_path):
        store, _ = make_store()
        self.populate(store)
        path = tmp_path / "state.json"
        store.persist_snapshot(path)
        path.write_text(path.read_text()[:40])
        fresh = FleetStore()
        with pytest.raises(SnapshotError, match="position"):
            fresh.load_snapshot(path)

    def test_missing_snapshot(self, tmp_path):
        with pytest.raises(SnapshotError):
            FleetStore().load_snapshot(tmp_path / "absent.json")

    def test_no_stored_field_contains_audio_or_transcripts(self, tmp_path):
        store, _ = make_store()
        self.populate(store)
        data = store.snapshot_dict()

        def walk(node):
            if isinstance(node, dict):
                for key, value in node.items():
                    assert key not in ("audio", "samples", "pcm", "text",
                                       "transcript")
                    walk(value)
            elif isinstance(node, list):
                for item in node:
                    walk(item)
            else:
                assert not isinstance(node, (bytes, bytearray))

        walk(data)

    def test_autosave_on_mutations(self, tmp_path):
        path = tmp_path / "auto.json"
        store = FleetStore(clock=ManualClock(0.0), autosave_path=str(path))
        store.register("r")
        assert json.loads(path.read_text())["devices"][0]["device_id"] == "r"
        store.put_config("r", {}, 1)
        assert json.loads(path.read_text())["configs"]["r"]["version"] == 2
