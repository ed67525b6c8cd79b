"""Fleet administration end to end, with a controllable clock: register,
heartbeat liveness, optimistic config push, conflict, snapshot round-trip.

    python demos/07_fleet.py
"""

import tempfile
from pathlib import Path

from roomvoice.fleet import FleetError, FleetStore, ManualClock

clock = ManualClock(0.0)
store = FleetStore(clock=clock, heartbeat_interval_s=30.0)

for device, name in [("salle-a", "Salle A"), ("salle-b", "Salle B")]:
    record, bundle = store.register(device, name=name,
                                    capabilities={"audio", "vision"})
    print(f"registered {record.device_id} ({name}), config v{bundle.version}")

print("\nheartbeats, then 91 s of silence from salle-b:")
store.heartbeat("salle-a")
store.heartbeat("salle-b")
clock.advance(60.0)
store.heartbeat("salle-a")
clock.advance(31.0)
for device in store.list_devices():
    print(f"  {device['device_id']}: "
          f"{'online' if device['online'] else 'offline'}")

print("\ntwo operators race to push config v1 -> v2:")
try:
    bundle = store.put_config("salle-a", {"hotword": {"threshold": 0.9}}, 1)
    print(f"  operator 1: stored v{bundle.version}")
except FleetError as exc:
    print(f"  operator 1: {exc.code}")
try:
    store.put_config("salle-a", {"hotword": {"threshold": 0.7}}, 1)
except FleetError as exc:
    print(f"  operator 2: {exc.code} (config is at "
          f"v{exc.extra['current_version']}, must reload and merge)")

print("\nattempting to store voice recordings is rejected outright:")
try:
    store.put_config("salle-a", {"privacy": {"persist_audio": True}}, 2)
except FleetError as exc:
    print(f"  {exc.code}: {exc}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "fleet-state.json"
    store.persist_snapshot(path)
    restored = FleetStore(clock=clock)
    restored.load_snapshot(path)
    print(f"\nsnapshot round-trip: {len(restored.list_devices())} devices, "
          f"salle-a config v{restored.get_config('salle-a').version}")

print("\n(run the HTTP service with: "
      "roomvoice fleet serve --state-dir ./state --listen 127.0.0.1:8070)")
