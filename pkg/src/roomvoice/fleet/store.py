"""Fleet state: device records, versioned config bundles, telemetry feeds.

All mutations are serialized through one lock (single-writer discipline);
reads get consistent copies. The clock is injectable so liveness rules are
testable without waiting.
"""

import copy
import json
import os
import threading
import time
from dataclasses import dataclass, field

from roomvoice.runtime.privacy import PrivacyPolicy, PrivacyViolationError

DEFAULT_HEARTBEAT_INTERVAL_S = 30.0
OFFLINE_AFTER_INTERVALS = 3
EVENT_FEED_CAPACITY = 1000

ERR_INVALID = "invalid"
ERR_NOT_FOUND = "not_found"
ERR_CONFLICT = "conflict"
ERR_PRIVACY = "privacy_violation"

KNOWN_CAPABILITIES = {"audio", "vision", "gesture"}


class FleetError(Exception):
    def __init__(self, code: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


class SnapshotError(RuntimeError):
    """Snapshot file unusable; the service must refuse to start on it."""


class SystemClock:
    def now(self) -> float:
        return time.time()


class ManualClock:
    def __init__(self, start: float = 0.0):
        self._t = start

    def now(self) -> float:
        return self._t

    def advance(self, dt: float) -> None:
        self._t += dt

    def set(self, t: float) -> None:
        self._t = t


@dataclass
class DeviceRecord:
    device_id: str
    name: str = ""
    capabilities: set[str] = field(default_factory=set)
    firmware: str = ""
    registered_at: float = 0.0
    last_heartbeat: float = 0.0

    def to_dict(self) -> dict:
        return {
            "device_id": self.device_id,
            "name": self.name,
            "capabilities": sorted(self.capabilities),
            "firmware": self.firmware,
            "registered_at": self.registered_at,
            "last_heartbeat": self.last_heartbeat,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DeviceRecord":
        return cls(
            device_id=data["device_id"],
            name=data.get("name", ""),
            capabilities=set(data.get("capabilities", [])),
            firmware=data.get("firmware", ""),
            registered_at=float(data.get("registered_at", 0.0)),
            last_heartbeat=float(data.get("last_heartbeat", 0.0)),
        )


def default_config_body() -> dict:
    return {
        "skills": {
            "lights": True,
            "projection": True,
            "calendar": True,
            "mic_matrix": True,
            "participants": True,
            "votes": True,
        },
        "hotword": {"threshold": 0.85, "smooth_window": 30,
                    "refractory_s": 1.0},
        "asr": {"endpoint": "", "mode": "command"},
        "privacy": {"persist_transcripts": False},
    }


def validate_config_body(body: dict) -> dict:
    """Normalize and validate an incoming bundle body.

    Enforces the privacy constraint (persist_audio can never be stored) and
    basic field sanity; returns a cleaned copy.
    """
    if not isinstance(body, dict):
        raise FleetError(ERR_INVALID, "config body must be an object")
    clean = copy.deepcopy(body)

    privacy = clean.get("privacy", {})
    if not isinstance(privacy, dict):
        raise FleetError(ERR_INVALID, "privacy section must be an object")
    try:
        PrivacyPolicy.from_dict(privacy)
    except PrivacyViolationError as exc:
        raise FleetError(ERR_PRIVACY, str(exc)) from None
    privacy.pop("persist_audio", None)  # absent by construction
    clean["privacy"] = privacy

    hotword = clean.get("hotword", {})
    if hotword:
        threshold = hotword.get("threshold", 0.85)
        if not (isinstance(threshold, (int, float)) and 0.0 < threshold < 1.0):
            raise FleetError(ERR_INVALID,
                             f"hotword.threshold must be in (0, 1)",
                             field="hotword.threshold")
        window = hotword.get("smooth_window", 30)
        if not (isinstance(window, int) and window >= 1):
            raise FleetError(ERR_INVALID, "hotword.smooth_window must be >= 1",
                             field="hotword.smooth_window")
        refractory = hotword.get("refractory_s", 1.0)
        if not (isinstance(refractory, (int, float)) and refractory >= 0):
            raise FleetError(ERR_INVALID, "hotword.refractory_s must be >= 0",
                             field="hotword.refractory_s")

    asr = clean.get("asr", {})
    if asr and asr.get("mode", "command") not in ("command",
                                                  "large_vocabulary"):
        raise FleetError(ERR_INVALID,
                         "asr.mode must be command or large_vocabulary",
                         field="asr.mode")
    return clean


@dataclass(frozen=True)
class ConfigBundle:
    version: int
    body: dict

    def to_dict(self) -> dict:
        return {"version": self.version, **copy.deepcopy(self.body)}


class FleetStore:
    def __init__(self, clock=None,
                 heartbeat_interval_s: float = DEFAULT_HEARTBEAT_INTERVAL_S,
                 autosave_path=None):
        self.clock = clock or SystemClock()
        self.heartbeat_interval_s = heartbeat_interval_s
        self.autosave_path = autosave_path
        self._lock = threading.Lock()
        self._devices: dict[str, DeviceRecord] = {}
        self._configs: dict[str, ConfigBundle] = {}
        self._events: dict[str, list[dict]] = {}
        self._event_base: dict[str, int] = {}

    def _autosave(self) -> None:
        if self.autosave_path:
            self.persist_snapshot(self.autosave_path)

    # ---- devices ---------------------------------------------------------

    def register(self, device_id: str, name: str = "", capabilities=(),
                 firmware: str = "") -> tuple[DeviceRecord, ConfigBundle]:
        if not device_id or not str(device_id).strip():
            raise FleetError(ERR_INVALID, "device_id must be non-empty")
        caps = set(capabilities)
        unknown = caps - KNOWN_CAPABILITIES
        if unknown:
            raise FleetError(ERR_INVALID,
                             f"unknown capabilities: {sorted(unknown)}")
        now = self.clock.now()
        with self._lock:
            record = self._devices.get(device_id)
            if record is None:
                record = DeviceRecord(device_id=device_id, name=name,
                                      capabilities=caps, firmware=firmware,
                                      registered_at=now, last_heartbeat=now)
                self._devices[device_id] = record
                self._configs[device_id] = ConfigBundle(
                    version=1, body=default_config_body())
                self._events.setdefault(device_id, [])
                self._event_base.setdefault(device_id, 0)
            else:
                # Idempotent re-registration refreshes identity fields only.
                record.name = name or record.name
                if caps:
                    record.capabilities = caps
                record.firmware = firmware or record.firmware
                record.last_heartbeat = now
            result = copy.deepcopy(record), self._configs[device_id]
        self._autosave()
        return result

    def _require(self, device_id: str) -> DeviceRecord:
        record = self._devices.get(device_id)
        if record is None:
            raise FleetError(ERR_NOT_FOUND, f"unknown device {device_id!r}")
        return record

    def heartbeat(self, device_id: str, report: dict | None = None) -> dict:
        with self._lock:
            record = self._require(device_id)
            record.last_heartbeat = self.clock.now()
            if report and isinstance(report.get("firmware"), str):
                record.firmware = report["firmware"]
            result = {"config_version": self._configs[device_id].version}
        self._autosave()
        return result

    def is_online(self, record: DeviceRecord) -> bool:
        age = self.clock.now() - record.last_heartbeat
        return age <= OFFLINE_AFTER_INTERVALS * self.heartbeat_interval_s

    def list_devices(self) -> list[dict]:
        with self._lock:
            out = []
            for device_id in sorted(self._devices):
                record = self._devices[device_id]
                out.append({
                    **record.to_dict(),
                    "online": self.is_online(record),
                    "config_version": self._configs[device_id].version,
                })
            return out

    def get_device(self, device_id: str) -> dict:
        with self._lock:
            record = self._require(device_id)
            return {
                **record.to_dict(),
                "online": self.is_online(record),
                "config_version": self._configs[device_id].version,
            }

    # ---- config ----------------------------------------------------------

    def put_config(self, device_id: str, body: dict,
                   expected_version: int) -> ConfigBundle:
        clean = validate_config_body(body)
        with self._lock:
            self._require(device_id)
            current = self._configs[device_id]
            if current.version != expected_version:
                raise FleetError(ERR_CONFLICT,
                                 f"config is at version {current.version}, "
                                 f"expected {expected_version}",
                                 current_version=current.version)
            bundle = ConfigBundle(version=current.version + 1, body=clean)
            self._configs[device_id] = bundle
        self._autosave()
        return bundle

    def get_config(self, device_id: str,
                   have_version: int = 0) -> ConfigBundle | None:
        """Full bundle, or None when the caller is already current."""
        with self._lock:
            self._require(device_id)
            bundle = self._configs[device_id]
            if bundle.version <= have_version:
                return None
            return bundle

    # ---- telemetry feed ----------------------------------------------------

    def append_events(self, device_id: str, records: list[dict]) -> int:
        for rec in records:
            if not isinstance(rec, dict):
                raise FleetError(ERR_INVALID, "event records must be objects")
        with self._lock:
            self._require(device_id)
            feed = self._events.setdefault(device_id, [])
            feed.extend(copy.deepcopy(records))
            overflow = len(feed) - EVENT_FEED_CAPACITY
            if overflow > 0:
                del feed[:overflow]
                self._event_base[device_id] = (
                    self._event_base.get(device_id, 0) + overflow)
            return self._event_base.get(device_id, 0) + len(feed)

    def get_events(self, device_id: str, since: int = 0) -> tuple[list[dict], int]:
        with self._lock:
            self._require(device_id)
            feed = self._events.get(device_id, [])
            base = self._event_base.get(device_id, 0)
            start = max(since - base, 0)
            return copy.deepcopy(feed[start:]), base + len(feed)

    # ---- persistence -------------------------------------------------------

    def snapshot_dict(self) -> dict:
        with self._lock:
            return {
                "heartbeat_interval_s": self.heartbeat_interval_s,
                "devices": [r.to_dict() for _, r in sorted(self._devices.items())],
                "configs": {
                    device_id: {"version": b.version, "body": b.body}
                    for device_id, b in sorted(self._configs.items())
                },
            }

    def persist_snapshot(self, path) -> None:
        """Write-temp-then-rename so a crash can never corrupt the old file."""
        data = json.dumps(self.snapshot_dict(), ensure_ascii=False, indent=1,
                          sort_keys=True)
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(data + "\n")
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)

    def load_snapshot(self, path) -> None:
        try:
            text = open(path, encoding="utf-8").read()
        except FileNotFoundError:
            raise SnapshotError(f"snapshot file not found: {path}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SnapshotError(
                f"{path}: corrupt snapshot, parse error at position {exc.pos} "
                f"(line {exc.lineno})"
            ) from None
        if not isinstance(data, dict) or "devices" not in data:
            raise SnapshotError(f"{path}: corrupt snapshot, missing devices")
        with self._lock:
            self._devices = {}
            self._configs = {}
            for rec in data["devices"]:
                record = DeviceRecord.from_dict(rec)
                self._devices[record.device_id] = record
            for device_id, cfg in data.get("configs", {}).items():
                self._configs[device_id] = ConfigBundle(
                    version=int(cfg["version"]), body=cfg["body"])
            for device_id in self._devices:
                if device_id not in self._configs:
                    raise SnapshotError(
                        f"{path}: device {device_id!r} has no config")
                self._events.setdefault(device_id, [])
                self._event_base.setdefault(device_id, 0)
