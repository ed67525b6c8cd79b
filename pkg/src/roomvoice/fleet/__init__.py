from roomvoice.fleet.store import (
    DEFAULT_HEARTBEAT_INTERVAL_S,
    ERR_CONFLICT,
    ERR_INVALID,
    ERR_NOT_FOUND,
    ERR_PRIVACY,
    OFFLINE_AFTER_INTERVALS,
    ConfigBundle,
    DeviceRecord,
    FleetError,
    FleetStore,
    ManualClock,
    SnapshotError,
    SystemClock,
    default_config_body,
    validate_config_body,
)
from roomvoice.fleet.service import TOKEN_HEADER, create_app
from roomvoice.fleet.client import FleetClient, FleetEventSink

__all__ = [
    "DEFAULT_HEARTBEAT_INTERVAL_S", "ERR_CONFLICT", "ERR_INVALID",
    "ERR_NOT_FOUND", "ERR_PRIVACY", "OFFLINE_AFTER_INTERVALS",
    "ConfigBundle", "DeviceRecord", "FleetError", "FleetStore",
    "ManualClock", "SnapshotError", "SystemClock",
    "default_config_body", "validate_config_body",
    "TOKEN_HEADER", "create_app",
    "FleetClient", "FleetEventSink",
]
