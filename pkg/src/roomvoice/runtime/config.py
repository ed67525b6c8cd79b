"""Runtime configuration: one JSON document wiring every stage of a device."""

import json
from dataclasses import dataclass, field

from roomvoice.asr.client import MODES, MODE_COMMAND
from roomvoice.hotword.detector import TriggerConfig
from roomvoice.runtime.privacy import PrivacyPolicy


class ConfigError(ValueError):
    """Unusable runtime configuration."""


@dataclass
class RuntimeConfig:
    hotword_weights_path: str | None = None
    trigger: TriggerConfig = field(default_factory=TriggerConfig)
    asr_endpoint: str | None = None
    asr_mode: str = MODE_COMMAND
    asr_timeout_s: float = 5.0
    nlu_model_path: str | None = None
    skills_enabled: dict[str, bool] = field(default_factory=dict)
    capabilities: set[str] = field(default_factory=lambda: {"audio"})
    fleet_endpoint: str | None = None
    fleet_token: str | None = None
    device_id: str = "device-local"
    privacy: PrivacyPolicy = field(default_factory=PrivacyPolicy)


def parse_config(data: dict) -> RuntimeConfig:
    cfg = RuntimeConfig()

    hot = data.get("hotword", {})
    cfg.hotword_weights_path = hot.get("weights_path")
    try:
        cfg.trigger = TriggerConfig(
            threshold=float(hot.get("threshold", 0.85)),
            smooth_window=int(hot.get("smooth_window", 30)),
            refractory_s=float(hot.get("refractory_s", 1.0)),
        ).validate()
    except ValueError as exc:
        raise ConfigError(f"hotword: {exc}") from None

    asr = data.get("asr", {})
    cfg.asr_endpoint = asr.get("endpoint")
    cfg.asr_mode = asr.get("mode", MODE_COMMAND)
    if cfg.asr_mode not in MODES:
        raise ConfigError(f"asr.mode must be one of {MODES}")
    cfg.asr_timeout_s = float(asr.get("timeout_s", 5.0))

    cfg.nlu_model_path = data.get("nlu", {}).get("model_path")
    cfg.skills_enabled = {k: bool(v)
                          for k, v in data.get("skills", {}).items()}
    cfg.capabilities = set(data.get("capabilities", ["audio"]))

    fleet = data.get("fleet", {})
    cfg.fleet_endpoint = fleet.get("endpoint")
    cfg.fleet_token = fleet.get("token")
    cfg.device_id = fleet.get("device_id", data.get("device_id", "device-local"))

    # PrivacyPolicy.from_dict rejects persist_audio=true at this point.
    cfg.privacy = PrivacyPolicy.from_dict(data.get("privacy", {}))
    return cfg


def load_config(path) -> RuntimeConfig:
    try:
        data = json.loads(open(path, encoding="utf-8").read())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at position {exc.pos}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    return parse_config(data)
