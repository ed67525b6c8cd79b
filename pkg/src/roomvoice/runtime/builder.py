"""Wires a CommandEngine from a RuntimeConfig."""

from roomvoice.asr.client import AsrClient
from roomvoice.asr.mock import MockAsrBackend, load_fixture
from roomvoice.hotword.detector import HotwordDetector
from roomvoice.hotword.toy import make_tone_detector_weights
from roomvoice.hotword.weights_io import load_weights
from roomvoice.nlu.corpus import load_bundled_corpus
from roomvoice.nlu.model import IntentModel, train
from roomvoice.nlu.specs_default import default_entity_specs
from roomvoice.runtime.config import ConfigError, RuntimeConfig
from roomvoice.runtime.engine import CommandEngine
from roomvoice.skills.builtin import default_skills
from roomvoice.skills.registry import SkillRegistry

MOCK_SCHEME = "mock:"


def build_transcriber(cfg: RuntimeConfig):
    endpoint = cfg.asr_endpoint
    if endpoint is None or endpoint == MOCK_SCHEME:
        return MockAsrBackend()
    if endpoint.startswith(MOCK_SCHEME):
        return load_fixture(endpoint[len(MOCK_SCHEME):])
    return AsrClient(endpoint, mode=cfg.asr_mode, timeout_s=cfg.asr_timeout_s)


def build_registry(cfg: RuntimeConfig) -> SkillRegistry:
    registry = SkillRegistry()
    for skill in default_skills():
        enabled = cfg.skills_enabled.get(skill.descriptor.name, True)
        skill.descriptor.enabled = bool(enabled)
        registry.register(skill)
    return registry


def build_engine(cfg: RuntimeConfig, transcriber=None, sinks=None,
                 tracker=None) -> CommandEngine:
    if cfg.hotword_weights_path:
        weights = load_weights(cfg.hotword_weights_path)
    else:
        weights = make_tone_detector_weights()
    detector = HotwordDetector(weights, cfg.trigger)

    if cfg.nlu_model_path:
        model = IntentModel.load(cfg.nlu_model_path)
    else:
        model = train(load_bundled_corpus())

    extra_sinks = list(sinks or [])
    if cfg.fleet_endpoint:
        from roomvoice.fleet.client import FleetEventSink

        extra_sinks.append(FleetEventSink(cfg.fleet_endpoint, cfg.device_id,
                                          token=cfg.fleet_token))

    return CommandEngine(
        detector=detector,
        transcriber=transcriber or build_transcriber(cfg),
        nlu_model=model,
        entity_specs=default_entity_specs(),
        registry=build_registry(cfg),
        capabilities=cfg.capabilities,
        policy=cfg.privacy,
        sinks=extra_sinks,
        tracker=tracker,
    )
