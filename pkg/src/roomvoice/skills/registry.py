"""Skill registry and dispatch: each intent routes to exactly one enabled skill.

Dispatch is total: unknown intents fall back, missing capabilities yield
"unavailable", and a crashing skill yields "failed" with the diagnostic --
never an exception out of the dispatcher.
"""

import logging
import time
from dataclasses import dataclass, field

from roomvoice.nlu.model import UNKNOWN_INTENT, Interpretation

logger = logging.getLogger(__name__)

CAP_NONE = "none"
CAP_VISION = "vision"
CAP_GESTURE = "gesture"

OUTCOME_OK = "ok"
OUTCOME_FAILED = "failed"
OUTCOME_UNAVAILABLE = "unavailable"

FALLBACK_PAYLOAD = "commande non comprise"


class RegistrationError(ValueError):
    """Duplicate skill name or conflicting intent claim."""


@dataclass
class SkillDescriptor:
    name: str
    intents: tuple[str, ...]
    required_capability: str = CAP_NONE
    enabled: bool = True


@dataclass
class ActionResult:
    skill: str
    outcome: str
    payload: str
    duration_s: float = 0.0


@dataclass
class SkillContext:
    """What a skill may look at while executing."""

    now: float = 0.0
    snapshot: object = None        # TrackerSnapshot when vision is wired
    gestures: object = None        # GestureBuffer when gesture is wired
    device_commands: list = field(default_factory=list)


class Skill:
    """Base class: subclasses set ``descriptor`` and implement ``execute``."""

    descriptor: SkillDescriptor

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        raise NotImplementedError


class SkillRegistry:
    def __init__(self):
        self._skills: dict[str, Skill] = {}

    def register(self, skill: Skill) -> None:
        name = skill.descriptor.name
        if name in self._skills:
            raise RegistrationError(f"skill {name!r} already registered")
        if skill.descriptor.enabled:
            for intent in skill.descriptor.intents:
                owner = self._route(intent)
                if owner is not None:
                    raise RegistrationError(
                        f"intent {intent!r} claimed by both "
                        f"{owner.descriptor.name!r} and {name!r}"
                    )
        self._skills[name] = skill

    def unregister(self, name: str) -> None:
        self._skills.pop(name, None)

    def set_enabled(self, name: str, enabled: bool) -> None:
        if name not in self._skills:
            raise RegistrationError(f"no skill named {name!r}")
        if enabled:
            for intent in self._skills[name].descriptor.intents:
                owner = self._route(intent)
                if owner is not None and owner.descriptor.name != name:
                    raise RegistrationError(
                        f"cannot enable {name!r}: intent {intent!r} now "
                        f"owned by {owner.descriptor.name!r}"
                    )
        self._skills[name].descriptor.enabled = enabled

    def _route(self, intent: str) -> Skill | None:
        for skill in self._skills.values():
            if skill.descriptor.enabled and intent in skill.descriptor.intents:
                return skill
        return None

    def skills(self) -> list[Skill]:
        return list(self._skills.values())

    def dispatch(self, interpretation: Interpretation, capabilities: set[str],
                 context: SkillContext | None = None) -> ActionResult:
        context = context or SkillContext()
        started = time.monotonic()
        intent = interpretation.intent

        if intent == UNKNOWN_INTENT:
            return ActionResult("fallback", OUTCOME_FAILED, FALLBACK_PAYLOAD,
                                time.monotonic() - started)
        skill = self._route(intent)
        if skill is None:
            return ActionResult("fallback", OUTCOME_FAILED, FALLBACK_PAYLOAD,
                                time.monotonic() - started)

        required = skill.descriptor.required_capability
        if required != CAP_NONE and required not in capabilities:
            return ActionResult(
                skill.descriptor.name, OUTCOME_UNAVAILABLE,
                f"capacité {required} absente",
                time.monotonic() - started,
            )
        try:
            payload = skill.execute(interpretation, context)
        except CapabilityUnavailable as exc:
            return ActionResult(skill.descriptor.name, OUTCOME_UNAVAILABLE,
                                str(exc), time.monotonic() - started)
        except Exception as exc:  # skill bugs must not kill the session
            logger.exception("skill %s failed", skill.descriptor.name)
            return ActionResult(skill.descriptor.name, OUTCOME_FAILED,
                                f"{type(exc).__name__}: {exc}",
                                time.monotonic() - started)
        return ActionResult(skill.descriptor.name, OUTCOME_OK, payload,
                            time.monotonic() - started)


class CapabilityUnavailable(RuntimeError):
    """Raised inside a skill when its capability is effectively absent
    (stale vision snapshot, no open vote window, ...)."""
