"""Device-control skill stubs.

Real actuation is site-specific; these emit structured device commands into
the context and answer with a short confirmation.
"""

from roomvoice.nlu.model import Interpretation
from roomvoice.skills.registry import Skill, SkillContext, SkillDescriptor


def _entity(interpretation: Interpretation, etype: str) -> str | None:
    for e in interpretation.entities:
        if e.type == etype:
            return e.value
    return None


class LightSkill(Skill):
    def __init__(self):
        self.descriptor = SkillDescriptor(name="lights",
                                          intents=("light_on", "light_off"))

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        on = interpretation.intent == "light_on"
        room = _entity(interpretation, "room")
        context.device_commands.append(
            {"device": "light", "action": "on" if on else "off", "room": room}
        )
        base = "lumière allumée" if on else "lumière éteinte"
        return f"{base} ({room})" if room else base


class ProjectionSkill(Skill):
    def __init__(self):
        self.descriptor = SkillDescriptor(name="projection",
                                          intents=("project_document",
                                                   "stop_projection"))

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        start = interpretation.intent == "project_document"
        context.device_commands.append(
            {"device": "projector", "action": "start" if start else "stop"}
        )
        return "document projeté" if start else "projection arrêtée"


class CalendarSkill(Skill):
    def __init__(self):
        self.descriptor = SkillDescriptor(name="calendar",
                                          intents=("calendar_query",
                                                   "schedule_meeting"))

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        if interpretation.intent == "calendar_query":
            return "agenda consulté"
        when = _entity(interpretation, "time")
        room = _entity(interpretation, "room")
        details = " ".join(filter(None, [when and f"à {when}",
                                         room and f"en {room}"]))
        return f"réunion planifiée {details}".strip()


class MicrophoneSteerSkill(Skill):
    def __init__(self):
        self.descriptor = SkillDescriptor(name="mic_matrix",
                                          intents=("steer_microphones",))

    def execute(self, interpretation: Interpretation,
                context: SkillContext) -> str:
        context.device_commands.append(
            {"device": "mic_matrix", "action": "steer"}
        )
        return "micros orientés"


def default_skills() -> list[Skill]:
    from roomvoice.skills.fusion import ParticipantCountSkill, VoteSkill

    return [LightSkill(), ProjectionSkill(), CalendarSkill(),
            MicrophoneSteerSkill(), ParticipantCountSkill(), VoteSkill()]
