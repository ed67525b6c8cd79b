from roomvoice.skills.registry import (
    CAP_GESTURE,
    CAP_NONE,
    CAP_VISION,
    FALLBACK_PAYLOAD,
    OUTCOME_FAILED,
    OUTCOME_OK,
    OUTCOME_UNAVAILABLE,
    ActionResult,
    CapabilityUnavailable,
    RegistrationError,
    Skill,
    SkillContext,
    SkillDescriptor,
    SkillRegistry,
)
from roomvoice.skills.builtin import (
    CalendarSkill,
    LightSkill,
    MicrophoneSteerSkill,
    ProjectionSkill,
    default_skills,
)
from roomvoice.skills.fusion import (
    HAND_LOWERED,
    HAND_RAISED,
    SNAPSHOT_MAX_AGE_S,
    VOTE_WINDOW_TIMEOUT_S,
    GestureBuffer,
    GestureEvent,
    ParticipantCountSkill,
    VoteSkill,
    count_raised_hands,
    load_gesture_replay,
    notify_speak_request,
    parse_gesture_replay,
)

__all__ = [
    "CAP_GESTURE", "CAP_NONE", "CAP_VISION", "FALLBACK_PAYLOAD",
    "OUTCOME_FAILED", "OUTCOME_OK", "OUTCOME_UNAVAILABLE",
    "ActionResult", "CapabilityUnavailable", "RegistrationError",
    "Skill", "SkillContext", "SkillDescriptor", "SkillRegistry",
    "CalendarSkill", "LightSkill", "MicrophoneSteerSkill", "ProjectionSkill",
    "default_skills",
    "HAND_LOWERED", "HAND_RAISED", "SNAPSHOT_MAX_AGE_S",
    "VOTE_WINDOW_TIMEOUT_S", "GestureBuffer", "GestureEvent",
    "ParticipantCountSkill", "VoteSkill", "count_raised_hands",
    "load_gesture_replay", "notify_speak_request", "parse_gesture_replay",
]
