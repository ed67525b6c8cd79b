"""Default entity specs matching the bundled command corpus."""

from roomvoice.nlu.entities import EntitySpec

MEETING_ROOMS = ["salle jaune", "salle bleue", "salle rouge", "salle verte"]
VOTE_POLARITIES = ["pour", "contre"]


def default_entity_specs() -> list[EntitySpec]:
    return [
        EntitySpec.gazetteer("room", MEETING_ROOMS),
        EntitySpec.gazetteer("polarity", VOTE_POLARITIES),
        EntitySpec.from_pattern("time"),
        EntitySpec.from_pattern("int"),
    ]
