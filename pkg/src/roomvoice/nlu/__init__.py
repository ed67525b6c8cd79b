from roomvoice.nlu.entities import (
    Entity,
    EntitySpec,
    EntitySpecError,
    extract_entities,
    load_entity_specs,
)
from roomvoice.nlu.model import (
    UNKNOWN_INTENT,
    UNKNOWN_THRESHOLD,
    CorpusError,
    IntentModel,
    Interpretation,
    TrainingExample,
    interpret,
    text_features,
    train,
)
from roomvoice.nlu.corpus import (
    load_bundled_corpus,
    load_corpus,
    parse_corpus,
    save_corpus,
    split_corpus,
)
from roomvoice.nlu.specs_default import default_entity_specs

__all__ = [
    "Entity", "EntitySpec", "EntitySpecError", "extract_entities",
    "load_entity_specs",
    "UNKNOWN_INTENT", "UNKNOWN_THRESHOLD", "CorpusError", "IntentModel",
    "Interpretation", "TrainingExample", "interpret", "text_features", "train",
    "load_bundled_corpus", "load_corpus", "parse_corpus", "save_corpus",
    "split_corpus",
    "default_entity_specs",
]
