"""Intent classification: multinomial naive Bayes over unigrams and bigrams.

Add-one smoothing, log-space scoring, and a 0.5 posterior threshold below
which the interpretation falls back to ``unknown``. Models are immutable
once trained and safe to share across threads.
"""

import json
from collections import Counter
from dataclasses import dataclass, field

import math

from roomvoice.nlu.entities import Entity, EntitySpec, extract_entities
from roomvoice.textnorm import tokenize

UNKNOWN_INTENT = "unknown"
UNKNOWN_THRESHOLD = 0.5
SMOOTHING_ALPHA = 1.0


class CorpusError(ValueError):
    """Training corpus unusable (too few intents, bad annotations, ...)."""


@dataclass
class TrainingExample:
    text: str
    intent: str
    entities: list[tuple[int, int, str, str]] = field(default_factory=list)


@dataclass
class Interpretation:
    intent: str
    confidence: float
    entities: list[Entity] = field(default_factory=list)


def text_features(tokens: list[str]) -> list[str]:
    """Unigram plus bigram features of a token sequence."""
    feats = list(tokens)
    feats.extend(f"{a} {b}" for a, b in zip(tokens, tokens[1:]))
    return feats


class IntentModel:
    def __init__(self, counts: dict[str, Counter], example_counts: dict[str, int],
                 alpha: float = SMOOTHING_ALPHA):
        self.counts = counts
        self.example_counts = example_counts
        self.alpha = alpha
        self.vocabulary = set()
        for c in counts.values():
            self.vocabulary.update(c)
        self.labels = sorted(counts)
        self._totals = {label: sum(c.values()) for label, c in counts.items()}
        total_examples = sum(example_counts.values())
        self._log_priors = {
            label: math.log((example_counts[label] + alpha)
                            / (total_examples + alpha * len(self.labels)))
            for label in self.labels
        }

    def posteriors(self, text: str) -> dict[str, float]:
        """Normalized intent posteriors for a sentence (sum to 1)."""
        feats = [f for f in text_features(tokenize(text)) if f in self.vocabulary]
        v = len(self.vocabulary)
        scores = {}
        for label in self.labels:
            counts = self.counts[label]
            denom = self._totals[label] + self.alpha * v
            s = self._log_priors[label]
            for f in feats:
                s += math.log((counts[f] + self.alpha) / denom)
            scores[label] = s
        peak = max(scores.values())
        expd = {label: math.exp(s - peak) for label, s in scores.items()}
        norm = sum(expd.values())
        return {label: e / norm for label, e in expd.items()}

    def to_json(self) -> str:
        return json.dumps(
            {
                "alpha": self.alpha,
                "example_counts": self.example_counts,
                "counts": {label: dict(c) for label, c in self.counts.items()},
            },
            ensure_ascii=False,
            indent=1,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "IntentModel":
        data = json.loads(text)
        counts = {label: Counter(c) for label, c in data["counts"].items()}
        return cls(counts, data["example_counts"], alpha=data["alpha"])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "IntentModel":
        return cls.from_json(open(path, encoding="utf-8").read())


def train(corpus: list[TrainingExample]) -> IntentModel:
    """Count features per intent. Order of examples does not matter."""
    intents = {ex.intent for ex in corpus}
    if len(intents) < 2:
        raise CorpusError(
            f"need at least 2 distinct intents, got {sorted(intents)}"
        )
    counts: dict[str, Counter] = {intent: Counter() for intent in intents}
    example_counts: dict[str, int] = {intent: 0 for intent in intents}
    for ex in corpus:
        counts[ex.intent].update(text_features(tokenize(ex.text)))
        example_counts[ex.intent] += 1
    return IntentModel(counts, example_counts)


def interpret(text: str, model: IntentModel,
              specs: list[EntitySpec] | None = None) -> Interpretation:
    """Classify a transcript and pull out its typed parameters."""
    if not tokenize(text):
        return Interpretation(UNKNOWN_INTENT, 0.0, [])
    posteriors = model.posteriors(text)
    best = max(posteriors, key=lambda label: (posteriors[label], label))
    confidence = posteriors[best]
    entities = extract_entities(text, specs or [])
    if confidence < UNKNOWN_THRESHOLD:
        return Interpretation(UNKNOWN_INTENT, confidence, entities)
    return Interpretation(best, confidence, entities)
