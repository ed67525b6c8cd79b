"""Entity extraction: gazetteer lookup first, then typed patterns.

Gazetteer matches are exact token-span matches against a per-type value
list; patterns are regular expressions for typed literals (integers, times).
Overlaps are resolved longest-first, ties by leftmost, and gazetteer
matches always win over patterns. Entity values are verbatim substrings of
the source text.
"""

import re
from dataclasses import dataclass, field

from roomvoice.textnorm import tokenize, tokenize_with_spans

BUILTIN_PATTERNS = {
    "int": r"\d+",
    "time": r"(?:[01]?\d|2[0-3]):[0-5]\d",
}


class EntitySpecError(ValueError):
    """Malformed entity specification (caught at load time, never at query)."""


@dataclass
class Entity:
    type: str
    value: str
    start: int
    end: int


@dataclass
class EntitySpec:
    type: str
    kind: str  # "gazetteer" | "pattern"
    values: list[str] = field(default_factory=list)
    pattern: str | None = None
    _tokenized_values: list[list[str]] = field(default_factory=list, repr=False)
    _compiled: re.Pattern | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "gazetteer":
            if not self.values:
                raise EntitySpecError(f"{self.type}: gazetteer needs values")
            self._tokenized_values = [tokenize(v) for v in self.values]
            if any(not toks for toks in self._tokenized_values):
                raise EntitySpecError(f"{self.type}: empty gazetteer value")
        elif self.kind == "pattern":
            pat = self.pattern or BUILTIN_PATTERNS.get(self.type)
            if pat is None:
                raise EntitySpecError(
                    f"{self.type}: pattern spec without a pattern"
                )
            try:
                self._compiled = re.compile(pat)
            except re.error as exc:
                raise EntitySpecError(f"{self.type}: bad pattern: {exc}") from None
        else:
            raise EntitySpecError(f"{self.type}: unknown kind {self.kind!r}")

    @classmethod
    def gazetteer(cls, type_: str, values: list[str]) -> "EntitySpec":
        return cls(type=type_, kind="gazetteer", values=list(values))

    @classmethod
    def from_pattern(cls, type_: str, pattern: str | None = None) -> "EntitySpec":
        return cls(type=type_, kind="pattern", pattern=pattern)


def load_entity_specs(data: list[dict]) -> list[EntitySpec]:
    """Build specs from parsed config records; raises EntitySpecError early."""
    specs = []
    for rec in data:
        try:
            specs.append(EntitySpec(type=rec["type"], kind=rec["kind"],
                                    values=list(rec.get("values", [])),
                                    pattern=rec.get("pattern")))
        except KeyError as exc:
            raise EntitySpecError(f"entity spec missing field {exc}") from None
    return specs


def _accept(candidates: list[Entity], taken: list[Entity]) -> list[Entity]:
    """Longest-first, ties leftmost, skipping overlap with already-taken spans."""
    out = []
    for cand in sorted(candidates, key=lambda e: (-(e.end - e.start), e.start)):
        if all(cand.end <= e.start or cand.start >= e.end for e in taken + out):
            out.append(cand)
    return out


def extract_entities(text: str, specs: list[EntitySpec]) -> list[Entity]:
    tokens = tokenize_with_spans(text)
    gazetteer_hits: list[Entity] = []
    pattern_hits: list[Entity] = []

    for spec in specs:
        if spec.kind == "gazetteer":
            for value_tokens in spec._tokenized_values:
                n = len(value_tokens)
                for i in range(len(tokens) - n + 1):
                    if [t for t, _, _ in tokens[i:i + n]] == value_tokens:
                        start = tokens[i][1]
                        end = tokens[i + n - 1][2]
                        gazetteer_hits.append(
                            Entity(spec.type, text[start:end], start, end)
                        )
        else:
            for m in spec._compiled.finditer(text):
                pattern_hits.append(
                    Entity(spec.type, m.group(0), m.start(), m.end())
                )

    accepted = _accept(gazetteer_hits, [])
    accepted += _accept(pattern_hits, accepted)
    accepted.sort(key=lambda e: e.start)
    return accepted
