"""Corpus file I/O and the bundled French command corpus.

One record per line: intent label, tab, sentence, then optional
tab-separated entity annotations ``type:start:end`` (character offsets into
the sentence).
"""

from importlib import resources

from roomvoice.nlu.model import CorpusError, TrainingExample

BUNDLED_CORPUS = "commands_fr.tsv"


def parse_corpus(text: str, source: str = "<corpus>") -> list[TrainingExample]:
    examples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise CorpusError(f"{source}:{lineno}: expected 'intent<TAB>text'")
        intent, sentence = parts[0].strip(), parts[1]
        if not intent:
            raise CorpusError(f"{source}:{lineno}: empty intent label")
        spans = []
        for ann in parts[2:]:
            if not ann.strip():
                continue
            try:
                etype, start_s, end_s = ann.rsplit(":", 2)
                start, end = int(start_s), int(end_s)
            except ValueError:
                raise CorpusError(
                    f"{source}:{lineno}: bad annotation {ann!r}, "
                    "expected type:start:end"
                ) from None
            if not (0 <= start < end <= len(sentence)):
                raise CorpusError(
                    f"{source}:{lineno}: span {start}:{end} outside sentence"
                )
            if any(not (end <= s or start >= e) for s, e, _, _ in spans):
                raise CorpusError(f"{source}:{lineno}: overlapping spans")
            spans.append((start, end, etype, sentence[start:end]))
        examples.append(TrainingExample(text=sentence, intent=intent,
                                        entities=spans))
    return examples


def load_corpus(path) -> list[TrainingExample]:
    return parse_corpus(open(path, encoding="utf-8").read(), source=str(path))


def save_corpus(examples: list[TrainingExample], path) -> None:
    lines = []
    for ex in examples:
        cols = [ex.intent, ex.text]
        cols.extend(f"{etype}:{start}:{end}"
                    for start, end, etype, _ in ex.entities)
        lines.append("\t".join(cols))
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def load_bundled_corpus() -> list[TrainingExample]:
    """The 10-intent x 20-paraphrase French command corpus shipped in-repo."""
    text = (resources.files("roomvoice.nlu") / "data" / BUNDLED_CORPUS).read_text(
        encoding="utf-8"
    )
    return parse_corpus(text, source=BUNDLED_CORPUS)


def split_corpus(examples: list[TrainingExample], holdout_every: int = 5):
    """Deterministic train/held-out split: every Nth example of each intent."""
    seen: dict[str, int] = {}
    train_set, holdout = [], []
    for ex in examples:
        k = seen.get(ex.intent, 0)
        seen[ex.intent] = k + 1
        (holdout if k % holdout_every == 0 else train_set).append(ex)
    return train_set, holdout
