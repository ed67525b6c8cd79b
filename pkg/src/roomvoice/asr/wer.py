"""Word-error-rate scoring: Levenshtein alignment over normalized tokens.

WER = (substitutions + deletions + insertions) / reference length, with the
alignment found by unit-cost dynamic programming. When several alignments
reach the minimum, backtracking prefers correct > substitution > deletion >
insertion so the reported op sequence is deterministic.
"""

from dataclasses import dataclass, field

from roomvoice.textnorm import tokenize

CORRECT = "C"
SUBSTITUTION = "S"
DELETION = "D"
INSERTION = "I"


@dataclass
class AlignmentOps:
    """Counts and the aligned (ref, hyp) pairs for one sentence pair."""

    substitutions: int
    deletions: int
    insertions: int
    correct: int
    ops: list[tuple[str, str | None, str | None]] = field(default_factory=list)

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions


def _as_tokens(text) -> list[str]:
    if isinstance(text, str):
        return tokenize(text)
    return list(text)


def word_align(ref, hyp) -> AlignmentOps:
    """Align reference against hypothesis at minimum edit distance.

    ``ref``/``hyp`` may be raw strings (normalized here) or token lists
    (assumed normalized already). Empty sequences are legal.
    """
    r = _as_tokens(ref)
    h = _as_tokens(hyp)
    n, m = len(r), len(h)

    cost = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        cost[i][0] = i
    for j in range(1, m + 1):
        cost[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            same = r[i - 1] == h[j - 1]
            cost[i][j] = min(
                cost[i - 1][j - 1] + (0 if same else 1),
                cost[i - 1][j] + 1,
                cost[i][j - 1] + 1,
            )

    ops: list[tuple[str, str | None, str | None]] = []
    i, j = n, m
    while i > 0 or j > 0:
        c = cost[i][j]
        if i > 0 and j > 0 and r[i - 1] == h[j - 1] and cost[i - 1][j - 1] == c:
            ops.append((CORRECT, r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and cost[i - 1][j - 1] + 1 == c:
            ops.append((SUBSTITUTION, r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and cost[i - 1][j] + 1 == c:
            ops.append((DELETION, r[i - 1], None))
            i -= 1
        else:
            ops.append((INSERTION, None, h[j - 1]))
            j -= 1
    ops.reverse()

    counts = {CORRECT: 0, SUBSTITUTION: 0, DELETION: 0, INSERTION: 0}
    for op, _, _ in ops:
        counts[op] += 1
    return AlignmentOps(
        substitutions=counts[SUBSTITUTION],
        deletions=counts[DELETION],
        insertions=counts[INSERTION],
        correct=counts[CORRECT],
        ops=ops,
    )


def wer(ref, hyp) -> float:
    """Word error rate of ``hyp`` against ``ref``. Raises on an empty reference."""
    r = _as_tokens(ref)
    if not r:
        raise ValueError("WER is undefined for an empty reference")
    return word_align(r, _as_tokens(hyp)).errors / len(r)


@dataclass
class CorpusReport:
    """Token-weighted aggregate over sentence pairs, plus per-pair detail."""

    aggregate_wer: float
    total_errors: int
    total_ref_tokens: int
    pairs: list[dict]
    skipped: list[dict]


def evaluate_corpus(pairs) -> CorpusReport:
    """Score (ref, hyp) pairs; aggregate is sum-of-errors over sum-of-ref-tokens.

    Pairs with an empty reference are excluded from the aggregate and listed
    in ``skipped``. Raises if no scorable pair remains.
    """
    details = []
    skipped = []
    total_err = 0
    total_ref = 0
    for idx, (ref, hyp) in enumerate(pairs):
        r = _as_tokens(ref)
        h = _as_tokens(hyp)
        if not r:
            skipped.append({"index": idx, "reason": "empty reference"})
            continue
        align = word_align(r, h)
        details.append(
            {
                "index": idx,
                "wer": align.errors / len(r),
                "errors": align.errors,
                "ref_tokens": len(r),
                "substitutions": align.substitutions,
                "deletions": align.deletions,
                "insertions": align.insertions,
            }
        )
        total_err += align.errors
        total_ref += len(r)
    if total_ref == 0:
        raise ValueError("no scorable pairs: every reference was empty")
    return CorpusReport(
        aggregate_wer=total_err / total_ref,
        total_errors=total_err,
        total_ref_tokens=total_ref,
        pairs=details,
        skipped=skipped,
    )
