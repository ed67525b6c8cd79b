"""Text normalization shared by transcript scoring and intent analysis.

French text keeps its accents; case and punctuation are folded away.
Apostrophes and hyphens survive only inside a word ("aujourd'hui",
"peut-être"), so elisions stay one token.
"""

import re
import unicodedata

_WORD_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)


def normalize_text(text: str) -> str:
    """Lowercase and collapse a sentence to its scoring form."""
    return " ".join(tokenize(text))


def tokenize(text: str) -> list[str]:
    """Split into lowercase tokens, dropping punctuation but keeping accents."""
    return [tok for tok, _, _ in tokenize_with_spans(text)]


def tokenize_with_spans(text: str) -> list[tuple[str, int, int]]:
    """Tokenize, returning (token, start, end) character spans into ``text``.

    The token is the normalized (lowercased, NFC) form; the span always
    addresses the original string so entity values can be cut out verbatim.
    """
    normalized = unicodedata.normalize("NFC", text)
    if normalized != text:
        # Offsets must index the caller's string; re-run the scan on the
        # original when NFC changed lengths.
        normalized = text
    out = []
    for m in _WORD_RE.finditer(normalized):
        tok = m.group(0).replace("’", "'").lower()
        out.append((tok, m.start(), m.end()))
    return out
