"""ROUGE-1/2/L and copy rate.

Both sides are lowercased and punctuation tokens are dropped; no stemming and
no stopword removal, so scores are reproducible from the bundled tokenizer
alone. ROUGE-n uses clipped n-gram counts, ROUGE-L the token-level longest
common subsequence. Copy rate is the fraction of summary tokens whose
lowercased form occurs anywhere in the sources; lower means more novel words.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass

from .corpus import tokenize_and_tag


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _content_tokens(text: str) -> list[str]:
    return [t.lower for t in tokenize_and_tag(text) if t.pos != "PUNCT"]


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _prf(overlap: int, cand_total: int, ref_total: int) -> RougeScore:
    p = overlap / cand_total if cand_total else 0.0
    r = overlap / ref_total if ref_total else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return RougeScore(precision=p, recall=r, f1=f1)


def rouge_n(candidate: str, reference: str, n: int) -> RougeScore:
    """Clipped n-gram overlap: precision against the candidate, recall
    against the reference."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _ngrams(_content_tokens(candidate), n)
    ref = _ngrams(_content_tokens(reference), n)
    if not ref:
        warnings.warn(f"reference has no {n}-grams; ROUGE-{n} is 0")
        return RougeScore(0.0, 0.0, 0.0)
    overlap = sum(min(c, ref[g]) for g, c in cand.items())
    return _prf(overlap, sum(cand.values()), sum(ref.values()))


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> RougeScore:
    """Longest-common-subsequence precision/recall/F1 over tokens."""
    cand = _content_tokens(candidate)
    ref = _content_tokens(reference)
    if not ref:
        warnings.warn("reference has no tokens; ROUGE-L is 0")
        return RougeScore(0.0, 0.0, 0.0)
    lcs = _lcs_length(cand, ref)
    return _prf(lcs, len(cand), len(ref))


def copy_rate(summary: str, sources: list[str]) -> float:
    """Fraction of summary tokens present (type-level) in the sources."""
    tokens = _content_tokens(summary)
    if not tokens:
        raise ValueError("empty summary")
    source_vocab = set()
    for src in sources:
        source_vocab.update(_content_tokens(src))
    return sum(1 for t in tokens if t in source_vocab) / len(tokens)
