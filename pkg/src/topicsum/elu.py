"""Extractive language units: maximal runs of consecutive sentences linked by
coreference.

Treating interdependent sentences as one unit keeps pronoun chains intact
through clustering and fusion. The default linker is a rule: a sentence is
linked to its predecessor when it opens with a third-person pronoun or a
demonstrative. A neural coreference service can be plugged in instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .corpus import Article, Sentence
from .embeddings import UnitEncoding

_LINK_WORDS = frozenset(["this", "these", "that", "those", "it", "they", "he", "she"])

CorefFunction = Callable[[list[Sentence]], set[tuple[int, int]]]


@dataclass
class LanguageUnit:
    unit_id: str
    article_id: str
    kind: str  # "ELU" | "ALU"
    sentence_indices: tuple[int, ...]
    text: str
    sentence_texts: tuple[str, ...]
    encoding: UnitEncoding | None = field(default=None, compare=False)


def heuristic_coref(sentences: list[Sentence]) -> set[tuple[int, int]]:
    """Link (i, i+1) when sentence i+1 opens with a subject-position pronoun
    or demonstrative."""
    links = set()
    for i in range(len(sentences) - 1):
        nxt = sentences[i + 1]
        first = next((t for t in nxt.tokens if t.pos != "PUNCT"), None)
        if first is not None and first.lower in _LINK_WORDS:
            links.add((i, i + 1))
    return links


def extract_elus(article: Article, coref: CorefFunction = heuristic_coref) -> list[LanguageUnit]:
    """Partition the article's sentences into ELUs.

    Only consecutive-sentence links are honored; a link (i, j) with j > i+1
    collapses to the spanned run. The units cover every sentence exactly once,
    in order.
    """
    sentences = list(article.sentences)
    if not sentences:
        return []
    joined = set()
    for i, j in coref(sentences):
        lo, hi = min(i, j), max(i, j)
        for idx in range(lo, hi):
            joined.add(idx)

    units = []
    start = 0
    for idx in range(len(sentences)):
        if idx == len(sentences) - 1 or idx not in joined:
            members = sentences[start : idx + 1]
            units.append(
                LanguageUnit(
                    unit_id=f"{article.id}:e{start}-{idx}",
                    article_id=article.id,
                    kind="ELU",
                    sentence_indices=tuple(s.index for s in members),
                    text=" ".join(s.text for s in members),
                    sentence_texts=tuple(s.text for s in members),
                )
            )
            start = idx + 1
    return units
