"""Document ingestion: sentence splitting, tokenization, POS tagging, and
bag-of-words extraction.

Everything here is deterministic and rule-based so that ingesting the same
bytes always yields the same corpus. The tagger is context-free (a given
lowercased surface always maps to one tag), which downstream graph
construction relies on.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .wordlists import (
    ABBREVIATIONS,
    ADPOSITIONS,
    ADVERBS,
    CONJUNCTIONS,
    DETERMINERS,
    PARTICLES,
    PRONOUNS,
    STOPWORDS,
    SUFFIX_TAGS,
    VERBS,
)

POS_TAGS = frozenset(
    ["NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", "PUNCT", "X"]
)

CORPUS_SCHEMA_VERSION = 1


class IngestionError(ValueError):
    """Raised when an input record violates the corpus contract."""


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    pos: str
    is_stopword: bool


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[Token, ...]


@dataclass
class Article:
    id: str
    title: str
    body: str
    group_hint: str | None = None
    sentences: tuple[Sentence, ...] = ()


@dataclass
class Corpus:
    articles: list[Article]
    language: str = "en"
    warnings: list[str] = field(default_factory=list)

    def article_by_id(self, article_id: str) -> Article:
        for a in self.articles:
            if a.id == article_id:
                return a
        raise KeyError(article_id)


_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*(?:['\-][A-Za-z0-9]+)*|\d+(?:[.,]\d+)*%?|[^\sA-Za-z0-9]")

_CLOSED_CLASS = {}
for _words, _tag in (
    (PRONOUNS, "PRON"),
    (DETERMINERS, "DET"),
    (ADPOSITIONS, "ADP"),
    (CONJUNCTIONS, "CONJ"),
    (PARTICLES, "PRT"),
    (ADVERBS, "ADV"),
    (VERBS, "VERB"),
):
    for _w in _words:
        _CLOSED_CLASS.setdefault(_w, _tag)


def _tag_word(lower: str) -> str:
    if lower in _CLOSED_CLASS:
        return _CLOSED_CLASS[lower]
    for suffix, tag in SUFFIX_TAGS:
        if len(lower) >= len(suffix) + 2 and lower.endswith(suffix):
            return tag
    if lower.endswith("s") and len(lower) > 3 and not lower.endswith("ss"):
        stem = lower[:-1]
        if stem in VERBS or (lower.endswith("es") and lower[:-2] in VERBS):
            return "VERB"
        return "NOUN"
    return "NOUN"


def tokenize_and_tag(sentence_text: str) -> list[Token]:
    """Split a sentence into tokens and tag each with one of the 12 coarse tags.

    Punctuation characters become standalone PUNCT tokens. Tagging is
    lexicon-first, then suffix rules, then NOUN.
    """
    tokens = []
    for m in _WORD_RE.finditer(sentence_text):
        surface = m.group(0)
        lower = surface.lower()
        if not any(ch.isalnum() for ch in surface):
            pos = "PUNCT"
        elif surface[0].isdigit():
            pos = "NUM"
        else:
            pos = _tag_word(lower)
        tokens.append(Token(surface=surface, lower=lower, pos=pos, is_stopword=lower in STOPWORDS))
    return tokens


_TERMINATORS = ".!?"


def _is_abbreviation(norm: str, dot_index: int) -> bool:
    # Extract the word ending at norm[dot_index] (exclusive of the dot) and
    # test it against the abbreviation list; single capitals are initials.
    j = dot_index
    start = j
    while start > 0 and (norm[start - 1].isalnum() or norm[start - 1] in ".'-"):
        start -= 1
    word = norm[start:j]
    if not word:
        return False
    bare = word.rstrip(".").lower()
    if bare in ABBREVIATIONS:
        return True
    if len(bare) == 1 and word[0].isupper():
        return True
    return False


def split_sentences(text: str) -> list[str]:
    """Split text into sentences at {. ! ?} followed by whitespace and a
    capital letter, with an abbreviation exception list.

    The input is whitespace-normalized first; joining the result with single
    spaces reconstructs the normalized input (no text is dropped).
    """
    norm = " ".join(text.split())
    if not norm:
        return []
    sentences = []
    start = 0
    i = 0
    n = len(norm)
    while i < n:
        ch = norm[i]
        if ch in _TERMINATORS:
            j = i
            while j + 1 < n and norm[j + 1] in _TERMINATORS:
                j += 1
            k = j + 1
            while k < n and norm[k] == " ":
                k += 1
            nxt = k
            while nxt < n and norm[nxt] in "\"'(“‘":
                nxt += 1
            boundary = k > j + 1 and nxt < n and norm[nxt].isupper()
            if boundary and ch == "." and i == j and _is_abbreviation(norm, i):
                boundary = False
            if boundary:
                sentences.append(norm[start : j + 1].strip())
                start = k
            i = j + 1
        else:
            i += 1
    tail = norm[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def ingest_article(article_id: str, title: str, body: str, group_hint: str | None = None) -> Article:
    texts = split_sentences(body)
    sentences = tuple(
        Sentence(index=i, text=t, tokens=tuple(tokenize_and_tag(t))) for i, t in enumerate(texts)
    )
    return Article(id=article_id, title=title, body=body, group_hint=group_hint, sentences=sentences)


def load_corpus(path: str | Path, format: str = "lines-of-records") -> Corpus:
    """Ingest a document collection.

    ``lines-of-records``: one JSON object per line with keys id/title/body and
    optional group_hint. ``directory-of-text``: a directory of ``.txt`` files,
    filename stem = id, first line = title, rest = body.

    Records with empty bodies are skipped with a warning recorded on the
    corpus; missing or duplicate ids raise :class:`IngestionError`.
    """
    path = Path(path)
    if not path.exists():
        raise IngestionError(f"corpus path does not exist: {path}")
    if format == "lines-of-records":
        records = _read_jsonl_records(path)
    elif format == "directory-of-text":
        records = _read_text_directory(path)
    else:
        raise IngestionError(f"unknown corpus format: {format}")

    corpus = Corpus(articles=[])
    seen = set()
    for ref, rec in records:
        rec_id = rec.get("id")
        if not rec_id:
            raise IngestionError(f"record {ref} is missing an id")
        if rec_id in seen:
            raise IngestionError(f"duplicate article id {rec_id!r} at {ref}")
        seen.add(rec_id)
        body = rec.get("body", "")
        if not body.strip():
            corpus.warnings.append(f"skipped {rec_id!r}: empty body")
            continue
        corpus.articles.append(
            ingest_article(rec_id, rec.get("title", ""), body, rec.get("group_hint"))
        )
    return corpus


def _read_jsonl_records(path: Path):
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestionError(f"line {lineno}: invalid record ({exc})") from exc
            records.append((f"line {lineno}", rec))
    return records


def _read_text_directory(path: Path):
    records = []
    for fp in sorted(path.glob("*.txt")):
        text = fp.read_text(encoding="utf-8")
        first, _, rest = text.partition("\n")
        records.append((fp.name, {"id": fp.stem, "title": first.strip(), "body": rest.strip()}))
    return records


def bag_of_words(article: Article) -> dict[str, int]:
    """Lowercased term counts with stopwords and punctuation removed."""
    counts = Counter(
        tok.lower
        for sent in article.sentences
        for tok in sent.tokens
        if tok.pos != "PUNCT" and not tok.is_stopword
    )
    return dict(sorted(counts.items()))


def normalized_body(article: Article) -> str:
    return " ".join(article.body.split())


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Serialize a corpus to the versioned cache format (deterministic bytes)."""
    payload = {
        "schema_version": CORPUS_SCHEMA_VERSION,
        "language": corpus.language,
        "warnings": corpus.warnings,
        "articles": [
            {
                "id": a.id,
                "title": a.title,
                "body": a.body,
                "group_hint": a.group_hint,
                "sentences": [
                    {
                        "index": s.index,
                        "text": s.text,
                        "tokens": [
                            {
                                "surface": t.surface,
                                "lower": t.lower,
                                "pos": t.pos,
                                "is_stopword": t.is_stopword,
                            }
                            for t in s.tokens
                        ],
                    }
                    for s in a.sentences
                ],
            }
            for a in corpus.articles
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True, indent=1)
        fh.write("\n")


def load_corpus_cache(path: str | Path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("schema_version") != CORPUS_SCHEMA_VERSION:
        raise IngestionError(f"unsupported corpus schema: {payload.get('schema_version')}")
    articles = []
    for a in payload["articles"]:
        sentences = tuple(
            Sentence(
                index=s["index"],
                text=s["text"],
                tokens=tuple(Token(**t) for t in s["tokens"]),
            )
            for s in a["sentences"]
        )
        articles.append(
            Article(
                id=a["id"],
                title=a["title"],
                body=a["body"],
                group_hint=a.get("group_hint"),
                sentences=sentences,
            )
        )
    return Corpus(articles=articles, language=payload.get("language", "en"), warnings=list(payload.get("warnings", [])))
