"""Abstractive language unit generation and fusion.

For every ELU a generation provider proposes n candidate rewrites conditioned
on the unit and the article's title (or a generated headline). The candidate
kept is the one maximizing the abstractiveness score: semantic similarity of
the unit encodings minus the lexical-overlap penalty, where the penalty is
the candidate's ROUGE-1 + ROUGE-2 F-measures against the source unit,
normalized by its ROUGE against itself (a constant 2 for multi-token texts).
The selected units are then fused exactly like ELUs: same graph construction,
ranking formulation, and path selection.

The bundled mock provider paraphrases deterministically (seeded synonym
substitution plus clause reordering), so the whole phase runs offline and
reproducibly while still introducing novel words.
"""

from __future__ import annotations

import hashlib
import re
import warnings
from dataclasses import dataclass

import numpy as np

from .corpus import Article, split_sentences, tokenize_and_tag
from .elu import LanguageUnit
from .embeddings import EmbeddingProvider, cosine, encode_unit
from .evaluate import rouge_n
from .grouping import ELUCluster
from .msc import (
    MscConfig,
    Summary,
    build_word_graph,
    encoding_similarity,
    enumerate_candidate_paths,
    path_relevance,
    path_score,
    select_paths,
    topical_coverage,
)
from .topic_clustering import TopicCluster
from .wordlists import SYNONYMS


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenerationParams:
    n: int = 10
    temperature: float = 0.7
    top_k: int = 2
    seed: int = 0
    max_tokens: int = 80

    def __post_init__(self):
        if self.n < 1:
            raise GenerationError(f"n must be >= 1, got {self.n}")
        if self.temperature <= 0:
            raise GenerationError("temperature must be positive")


class GenerationProvider:
    """Interface for text generation backends.

    ``generate`` must return exactly ``params.n`` nonempty candidates and be
    deterministic given (inputs, params.seed). How the unit and title
    condition the generator is the provider's concern.
    """

    name: str

    def generate(self, unit_text: str, title_text: str, params: GenerationParams) -> list[str]:
        raise NotImplementedError

    def headline(self, body_text: str) -> str:
        raise NotImplementedError


_MOCK_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*(?:['\-][A-Za-z0-9]+)*|\d+|[^\sA-Za-z0-9]")


class MockGenerationProvider(GenerationProvider):
    """Deterministic paraphraser used for offline testing.

    Candidate i substitutes synonyms with a probability that grows with i
    (the first eligible word is always substituted, so every candidate
    contains at least one novel token), and odd candidates swap the halves of
    the first comma-separated clause pair.
    """

    name = "mock"

    def generate(self, unit_text: str, title_text: str, params: GenerationParams) -> list[str]:
        digest = hashlib.blake2b(
            f"{params.seed}\x00{unit_text}\x00{title_text}".encode("utf-8"), digest_size=8
        ).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "big"))
        candidates = []
        for i in range(params.n):
            p_sub = 0.45 + 0.5 * i / max(1, params.n - 1)
            tokens = _MOCK_TOKEN_RE.findall(unit_text)
            out = []
            substituted = False
            for tok in tokens:
                repl = SYNONYMS.get(tok.lower())
                if repl is not None and (not substituted or rng.random() < p_sub):
                    if tok[:1].isupper():
                        repl = repl[0].upper() + repl[1:]
                    out.append(repl)
                    substituted = True
                else:
                    out.append(tok)
            text = _join(out[: params.max_tokens])
            if i % 2 == 1 and ", " in text:
                head, _, tail = text.partition(", ")
                if tail.rstrip(".!?"):
                    text = _sentence_case(tail.rstrip(".!?")) + ", " + _decapitalize(head) + "."
            candidates.append(text if text else unit_text)
        return candidates

    def headline(self, body_text: str) -> str:
        sentences = split_sentences(body_text)
        if not sentences:
            raise GenerationError("empty body")
        words = sentences[0].split()
        return " ".join(words[:12])


def _join(tokens: list[str]) -> str:
    out = ""
    for tok in tokens:
        if not any(ch.isalnum() for ch in tok) and out:
            out += tok
        else:
            out += (" " if out else "") + tok
    return out


def _sentence_case(text: str) -> str:
    return text[0].upper() + text[1:] if text else text


def _decapitalize(text: str) -> str:
    return text[0].lower() + text[1:] if text else text


@dataclass(frozen=True)
class ScoredALU:
    text: str
    source_elu_id: str
    cos_sim: float
    syntactic_penalty: float
    abstractiveness: float


def generate_candidates(
    elu: LanguageUnit, title: str, provider: GenerationProvider, params: GenerationParams
) -> list[str]:
    """Exactly params.n nonempty candidate rewrites of the unit."""
    if not elu.text.strip():
        raise GenerationError(f"unit {elu.unit_id} has empty text")
    try:
        candidates = provider.generate(elu.text, title, params)
    except GenerationError:
        raise
    except Exception as exc:
        raise GenerationError(f"provider {provider.name} failed: {exc}") from exc
    if len(candidates) != params.n or any(not c.strip() for c in candidates):
        raise GenerationError(
            f"provider {provider.name} returned {len(candidates)} candidates "
            f"(expected {params.n} nonempty)"
        )
    return candidates


def abstractiveness_score(
    alu_text: str, elu: LanguageUnit, embed: EmbeddingProvider, seed: int = 0, target_dim: int = 300
) -> ScoredALU:
    """Semantic similarity minus the normalized lexical-overlap penalty.

    The penalty denominator is the candidate's ROUGE-1 + ROUGE-2 against
    itself, which is 2 for any text with at least one bigram; it is computed
    rather than hard-coded so single-token candidates degrade consistently
    (their ROUGE-2 is taken as 0).
    """
    if not alu_text.strip() or not elu.text.strip():
        raise GenerationError("abstractiveness_score requires nonempty texts")
    cos = cosine(
        encode_unit([alu_text], embed, target_dim=target_dim, seed=seed),
        encode_unit(list(elu.sentence_texts), embed, target_dim=target_dim, seed=seed),
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r1 = rouge_n(alu_text, elu.text, 1).f1
        r2 = rouge_n(alu_text, elu.text, 2).f1
        self_r1 = rouge_n(alu_text, alu_text, 1).f1
        self_r2 = rouge_n(alu_text, alu_text, 2).f1
    if self_r2 == 0.0:
        warnings.warn(f"single-token candidate {alu_text!r}: ROUGE-2 taken as 0")
    denominator = self_r1 + self_r2
    if denominator == 0.0:
        warnings.warn(f"candidate {alu_text!r} has no content tokens; penalty 0")
        penalty = 0.0
    else:
        penalty = (r1 + r2) / denominator
    return ScoredALU(
        text=alu_text,
        source_elu_id=elu.unit_id,
        cos_sim=cos,
        syntactic_penalty=penalty,
        abstractiveness=cos - penalty,
    )


def select_alu(
    candidates: list[str],
    elu: LanguageUnit,
    embed: EmbeddingProvider,
    seed: int = 0,
    target_dim: int = 300,
) -> ScoredALU:
    """Argmax abstractiveness; ties go to the earlier candidate."""
    if not candidates:
        raise GenerationError("no candidates")
    scored = [
        abstractiveness_score(c, elu, embed, seed=seed, target_dim=target_dim) for c in candidates
    ]
    best = scored[0]
    for s in scored[1:]:
        if s.abstractiveness > best.abstractiveness:
            best = s
    return best


def generate_headline(article: Article, provider: GenerationProvider) -> str:
    """The article's own title when it has one; otherwise a generated
    headline (falling back to the mock generator on provider failure)."""
    if not article.body.strip():
        raise GenerationError(f"article {article.id} has an empty body")
    if article.title.strip():
        return article.title
    try:
        return provider.headline(article.body)
    except Exception as exc:
        warnings.warn(f"headline provider {provider.name} failed ({exc}); using mock fallback")
        return MockGenerationProvider().headline(article.body)


@dataclass
class Providers:
    embed: EmbeddingProvider
    generate: GenerationProvider


def abstractive_summary(
    elu_clusters: list[ELUCluster],
    titles: dict[str, str],
    providers: Providers,
    msc_config: MscConfig,
    topic_cluster: TopicCluster | None,
    params: GenerationParams | None = None,
    group_id: str = "",
    article_ids: list[str] | None = None,
    seed: int = 0,
    target_dim: int = 300,
) -> Summary:
    """Generate one ALU per member ELU, then fuse the ALUs of each cluster
    with the same graph construction, ranking, and selection as the
    extractive phase. Clusters that yield no fusable path contribute their
    best ALU as a degraded fallback."""
    if not elu_clusters:
        raise GenerationError("no ELU clusters")
    params = params or GenerationParams(seed=seed)

    candidates: list = []
    alus_by_cluster: dict[int, list[LanguageUnit]] = {}
    for cluster in elu_clusters:
        alus = []
        for elu in cluster.members:
            texts = generate_candidates(
                elu, titles.get(elu.article_id, ""), providers.generate, params
            )
            best = select_alu(texts, elu, providers.embed, seed=seed, target_dim=target_dim)
            alus.append(
                LanguageUnit(
                    unit_id=f"alu:{elu.unit_id}",
                    article_id=elu.article_id,
                    kind="ALU",
                    sentence_indices=(),
                    text=best.text,
                    sentence_texts=(best.text,),
                )
            )
        alus_by_cluster[cluster.cluster_id] = alus
        if len(alus) < 2:
            continue
        graph = build_word_graph(alus)
        encodings = {
            u.unit_id: encode_unit([u.text], providers.embed, target_dim=target_dim, seed=seed)
            for u in alus
        }
        centroid = np.mean(list(encodings.values()), axis=0)
        alu_cluster = ELUCluster(
            cluster_id=cluster.cluster_id,
            seed_unit=alus[0],
            members=alus,
            centroid_vector=centroid,
        )
        for path in enumerate_candidate_paths(graph, msc_config):
            coverage = (
                topical_coverage(path, topic_cluster, providers.embed) if topic_cluster else 0.0
            )
            relevance = path_relevance(path, alu_cluster, providers.embed, seed=seed)
            alpha = msc_config.alpha if topic_cluster else 0.0
            path.coverage = coverage
            path.relevance = relevance
            path.score = path_score(coverage, relevance, alpha)
            path.cluster_id = cluster.cluster_id
            candidates.append(path)

    result = select_paths(
        candidates, msc_config, encoding_similarity(providers.embed, target_dim, seed=seed)
    )
    summary = Summary(
        group_id=group_id,
        kind="abstractive",
        paths=result.paths,
        degraded=result.degraded,
        diagnostics=list(result.diagnostics),
        article_ids=article_ids or [],
    )
    if not summary.paths:
        budget = msc_config.word_budget
        used = 0
        for cluster in elu_clusters:
            for alu in alus_by_cluster[cluster.cluster_id]:
                wc = sum(1 for t in tokenize_and_tag(alu.text) if t.pos != "PUNCT")
                if used + wc > budget:
                    continue
                summary.fallback_texts.append(alu.text)
                used += wc
        summary.degraded = True
        summary.diagnostics.append("no fused path selected; emitting generated units")
    return summary
