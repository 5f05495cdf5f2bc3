"""LDA topic modeling via collapsed Gibbs sampling, UMass coherence scoring,
and coherence-driven selection of the topic count.

The sampler is seed-deterministic: token order, vocabulary indexing, and the
per-iteration uniform draws are all fixed functions of the input and seed, so
a fitted model is bit-identical across runs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit

DEFAULT_ITERATIONS = 500
DEFAULT_BETA = 0.01
TOP_KEYWORDS = 10
COHERENCE_EPS = 1e-12


class TopicModelError(ValueError):
    pass


@dataclass(frozen=True)
class Topic:
    id: int
    keywords: tuple[tuple[str, float], ...]

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.keywords)


@dataclass
class TopicModel:
    k: int
    topics: list[Topic]
    doc_topic: np.ndarray
    seed: int
    hyper_alpha: float
    hyper_beta: float
    iterations: int
    vocabulary: tuple[str, ...]
    topic_term: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class DominantTopicAssignment:
    article_id: str
    topic_id: int
    contribution: float


def default_alpha(k: int) -> float:
    return 50.0 / k


@njit(cache=True)
def _gibbs_sweep(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, k, vocab_size, uniforms, weights):
    for t in range(doc_ids.shape[0]):
        d = doc_ids[t]
        w = word_ids[t]
        old = z[t]
        n_dk[d, old] -= 1
        n_kw[old, w] -= 1
        n_k[old] -= 1
        total = 0.0
        for j in range(k):
            weights[j] = (n_kw[j, w] + beta) / (n_k[j] + vocab_size * beta) * (n_dk[d, j] + alpha)
            total += weights[j]
        r = uniforms[t] * total
        acc = 0.0
        new = k - 1
        for j in range(k):
            acc += weights[j]
            if r < acc:
                new = j
                break
        z[t] = new
        n_dk[d, new] += 1
        n_kw[new, w] += 1
        n_k[new] += 1


def fit_lda(
    bows: list[dict[str, int]],
    k: int,
    priors: tuple[float | None, float | None] | None = None,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
    validate: bool = False,
) -> TopicModel:
    """Fit an LDA model by collapsed Gibbs sampling.

    Document-topic and topic-term estimates come from the final sample with
    prior smoothing. ``validate`` asserts count conservation after every
    sweep (slow, used by tests).
    """
    if k < 1:
        raise TopicModelError(f"k must be >= 1, got {k}")
    if iterations < 1:
        raise TopicModelError(f"iterations must be >= 1, got {iterations}")
    if not bows:
        raise TopicModelError("no documents")
    vocab = sorted({term for bow in bows for term in bow})
    if not vocab:
        raise TopicModelError("no content terms")
    vocab_index = {t: i for i, t in enumerate(vocab)}

    alpha, beta = (priors or (None, None))
    alpha = default_alpha(k) if alpha is None else float(alpha)
    beta = DEFAULT_BETA if beta is None else float(beta)

    doc_ids, word_ids = [], []
    for d, bow in enumerate(bows):
        for term in sorted(bow):
            doc_ids.extend([d] * bow[term])
            word_ids.extend([vocab_index[term]] * bow[term])
    doc_ids = np.array(doc_ids, dtype=np.int64)
    word_ids = np.array(word_ids, dtype=np.int64)
    n_tokens = doc_ids.shape[0]

    rng = np.random.default_rng(seed)
    z = rng.integers(0, k, size=n_tokens).astype(np.int64)
    n_dk = np.zeros((len(bows), k), dtype=np.int64)
    n_kw = np.zeros((k, len(vocab)), dtype=np.int64)
    n_k = np.zeros(k, dtype=np.int64)
    for t in range(n_tokens):
        n_dk[doc_ids[t], z[t]] += 1
        n_kw[z[t], word_ids[t]] += 1
        n_k[z[t]] += 1

    weights = np.zeros(k, dtype=np.float64)
    for _ in range(iterations):
        uniforms = rng.random(n_tokens)
        _gibbs_sweep(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, k, len(vocab), uniforms, weights)
        if validate:
            assert n_dk.sum() == n_tokens and n_kw.sum() == n_tokens and n_k.sum() == n_tokens

    doc_lengths = n_dk.sum(axis=1, keepdims=True)
    doc_topic = (n_dk + alpha) / (doc_lengths + k * alpha)
    topic_term = (n_kw + beta) / (n_k[:, None] + len(vocab) * beta)

    topics = []
    for j in range(k):
        ranked = sorted(zip(vocab, topic_term[j]), key=lambda kv: (-kv[1], kv[0]))
        keywords = tuple((term, float(w)) for term, w in ranked[: min(TOP_KEYWORDS, len(vocab))])
        topics.append(Topic(id=j, keywords=keywords))

    return TopicModel(
        k=k,
        topics=topics,
        doc_topic=doc_topic,
        seed=seed,
        hyper_alpha=alpha,
        hyper_beta=beta,
        iterations=iterations,
        vocabulary=tuple(vocab),
        topic_term=topic_term,
    )


def coherence(model: TopicModel, bows: list[dict[str, int]]) -> float:
    """UMass coherence of the model's top keywords, averaged over topics.

    Per topic: mean over ranked keyword pairs (j earlier than i) of
    log(max(codoc(w_i, w_j), eps) / docfreq(w_j)). Computable from the corpus
    alone; higher is better. Fully saturated co-occurrence scores exactly 0,
    so sweep ties on saturated corpora resolve by the smaller-k rule rather
    than floating-point noise.
    """
    doc_sets = [set(bow) for bow in bows]
    per_topic = []
    for topic in model.topics:
        terms = list(topic.terms)
        if len(terms) < 2:
            warnings.warn(f"topic {topic.id} has fewer than 2 keywords; contributes 0")
            per_topic.append(0.0)
            continue
        total = 0.0
        pairs = 0
        for i in range(1, len(terms)):
            for j in range(i):
                docfreq = sum(1 for ds in doc_sets if terms[j] in ds)
                codoc = sum(1 for ds in doc_sets if terms[j] in ds and terms[i] in ds)
                total += math.log(max(codoc, COHERENCE_EPS) / max(docfreq, 1))
                pairs += 1
        per_topic.append(total / pairs)
    return float(np.mean(per_topic))


def sweep_topic_counts(
    bows: list[dict[str, int]],
    k_range: tuple[int, int],
    priors: tuple[float | None, float | None] | None = None,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
) -> list[tuple[int, TopicModel, float]]:
    """Fit one model per k in the (capped) range; returns (k, model, coherence).

    The upper bound is capped at the vocabulary size and at one less than the
    number of documents; per-k seeds are derived as seed + k.
    """
    lo, hi = k_range
    if lo > hi:
        raise TopicModelError(f"empty k range {k_range}")
    vocab_size = len({t for bow in bows for t in bow})
    if vocab_size == 0:
        raise TopicModelError("no content terms")
    cap = min(hi, vocab_size, max(len(bows) - 1, 1))
    lo = max(1, min(lo, cap))
    results = []
    for k in range(lo, cap + 1):
        model = fit_lda(bows, k, priors=priors, iterations=iterations, seed=seed + k)
        results.append((k, model, coherence(model, bows)))
    return results


def select_topic_count(
    bows: list[dict[str, int]],
    k_range: tuple[int, int],
    priors: tuple[float | None, float | None] | None = None,
    iterations: int = DEFAULT_ITERATIONS,
    seed: int = 0,
) -> TopicModel:
    """The fitted model with the highest coherence; ties go to the smaller k."""
    results = sweep_topic_counts(bows, k_range, priors=priors, iterations=iterations, seed=seed)
    best = max(results, key=lambda r: (r[2], -r[0]))
    return best[1]


def dominant_topic(
    model: TopicModel, article_index: int, article_id: str | None = None
) -> DominantTopicAssignment:
    """Argmax of the article's topic distribution; ties go to the lowest id."""
    row = model.doc_topic[article_index]
    topic_id = int(np.argmax(row))
    return DominantTopicAssignment(
        article_id=article_id if article_id is not None else str(article_index),
        topic_id=topic_id,
        contribution=float(row[topic_id]),
    )
