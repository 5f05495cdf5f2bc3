"""Clustering of topics by keyword similarity and grouping of articles.

Topic-to-topic similarity sums, for each keyword of one topic, the best
cosine match among the other topic's keywords. That score is directional and
scales with keyword count, so hierarchical agglomeration runs on a
symmetrized, length-normalized distance derived from it. The cluster count is
chosen by mean silhouette over a sweep.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .embeddings import EmbeddingProvider, cosine
from .topics import Topic, TopicModel, dominant_topic


class ClusteringError(ValueError):
    pass


@dataclass
class TopicCluster:
    cluster_id: int
    topic_ids: list[int]
    keyword_vectors: list[list[np.ndarray]]


@dataclass
class ArticleGroup:
    group_id: str
    article_ids: list[str]
    source: str  # "topic-cluster" | "group_hint"
    singleton: bool = False
    topic_cluster_id: int | None = None


def _keyword_vectors(topic: Topic, provider: EmbeddingProvider) -> list[np.ndarray]:
    if not topic.keywords:
        raise ClusteringError(f"topic {topic.id} has no keywords")
    return provider.embed_terms(list(topic.terms))


def topic_similarity(topic_i: Topic, topic_j: Topic, embed: EmbeddingProvider) -> float:
    """Sum over topic_i's keywords of the max cosine against topic_j's keywords."""
    vi = _keyword_vectors(topic_i, embed)
    vj = _keyword_vectors(topic_j, embed)
    return float(sum(max(cosine(u, v) for v in vj) for u in vi))


def topic_distance(topic_i: Topic, topic_j: Topic, embed: EmbeddingProvider) -> float:
    """Symmetric distance in [0, 2]: 1 minus the mean of the two direction-
    normalized similarities. Identical keyword sets give 0."""
    sim_ij = topic_similarity(topic_i, topic_j, embed) / len(topic_i.keywords)
    sim_ji = topic_similarity(topic_j, topic_i, embed) / len(topic_j.keywords)
    return 1.0 - 0.5 * (sim_ij + sim_ji)


def _distance_matrix(topics: list[Topic], embed: EmbeddingProvider) -> np.ndarray:
    n = len(topics)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = topic_distance(topics[i], topics[j], embed)
            dist[i, j] = dist[j, i] = d
    return dist


def _agglomerate(topics: list[Topic], k: int, dist: np.ndarray) -> list[list[int]]:
    # Average linkage; merge ties broken by the lowest (min topic id) pair.
    clusters = sorted(([i] for i in range(len(topics))), key=lambda c: topics[c[0]].id)
    while len(clusters) > k:
        best = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = float(np.mean([[dist[i, j] for j in clusters[b]] for i in clusters[a]]))
                ids_a = topics[clusters[a][0]].id
                ids_b = topics[clusters[b][0]].id
                key = (d, min(ids_a, ids_b), max(ids_a, ids_b))
                if best is None or key < best[0]:
                    best = (key, a, b)
        _, a, b = best
        merged = sorted(clusters[a] + clusters[b], key=lambda i: topics[i].id)
        clusters = [c for idx, c in enumerate(clusters) if idx not in (a, b)]
        clusters.append(merged)
        clusters.sort(key=lambda c: topics[c[0]].id)
    return clusters


def hac(topics: list[Topic], k: int, embed: EmbeddingProvider) -> list[TopicCluster]:
    """Average-linkage agglomeration of topics into k clusters."""
    if not 1 <= k <= len(topics):
        raise ClusteringError(f"k={k} out of range for {len(topics)} topics")
    dist = _distance_matrix(topics, embed)
    groups = _agglomerate(topics, k, dist)
    return _to_clusters(topics, groups, embed)


def _to_clusters(topics, groups, embed) -> list[TopicCluster]:
    groups = sorted(groups, key=lambda g: topics[g[0]].id)
    out = []
    for cid, grp in enumerate(groups):
        out.append(
            TopicCluster(
                cluster_id=cid,
                topic_ids=[topics[i].id for i in grp],
                keyword_vectors=[_keyword_vectors(topics[i], embed) for i in grp],
            )
        )
    return out


def mean_silhouette(labels: list[int], dist: np.ndarray) -> float:
    """Mean silhouette over points; a point in a singleton cluster scores 0,
    and (b - a) / max(a, b) is taken as 0 when max(a, b) == 0."""
    n = len(labels)
    values = []
    for i in range(n):
        same = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not same:
            values.append(0.0)
            continue
        a = float(np.mean([dist[i, j] for j in same]))
        others = sorted(set(labels) - {labels[i]})
        b = min(
            float(np.mean([dist[i, j] for j in range(n) if labels[j] == lab])) for lab in others
        )
        denom = max(a, b)
        values.append((b - a) / denom if denom > 0 else 0.0)
    return float(np.mean(values))


def silhouette_sweep(
    topics: list[Topic], embed: EmbeddingProvider
) -> list[tuple[int, float, list[list[int]]]]:
    """Silhouette score of the HAC clustering for every k in [2, n-1]."""
    dist = _distance_matrix(topics, embed)
    results = []
    for k in range(2, len(topics)):
        groups = _agglomerate(topics, k, dist)
        labels = [0] * len(topics)
        for lab, grp in enumerate(groups):
            for i in grp:
                labels[i] = lab
        results.append((k, mean_silhouette(labels, dist), groups))
    return results


def select_cluster_count(topics: list[Topic], embed: EmbeddingProvider) -> list[TopicCluster]:
    """HAC clustering with the silhouette-maximizing k (ties to the smaller k).

    Fewer than 3 topics cannot be swept (silhouette needs 2 <= k <= n-1), so
    the fallback is one singleton cluster per topic, with a warning.
    """
    if len(topics) < 3:
        warnings.warn(f"only {len(topics)} topics; falling back to singleton clusters")
        return hac(topics, len(topics), embed)
    results = silhouette_sweep(topics, embed)
    best = max(results, key=lambda r: (r[1], -r[0]))
    if best[1] == 0.0:
        warnings.warn("degenerate silhouette sweep (all scores 0); using smallest k")
    return _to_clusters(topics, best[2], embed)


def group_articles(
    model: TopicModel | None, clusters: list[TopicCluster] | None, corpus: Corpus
) -> list[ArticleGroup]:
    """Partition articles into summarization groups.

    When every article carries a group_hint the hint partition is used and
    topics are bypassed entirely; otherwise each article follows its dominant
    topic into that topic's cluster.
    """
    hints = [a.group_hint for a in corpus.articles]
    if corpus.articles and all(h is not None for h in hints):
        by_hint: dict[str, list[str]] = {}
        for a in corpus.articles:
            by_hint.setdefault(a.group_hint, []).append(a.id)
        return [
            ArticleGroup(group_id=h, article_ids=ids, source="group_hint", singleton=len(ids) == 1)
            for h, ids in sorted(by_hint.items())
        ]
    if any(h is not None for h in hints):
        raise ClusteringError("mixed corpus: some articles have group_hint, some do not")
    if model is None or clusters is None:
        raise ClusteringError("no group hints and no topic model given")

    topic_to_cluster = {tid: c.cluster_id for c in clusters for tid in c.topic_ids}
    members: dict[int, list[str]] = {c.cluster_id: [] for c in clusters}
    for idx, article in enumerate(corpus.articles):
        assignment = dominant_topic(model, idx, article.id)
        members[topic_to_cluster[assignment.topic_id]].append(article.id)
    groups = []
    for c in clusters:
        ids = members[c.cluster_id]
        if not ids:
            continue
        groups.append(
            ArticleGroup(
                group_id=f"tc{c.cluster_id}",
                article_ids=ids,
                source="topic-cluster",
                singleton=len(ids) == 1,
                topic_cluster_id=c.cluster_id,
            )
        )
    return groups
