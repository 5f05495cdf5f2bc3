"""Core/peripheral article identification and centroid clustering of ELUs.

The core article of a group is the one with the highest cumulative document
similarity to the others (sum of pairwise cosines over the group size). Its
ELUs seed one cluster each; every peripheral ELU joins the cluster whose seed
it is closest to, in a single assignment pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elu import LanguageUnit
from .embeddings import cosine
from .topic_clustering import ArticleGroup


class GroupingError(ValueError):
    pass


@dataclass
class CoreSelection:
    group_id: str
    core_article_id: str
    peripheral_ids: list[str]
    scores: dict[str, float]


@dataclass
class ELUCluster:
    cluster_id: int
    seed_unit: LanguageUnit
    members: list[LanguageUnit]
    centroid_vector: np.ndarray


def cross_article_score(
    article_id: str, group: ArticleGroup, doc_vectors: dict[str, np.ndarray]
) -> float:
    """Sum of cosines to the other group members, divided by the group size."""
    total = sum(
        cosine(doc_vectors[article_id], doc_vectors[other])
        for other in group.article_ids
        if other != article_id
    )
    return total / len(group.article_ids)


def identify_core(group: ArticleGroup, doc_vectors: dict[str, np.ndarray]) -> CoreSelection:
    """Argmax cumulative-similarity article; ties go to the smallest id."""
    if not group.article_ids:
        raise GroupingError(f"group {group.group_id} is empty")
    scores = {aid: cross_article_score(aid, group, doc_vectors) for aid in group.article_ids}
    core = max(sorted(scores), key=lambda aid: scores[aid])
    return CoreSelection(
        group_id=group.group_id,
        core_article_id=core,
        peripheral_ids=[aid for aid in group.article_ids if aid != core],
        scores=scores,
    )


def centroid_cluster(
    core_elus: list[LanguageUnit],
    peripheral_elus: list[LanguageUnit],
    encodings: dict[str, np.ndarray],
) -> list[ELUCluster]:
    """One cluster per core ELU; each peripheral ELU joins the seed with the
    highest cosine (ties to the lowest cluster id). Centroid = member mean."""
    if not core_elus:
        raise GroupingError("no core ELUs to seed clusters")
    for unit in list(core_elus) + list(peripheral_elus):
        if unit.unit_id not in encodings:
            raise GroupingError(f"missing encoding for unit {unit.unit_id}")

    members: list[list[LanguageUnit]] = [[seed] for seed in core_elus]
    for unit in peripheral_elus:
        sims = [cosine(encodings[unit.unit_id], encodings[seed.unit_id]) for seed in core_elus]
        members[int(np.argmax(sims))].append(unit)

    clusters = []
    for cid, (seed, mem) in enumerate(zip(core_elus, members)):
        centroid = np.mean([encodings[u.unit_id] for u in mem], axis=0)
        clusters.append(
            ELUCluster(cluster_id=cid, seed_unit=seed, members=mem, centroid_vector=centroid)
        )
    return clusters
