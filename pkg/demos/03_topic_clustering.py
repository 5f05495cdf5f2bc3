"""Cluster topics by keyword similarity and group articles for summarization.

Run from the repository root:  python3 demos/03_topic_clustering.py
"""

import warnings
from pathlib import Path

from topicsum.corpus import bag_of_words, load_corpus
from topicsum.embeddings import HashEmbeddingProvider
from topicsum.topic_clustering import (
    group_articles,
    select_cluster_count,
    silhouette_sweep,
    topic_distance,
    topic_similarity,
)
from topicsum.topics import select_topic_count

FIXTURE = Path(__file__).parent.parent / "src" / "topicsum" / "fixtures" / "mag12.jsonl"

corpus = load_corpus(FIXTURE)
bows = [bag_of_words(a) for a in corpus.articles]
provider = HashEmbeddingProvider(dims=64, seed=0)

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    model = select_topic_count(bows, (2, 8), iterations=300, seed=0)

# The directional similarity sums, per keyword of one topic, the best cosine
# match in the other topic; HAC runs on its symmetrized, normalized distance.
t0, t1 = model.topics[0], model.topics[1]
print("-- pairwise topic scores")
print(f"  sim(t0, t1) = {topic_similarity(t0, t1, provider):.3f}")
print(f"  sim(t1, t0) = {topic_similarity(t1, t0, provider):.3f}")
print(f"  distance    = {topic_distance(t0, t1, provider):.3f}")

if len(model.topics) >= 3:
    print("\n-- silhouette sweep")
    for k, score, _ in silhouette_sweep(model.topics, provider):
        print(f"  k={k}  mean silhouette={score:+.4f}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    clusters = select_cluster_count(model.topics, provider)
print("\n-- chosen clustering")
for cluster in clusters:
    print(f"  cluster {cluster.cluster_id}: topics {cluster.topic_ids}")

# Articles follow their dominant topic into that topic's cluster; a corpus
# whose records carry group hints (DUC style) would bypass all of the above.
groups = group_articles(model, clusters, corpus)
print("\n-- article groups")
for group in groups:
    flag = "  (singleton)" if group.singleton else ""
    print(f"  {group.group_id}: {', '.join(group.article_ids)}{flag}")
