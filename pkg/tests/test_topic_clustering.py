import numpy as np
import pytest

from topicsum.corpus import Corpus, ingest_article
from topicsum.embeddings import HashEmbeddingProvider
from topicsum.topic_clustering import (
    ArticleGroup,
    ClusteringError,
    group_articles,
    hac,
    mean_silhouette,
    select_cluster_count,
    silhouette_sweep,
    topic_distance,
    topic_similarity,
)
from topicsum.topics import Topic, fit_lda

from oracles import silhouette_bf, topic_similarity_bf


def make_topic(tid, terms):
    return Topic(id=tid, keywords=tuple((t, 1.0 / (i + 1)) for i, t in enumerate(terms)))


class OrthogonalProvider:
    """Assigns each distinct term its own basis vector; cross-term cosine 0."""

    name = "orthogonal"

    def __init__(self, dims=16):
        self.dims = dims
        self._index = {}

    def embed_terms(self, terms):
        out = []
        for t in terms:
            if t not in self._index:
                self._index[t] = len(self._index)
            v = np.zeros(self.dims)
            v[self._index[t]] = 1.0
            out.append(v)
        return out

    def embed_text(self, text):
        return self.embed_terms([text])[0]


class TestTopicSimilarity:
    def test_self_similarity_equals_keyword_count(self):
        provider = HashEmbeddingProvider(dims=16, seed=0)
        topic = make_topic(0, ["radar", "pulse", "band"])
        assert topic_similarity(topic, topic, provider) == pytest.approx(3.0, abs=1e-9)

    def test_orthogonal_keywords_give_zero(self):
        provider = OrthogonalProvider()
        t1 = make_topic(0, ["a", "b"])
        t2 = make_topic(1, ["c", "d"])
        assert topic_similarity(t1, t2, provider) == pytest.approx(0.0, abs=1e-12)

    def test_matches_bruteforce_on_two_keyword_topics(self):
        provider = HashEmbeddingProvider(dims=12, seed=1)
        t1 = make_topic(0, ["wind", "power"])
        t2 = make_topic(1, ["storm", "energy"])
        expected = topic_similarity_bf(
            provider.embed_terms(["wind", "power"]), provider.embed_terms(["storm", "energy"])
        )
        assert topic_similarity(t1, t2, provider) == pytest.approx(expected, abs=1e-9)

    def test_randomized_bruteforce(self):
        provider = HashEmbeddingProvider(dims=8, seed=2)
        rng = np.random.default_rng(3)
        vocab = [f"term{i}" for i in range(30)]
        for _ in range(25):
            a = list(rng.choice(vocab, size=rng.integers(1, 6), replace=False))
            b = list(rng.choice(vocab, size=rng.integers(1, 6), replace=False))
            expected = topic_similarity_bf(provider.embed_terms(a), provider.embed_terms(b))
            got = topic_similarity(make_topic(0, a), make_topic(1, b), provider)
            assert got == pytest.approx(expected, abs=1e-9)


class TestTopicDistance:
    def test_identical_topics(self):
        provider = HashEmbeddingProvider(dims=16, seed=0)
        t = make_topic(0, ["radar", "pulse"])
        assert topic_distance(t, t, provider) == pytest.approx(0.0, abs=1e-9)

    def test_orthogonal(self):
        provider = OrthogonalProvider()
        d = topic_distance(make_topic(0, ["a", "b"]), make_topic(1, ["c"]), provider)
        assert d == pytest.approx(1.0, abs=1e-12)

    def test_symmetry_on_random_topics(self):
        provider = HashEmbeddingProvider(dims=8, seed=4)
        rng = np.random.default_rng(9)
        vocab = [f"w{i}" for i in range(20)]
        for _ in range(25):
            a = make_topic(0, list(rng.choice(vocab, size=3, replace=False)))
            b = make_topic(1, list(rng.choice(vocab, size=4, replace=False)))
            assert topic_distance(a, b, provider) == pytest.approx(
                topic_distance(b, a, provider), abs=1e-12
            )
            assert 0.0 <= topic_distance(a, b, provider) <= 2.0


def two_tight_pairs():
    # Pairs (0,1) and (2,3) share keywords within the pair, none across.
    return [
        make_topic(0, ["apple", "banana"]),
        make_topic(1, ["apple", "cherry"]),
        make_topic(2, ["xray", "yarn"]),
        make_topic(3, ["xray", "zebra"]),
    ]


class TestHac:
    def test_k_equals_n_gives_singletons(self):
        provider = HashEmbeddingProvider(dims=8, seed=0)
        topics = two_tight_pairs()
        clusters = hac(topics, 4, provider)
        assert [c.topic_ids for c in clusters] == [[0], [1], [2], [3]]

    def test_k_one_gives_single_cluster(self):
        provider = HashEmbeddingProvider(dims=8, seed=0)
        clusters = hac(two_tight_pairs(), 1, provider)
        assert clusters[0].topic_ids == [0, 1, 2, 3]

    def test_recovers_two_pairs(self):
        provider = OrthogonalProvider()
        clusters = hac(two_tight_pairs(), 2, provider)
        assert [c.topic_ids for c in clusters] == [[0, 1], [2, 3]]

    def test_refinement(self):
        # hac(k) refines hac(k-1) under the deterministic merge order.
        provider = HashEmbeddingProvider(dims=8, seed=1)
        topics = two_tight_pairs()
        for k in range(2, 5):
            fine = hac(topics, k, provider)
            coarse = hac(topics, k - 1, provider)
            for cluster in fine:
                assert any(set(cluster.topic_ids) <= set(c.topic_ids) for c in coarse)

    def test_k_out_of_range(self):
        provider = HashEmbeddingProvider(dims=8)
        with pytest.raises(ClusteringError):
            hac(two_tight_pairs(), 5, provider)

    def test_partition_law(self):
        provider = HashEmbeddingProvider(dims=8, seed=2)
        clusters = hac(two_tight_pairs(), 3, provider)
        seen = [tid for c in clusters for tid in c.topic_ids]
        assert sorted(seen) == [0, 1, 2, 3]


class TestSelectClusterCount:
    def test_two_pairs_selects_k2(self):
        provider = OrthogonalProvider()
        clusters = select_cluster_count(two_tight_pairs(), provider)
        assert [c.topic_ids for c in clusters] == [[0, 1], [2, 3]]

    def test_matches_bruteforce_silhouette_argmax(self):
        provider = HashEmbeddingProvider(dims=8, seed=3)
        topics = [make_topic(i, [f"t{i}", f"t{(i+1) % 6}"]) for i in range(6)]
        sweep = silhouette_sweep(topics, provider)
        from topicsum.topic_clustering import _distance_matrix

        dist = _distance_matrix(topics, provider)
        for k, score, groups in sweep:
            labels = [0] * len(topics)
            for lab, grp in enumerate(groups):
                for i in grp:
                    labels[i] = lab
            assert score == pytest.approx(silhouette_bf(labels, dist.tolist()), abs=1e-9)
            assert score == pytest.approx(mean_silhouette(labels, dist), abs=1e-12)
        best_k = max(sweep, key=lambda r: (r[1], -r[0]))[0]
        chosen = select_cluster_count(topics, provider)
        assert len(chosen) == best_k

    def test_degenerate_identical_topics(self):
        provider = HashEmbeddingProvider(dims=8, seed=0)
        topics = [make_topic(i, ["same", "words"]) for i in range(4)]
        with pytest.warns(UserWarning, match="degenerate"):
            clusters = select_cluster_count(topics, provider)
        assert len(clusters) == 2

    def test_fewer_than_three_topics_falls_back_to_singletons(self):
        provider = HashEmbeddingProvider(dims=8, seed=0)
        topics = two_tight_pairs()[:2]
        with pytest.warns(UserWarning, match="singleton"):
            clusters = select_cluster_count(topics, provider)
        assert [c.topic_ids for c in clusters] == [[0], [1]]


class TestGroupArticles:
    def _corpus(self, bodies, hints=None):
        hints = hints or [None] * len(bodies)
        return Corpus(
            articles=[
                ingest_article(f"a{i}", f"T{i}", body, hint)
                for i, (body, hint) in enumerate(zip(bodies, hints))
            ]
        )

    def test_shared_dominant_topic_shares_group(self):
        bows_corpus = self._corpus(
            ["apple banana apple cherry", "apple cherry banana", "xray yarn zebra xray"]
        )
        from topicsum.corpus import bag_of_words

        model = fit_lda([bag_of_words(a) for a in bows_corpus.articles], k=2, iterations=150, seed=0)
        provider = HashEmbeddingProvider(dims=8, seed=0)
        clusters = hac(model.topics, 2, provider)
        groups = group_articles(model, clusters, bows_corpus)
        by_article = {aid: g.group_id for g in groups for aid in g.article_ids}
        assert by_article["a0"] == by_article["a1"]

    def test_hint_partition_bypasses_topics(self):
        corpus = self._corpus(
            ["Alpha text here.", "Beta text here.", "Gamma text here."],
            hints=["g1", "g2", "g1"],
        )
        groups = group_articles(None, None, corpus)
        assert {g.group_id: g.article_ids for g in groups} == {
            "g1": ["a0", "a2"],
            "g2": ["a1"],
        }
        assert all(g.source == "group_hint" for g in groups)

    def test_singleton_flagged(self):
        corpus = self._corpus(["Only text."], hints=["g1"])
        groups = group_articles(None, None, corpus)
        assert groups[0].singleton is True

    def test_mixed_hints_rejected(self):
        corpus = self._corpus(["One text.", "Two text."], hints=["g1", None])
        with pytest.raises(ClusteringError, match="mixed"):
            group_articles(None, None, corpus)

    def test_partition_law(self):
        corpus = self._corpus(
            ["apple banana apple", "banana cherry apple", "xray yarn xray", "yarn zebra xray"]
        )
        from topicsum.corpus import bag_of_words

        model = fit_lda([bag_of_words(a) for a in corpus.articles], k=3, iterations=100, seed=1)
        provider = HashEmbeddingProvider(dims=8, seed=0)
        clusters = select_cluster_count(model.topics, provider)
        groups = group_articles(model, clusters, corpus)
        seen = [aid for g in groups for aid in g.article_ids]
        assert sorted(seen) == ["a0", "a1", "a2", "a3"]
