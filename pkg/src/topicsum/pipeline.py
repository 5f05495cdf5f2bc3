"""End-to-end orchestration: ingestion, topic stage, per-group summarization,
and evaluation, with a run manifest capturing everything needed to re-run.

Hint-grouped corpora (DUC-style) bypass the topic stage entirely; their path
scores are pure relevance (no topic signal exists). Topic-grouped corpora
score paths with the configured mix of topical coverage and relevance against
the group's topic cluster.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from . import __version__
from .abstractive import (
    GenerationParams,
    GenerationProvider,
    MockGenerationProvider,
    Providers,
    abstractive_summary,
    generate_headline,
)
from .corpus import Corpus, bag_of_words, tokenize_and_tag
from .elu import extract_elus, heuristic_coref
from .embeddings import (
    EmbeddingProvider,
    FileEmbeddingProvider,
    HashEmbeddingProvider,
    embed_document,
    encode_unit,
)
from .evaluate import copy_rate, rouge_l, rouge_n
from .grouping import centroid_cluster, identify_core
from .msc import (
    MscConfig,
    Summary,
    build_word_graph,
    encoding_similarity,
    enumerate_candidate_paths,
    path_relevance,
    path_score,
    select_paths,
    sentence_length_bounds,
    topical_coverage,
)
from .topic_clustering import (
    ArticleGroup,
    TopicCluster,
    group_articles,
    select_cluster_count,
    silhouette_sweep,
)
from .topics import TopicModel, sweep_topic_counts


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    """All knobs, pre-filled with the reference defaults."""

    seed: int = 0
    reduced_dim: int = 300
    embed_dims: int = 64
    providers: dict = field(
        default_factory=lambda: {
            "embed": "hash",
            "generate": "mock",
            "headline": "mock",
            "coref": "heuristic",
        }
    )
    k_range: tuple[int, int] = (2, 92)
    iterations: int = 500
    lda_alpha: float | None = None  # None = 50/k
    lda_beta: float = 0.01
    msc: MscConfig = field(default_factory=MscConfig)
    generation: GenerationParams = field(default_factory=GenerationParams)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "reduced_dim": self.reduced_dim,
            "embed_dims": self.embed_dims,
            "providers": dict(self.providers),
            "topics": {
                "k_range": list(self.k_range),
                "iterations": self.iterations,
                "alpha": self.lda_alpha,
                "beta": self.lda_beta,
            },
            "msc": {
                "alpha": self.msc.alpha,
                "tau": self.msc.tau,
                "delta": self.msc.delta,
                "word_budget": self.msc.word_budget,
                "k_paths": self.msc.k_paths,
            },
            "generation": {
                "n": self.generation.n,
                "temperature": self.generation.temperature,
                "top_k": self.generation.top_k,
                "max_tokens": self.generation.max_tokens,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        try:
            cfg = cls()
            cfg.seed = int(data.get("seed", cfg.seed))
            cfg.reduced_dim = int(data.get("reduced_dim", cfg.reduced_dim))
            cfg.embed_dims = int(data.get("embed_dims", cfg.embed_dims))
            cfg.providers.update(data.get("providers", {}))
            topics = data.get("topics", {})
            if "k_range" in topics:
                lo, hi = topics["k_range"]
                cfg.k_range = (int(lo), int(hi))
            cfg.iterations = int(topics.get("iterations", cfg.iterations))
            cfg.lda_alpha = topics.get("alpha", cfg.lda_alpha)
            cfg.lda_beta = float(topics.get("beta", cfg.lda_beta))
            msc = data.get("msc", {})
            cfg.msc = MscConfig(
                alpha=float(msc.get("alpha", cfg.msc.alpha)),
                tau=float(msc.get("tau", cfg.msc.tau)),
                delta=float(msc.get("delta", cfg.msc.delta)),
                word_budget=int(msc.get("word_budget", cfg.msc.word_budget)),
                k_paths=int(msc.get("k_paths", cfg.msc.k_paths)),
            )
            gen = data.get("generation", {})
            cfg.generation = GenerationParams(
                n=int(gen.get("n", cfg.generation.n)),
                temperature=float(gen.get("temperature", cfg.generation.temperature)),
                top_k=int(gen.get("top_k", cfg.generation.top_k)),
                seed=cfg.seed,
                max_tokens=int(gen.get("max_tokens", cfg.generation.max_tokens)),
            )
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(f"invalid config: {exc}") from exc
        return cfg


def build_embed_provider(config: PipelineConfig) -> EmbeddingProvider:
    selection = config.providers.get("embed", "hash")
    if selection == "hash":
        return HashEmbeddingProvider(dims=config.embed_dims, seed=config.seed)
    if selection.startswith("file:"):
        return FileEmbeddingProvider(selection[len("file:") :])
    if selection.startswith("remote:"):
        from .provider_protocol import RemoteEmbeddingProvider

        return RemoteEmbeddingProvider(selection[len("remote:") :])
    raise ConfigError(f"unknown embed provider {selection!r}")


def build_generation_provider(config: PipelineConfig, capability: str = "generate") -> GenerationProvider:
    selection = config.providers.get(capability, "mock")
    if selection == "mock":
        return MockGenerationProvider()
    if selection.startswith("remote:"):
        from .provider_protocol import RemoteGenerationProvider

        return RemoteGenerationProvider(selection[len("remote:") :])
    raise ConfigError(f"unknown {capability} provider {selection!r}")


def build_coref(config: PipelineConfig):
    selection = config.providers.get("coref", "heuristic")
    if selection == "heuristic":
        return heuristic_coref
    if selection.startswith("remote:"):
        from .provider_protocol import remote_coref

        return remote_coref(selection[len("remote:") :])
    raise ConfigError(f"unknown coref provider {selection!r}")


@dataclass
class TopicStage:
    groups: list[ArticleGroup]
    model: TopicModel | None = None
    clusters: list[TopicCluster] | None = None
    coherence_table: list[tuple[int, float]] = field(default_factory=list)
    silhouette_table: list[tuple[int, float]] = field(default_factory=list)

    def manifest(self) -> dict:
        out: dict = {
            "groups": {g.group_id: list(g.article_ids) for g in self.groups},
            "group_sources": {g.group_id: g.source for g in self.groups},
        }
        if self.model is not None:
            out["topics"] = {
                "chosen_k": self.model.k,
                "coherence_table": [[k, c] for k, c in self.coherence_table],
                "seed": self.model.seed,
                "alpha": self.model.hyper_alpha,
                "beta": self.model.hyper_beta,
                "iterations": self.model.iterations,
                "keywords": {t.id: [term for term, _ in t.keywords] for t in self.model.topics},
            }
        if self.clusters is not None:
            out["topic_clusters"] = {
                "chosen_k": len(self.clusters),
                "silhouette_table": [[k, s] for k, s in self.silhouette_table],
                "clusters": {c.cluster_id: list(c.topic_ids) for c in self.clusters},
            }
        return out


def run_topic_stage(
    corpus: Corpus, config: PipelineConfig, embed: EmbeddingProvider
) -> TopicStage:
    """Topic modeling, topic clustering, and article grouping; or just the
    hint partition when every article carries a group hint."""
    if corpus.articles and all(a.group_hint is not None for a in corpus.articles):
        return TopicStage(groups=group_articles(None, None, corpus))
    bows = [bag_of_words(a) for a in corpus.articles]
    priors = (config.lda_alpha, config.lda_beta)
    sweep = sweep_topic_counts(
        bows, config.k_range, priors=priors, iterations=config.iterations, seed=config.seed
    )
    best = max(sweep, key=lambda r: (r[2], -r[0]))
    model = best[1]
    silhouette_table = []
    if len(model.topics) >= 3:
        silhouette_table = [(k, s) for k, s, _ in silhouette_sweep(model.topics, embed)]
    clusters = select_cluster_count(model.topics, embed)
    groups = group_articles(model, clusters, corpus)
    return TopicStage(
        groups=groups,
        model=model,
        clusters=clusters,
        coherence_table=[(k, c) for k, _, c in sweep],
        silhouette_table=silhouette_table,
    )


def group_language_units(
    corpus: Corpus,
    group: ArticleGroup,
    embed: EmbeddingProvider,
    coref,
    config: PipelineConfig,
):
    """Per-group structure shared by both phases: core selection, ELUs, unit
    encodings, and centroid clusters."""
    articles = [corpus.article_by_id(aid) for aid in group.article_ids]
    doc_vectors = {a.id: embed_document(a, embed) for a in articles}
    core = identify_core(group, doc_vectors)
    elus_by_article = {a.id: extract_elus(a, coref) for a in articles}
    encodings = {}
    for units in elus_by_article.values():
        for unit in units:
            encodings[unit.unit_id] = encode_unit(
                list(unit.sentence_texts), embed, target_dim=config.reduced_dim, seed=config.seed
            )
    core_elus = elus_by_article[core.core_article_id]
    peripheral_elus = [
        u for aid in core.peripheral_ids for u in elus_by_article[aid]
    ]
    clusters = centroid_cluster(core_elus, peripheral_elus, encodings)
    return articles, core, clusters


def extractive_group_summary(
    corpus: Corpus,
    group: ArticleGroup,
    topic_cluster: TopicCluster | None,
    embed: EmbeddingProvider,
    coref,
    config: PipelineConfig,
) -> Summary:
    """Fuse each ELU cluster's units and select paths for the group under one
    word budget. Groups whose clusters cannot fuse (e.g. singletons) fall
    back to the seed units, flagged degraded."""
    articles, _, clusters = group_language_units(corpus, group, embed, coref, config)
    min_len, max_len = sentence_length_bounds(articles)
    msc_config = dataclasses.replace(config.msc, min_len=min_len, max_len=max_len)
    alpha = msc_config.alpha if topic_cluster is not None else 0.0

    candidates = []
    for cluster in clusters:
        if len(cluster.members) < 2:
            continue
        graph = build_word_graph(cluster.members)
        for path in enumerate_candidate_paths(graph, msc_config):
            coverage = topical_coverage(path, topic_cluster, embed) if topic_cluster else 0.0
            relevance = path_relevance(path, cluster, embed, seed=config.seed)
            path.coverage = coverage
            path.relevance = relevance
            path.score = path_score(coverage, relevance, alpha)
            path.cluster_id = cluster.cluster_id
            candidates.append(path)

    result = select_paths(
        candidates, msc_config, encoding_similarity(embed, config.reduced_dim, seed=config.seed)
    )
    summary = Summary(
        group_id=group.group_id,
        kind="extractive",
        paths=result.paths,
        degraded=result.degraded,
        diagnostics=list(result.diagnostics),
        article_ids=list(group.article_ids),
    )
    if not summary.paths:
        used = 0
        for cluster in clusters:
            wc = sum(1 for t in tokenize_and_tag(cluster.seed_unit.text) if t.pos != "PUNCT")
            if used + wc > msc_config.word_budget:
                continue
            summary.fallback_texts.append(cluster.seed_unit.text)
            used += wc
        summary.degraded = True
        summary.diagnostics.append("no fused path selected; emitting core units")
    return summary


def abstractive_group_summary(
    corpus: Corpus,
    group: ArticleGroup,
    topic_cluster: TopicCluster | None,
    embed: EmbeddingProvider,
    generation: GenerationProvider,
    headline_provider: GenerationProvider,
    coref,
    config: PipelineConfig,
) -> Summary:
    articles, _, clusters = group_language_units(corpus, group, embed, coref, config)
    min_len, max_len = sentence_length_bounds(articles)
    msc_config = dataclasses.replace(config.msc, min_len=min_len, max_len=max_len)
    titles = {a.id: generate_headline(a, headline_provider) for a in articles}
    return abstractive_summary(
        clusters,
        titles,
        Providers(embed=embed, generate=generation),
        msc_config,
        topic_cluster,
        params=config.generation,
        group_id=group.group_id,
        article_ids=list(group.article_ids),
        seed=config.seed,
        target_dim=config.reduced_dim,
    )


def run_summarize(corpus: Corpus, config: PipelineConfig, mode: str) -> tuple[list[Summary], dict]:
    """The full pipeline for one mode; returns summaries and the run manifest."""
    if mode not in ("extractive", "abstractive"):
        raise ConfigError(f"unknown mode {mode!r}")
    embed = build_embed_provider(config)
    coref = build_coref(config)
    if mode == "abstractive":
        generation = build_generation_provider(config, "generate")
        headline_provider = build_generation_provider(config, "headline")
    stage = run_topic_stage(corpus, config, embed)
    cluster_by_id = {c.cluster_id: c for c in (stage.clusters or [])}

    summaries = []
    for group in stage.groups:
        topic_cluster = (
            cluster_by_id.get(group.topic_cluster_id)
            if group.topic_cluster_id is not None
            else None
        )
        if mode == "extractive":
            summary = extractive_group_summary(corpus, group, topic_cluster, embed, coref, config)
        else:
            summary = abstractive_group_summary(
                corpus, group, topic_cluster, embed, generation, headline_provider, coref, config
            )
        summaries.append(summary)

    manifest = {
        "schema_version": 1,
        "tool_version": __version__,
        "mode": mode,
        "config": config.to_dict(),
        "ingestion_warnings": list(corpus.warnings),
        **stage.manifest(),
    }
    return summaries, manifest


def evaluate_summaries(records: list[dict], corpus: Corpus) -> dict:
    """ROUGE-1/2/L and copy rate per group (sources as reference) plus
    unweighted macro averages."""
    known = {a.id for a in corpus.articles}
    per_group = {}
    for rec in records:
        missing = [aid for aid in rec["article_ids"] if aid not in known]
        if missing:
            raise ValueError(f"summary {rec['group_id']!r} references unknown articles: {missing}")
        sources = [corpus.article_by_id(aid).body for aid in rec["article_ids"]]
        candidate = (
            " ".join(p["text"] for p in rec["paths"])
            if rec["paths"]
            else " ".join(rec.get("fallback_texts", []))
        )
        reference = " ".join(sources)
        r1 = rouge_n(candidate, reference, 1)
        r2 = rouge_n(candidate, reference, 2)
        rl = rouge_l(candidate, reference)
        per_group[rec["group_id"]] = {
            "rouge_1": dataclasses.asdict(r1),
            "rouge_2": dataclasses.asdict(r2),
            "rouge_l": dataclasses.asdict(rl),
            "copy_rate": copy_rate(candidate, sources),
            "kind": rec.get("kind"),
        }
    macro = {}
    if per_group:
        for metric in ("rouge_1", "rouge_2", "rouge_l"):
            macro[metric] = {
                part: sum(g[metric][part] for g in per_group.values()) / len(per_group)
                for part in ("precision", "recall", "f1")
            }
        macro["copy_rate"] = sum(g["copy_rate"] for g in per_group.values()) / len(per_group)
    return {"per_group": per_group, "macro": macro, "groups": len(per_group)}
