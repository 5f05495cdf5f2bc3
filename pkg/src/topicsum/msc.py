"""Multi-sentence compression over word graphs.

A cluster of language units is merged into a directed graph whose nodes are
(lowercased token, POS tag) pairs plus virtual START/END nodes; every unit's
token sequence is a START-to-END walk. Candidate fused sentences are loopless
START-to-END paths, found in increasing cost order, filtered by length
bounds, a verb requirement, and the rule that a candidate must span at least
two units. Paths are scored by a convex combination of topical coverage and
relevance to the unit cluster, then selected greedily under a score
threshold, a pairwise redundancy threshold, and a summary word budget.

Node merging follows the classic compression scheme: a token of a new unit
merges into an existing node only when the node does not already hold a token
of the same unit; among several eligible nodes, the one with the larger
adjacent-context overlap wins, then the more frequent one. Stopwords merge
only on positive (non-stopword) context overlap, punctuation only when both
neighbors match. Tokens that cannot merge get a fresh node, so the same
(token, POS) pair may own several nodes, distinguished by an instance number.
"""

from __future__ import annotations

import heapq
import warnings
from dataclasses import dataclass, field

import numpy as np

from .corpus import tokenize_and_tag
from .elu import LanguageUnit
from .embeddings import EmbeddingProvider, cosine, encode_unit
from .grouping import ELUCluster
from .topic_clustering import TopicCluster
from .wordlists import STOPWORDS as _STOPS

START_KEY = ("<s>", "START", 0)
END_KEY = ("</s>", "END", 0)

_MAX_SEARCH_POPS = 1_000_000


class MscError(ValueError):
    pass


@dataclass
class MscConfig:
    alpha: float = 0.5
    tau: float = 0.5
    delta: float = 0.8
    word_budget: int = 100
    k_paths: int = 200
    min_len: float | None = None
    max_len: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise MscError(f"alpha must be in [0,1], got {self.alpha}")
        if not (0.0 <= self.tau <= 1.0 and 0.0 <= self.delta <= 1.0):
            raise MscError("tau and delta must be in [0,1]")
        if self.word_budget <= 0:
            raise MscError("word budget must be positive")


@dataclass
class _Edge:
    traversals: int = 0
    units: set = field(default_factory=set)

    @property
    def weight(self) -> float:
        return 1.0 / (1.0 + self.traversals)


class WordGraph:
    def __init__(self):
        self.occurrences: dict[tuple, list[tuple[str, int]]] = {START_KEY: [], END_KEY: []}
        self.edges: dict[tuple[tuple, tuple], _Edge] = {}
        self.unit_tokens: dict[str, list[tuple[str, str]]] = {}
        self.unit_walks: dict[str, list[tuple]] = {}
        self._instances: dict[tuple[str, str], int] = {}

    @property
    def nodes(self) -> list[tuple]:
        return list(self.occurrences)

    def node_units(self, key: tuple) -> set:
        return {u for u, _ in self.occurrences[key]}

    def successors(self, key: tuple) -> list[tuple]:
        return sorted(b for (a, b) in self.edges if a == key)

    def edge_weight(self, a: tuple, b: tuple) -> float:
        return self.edges[(a, b)].weight

    # -- construction ------------------------------------------------------

    def _neighbor(self, unit_id: str, index: int) -> tuple[str, str]:
        tokens = self.unit_tokens[unit_id]
        if index < 0:
            return START_KEY[:2]
        if index >= len(tokens):
            return END_KEY[:2]
        return tokens[index]

    def _context_overlap(
        self, key: tuple, prev: tuple[str, str], nxt: tuple[str, str], content_only: bool
    ) -> int:
        overlap = 0
        for unit_id, idx in self.occurrences[key]:
            left = self._neighbor(unit_id, idx - 1)
            right = self._neighbor(unit_id, idx + 1)
            if left == prev and not (content_only and left[0] in _STOPS):
                overlap += 1
            if right == nxt and not (content_only and right[0] in _STOPS):
                overlap += 1
        return overlap

    def _candidates(self, pair: tuple[str, str], unit_id: str) -> list[tuple]:
        count = self._instances.get(pair, 0)
        return [
            pair + (i,)
            for i in range(count)
            if unit_id not in self.node_units(pair + (i,))
        ]

    def _new_node(self, pair: tuple[str, str], unit_id: str, index: int) -> tuple:
        instance = self._instances.get(pair, 0)
        self._instances[pair] = instance + 1
        key = pair + (instance,)
        self.occurrences[key] = [(unit_id, index)]
        return key

    def _merge(self, key: tuple, unit_id: str, index: int) -> tuple:
        self.occurrences[key].append((unit_id, index))
        return key

    def add_unit(self, unit_id: str, tokens: list[tuple[str, str]]) -> None:
        if unit_id in self.unit_tokens:
            raise MscError(f"duplicate unit id {unit_id!r}")
        if not tokens:
            raise MscError(f"unit {unit_id!r} has no tokens")
        self.unit_tokens[unit_id] = tokens
        mapping: list[tuple | None] = [None] * len(tokens)

        def kind(pair):
            if pair[1] == "PUNCT":
                return "punct"
            return "stop" if pair[0] in _STOPS else "content"

        # Pass 1: content words with zero or one candidate node.
        deferred = []
        for j, pair in enumerate(tokens):
            if kind(pair) != "content":
                continue
            count = self._instances.get(pair, 0)
            if count == 0:
                mapping[j] = self._new_node(pair, unit_id, j)
            elif count == 1:
                key = pair + (0,)
                if unit_id not in self.node_units(key):
                    mapping[j] = self._merge(key, unit_id, j)
                else:
                    mapping[j] = self._new_node(pair, unit_id, j)
            else:
                deferred.append(j)

        # Pass 2: ambiguous content words, by context overlap then frequency.
        for j in deferred:
            pair = tokens[j]
            cands = self._candidates(pair, unit_id)
            if not cands:
                mapping[j] = self._new_node(pair, unit_id, j)
                continue
            prev, nxt = self._neighbor(unit_id, j - 1), self._neighbor(unit_id, j + 1)
            overlaps = [self._context_overlap(c, prev, nxt, content_only=False) for c in cands]
            if max(overlaps) > 0:
                key = cands[overlaps.index(max(overlaps))]
            else:
                freqs = [len(self.occurrences[c]) for c in cands]
                key = cands[freqs.index(max(freqs))]
            mapping[j] = self._merge(key, unit_id, j)

        # Pass 3: stopwords, merged only on positive non-stopword context overlap.
        for j, pair in enumerate(tokens):
            if kind(pair) != "stop":
                continue
            cands = self._candidates(pair, unit_id)
            prev, nxt = self._neighbor(unit_id, j - 1), self._neighbor(unit_id, j + 1)
            overlaps = [self._context_overlap(c, prev, nxt, content_only=True) for c in cands]
            if cands and max(overlaps) > 0:
                mapping[j] = self._merge(cands[overlaps.index(max(overlaps))], unit_id, j)
            else:
                mapping[j] = self._new_node(pair, unit_id, j)

        # Pass 4: punctuation, merged only when both neighbors match.
        for j, pair in enumerate(tokens):
            if kind(pair) != "punct":
                continue
            cands = self._candidates(pair, unit_id)
            prev, nxt = self._neighbor(unit_id, j - 1), self._neighbor(unit_id, j + 1)
            overlaps = [self._context_overlap(c, prev, nxt, content_only=False) for c in cands]
            if cands and max(overlaps) >= 2:
                mapping[j] = self._merge(cands[overlaps.index(max(overlaps))], unit_id, j)
            else:
                mapping[j] = self._new_node(pair, unit_id, j)

        walk = [START_KEY] + [key for key in mapping] + [END_KEY]
        for a, b in zip(walk, walk[1:]):
            edge = self.edges.setdefault((a, b), _Edge())
            edge.traversals += 1
            edge.units.add(unit_id)
        self.unit_walks[unit_id] = walk


def build_word_graph(units: list[LanguageUnit]) -> WordGraph:
    """Merge a cluster of language units into one word graph."""
    if not units:
        raise MscError("no units")
    graph = WordGraph()
    for unit in units:
        tokens = [(t.lower, t.pos) for t in tokenize_and_tag(unit.text)]
        graph.add_unit(unit.unit_id, tokens)
    return graph


@dataclass
class Path:
    nodes: tuple
    text: str
    word_count: int
    spanned_units: frozenset
    cost: float
    coverage: float = 0.0
    relevance: float = 0.0
    score: float = 0.0
    cluster_id: int | None = None
    encoding: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def content_nodes(self) -> tuple:
        return self.nodes[1:-1]


def detokenize(tokens: list[tuple[str, str]]) -> str:
    """Single spaces, no space before punctuation, first alphabetic token
    sentence-cased."""
    out = ""
    cased = False
    for lower, pos in tokens:
        piece = lower
        if not cased and piece[:1].isalpha():
            piece = piece[0].upper() + piece[1:]
            cased = True
        if pos == "PUNCT" and out:
            out += piece
        else:
            out += (" " if out else "") + piece
    return out


def _make_path(graph: WordGraph, seq: tuple, cost: float) -> Path:
    content = seq[1:-1]
    spanned = frozenset().union(*(graph.node_units(k) for k in content)) if content else frozenset()
    return Path(
        nodes=seq,
        text=detokenize([(k[0], k[1]) for k in content]),
        word_count=sum(1 for k in content if k[1] != "PUNCT"),
        spanned_units=spanned,
        cost=cost,
    )


def enumerate_candidate_paths(graph: WordGraph, config: MscConfig) -> list[Path]:
    """The k_paths cheapest loopless START-to-END paths, filtered to spans of
    at least two units, the configured length bounds, and at least one verb.

    Paths are emitted in (cost, node sequence) order, which is a total order,
    so the result is deterministic.
    """
    adjacency = {key: [] for key in graph.occurrences}
    for (a, b), edge in graph.edges.items():
        adjacency[a].append((b, edge.weight))
    for succs in adjacency.values():
        succs.sort()

    complete: list[tuple[float, tuple]] = []
    heap: list[tuple[float, tuple]] = [(0.0, (START_KEY,))]
    pops = 0
    while heap and len(complete) < config.k_paths:
        cost, seq = heapq.heappop(heap)
        pops += 1
        if pops > _MAX_SEARCH_POPS:
            warnings.warn("path search expansion cap reached; candidate set may be truncated")
            break
        last = seq[-1]
        if last == END_KEY:
            complete.append((cost, seq))
            continue
        for succ, weight in adjacency[last]:
            if succ in seq:
                continue
            heapq.heappush(heap, (cost + weight, seq + (succ,)))

    paths = [_make_path(graph, seq, cost) for cost, seq in complete]
    lo = config.min_len if config.min_len is not None else 0.0
    hi = config.max_len if config.max_len is not None else float("inf")
    return [
        p
        for p in paths
        if len(p.spanned_units) >= 2
        and lo <= p.word_count <= hi
        and any(k[1] == "VERB" for k in p.content_nodes)
    ]


def topical_coverage(path: Path, topic_cluster: TopicCluster, embed: EmbeddingProvider) -> float:
    """Mean over the path's content tokens of the mean over the cluster's
    topics of the best cosine against that topic's keywords."""
    if not topic_cluster.keyword_vectors:
        raise MscError("topic cluster has no keyword vectors")
    content = [k[0] for k in path.content_nodes if k[1] != "PUNCT" and k[0] not in _STOPS]
    if not content:
        warnings.warn(f"path {path.text!r} has no content tokens; coverage 0")
        return 0.0
    unique = sorted(set(content))
    term_vecs = dict(zip(unique, embed.embed_terms(unique)))
    total = 0.0
    for token in content:
        v = term_vecs[token]
        per_topic = [max(cosine(v, kv) for kv in kws) for kws in topic_cluster.keyword_vectors]
        total += float(np.mean(per_topic))
    return total / len(content)


def path_relevance(
    path: Path, elu_cluster: ELUCluster, embed: EmbeddingProvider, seed: int = 0
) -> float:
    """Cosine between the path's unit encoding and the cluster centroid."""
    centroid = elu_cluster.centroid_vector
    enc = path.encoding
    if enc is None:
        enc = encode_unit([path.text], embed, target_dim=centroid.shape[0], seed=seed)
        path.encoding = enc
    if enc.shape != centroid.shape:
        raise MscError(f"encoding dims {enc.shape} do not match centroid {centroid.shape}")
    return cosine(enc, centroid)


def path_score(coverage: float, relevance: float, alpha: float) -> float:
    if not 0.0 <= alpha <= 1.0:
        raise MscError(f"alpha must be in [0,1], got {alpha}")
    return alpha * coverage + (1.0 - alpha) * relevance


@dataclass
class SelectionResult:
    paths: list[Path]
    degraded: bool
    diagnostics: list[str]


def select_paths(candidates: list[Path], config: MscConfig, pairwise_sim) -> SelectionResult:
    """Greedy selection by descending score.

    A candidate is skipped when its score is below tau, when it is similar
    (>= delta) to an already kept path (the kept one scored at least as high),
    or when adding it would exceed the word budget. If nothing reaches tau the
    single best-scoring candidate that fits the budget is emitted with a
    degraded flag.
    """
    order = sorted(candidates, key=lambda p: (-p.score, p.cost, p.nodes))
    selected: list[Path] = []
    total = 0
    diagnostics: list[str] = []
    for cand in order:
        if cand.score < config.tau:
            continue
        if any(pairwise_sim(cand, kept) >= config.delta for kept in selected):
            continue
        if total + cand.word_count > config.word_budget:
            continue
        selected.append(cand)
        total += cand.word_count
    degraded = False
    if not selected:
        if not candidates:
            diagnostics.append("no candidate paths")
        else:
            fitting = [c for c in order if c.word_count <= config.word_budget]
            if fitting:
                selected = [fitting[0]]
                degraded = True
                diagnostics.append("no candidate met tau; emitting the best-scoring path")
            else:
                diagnostics.append("no candidate fits the word budget")
    return SelectionResult(paths=selected, degraded=degraded, diagnostics=diagnostics)


def encoding_similarity(embed: EmbeddingProvider, target_dim: int, seed: int = 0):
    """Pairwise path similarity for the redundancy test: cosine of the two
    paths' unit encodings."""

    def sim(a: Path, b: Path) -> float:
        for p in (a, b):
            if p.encoding is None:
                p.encoding = encode_unit([p.text], embed, target_dim=target_dim, seed=seed)
        return cosine(a.encoding, b.encoding)

    return sim


def sentence_length_bounds(articles) -> tuple[float, float]:
    """Per-group fused-sentence length bounds: the mean over articles of each
    article's shortest (resp. longest) sentence length in words."""
    mins, maxs = [], []
    for article in articles:
        lengths = [
            sum(1 for t in s.tokens if t.pos != "PUNCT") for s in article.sentences if s.tokens
        ]
        if lengths:
            mins.append(min(lengths))
            maxs.append(max(lengths))
    if not mins:
        raise MscError("no sentences to derive length bounds from")
    return float(np.mean(mins)), float(np.mean(maxs))


@dataclass
class Summary:
    group_id: str
    kind: str  # "extractive" | "abstractive"
    paths: list[Path]
    degraded: bool = False
    fallback_texts: list[str] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    article_ids: list[str] = field(default_factory=list)

    @property
    def text(self) -> str:
        if self.paths:
            return " ".join(p.text for p in self.paths)
        return " ".join(self.fallback_texts)

    @property
    def total_word_count(self) -> int:
        if self.paths:
            return sum(p.word_count for p in self.paths)
        return sum(
            1 for t in tokenize_and_tag(" ".join(self.fallback_texts)) if t.pos != "PUNCT"
        )

    def to_dict(self) -> dict:
        return {
            "group_id": self.group_id,
            "kind": self.kind,
            "degraded": self.degraded,
            "total_word_count": self.total_word_count,
            "paths": [
                {
                    "cluster_id": p.cluster_id,
                    "text": p.text,
                    "coverage": p.coverage,
                    "relevance": p.relevance,
                    "score": p.score,
                    "spanned_units": sorted(p.spanned_units),
                    "word_count": p.word_count,
                }
                for p in self.paths
            ],
            "fallback_texts": self.fallback_texts,
            "diagnostics": self.diagnostics,
            "article_ids": self.article_ids,
        }
