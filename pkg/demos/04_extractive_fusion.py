"""Fuse sentences through a shared word graph: the heart of the engine.

Run from the repository root:  python3 demos/04_extractive_fusion.py
"""

import warnings
from pathlib import Path

from topicsum.corpus import load_corpus
from topicsum.elu import LanguageUnit
from topicsum.msc import MscConfig, build_word_graph, enumerate_candidate_paths
from topicsum.pipeline import PipelineConfig, run_summarize

FIXTURE = Path(__file__).parent.parent / "src" / "topicsum" / "fixtures" / "mag12.jsonl"

# Two overlapping units merge into one graph; shared (token, tag) pairs
# become shared nodes, so loopless START-to-END paths can mix the sources.
unit_a = LanguageUnit(
    "u1", "a1", "ELU", (0,),
    "Radars are required to limit emissions in adjacent bands, but traditional "
    "rectangular pulses have high out-of-band emissions.",
    ("",),
)
unit_b = LanguageUnit(
    "u2", "a2", "ELU", (0,),
    "Millimeter wave radars are popularly used in last-mile radar based defense systems.",
    ("",),
)
graph = build_word_graph([unit_a, unit_b])
shared = [k for k in graph.nodes if len(graph.node_units(k)) > 1]
print(f"-- word graph: {len(graph.nodes)} nodes, {len(graph.edges)} edges")
print(f"   shared nodes: {shared}")

config = MscConfig(k_paths=500, min_len=5, max_len=20)
print("\n-- candidate fused paths (span >= 2 units, length bounds, >= 1 verb)")
for path in enumerate_candidate_paths(graph, config):
    print(f"   cost={path.cost:.2f}  words={path.word_count:>2}  {path.text}")

# The full extractive pipeline: topics -> groups -> core article -> ELU
# clusters -> per-cluster graphs -> scored paths -> greedy selection under
# the 100-word budget.
print("\n-- full extractive run on the bundled corpus")
corpus = load_corpus(FIXTURE)
pipeline_config = PipelineConfig()
pipeline_config.k_range = (2, 8)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    summaries, _ = run_summarize(corpus, pipeline_config, "extractive")
for summary in summaries:
    print(f"\n   group {summary.group_id} ({summary.total_word_count} words)")
    for path in summary.paths:
        print(
            f"     [cov={path.coverage:.2f} rel={path.relevance:.2f} "
            f"score={path.score:.2f}] {path.text}"
        )
