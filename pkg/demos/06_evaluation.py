"""Score summaries with ROUGE against their sources, plus copy rate.

Run from the repository root:  python3 demos/06_evaluation.py
"""

import warnings
from pathlib import Path

from topicsum.corpus import load_corpus
from topicsum.evaluate import copy_rate, rouge_l, rouge_n
from topicsum.pipeline import PipelineConfig, evaluate_summaries, run_summarize

FIXTURE = Path(__file__).parent.parent / "src" / "topicsum" / "fixtures" / "mag12.jsonl"

# The metric primitives on tiny hand-checkable cases.
print("-- metric primitives")
print(f"   R-1('the cat' vs 'the cat sat') f1 = {rouge_n('the cat', 'the cat sat', 1).f1:.3f}")
print(f"   R-L('a b c d' vs 'a x c y')     f1 = {rouge_l('a b c d', 'a x c y').f1:.3f}")
print(f"   copy rate, fully copied        = {copy_rate('radars limit', ['Radars limit emissions.']):.1f}")
print(f"   copy rate, fully novel         = {copy_rate('zebras gallop', ['Radars limit emissions.']):.1f}")

# Extractive summaries copy every token from the sources, so their copy rate
# is exactly 1.0; the abstractive phase introduces novel words and lands
# below it.
corpus = load_corpus(FIXTURE)
config = PipelineConfig()
config.k_range = (2, 8)
print("\n-- pipeline evaluation (sources as reference)")
for mode in ("extractive", "abstractive"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        summaries, _ = run_summarize(corpus, config, mode)
        report = evaluate_summaries([s.to_dict() for s in summaries], corpus)
    macro = report["macro"]
    print(
        f"   {mode:<12} R-1={macro['rouge_1']['f1']:.3f} R-2={macro['rouge_2']['f1']:.3f} "
        f"R-L={macro['rouge_l']['f1']:.3f} copy={macro['copy_rate']:.3f}"
    )
