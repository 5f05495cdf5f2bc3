"""Command-line interface: summarize, evaluate, topics.

All outputs are deterministic for a fixed corpus, config, and seed (with the
offline providers), so a run can be reproduced byte-for-byte from its
manifest. Errors print one machine-readable JSON line to stderr and map to
the documented exit codes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import Corpus, IngestionError, load_corpus
from .pipeline import ConfigError, PipelineConfig, evaluate_summaries, run_summarize
from .provider_protocol import ProviderProtocolError, ProviderUnavailable, conformance_check

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CONFIG_ERROR = 3
EXIT_PROVIDER_UNAVAILABLE = 4
EXIT_INTERNAL = 5

_EXIT_NAMES = {
    EXIT_OK: "OK",
    EXIT_INPUT_ERROR: "INPUT_ERROR",
    EXIT_CONFIG_ERROR: "CONFIG_ERROR",
    EXIT_PROVIDER_UNAVAILABLE: "PROVIDER_UNAVAILABLE",
    EXIT_INTERNAL: "INTERNAL",
}


def _fail(code: int, message: str) -> int:
    sys.stderr.write(json.dumps({"error": _EXIT_NAMES[code], "detail": message}) + "\n")
    return code


def _load_config(path: str | None, args: argparse.Namespace) -> PipelineConfig:
    data = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    config = PipelineConfig.from_dict(data)
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
        config.generation = type(config.generation)(
            n=config.generation.n,
            temperature=config.generation.temperature,
            top_k=config.generation.top_k,
            seed=args.seed,
            max_tokens=config.generation.max_tokens,
        )
    if getattr(args, "k_range", None):
        lo, _, hi = args.k_range.partition(":")
        config.k_range = (int(lo), int(hi or lo))
    for capability in ("embed", "generate", "coref", "headline"):
        value = getattr(args, f"provider_{capability}", None)
        if value:
            config.providers[capability] = value
    msc_overrides = {}
    for name, attr in (("alpha", "alpha"), ("tau", "tau"), ("delta", "delta"), ("word_budget", "budget")):
        value = getattr(args, attr, None)
        if value is not None:
            msc_overrides[name] = value
    if msc_overrides:
        import dataclasses

        config.msc = dataclasses.replace(config.msc, **msc_overrides)
    return config


def _read_corpus(path: str) -> Corpus:
    p = Path(path)
    fmt = "directory-of-text" if p.is_dir() else "lines-of-records"
    return load_corpus(p, format=fmt)


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True, indent=2)
        fh.write("\n")


def cmd_summarize(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config, args)
    except (ConfigError, ValueError, OSError) as exc:
        return _fail(EXIT_CONFIG_ERROR, str(exc))
    try:
        corpus = _read_corpus(args.corpus)
    except IngestionError as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc))
    try:
        summaries, manifest = run_summarize(corpus, config, args.mode)
    except (ProviderUnavailable,) as exc:
        return _fail(EXIT_PROVIDER_UNAVAILABLE, str(exc))
    except (ProviderProtocolError, ConfigError) as exc:
        return _fail(EXIT_CONFIG_ERROR, str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        return _fail(EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "summaries.jsonl", "w", encoding="utf-8") as fh:
        for summary in summaries:
            fh.write(json.dumps(summary.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")
    _write_json(out_dir / "manifest.json", manifest)
    for summary in summaries:
        print(f"{summary.group_id}\t{summary.total_word_count} words\t{summary.text}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        corpus = _read_corpus(args.corpus)
        records = []
        with open(args.summaries, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(json.loads(line))
    except (IngestionError, OSError, json.JSONDecodeError) as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc))
    try:
        report = evaluate_summaries(records, corpus)
    except ValueError as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        return _fail(EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")
    _write_json(Path(args.out), report)
    print(f"{'group':<12}{'R-1':>8}{'R-2':>8}{'R-L':>8}{'copy':>8}")
    for gid, row in report["per_group"].items():
        print(
            f"{gid:<12}{row['rouge_1']['f1']:>8.4f}{row['rouge_2']['f1']:>8.4f}"
            f"{row['rouge_l']['f1']:>8.4f}{row['copy_rate']:>8.4f}"
        )
    if report["macro"]:
        m = report["macro"]
        print(
            f"{'macro':<12}{m['rouge_1']['f1']:>8.4f}{m['rouge_2']['f1']:>8.4f}"
            f"{m['rouge_l']['f1']:>8.4f}{m['copy_rate']:>8.4f}"
        )
    return EXIT_OK


def cmd_topics(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config, args)
    except (ConfigError, ValueError, OSError) as exc:
        return _fail(EXIT_CONFIG_ERROR, str(exc))
    try:
        corpus = _read_corpus(args.corpus)
        if not corpus.articles:
            return _fail(EXIT_INPUT_ERROR, "corpus has no articles")
    except IngestionError as exc:
        return _fail(EXIT_INPUT_ERROR, str(exc))
    try:
        from .pipeline import build_embed_provider, run_topic_stage

        embed = build_embed_provider(config)
        stage = run_topic_stage(corpus, config, embed)
    except (ProviderUnavailable,) as exc:
        return _fail(EXIT_PROVIDER_UNAVAILABLE, str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        return _fail(EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")
    payload = {"config": config.to_dict(), **stage.manifest()}
    _write_json(Path(args.out), payload)
    if stage.model is not None:
        print(f"chosen k: {stage.model.k}")
        for k, c in stage.coherence_table:
            print(f"  k={k}\tcoherence={c:.6f}")
    for gid, ids in sorted(payload["groups"].items()):
        print(f"group {gid}: {', '.join(ids)}")
    return EXIT_OK


def cmd_conformance(args: argparse.Namespace) -> int:
    try:
        report = conformance_check(args.endpoint, timeout=args.timeout)
    except Exception as exc:
        return _fail(EXIT_PROVIDER_UNAVAILABLE, str(exc))
    print(report.render())
    return EXIT_OK if report.passed else EXIT_PROVIDER_UNAVAILABLE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topicsum")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--k-range", dest="k_range", help="lo:hi topic sweep range")
        p.add_argument("--provider.embed", dest="provider_embed")
        p.add_argument("--provider.generate", dest="provider_generate")
        p.add_argument("--provider.headline", dest="provider_headline")
        p.add_argument("--provider.coref", dest="provider_coref")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--tau", type=float, default=None)
        p.add_argument("--delta", type=float, default=None)
        p.add_argument("--budget", type=int, default=None)

    p_sum = sub.add_parser("summarize", help="run the summarization pipeline")
    p_sum.add_argument("corpus", help="lines-of-records file or directory of .txt")
    p_sum.add_argument("--mode", choices=["extractive", "abstractive"], default="extractive")
    p_sum.add_argument("--out", required=True, help="output directory")
    add_common(p_sum)
    p_sum.set_defaults(fn=cmd_summarize)

    p_eval = sub.add_parser("evaluate", help="score summaries against their sources")
    p_eval.add_argument("summaries", help="summaries.jsonl from the summarize command")
    p_eval.add_argument("corpus")
    p_eval.add_argument("--out", required=True, help="report path")
    p_eval.set_defaults(fn=cmd_evaluate)

    p_topics = sub.add_parser("topics", help="topic sweep and cluster report")
    p_topics.add_argument("corpus")
    p_topics.add_argument("--out", required=True, help="report path")
    add_common(p_topics)
    p_topics.set_defaults(fn=cmd_topics)

    p_conf = sub.add_parser("conformance", help="check a provider service")
    p_conf.add_argument("endpoint", help="provider base URL")
    p_conf.add_argument("--timeout", type=float, default=10.0)
    p_conf.set_defaults(fn=cmd_conformance)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
