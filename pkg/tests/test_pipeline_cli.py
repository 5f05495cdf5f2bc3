import json
import warnings
from pathlib import Path

import pytest

from topicsum.cli import (
    EXIT_CONFIG_ERROR,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_PROVIDER_UNAVAILABLE,
    main,
)
from topicsum.corpus import load_corpus
from topicsum.pipeline import PipelineConfig, evaluate_summaries, run_summarize

FIXTURES = Path(__file__).parent.parent / "src" / "topicsum" / "fixtures"
MAG12 = FIXTURES / "mag12.jsonl"
DUC6 = FIXTURES / "duc6.jsonl"


def quiet_run(corpus, config, mode):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return run_summarize(corpus, config, mode)


def small_config(**kwargs):
    config = PipelineConfig(**kwargs)
    config.k_range = (2, 6)
    config.iterations = 200
    return config


class TestConfigDefaults:
    def test_reference_constants_prefilled(self):
        config = PipelineConfig()
        assert config.msc.tau == 0.5
        assert config.msc.delta == 0.8
        assert config.msc.word_budget == 100
        assert config.generation.n == 10
        assert config.generation.temperature == 0.7
        assert config.generation.top_k == 2
        assert config.reduced_dim == 300
        assert config.k_range == (2, 92)
        assert config.iterations == 500
        assert config.lda_alpha is None  # 50/k at fit time
        assert config.lda_beta == 0.01

    def test_default_k_range_recorded_in_manifest(self):
        config = PipelineConfig()
        assert config.to_dict()["topics"]["k_range"] == [2, 92]


class TestRunSummarize:
    def test_extractive_budget_and_coverage_of_groups(self):
        corpus = load_corpus(MAG12)
        summaries, manifest = quiet_run(corpus, small_config(), "extractive")
        assert len(summaries) == len(manifest["groups"])
        grouped_ids = sorted(aid for ids in manifest["groups"].values() for aid in ids)
        assert grouped_ids == sorted(a.id for a in corpus.articles)
        for s in summaries:
            assert s.total_word_count <= 100
            assert s.text.strip()

    def test_hint_corpus_bypasses_topics(self):
        corpus = load_corpus(DUC6)
        summaries, manifest = quiet_run(corpus, small_config(), "abstractive")
        assert "topics" not in manifest
        assert sorted(manifest["groups"]) == ["d301", "d302"]
        assert {s.group_id for s in summaries} == {"d301", "d302"}

    def test_abstractive_copy_rate_below_one(self):
        corpus = load_corpus(MAG12)
        summaries, _ = quiet_run(corpus, small_config(), "abstractive")
        report = evaluate_summaries([s.to_dict() for s in summaries], corpus)
        for gid, row in report["per_group"].items():
            assert row["copy_rate"] < 1.0, gid

    def test_extractive_copy_rate_exactly_one(self):
        corpus = load_corpus(MAG12)
        summaries, _ = quiet_run(corpus, small_config(), "extractive")
        report = evaluate_summaries([s.to_dict() for s in summaries], corpus)
        for gid, row in report["per_group"].items():
            assert row["copy_rate"] == 1.0, gid

    def test_unknown_mode_rejected(self):
        corpus = load_corpus(MAG12)
        with pytest.raises(Exception, match="mode"):
            run_summarize(corpus, small_config(), "both")


class TestEvaluateSummaries:
    def test_self_evaluation_scores_one(self):
        corpus = load_corpus(MAG12)
        body = corpus.articles[0].body
        records = [
            {
                "group_id": "g",
                "kind": "extractive",
                "article_ids": ["r1"],
                "paths": [{"text": body}],
                "fallback_texts": [],
            }
        ]
        report = evaluate_summaries(records, corpus)
        assert report["per_group"]["g"]["rouge_1"]["f1"] == pytest.approx(1.0)
        assert report["per_group"]["g"]["copy_rate"] == 1.0

    def test_unknown_article_named(self):
        corpus = load_corpus(MAG12)
        records = [
            {"group_id": "g", "article_ids": ["nope"], "paths": [], "fallback_texts": ["x"]}
        ]
        with pytest.raises(ValueError, match="nope"):
            evaluate_summaries(records, corpus)

    def test_macro_is_unweighted_mean(self):
        corpus = load_corpus(MAG12)
        records = [
            {"group_id": "g1", "article_ids": ["r1"], "paths": [{"text": corpus.articles[0].body}], "fallback_texts": []},
            {"group_id": "g2", "article_ids": ["s1"], "paths": [{"text": "zebras gallop here"}], "fallback_texts": []},
        ]
        report = evaluate_summaries(records, corpus)
        f1s = [report["per_group"][g]["rouge_1"]["f1"] for g in ("g1", "g2")]
        assert report["macro"]["rouge_1"]["f1"] == pytest.approx(sum(f1s) / 2)


class TestCli:
    def _summarize(self, tmp_path, corpus_path, *extra):
        out = tmp_path / "out"
        argv = [
            "summarize",
            str(corpus_path),
            "--out",
            str(out),
            "--k-range",
            "2:6",
            *extra,
        ]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = main(argv)
        return code, out

    def test_summarize_writes_outputs(self, tmp_path, capsys):
        code, out = self._summarize(tmp_path, MAG12, "--mode", "extractive")
        assert code == EXIT_OK
        assert (out / "summaries.jsonl").exists()
        assert (out / "manifest.json").exists()
        records = [
            json.loads(line) for line in (out / "summaries.jsonl").read_text().splitlines()
        ]
        for rec in records:
            assert rec["total_word_count"] <= 100
            for path in rec["paths"]:
                assert set(path) >= {"cluster_id", "text", "coverage", "relevance", "score", "spanned_units"}

    def test_byte_identical_reruns(self, tmp_path):
        _, out1 = self._summarize(tmp_path / "r1", MAG12, "--mode", "abstractive", "--seed", "3")
        _, out2 = self._summarize(tmp_path / "r2", MAG12, "--mode", "abstractive", "--seed", "3")
        assert (out1 / "summaries.jsonl").read_bytes() == (out2 / "summaries.jsonl").read_bytes()
        assert (out1 / "manifest.json").read_bytes() == (out2 / "manifest.json").read_bytes()

    def test_duplicate_id_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        rec = json.dumps({"id": "dup", "title": "", "body": "Text here."})
        bad.write_text(rec + "\n" + rec + "\n")
        code, _ = self._summarize(tmp_path, bad)
        assert code == EXIT_INPUT_ERROR
        err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert err["error"] == "INPUT_ERROR" and "dup" in err["detail"]

    def test_unreachable_remote_provider(self, tmp_path, capsys):
        code, _ = self._summarize(
            tmp_path, MAG12, "--provider.embed", "remote:http://127.0.0.1:9"
        )
        assert code == EXIT_PROVIDER_UNAVAILABLE
        err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert err["error"] == "PROVIDER_UNAVAILABLE"

    def test_bad_provider_is_config_error(self, tmp_path, capsys):
        code, _ = self._summarize(tmp_path, MAG12, "--provider.embed", "nonsense")
        assert code == EXIT_CONFIG_ERROR

    def test_evaluate_command(self, tmp_path, capsys):
        code, out = self._summarize(tmp_path, MAG12, "--mode", "extractive")
        assert code == EXIT_OK
        report_path = tmp_path / "report.json"
        code = main(
            ["evaluate", str(out / "summaries.jsonl"), str(MAG12), "--out", str(report_path)]
        )
        assert code == EXIT_OK
        report = json.loads(report_path.read_text())
        assert all(row["copy_rate"] == 1.0 for row in report["per_group"].values())
        stdout = capsys.readouterr().out
        assert "macro" in stdout

    def test_evaluate_id_mismatch(self, tmp_path, capsys):
        summaries = tmp_path / "s.jsonl"
        summaries.write_text(
            json.dumps(
                {"group_id": "g", "article_ids": ["ghost"], "paths": [], "fallback_texts": ["x"]}
            )
            + "\n"
        )
        code = main(["evaluate", str(summaries), str(MAG12), "--out", str(tmp_path / "r.json")])
        assert code == EXIT_INPUT_ERROR

    def test_topics_command_singleton_sweep(self, tmp_path, capsys):
        out = tmp_path / "topics.json"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = main(["topics", str(MAG12), "--out", str(out), "--k-range", "3:3"])
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["topics"]["chosen_k"] == 3
        assert len(payload["topics"]["coherence_table"]) == 1
        assert payload["topic_clusters"]["clusters"]

    def test_topics_empty_corpus(self, tmp_path, capsys):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        code = main(["topics", str(empty), "--out", str(tmp_path / "t.json")])
        assert code == EXIT_INPUT_ERROR

    def test_config_file_and_flag_override(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"seed": 9, "msc": {"word_budget": 40}}))
        code, out = self._summarize(
            tmp_path, MAG12, "--config", str(config_path), "--budget", "30"
        )
        assert code == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["seed"] == 9
        assert manifest["config"]["msc"]["word_budget"] == 30
        records = [
            json.loads(line) for line in (out / "summaries.jsonl").read_text().splitlines()
        ]
        assert all(rec["total_word_count"] <= 30 for rec in records)

    def test_manifest_suffices_to_rerun(self, tmp_path):
        code, out = self._summarize(tmp_path / "a", MAG12, "--seed", "5")
        assert code == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        config_path = tmp_path / "replay.json"
        config_path.write_text(json.dumps(manifest["config"]))
        out2 = tmp_path / "b"
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = main(
                ["summarize", str(MAG12), "--out", str(out2), "--config", str(config_path)]
            )
        assert code == EXIT_OK
        assert (out / "summaries.jsonl").read_bytes() == (out2 / "summaries.jsonl").read_bytes()
