import json

import pytest

from clustsum.cli import main
from clustsum.embedding import load_embeddings, write_embeddings
from clustsum.embedding import test_embed as hash_embed
from clustsum.textprep import prepare_document

from conftest import DATA_DIR, make_corpus

BODY = (
    "The enzyme modulates the cascade. A receptor binds the ligand tightly. "
    "Each sample passed quality control. The cohort completed all visits. "
    "One transcript decayed rapidly. The pathway stayed active throughout. "
    "Final measurements confirmed the trend."
)


@pytest.fixture
def body_file(tmp_path):
    path = tmp_path / "body.txt"
    path.write_text(BODY, encoding="utf-8")
    return path


@pytest.fixture
def corpus_dir(tmp_path):
    return make_corpus(tmp_path / "corpus", n_docs=6, sentences_per_doc=8)


class TestSummarizeCommand:
    def test_with_test_embedder(self, body_file, tmp_path):
        out = tmp_path / "summary.txt"
        report = tmp_path / "summary.json"
        code = main([
            "summarize", "--body", str(body_file), "--test-seed", "13",
            "--test-dim", "16", "--k", "2", "--metric", "cosine",
            "--rate", "0.3", "--out", str(out), "--report", str(report),
            "--format", "plain",
        ])
        assert code == 0
        text = out.read_text(encoding="utf-8")
        assert text.endswith("\n")
        assert len(text.strip().split(". ")) == 2
        sidecar = json.loads(report.read_text())
        assert len(sidecar["selected"]) == 2
        assert sidecar["config"]["k"] == 2
        assert len(sidecar["quotas"]) == 2

    def test_with_embedding_file(self, body_file, tmp_path):
        _, sentences = prepare_document(BODY, "plain")
        emb = hash_embed(sentences, dim=8, seed=3)
        emb_path = tmp_path / "vectors.jsonl"
        write_embeddings(emb, emb_path)
        out = tmp_path / "summary.txt"
        code = main([
            "summarize", "--body", str(body_file), "--embeddings", str(emb_path),
            "--k", "3", "--metric", "euclidean", "--rate", "0.3",
            "--out", str(out), "--format", "plain",
        ])
        assert code == 0
        assert out.read_text(encoding="utf-8").strip()

    def test_requires_exactly_one_embedding_source(self, body_file, tmp_path):
        base = ["summarize", "--body", str(body_file), "--k", "2",
                "--metric", "cosine", "--rate", "0.3",
                "--out", str(tmp_path / "s.txt")]
        assert main(base) == 1
        assert main(base + ["--test-seed", "1", "--embeddings", "x.jsonl"]) == 1

    def test_misaligned_embedding_file_is_data_error(self, body_file, tmp_path):
        _, sentences = prepare_document("Short one. Short two.", "plain")
        emb = hash_embed(sentences, dim=8, seed=3)
        emb_path = tmp_path / "vectors.jsonl"
        write_embeddings(emb, emb_path)
        code = main([
            "summarize", "--body", str(body_file), "--embeddings", str(emb_path),
            "--k", "2", "--metric", "cosine", "--rate", "0.3",
            "--out", str(tmp_path / "s.txt"), "--format", "plain",
        ])
        assert code == 2

    def test_k_larger_than_document_is_usage_error(self, body_file, tmp_path):
        code = main([
            "summarize", "--body", str(body_file), "--test-seed", "1",
            "--k", "99", "--metric", "cosine", "--rate", "0.3",
            "--out", str(tmp_path / "s.txt"), "--format", "plain",
        ])
        assert code == 1

    def test_bad_rate_is_usage_error(self, body_file, tmp_path):
        code = main([
            "summarize", "--body", str(body_file), "--test-seed", "1",
            "--k", "2", "--metric", "cosine", "--rate", "1.5",
            "--out", str(tmp_path / "s.txt"), "--format", "plain",
        ])
        assert code == 1

    def test_unknown_metric_is_usage_error(self, body_file, tmp_path, capsys):
        code = main([
            "summarize", "--body", str(body_file), "--test-seed", "1",
            "--k", "2", "--metric", "manhattan", "--rate", "0.3",
            "--out", str(tmp_path / "s.txt"),
        ])
        assert code == 1


class TestEvaluateCommand:
    def test_writes_report(self, corpus_dir, tmp_path):
        report_path = tmp_path / "report.json"
        code = main([
            "evaluate", "--corpus", str(corpus_dir), "--k", "2",
            "--metric", "cosine", "--rate", "0.3", "--report", str(report_path),
            "--test-seed", "13", "--test-dim", "16", "--format", "plain",
        ])
        assert code == 0
        report = json.loads(report_path.read_text())
        assert len(report["documents"]) == 6
        assert report["config"]["embedding"]["seed"] == 13

    def test_missing_corpus_is_data_error(self, tmp_path):
        code = main([
            "evaluate", "--corpus", str(tmp_path / "nowhere"), "--k", "2",
            "--metric", "cosine", "--rate", "0.3",
            "--report", str(tmp_path / "r.json"),
        ])
        assert code == 2

    def test_missing_required_flag_is_usage_error(self):
        assert main(["evaluate", "--corpus", "x"]) == 1


class TestSweepCommand:
    def test_writes_json_tsv_and_figure(self, corpus_dir, tmp_path):
        report_path = tmp_path / "sweep.json"
        code = main([
            "sweep", "--corpus", str(corpus_dir), "--k-min", "2", "--k-max", "4",
            "--metrics", "cosine,euclidean", "--rate", "0.3",
            "--report", str(report_path), "--test-seed", "13", "--test-dim", "16",
            "--format", "plain",
        ])
        assert code == 0
        assert report_path.exists()
        tsv = (tmp_path / "sweep.tsv").read_text()
        assert tsv.splitlines()[0] == "k\tcosine_r1\tcosine_r2\teuclidean_r1\teuclidean_r2"
        png = (tmp_path / "sweep.png").read_bytes()
        assert png[:8] == b"\x89PNG\r\n\x1a\n"

    def test_bad_k_range_is_usage_error(self, corpus_dir, tmp_path):
        code = main([
            "sweep", "--corpus", str(corpus_dir), "--k-min", "5", "--k-max", "2",
            "--metrics", "cosine", "--rate", "0.3",
            "--report", str(tmp_path / "r.json"),
        ])
        assert code == 1


class TestCompareCommand:
    def make_report(self, corpus_dir, path, metric, k):
        assert main([
            "evaluate", "--corpus", str(corpus_dir), "--k", str(k),
            "--metric", metric, "--rate", "0.3", "--report", str(path),
            "--test-seed", "13", "--test-dim", "16", "--format", "plain",
        ]) == 0

    def test_prints_statistics(self, corpus_dir, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        self.make_report(corpus_dir, a, "cosine", 2)
        self.make_report(corpus_dir, b, "euclidean", 3)
        code = main(["compare", "--report-a", str(a), "--report-b", str(b),
                     "--metric", "r1"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("W=")
        assert lines[1].startswith("n_effective=")
        assert lines[2].startswith("p_value=")

    def test_missing_report_is_data_error(self, tmp_path):
        code = main(["compare", "--report-a", str(tmp_path / "none.json"),
                     "--report-b", str(tmp_path / "none2.json"), "--metric", "r1"])
        assert code == 2
