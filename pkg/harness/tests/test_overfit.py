"""Smoke tests over one real training run on the toy corpus."""

import json
import shutil
import subprocess
import sys

from ctctrain import manifest
from ctctrain.cli import main as cli_main
from ctctrain.transcribe import transcribe

from toykit import corpus_cer


def test_training_loss_decreases(toy_run):
    losses = toy_run["result"].losses
    assert len(losses) == 300  # full batch: one step per epoch
    head = sum(losses[:10]) / 10
    tail = sum(losses[-10:]) / 10
    assert tail < head / 10, f"loss did not collapse: {head:.3f} -> {tail:.3f}"


def test_training_log_written(toy_run):
    log_path = toy_run["result"].model_dir / "training_log.jsonl"
    rows = [json.loads(line) for line in log_path.read_text(encoding="utf-8").splitlines()]
    assert len(rows) == len(toy_run["result"].losses)
    assert rows[0].keys() == {"step", "epoch", "loss"}


def test_overfit_cer_within_bound(toy_run):
    refs = manifest.read(toy_run["manifest"])
    hyp_path = toy_run["root"] / "corpus" / "hyp.jsonl"
    hyps = transcribe(toy_run["result"].model_dir, toy_run["manifest"], hyp_path)
    assert [h.id for h in hyps] == [r.id for r in refs]
    cer = corpus_cer([r.text for r in refs], [h.text for h in hyps])
    assert cer <= 0.3, f"toy-corpus CER {cer:.3f} exceeds 0.3"


def test_hypothesis_manifest_feeds_primary_evaluator(toy_run):
    """Cross-component contract: validate accepts our output and eval scores it."""
    hyp_path = toy_run["root"] / "corpus" / "hyp.jsonl"
    if not hyp_path.exists():
        transcribe(toy_run["result"].model_dir, toy_run["manifest"], hyp_path)
    asrtk = shutil.which("asrtk")
    command = [asrtk] if asrtk else [sys.executable, "-m", "asrtk.cli"]

    proc = subprocess.run(
        [*command, "validate", "--manifest", str(hyp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr

    eval_dir = toy_run["root"] / "eval"
    proc = subprocess.run(
        [*command, "eval", "--refs", str(toy_run["manifest"]),
         "--hyps", str(hyp_path), "--out", str(eval_dir)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    report = json.loads((eval_dir / "report.json").read_text(encoding="utf-8"))
    assert report["cer"] <= 0.3


def test_transcribe_empty_manifest(toy_run, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    out = tmp_path / "hyp.jsonl"
    hyps = transcribe(toy_run["result"].model_dir, empty, out)
    assert hyps == []
    assert out.read_text(encoding="utf-8") == ""


def test_cli_transcribe(toy_run, tmp_path):
    out = tmp_path / "cli_hyp.jsonl"
    code = cli_main([
        "transcribe",
        "--model", str(toy_run["result"].model_dir),
        "--manifest", str(toy_run["manifest"]),
        "--out", str(out),
    ])
    assert code == 0
    assert len(manifest.read(out)) == 10


def test_cli_train_wiring(tmp_path):
    """Two-epoch run through the CLI: artifacts only, no quality bar."""
    from toykit import build_tiny_base_model, build_toy_corpus

    manifest_path = build_toy_corpus(tmp_path / "corpus", texts=["amə", "bo do"])
    base = build_tiny_base_model(tmp_path)
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(
        json.dumps(
            {
                "train_manifest": str(manifest_path),
                "output_dir": str(tmp_path / "model"),
                "base_model": str(base),
                "epochs": 2,
                "mask_time_prob": 0.0,
            }
        ),
        encoding="utf-8",
    )
    assert cli_main(["train", "--spec", str(spec_path)]) == 0
    assert (tmp_path / "model" / "vocab.json").exists()
    assert (tmp_path / "model" / "train_spec.json").exists()
    assert (tmp_path / "model" / "training_log.jsonl").exists()
