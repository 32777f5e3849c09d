"""Session fixtures: one toy training run shared by the smoke tests."""

from __future__ import annotations

import pytest


@pytest.fixture(scope="session", autouse=True)
def _quiet_transformers():
    import torch
    import transformers

    transformers.utils.logging.set_verbosity_error()
    transformers.utils.logging.disable_progress_bar()
    torch.set_num_threads(4)


@pytest.fixture(scope="session")
def toy_run(tmp_path_factory):
    """Train once on the 10-utterance toy corpus; reused across tests."""
    from ctctrain.spec import TrainSpec
    from ctctrain.train import train

    from toykit import build_tiny_base_model, build_toy_corpus

    root = tmp_path_factory.mktemp("toy")
    manifest_path = build_toy_corpus(root / "corpus")
    base = build_tiny_base_model(root)
    spec = TrainSpec(
        train_manifest=str(manifest_path),
        output_dir=str(root / "model"),
        base_model=str(base),
        learning_rate=1e-3,
        epochs=300,
        dropout=0.0,          # memorization run: no regularization noise
        mask_time_prob=0.0,
        freeze_feature_encoder=False,
        seed=1,
    )
    result = train(spec)
    return {"root": root, "manifest": manifest_path, "spec": spec, "result": result}
