"""TrainSpec defaults and serialization fidelity."""

import json

import pytest

from ctctrain.spec import EPOCHS_AUGMENTED, EPOCHS_ORIGINAL, TrainSpec


def test_defaults_match_published_hyperparameters():
    spec = TrainSpec()
    assert spec.learning_rate == 3e-4
    assert spec.batch_size == 16
    assert spec.dropout == 0.1


def test_defaults_serialize_exactly():
    doc = TrainSpec().to_json()
    assert doc["learning_rate"] == 3e-4
    assert doc["batch_size"] == 16
    assert doc["dropout"] == 0.1
    # exact through a JSON round trip, no float drift
    again = json.loads(json.dumps(doc))
    assert again["learning_rate"] == 3e-4
    assert again["dropout"] == 0.1


def test_json_round_trip(tmp_path):
    spec = TrainSpec(train_manifest="m.jsonl", output_dir="out", epochs=3, seed=9)
    path = tmp_path / "spec.json"
    spec.save(path)
    assert TrainSpec.load(path) == spec


def test_unknown_fields_rejected():
    with pytest.raises(ValueError):
        TrainSpec.from_json({"learning_rate": 1e-4, "warmup": 100})


def test_epoch_convention():
    # 4x-expanded corpus for 1 epoch vs original for 5: 4n vs 5n samples
    # seen; close but not equal, and both counts are explicit
    spec = TrainSpec()
    assert spec.resolve_epochs(train_is_augmented=True) == EPOCHS_AUGMENTED == 1
    assert spec.resolve_epochs(train_is_augmented=False) == EPOCHS_ORIGINAL == 5
    assert TrainSpec(epochs=12).resolve_epochs(True) == 12
