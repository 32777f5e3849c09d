"""Training specification with the published fine-tuning defaults."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

# Epoch convention: the 4x-expanded training set is seen for 1 epoch, the
# unexpanded set for 5, which roughly equalizes samples seen (4n vs 5n --
# not exactly equal; both counts are explicit here rather than papered
# over).  ``epochs=None`` picks by manifest provenance at train time.
EPOCHS_AUGMENTED = 1
EPOCHS_ORIGINAL = 5

DEFAULT_BASE_MODEL = "facebook/wav2vec2-large-xlsr-53"


@dataclass
class TrainSpec:
    train_manifest: str = ""
    output_dir: str = ""
    base_model: str = DEFAULT_BASE_MODEL
    learning_rate: float = 3e-4
    batch_size: int = 16
    # applied to the whole dropout family (hidden/attention/activation/
    # feature-projection/final/layerdrop)
    dropout: float = 0.1
    epochs: int | None = None
    seed: int = 42
    freeze_feature_encoder: bool = True
    mask_time_prob: float = 0.05

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, doc: dict) -> "TrainSpec":
        known = {f: doc[f] for f in doc if f in cls.__dataclass_fields__}
        unknown = set(doc) - set(known)
        if unknown:
            raise ValueError(f"unknown TrainSpec fields: {sorted(unknown)}")
        return cls(**known)

    @classmethod
    def load(cls, path: str | Path) -> "TrainSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def resolve_epochs(self, train_is_augmented: bool) -> int:
        if self.epochs is not None:
            return self.epochs
        return EPOCHS_AUGMENTED if train_is_augmented else EPOCHS_ORIGINAL
