"""Fine-tune a self-supervised speech encoder with CTC on a manifest.

Deliberately thin: whole-corpus in-memory loading, seeded shuffling, plain
AdamW, per-step loss logging.  Model-level nondeterminism (threaded BLAS,
dropout sampling) is outside the reproducibility contract; vocabulary and
data order are fully determined by the spec seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from transformers import (
    Wav2Vec2CTCTokenizer,
    Wav2Vec2FeatureExtractor,
    Wav2Vec2ForCTC,
    Wav2Vec2Processor,
)

from . import audio, manifest, vocab
from .spec import TrainSpec


class ConfigurationError(ValueError):
    pass


@dataclass
class TrainResult:
    model_dir: Path
    losses: list[float]
    epochs: int


def build_processor(vocabulary: dict[str, int], out_dir: Path, rate: int) -> Wav2Vec2Processor:
    out_dir.mkdir(parents=True, exist_ok=True)
    vocab.save(vocabulary, out_dir / "vocab.json")
    tokenizer = Wav2Vec2CTCTokenizer(
        str(out_dir / "vocab.json"),
        pad_token=vocab.PAD,
        unk_token=vocab.UNK,
        word_delimiter_token=vocab.WORD_DELIMITER,
    )
    extractor = Wav2Vec2FeatureExtractor(
        feature_size=1,
        sampling_rate=rate,
        padding_value=0.0,
        do_normalize=True,
        return_attention_mask=False,
    )
    return Wav2Vec2Processor(feature_extractor=extractor, tokenizer=tokenizer)


def _load_model(spec: TrainSpec, vocab_size: int) -> Wav2Vec2ForCTC:
    return Wav2Vec2ForCTC.from_pretrained(
        spec.base_model,
        vocab_size=vocab_size,
        ignore_mismatched_sizes=True,
        ctc_loss_reduction="mean",
        pad_token_id=0,
        hidden_dropout=spec.dropout,
        attention_dropout=spec.dropout,
        activation_dropout=spec.dropout,
        feat_proj_dropout=spec.dropout,
        final_dropout=spec.dropout,
        layerdrop=spec.dropout,
        mask_time_prob=spec.mask_time_prob,
    )


def train(spec: TrainSpec) -> TrainResult:
    manifest_path = Path(spec.train_manifest)
    utterances = manifest.read(manifest_path)
    if not utterances:
        raise ConfigurationError(f"{manifest_path}: empty train manifest")

    out_dir = Path(spec.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec.save(out_dir / "train_spec.json")

    vocabulary = vocab.build(u.text for u in utterances)
    processor = build_processor(vocabulary, out_dir, rate=16000)
    tokenizer = processor.tokenizer

    waves = []
    labels = []
    unk_id = tokenizer.unk_token_id
    for utt in utterances:
        waves.append(audio.load_wav(utt.audio_path(manifest_path)))
        ids = tokenizer(utt.text).input_ids
        if unk_id in ids:
            raise ConfigurationError(
                f"{utt.id}: transcription contains symbols outside the built vocabulary"
            )
        labels.append(torch.tensor(ids, dtype=torch.long))

    torch.manual_seed(spec.seed)
    model = _load_model(spec, len(vocabulary))
    if spec.freeze_feature_encoder:
        model.freeze_feature_encoder()
    model.train()

    optimizer = torch.optim.AdamW(model.parameters(), lr=spec.learning_rate)
    epochs = spec.resolve_epochs(manifest.has_augmented(utterances))
    rng = np.random.default_rng(spec.seed)

    losses: list[float] = []
    step = 0
    log_path = out_dir / "training_log.jsonl"
    with open(log_path, "w", encoding="utf-8") as log:
        for epoch in range(epochs):
            order = rng.permutation(len(waves))
            for start in range(0, len(order), spec.batch_size):
                batch_idx = order[start : start + spec.batch_size]
                inputs = processor(
                    [waves[i] for i in batch_idx],
                    sampling_rate=16000,
                    return_tensors="pt",
                    padding=True,
                )
                batch_labels = torch.nn.utils.rnn.pad_sequence(
                    [labels[i] for i in batch_idx], batch_first=True, padding_value=-100
                )
                outputs = model(input_values=inputs.input_values, labels=batch_labels)
                optimizer.zero_grad()
                outputs.loss.backward()
                optimizer.step()
                loss = float(outputs.loss.detach())
                losses.append(loss)
                log.write(json.dumps({"step": step, "epoch": epoch, "loss": loss}))
                log.write("\n")
                step += 1

    model.save_pretrained(out_dir)
    processor.save_pretrained(out_dir)
    return TrainResult(model_dir=out_dir, losses=losses, epochs=epochs)
