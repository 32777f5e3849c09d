"""Toy corpus and tiny-model builders for harness tests.

The toy utterances are sequences of short tone segments (time-varying, so
frame-level features carry positional content) paired with short texts in
the corpus toolkit's romanization.
"""

from __future__ import annotations

import json
import wave
from pathlib import Path

import numpy as np

RATE = 16000

TOY_TEXTS = [
    "amə", "bi joxo", "gunin", "ilan bo", "damgu",
    "šawulo", "odun gjak", "tələ ani", "səwə", "min do",
]


def note_audio(seed: int, duration_s: float = 0.48, segment_s: float = 0.06) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = int(duration_s * RATE)
    out = np.zeros(n)
    start = 0
    while start < n:
        length = int(segment_s * RATE)
        freq = rng.uniform(150.0, 3000.0)
        t = np.arange(min(length, n - start)) / RATE
        out[start : start + len(t)] = rng.uniform(0.3, 0.6) * np.sin(2 * np.pi * freq * t)
        start += length
    out += 0.01 * np.random.default_rng(seed + 1).standard_normal(n)
    return out * (0.9 / np.max(np.abs(out)))


def write_pcm16(path: Path, samples: np.ndarray) -> None:
    ints = np.clip(np.round(samples * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as fh:
        fh.setnchannels(1)
        fh.setsampwidth(2)
        fh.setframerate(RATE)
        fh.writeframes(ints.tobytes())


def build_toy_corpus(root: Path, texts=None) -> Path:
    """Write toy WAVs plus a manifest; returns the manifest path."""
    texts = TOY_TEXTS if texts is None else texts
    root.mkdir(parents=True, exist_ok=True)
    manifest_path = root / "manifest.jsonl"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        for i, text in enumerate(texts):
            samples = note_audio(100 + i)
            write_pcm16(root / f"u{i}.wav", samples)
            fh.write(
                json.dumps(
                    {
                        "id": f"u{i}",
                        "audio": f"u{i}.wav",
                        "text": text,
                        "duration_s": len(samples) / RATE,
                        "split": "train",
                        "provenance": {"kind": "original"},
                    },
                    ensure_ascii=False,
                )
            )
            fh.write("\n")
    return manifest_path


def build_tiny_base_model(root: Path) -> Path:
    """Small randomly-initialized encoder for CPU-scale smoke tests."""
    import torch
    from transformers import Wav2Vec2Config, Wav2Vec2ForCTC

    torch.manual_seed(7)
    config = Wav2Vec2Config(
        vocab_size=5,
        hidden_size=96,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=192,
        conv_dim=(32, 32, 32),
        conv_kernel=(10, 3, 3),
        conv_stride=(8, 8, 4),
        num_conv_pos_embeddings=16,
        num_conv_pos_embedding_groups=4,
    )
    base = root / "base"
    Wav2Vec2ForCTC(config).save_pretrained(base)
    return base


def edit_distance(a: str, b: str) -> int:
    dp = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        prev, dp[0] = dp[0], i
        for j, cb in enumerate(b, 1):
            prev, dp[j] = dp[j], min(prev + (ca != cb), dp[j - 1] + 1, dp[j] + 1)
    return dp[-1]


def corpus_cer(refs: list[str], hyps: list[str]) -> float:
    distance = sum(edit_distance(r, h) for r, h in zip(refs, hyps))
    return distance / sum(len(r) for r in refs)
