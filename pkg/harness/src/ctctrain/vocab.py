"""Character vocabulary for CTC, built from manifest transcriptions."""

from __future__ import annotations

import json
from pathlib import Path

PAD = "[PAD]"  # doubles as the CTC blank
UNK = "[UNK]"
WORD_DELIMITER = "|"


def build(texts) -> dict[str, int]:
    """Deterministic char vocabulary: specials first, then sorted symbols."""
    symbols = set()
    for text in texts:
        symbols.update(text)
    symbols.discard(" ")
    vocab = {PAD: 0, UNK: 1, WORD_DELIMITER: 2}
    for symbol in sorted(symbols):
        vocab[symbol] = len(vocab)
    return vocab


def save(vocab: dict[str, int], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(vocab, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
