"""Greedy CTC decoding of manifest audio into a hypothesis manifest."""

from __future__ import annotations

import unicodedata
from pathlib import Path

import torch
from transformers import Wav2Vec2ForCTC, Wav2Vec2Processor

from . import audio, manifest


def greedy_decode(ids: list[int], id_to_token: dict[int, str], blank_id: int, unk_id: int) -> str:
    """Collapse repeats, drop blanks, map word delimiters to spaces."""
    out = []
    previous = None
    for token_id in ids:
        if token_id != previous and token_id != blank_id:
            token = id_to_token.get(token_id, "")
            if token_id == unk_id:
                token = ""
            out.append(" " if token == "|" else token)
        previous = token_id
    text = "".join(out)
    return unicodedata.normalize("NFC", " ".join(text.split()))


def transcribe(
    model_dir: str | Path,
    manifest_path: str | Path,
    out_path: str | Path,
) -> list[manifest.Utterance]:
    manifest_path = Path(manifest_path)
    utterances = manifest.read(manifest_path)

    model = Wav2Vec2ForCTC.from_pretrained(model_dir)
    processor = Wav2Vec2Processor.from_pretrained(model_dir)
    tokenizer = processor.tokenizer
    id_to_token = {i: t for t, i in tokenizer.get_vocab().items()}
    rate = processor.feature_extractor.sampling_rate
    model.eval()

    hypotheses = []
    with torch.no_grad():
        for utt in utterances:
            samples = audio.load_wav(utt.audio_path(manifest_path), expected_rate=rate)
            inputs = processor([samples], sampling_rate=rate, return_tensors="pt")
            logits = model(input_values=inputs.input_values).logits[0]
            ids = logits.argmax(dim=-1).tolist()
            text = greedy_decode(
                ids, id_to_token, tokenizer.pad_token_id, tokenizer.unk_token_id
            )
            hypotheses.append(manifest.with_text(utt, text))

    manifest.write(hypotheses, out_path)
    return hypotheses
