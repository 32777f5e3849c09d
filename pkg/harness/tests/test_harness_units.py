"""Unit tests for vocabulary, manifest IO, decoding, and audio loading."""

import json

import numpy as np
import pytest

from ctctrain import manifest, vocab
from ctctrain.audio import load_wav
from ctctrain.transcribe import greedy_decode

from toykit import RATE, build_toy_corpus, note_audio, write_pcm16


class TestVocab:
    def test_specials_then_sorted_symbols(self):
        built = vocab.build(["ba", "ab əm"])
        assert built["[PAD]"] == 0
        assert built["[UNK]"] == 1
        assert built["|"] == 2
        symbols = [s for s in built if s not in ("[PAD]", "[UNK]", "|")]
        assert symbols == sorted(symbols)
        assert " " not in built

    def test_deterministic_across_orderings(self):
        assert vocab.build(["ab", "ba"]) == vocab.build(["ba", "ab"])

    def test_save_round_trip(self, tmp_path):
        built = vocab.build(["amə"])
        vocab.save(built, tmp_path / "vocab.json")
        assert json.loads((tmp_path / "vocab.json").read_text(encoding="utf-8")) == built


class TestManifest:
    def test_read_toy_corpus(self, tmp_path):
        path = build_toy_corpus(tmp_path)
        utterances = manifest.read(path)
        assert len(utterances) == 10
        assert utterances[0].id == "u0"
        assert utterances[0].audio_path(path).exists()

    def test_write_round_trip(self, tmp_path):
        path = build_toy_corpus(tmp_path)
        utterances = manifest.read(path)
        out = tmp_path / "copy.jsonl"
        manifest.write(utterances, out)
        assert manifest.read(out) == utterances

    def test_text_nfc_normalized(self, tmp_path):
        path = tmp_path / "m.jsonl"
        doc = {
            "id": "a", "audio": "a.wav", "text": "došən",
            "duration_s": 1.0, "split": "train", "provenance": {"kind": "original"},
        }
        path.write_text(json.dumps(doc, ensure_ascii=False) + "\n", encoding="utf-8")
        assert manifest.read(path)[0].text == "došən"

    def test_missing_fields_rejected(self, tmp_path):
        path = tmp_path / "m.jsonl"
        path.write_text('{"id": "a"}\n', encoding="utf-8")
        with pytest.raises(ValueError):
            manifest.read(path)

    def test_has_augmented(self, tmp_path):
        path = build_toy_corpus(tmp_path)
        utterances = manifest.read(path)
        assert not manifest.has_augmented(utterances)
        augmented = manifest.Utterance(
            id="u0.noise", audio="u0.wav", text="amə", duration_s=0.48, split="train",
            provenance={"kind": "augmented", "technique": "noise", "seed": 1, "parent": "u0"},
        )
        assert manifest.has_augmented(utterances + [augmented])


class TestGreedyDecode:
    ID2TOK = {0: "[PAD]", 1: "[UNK]", 2: "|", 3: "a", 4: "b", 5: "m"}

    def decode(self, ids):
        return greedy_decode(ids, self.ID2TOK, blank_id=0, unk_id=1)

    def test_collapses_repeats_and_blanks(self):
        assert self.decode([3, 3, 0, 3, 5, 5, 0, 0, 4]) == "aamb"

    def test_word_delimiter_becomes_space(self):
        assert self.decode([4, 2, 3]) == "b a"

    def test_unk_dropped(self):
        assert self.decode([3, 1, 4]) == "ab"

    def test_leading_trailing_delimiters_trimmed(self):
        assert self.decode([2, 3, 2, 2, 0, 2]) == "a"

    def test_empty(self):
        assert self.decode([0, 0, 0]) == ""


class TestAudio:
    def test_load_round_trip(self, tmp_path):
        samples = note_audio(5)
        path = tmp_path / "x.wav"
        write_pcm16(path, samples)
        loaded = load_wav(path)
        assert loaded.dtype == np.float32
        assert len(loaded) == len(samples)
        assert np.max(np.abs(loaded - samples.astype(np.float32))) <= 1 / 32768

    def test_rate_mismatch_rejected(self, tmp_path):
        import wave

        path = tmp_path / "slow.wav"
        with wave.open(str(path), "wb") as fh:
            fh.setnchannels(1)
            fh.setsampwidth(2)
            fh.setframerate(8000)
            fh.writeframes(b"\x00\x00" * 100)
        with pytest.raises(ValueError):
            load_wav(path, expected_rate=RATE)
