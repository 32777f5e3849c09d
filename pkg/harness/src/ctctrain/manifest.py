"""Reader/writer for the toolkit's line-oriented JSON manifest format.

This is the harness's only coupling to the corpus toolkit: the on-disk
schema (one object per line with ``id``, ``audio``, ``text``,
``duration_s``, ``split``, ``provenance``).  Audio paths resolve relative
to the manifest file.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, replace
from pathlib import Path

FIELDS = ("id", "audio", "text", "duration_s", "split", "provenance")


@dataclass(frozen=True)
class Utterance:
    id: str
    audio: str
    text: str
    duration_s: float
    split: str
    provenance: dict

    def audio_path(self, manifest_path: Path) -> Path:
        path = Path(self.audio)
        return path if path.is_absolute() else manifest_path.parent / path


def read(path: str | Path) -> list[Utterance]:
    path = Path(path)
    utterances = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            missing = set(FIELDS) - set(doc)
            if missing:
                raise ValueError(f"{path}:{lineno}: missing fields {sorted(missing)}")
            utterances.append(
                Utterance(
                    id=doc["id"],
                    audio=doc["audio"],
                    text=unicodedata.normalize("NFC", doc["text"]),
                    duration_s=float(doc["duration_s"]),
                    split=doc["split"],
                    provenance=doc["provenance"],
                )
            )
    return utterances


def write(utterances: list[Utterance], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for utt in utterances:
            doc = {
                "id": utt.id,
                "audio": utt.audio,
                "text": utt.text,
                "duration_s": utt.duration_s,
                "split": utt.split,
                "provenance": utt.provenance,
            }
            fh.write(json.dumps(doc, ensure_ascii=False))
            fh.write("\n")


def with_text(utt: Utterance, text: str) -> Utterance:
    return replace(utt, text=text)


def has_augmented(utterances: list[Utterance]) -> bool:
    return any(u.provenance.get("kind") == "augmented" for u in utterances)
