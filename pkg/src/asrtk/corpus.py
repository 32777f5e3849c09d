"""Corpus manifests: line-oriented JSON index of utterances.

One JSON object per line: ``id``, ``audio``, ``text``, ``duration_s``,
``split`` and ``provenance``.  Provenance is ``{"kind": "original"}`` or
``{"kind": "augmented", "technique": ..., "seed": ..., "parent": ...}``.
Audio paths are stored as written (usually relative to the manifest file).

Split-before-augment hygiene lives here: :func:`split` refuses manifests
that already contain augmented entries, and :func:`check_leakage` reports
any id or parent-id crossing between train and test.
"""

from __future__ import annotations

import json
import math
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import audio_io, transcript
from .errors import FormatError, HygieneError, ParameterError

SCHEMA_VERSION = 1

TRAIN = "train"
TEST = "test"

ORIGINAL = "original"
AUGMENTED = "augmented"

TECHNIQUES = ("noise", "clip", "reverb", "time_dropout")

DURATION_TOLERANCE_S = 0.001


@dataclass(frozen=True)
class Provenance:
    kind: str = ORIGINAL
    technique: str | None = None
    seed: int | None = None
    parent: str | None = None

    def __post_init__(self):
        if self.kind == ORIGINAL:
            if self.technique or self.parent is not None or self.seed is not None:
                raise ParameterError("original provenance carries no technique/seed/parent")
        elif self.kind == AUGMENTED:
            if self.technique not in TECHNIQUES:
                raise ParameterError(f"unknown technique {self.technique!r}")
            if not self.parent:
                raise ParameterError("augmented provenance requires a parent id")
            if self.seed is None:
                raise ParameterError("augmented provenance requires a seed")
        else:
            raise ParameterError(f"unknown provenance kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == ORIGINAL:
            return {"kind": ORIGINAL}
        return {
            "kind": AUGMENTED,
            "technique": self.technique,
            "seed": self.seed,
            "parent": self.parent,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Provenance":
        return cls(
            kind=doc.get("kind", ORIGINAL),
            technique=doc.get("technique"),
            seed=doc.get("seed"),
            parent=doc.get("parent"),
        )


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    audio: str
    text: str
    duration_s: float
    split: str = TRAIN
    provenance: Provenance = field(default_factory=Provenance)

    def __post_init__(self):
        if not self.id:
            raise ParameterError("entry id must be non-empty")
        if self.duration_s < 0:
            raise ParameterError(f"negative duration for {self.id!r}")
        if self.split not in (TRAIN, TEST):
            raise ParameterError(f"unknown split {self.split!r} for {self.id!r}")

    @property
    def is_augmented(self) -> bool:
        return self.provenance.kind == AUGMENTED

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "audio": self.audio,
            "text": self.text,
            "duration_s": self.duration_s,
            "split": self.split,
            "provenance": self.provenance.to_json(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ManifestEntry":
        missing = {"id", "audio", "text", "duration_s", "split", "provenance"} - set(doc)
        if missing:
            raise FormatError(f"manifest entry missing fields: {sorted(missing)}")
        return cls(
            id=doc["id"],
            audio=doc["audio"],
            text=unicodedata.normalize("NFC", doc["text"]),
            duration_s=float(doc["duration_s"]),
            split=doc["split"],
            provenance=Provenance.from_json(doc["provenance"]),
        )


@dataclass(frozen=True)
class Manifest:
    entries: tuple[ManifestEntry, ...] = ()
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for entry in self.entries:
            if entry.id in seen:
                raise FormatError(f"duplicate id {entry.id!r} in manifest")
            seen.add(entry.id)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def ids(self) -> set[str]:
        return {entry.id for entry in self.entries}

    def by_id(self) -> dict[str, ManifestEntry]:
        return {entry.id: entry for entry in self.entries}


def read_manifest(path: str | Path) -> Manifest:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            entries.append(ManifestEntry.from_json(doc))
    return Manifest(entries=tuple(entries))


def write_manifest(manifest: Manifest, path: str | Path) -> None:
    """One NFC/UTF-8 JSON object per line, stable key order, byte-deterministic."""
    with open(path, "w", encoding="utf-8") as fh:
        for entry in manifest.entries:
            fh.write(json.dumps(entry.to_json(), ensure_ascii=False))
            fh.write("\n")


def total_duration(manifest: Manifest) -> float:
    """Total duration in minutes (exact sum over seconds, then converted)."""
    return math.fsum(entry.duration_s for entry in manifest.entries) / 60.0


def rebase_audio_paths(manifest: Manifest, old_base: Path, new_base: Path) -> Manifest:
    """Re-home relative audio paths when a manifest moves directories."""
    import os

    entries = []
    for entry in manifest.entries:
        audio = Path(entry.audio)
        if audio.is_absolute():
            entries.append(entry)
        else:
            rebased = os.path.relpath(old_base / audio, new_base)
            entries.append(replace(entry, audio=Path(rebased).as_posix()))
    return Manifest(entries=tuple(entries))


def split(manifest: Manifest, test_fraction: float, seed: int) -> tuple[Manifest, Manifest]:
    """Deterministic duration-weighted train/test partition of originals.

    Utterances are drawn in seeded random order into the test side until its
    duration reaches test_fraction of the total, so the test duration lands
    within one utterance of the target.  Entries keep their manifest order
    inside each side.  Manifests that already contain augmented entries are
    rejected: augmentation must happen after the split.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ParameterError(f"test_fraction must be in (0, 1), got {test_fraction}")
    augmented = [entry.id for entry in manifest if entry.is_augmented]
    if augmented:
        raise HygieneError(
            f"split must precede augmentation; augmented entries present: {augmented[:5]}"
        )
    if len(manifest) < 2:
        raise ParameterError("cannot produce a non-empty two-way split of < 2 utterances")

    target_s = test_fraction * math.fsum(e.duration_s for e in manifest)
    order = np.random.default_rng(seed).permutation(len(manifest))
    test_idx = set()
    test_s = 0.0
    for idx in order:
        if test_s >= target_s:
            break
        if len(test_idx) == len(manifest) - 1:
            break  # keep train non-empty
        test_idx.add(int(idx))
        test_s += manifest.entries[int(idx)].duration_s
    if not test_idx:
        test_idx.add(int(order[0]))

    train_entries = []
    test_entries = []
    for i, entry in enumerate(manifest.entries):
        if i in test_idx:
            test_entries.append(replace(entry, split=TEST))
        else:
            train_entries.append(replace(entry, split=TRAIN))
    return Manifest(entries=tuple(train_entries)), Manifest(entries=tuple(test_entries))


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def check_leakage(train: Manifest, test: Manifest) -> list[Violation]:
    """Report train/test overlap: shared ids, or parents across the boundary."""
    violations = []
    train_ids = train.ids()
    test_ids = test.ids()
    for shared in sorted(train_ids & test_ids):
        violations.append(
            Violation("shared-id", (shared,), f"id {shared!r} appears in both splits")
        )
    for manifest, other_ids, direction in (
        (train, test_ids, "train entry has test parent"),
        (test, train_ids, "test entry has train parent"),
    ):
        for entry in manifest:
            parent = entry.provenance.parent
            if parent is not None and parent in other_ids:
                violations.append(
                    Violation(
                        "cross-split-parent",
                        (entry.id, parent),
                        f"{direction}: {entry.id!r} -> {parent!r}",
                    )
                )
    return violations


@dataclass(frozen=True)
class ValidationIssue:
    entry_id: str | None
    kind: str
    message: str

    def __str__(self) -> str:
        who = self.entry_id if self.entry_id is not None else "<manifest>"
        return f"{who}: {self.kind}: {self.message}"


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, entry_id: str | None, kind: str, message: str) -> None:
        self.issues.append(ValidationIssue(entry_id, kind, message))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "issues": [
                {"id": issue.entry_id, "kind": issue.kind, "message": issue.message}
                for issue in self.issues
            ],
        }


def validate_manifest(
    path: str | Path,
    table: transcript.FeatureTable = transcript.DEFAULT_TABLE,
    check_audio: bool = True,
) -> ValidationReport:
    """Schema, parent resolution, charset, and on-disk duration checks.

    Relative audio paths resolve against the manifest's directory.  Stated
    durations must match the audio file within 1 ms.
    """
    path = Path(path)
    report = ValidationReport()
    entries = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                entry = ManifestEntry.from_json(json.loads(line))
            except (json.JSONDecodeError, FormatError, ParameterError, ValueError) as exc:
                report.add(None, "schema", f"line {lineno}: {exc}")
                continue
            if entry.id in seen:
                report.add(entry.id, "duplicate-id", "id appears more than once")
            seen.add(entry.id)
            entries.append(entry)

    ids = {entry.id for entry in entries}
    for entry in entries:
        parent = entry.provenance.parent
        if parent is not None and parent not in ids:
            report.add(entry.id, "dangling-parent", f"parent {parent!r} not in manifest")
        try:
            normalized = transcript.normalize(entry.text, table)
        except Exception as exc:
            report.add(entry.id, "charset", str(exc))
        else:
            if normalized != entry.text:
                report.add(entry.id, "charset", "text is not in normalized form")
        if check_audio:
            audio_path = Path(entry.audio)
            if not audio_path.is_absolute():
                audio_path = path.parent / audio_path
            if not audio_path.exists():
                report.add(entry.id, "missing-audio", f"{audio_path} does not exist")
                continue
            try:
                buffer = audio_io.read_wav(audio_path)
            except FormatError as exc:
                report.add(entry.id, "bad-audio", str(exc))
                continue
            if abs(buffer.duration_s - entry.duration_s) > DURATION_TOLERANCE_S:
                report.add(
                    entry.id,
                    "duration-mismatch",
                    f"manifest says {entry.duration_s:.6f} s,"
                    f" file has {buffer.duration_s:.6f} s",
                )
    return report
