"""Transcription normalization, tokenization, and phonological features.

Transcriptions use a lowercase phoneme romanization in which one Unicode
scalar (after NFC composition) is one phoneme: the háček letters š/č/ǰ and
the letters ə/ŋ are single symbols.  Words are separated by single spaces;
sentence punctuation is limited to ``.``, ``,`` and ``?``.

The default inventory and feature assignments cover the Tungusic-style
romanization this toolkit was built for; both are loadable from JSON so
other languages can supply their own.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import CharsetError, ParameterError

PUNCTUATION = {".", ",", "?"}

VOWEL = "vowel"
STOP = "stop"
NASAL = "nasal"
FRICATIVE = "fricative"
AFFRICATE = "affricate"
APPROXIMANT = "approximant"
TRILL_LATERAL = "trill-lateral"

CLASSES = {VOWEL, STOP, NASAL, FRICATIVE, AFFRICATE, APPROXIMANT, TRILL_LATERAL}
PLACES = {"bilabial", "alveolar", "palatal", "velar", "none"}


@dataclass(frozen=True)
class FeatureBundle:
    klass: str
    place: str = "none"
    sonorant: bool = False
    aspirated: bool = False

    def __post_init__(self):
        if self.klass not in CLASSES:
            raise ParameterError(f"unknown class {self.klass!r}")
        if self.place not in PLACES:
            raise ParameterError(f"unknown place {self.place!r}")


def _v() -> FeatureBundle:
    return FeatureBundle(VOWEL, "none", sonorant=True)


# b/d/g are voiceless unaspirated stops and p/t/k their aspirated
# counterparts in this romanization; there are no voiced stops, so no
# voicing feature is carried.
_DEFAULT_FEATURES = {
    "a": _v(),
    "e": _v(),
    "i": _v(),
    "o": _v(),
    "u": _v(),
    "ə": _v(),
    "b": FeatureBundle(STOP, "bilabial"),
    "d": FeatureBundle(STOP, "alveolar"),
    "g": FeatureBundle(STOP, "velar"),
    "p": FeatureBundle(STOP, "bilabial", aspirated=True),
    "t": FeatureBundle(STOP, "alveolar", aspirated=True),
    "k": FeatureBundle(STOP, "velar", aspirated=True),
    "m": FeatureBundle(NASAL, "bilabial", sonorant=True),
    "n": FeatureBundle(NASAL, "alveolar", sonorant=True),
    "ŋ": FeatureBundle(NASAL, "velar", sonorant=True),
    "l": FeatureBundle(TRILL_LATERAL, "alveolar", sonorant=True),
    "r": FeatureBundle(TRILL_LATERAL, "alveolar", sonorant=True),
    "s": FeatureBundle(FRICATIVE, "alveolar"),
    "š": FeatureBundle(FRICATIVE, "palatal"),
    "x": FeatureBundle(FRICATIVE, "velar"),
    "f": FeatureBundle(FRICATIVE, "bilabial"),
    "v": FeatureBundle(FRICATIVE, "bilabial"),
    "č": FeatureBundle(AFFRICATE, "palatal", aspirated=True),
    "ǰ": FeatureBundle(AFFRICATE, "palatal"),
    "w": FeatureBundle(APPROXIMANT, "bilabial", sonorant=True),
    "j": FeatureBundle(APPROXIMANT, "palatal", sonorant=True),
}


class FeatureTable:
    """Symbol inventory plus one feature bundle per symbol."""

    def __init__(self, features: dict[str, FeatureBundle]):
        for symbol in features:
            if len(symbol) != 1:
                raise ParameterError(f"inventory symbols are single scalars, got {symbol!r}")
        self._features = dict(features)
        self.inventory = frozenset(self._features)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._features

    def __len__(self) -> int:
        return len(self._features)

    def features(self, symbol: str) -> FeatureBundle:
        try:
            return self._features[symbol]
        except KeyError:
            raise LookupError(f"symbol {symbol!r} not in inventory") from None

    def is_vowel(self, symbol: str) -> bool:
        return symbol in self._features and self._features[symbol].klass == VOWEL

    def is_consonant(self, symbol: str) -> bool:
        return symbol in self._features and self._features[symbol].klass != VOWEL

    def is_nasal(self, symbol: str) -> bool:
        return symbol in self._features and self._features[symbol].klass == NASAL

    def is_sonorant(self, symbol: str) -> bool:
        return symbol in self._features and self._features[symbol].sonorant

    def to_json(self) -> dict:
        return {
            symbol: {
                "class": bundle.klass,
                "place": bundle.place,
                "sonorant": bundle.sonorant,
                "aspirated": bundle.aspirated,
            }
            for symbol, bundle in sorted(self._features.items())
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FeatureTable":
        features = {}
        for symbol, bundle in doc.items():
            features[unicodedata.normalize("NFC", symbol)] = FeatureBundle(
                klass=bundle["class"],
                place=bundle.get("place", "none"),
                sonorant=bool(bundle.get("sonorant", False)),
                aspirated=bool(bundle.get("aspirated", False)),
            )
        return cls(features)

    @classmethod
    def load(cls, path: str | Path) -> "FeatureTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, ensure_ascii=False, indent=2, sort_keys=True)
            fh.write("\n")


DEFAULT_TABLE = FeatureTable(_DEFAULT_FEATURES)


def normalize(raw: str, table: FeatureTable = DEFAULT_TABLE) -> str:
    """NFC-compose, collapse whitespace, and validate against the inventory.

    Idempotent.  Raises :class:`CharsetError` naming the first symbol outside
    inventory ∪ {space, '.', ',', '?'} with its UTF-8 byte offset in the
    normalized string.
    """
    composed = unicodedata.normalize("NFC", raw)
    text = " ".join(composed.split())
    offset = 0
    for ch in text:
        if ch != " " and ch not in PUNCTUATION and ch not in table:
            raise CharsetError(ch, offset)
        offset += len(ch.encode("utf-8"))
    return text


def tokenize_chars(s: str) -> list[str]:
    """One token per Unicode scalar, spaces included; join(tokens) == s."""
    return list(s)


def tokenize_words(s: str) -> list[str]:
    """Split on single spaces; punctuation stays attached to its word."""
    return s.split(" ") if s else []


def strip_punctuation(s: str) -> str:
    """Drop sentence punctuation and re-collapse any whitespace it leaves."""
    return " ".join("".join(ch for ch in s if ch not in PUNCTUATION).split())


def features(symbol: str, table: FeatureTable = DEFAULT_TABLE) -> FeatureBundle:
    return table.features(symbol)
