"""Normalization, tokenization, and feature table behavior."""

import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asrtk.errors import CharsetError
from asrtk.transcript import (
    DEFAULT_TABLE,
    FeatureTable,
    features,
    normalize,
    strip_punctuation,
    tokenize_chars,
    tokenize_words,
)

# Strings carried through the whole toolkit's golden tests; every symbol
# must be in the default inventory.
GOLDEN_LINES = [
    "miŋ ənjə bitk səwə.",
    "došən ǰo.",
    "si jawuči bi gəl jaam si jawuči bi gəl jaam",
    "tələ amə duləkə ani əmkə iči bo aləxə",
    "tələ am dulkə ani əmkə iči bo aləxə",
    "bi sajwə wakə bi sajwə wakə",
    "bi siskə bitk xolal ba də jom mutulko",
    "min do bitk xolal ba joxo",
    "odun gjak šawulo odun gjak šawulo",
    "odun gjak šaxulo odun gjak šaxulo",
    "amə am gunin gunim ilan ila damgu daŋgu də d",
]


def test_nfc_composition_of_decomposed_hacek():
    decomposed = "došən ǰo."  # s + combining caron
    assert normalize(decomposed) == "došən ǰo."
    assert unicodedata.is_normalized("NFC", normalize(decomposed))


def test_normalize_empty():
    assert normalize("") == ""


def test_whitespace_collapse():
    assert normalize("aba  dəf ") == "aba dəf"
    assert normalize("\taba\n dəf") == "aba dəf"


def test_normalize_idempotent_on_golden_lines():
    for line in GOLDEN_LINES:
        once = normalize(line)
        assert normalize(once) == once


def test_charset_error_names_symbol_and_offset():
    with pytest.raises(CharsetError) as excinfo:
        normalize("amə q")
    err = excinfo.value
    assert err.symbol == "q"
    # 'amə' is 4 bytes in UTF-8, plus the space
    assert err.byte_offset == 5


def test_tokenize_chars_simple():
    assert tokenize_chars("amə") == ["a", "m", "ə"]


def test_tokenize_chars_includes_spaces():
    assert tokenize_chars("bi joxo") == ["b", "i", " ", "j", "o", "x", "o"]


def test_tokenize_chars_round_trips_golden_lines():
    for line in GOLDEN_LINES:
        s = normalize(line)
        assert "".join(tokenize_chars(s)) == s


def test_tokenize_words_counts():
    assert len(tokenize_words("si jawuči bi gəl jaam")) == 5
    assert len(tokenize_words("odun gjak šawulo odun gjak šawulo")) == 6
    assert tokenize_words("") == []


def test_tokenize_words_round_trips():
    for line in GOLDEN_LINES:
        s = normalize(line)
        assert " ".join(tokenize_words(s)) == s


def test_strip_punctuation():
    assert strip_punctuation("došən ǰo.") == "došən ǰo"
    assert strip_punctuation("a, b? c.") == "a b c"


def test_feature_lookups():
    schwa = features("ə")
    assert schwa.klass == "vowel"
    assert schwa.sonorant
    assert schwa.place == "none"
    m = features("m")
    assert (m.klass, m.place, m.sonorant) == ("nasal", "bilabial", True)
    velar_nasal = features("ŋ")
    assert (velar_nasal.klass, velar_nasal.place) == ("nasal", "velar")
    assert features("g").place == "velar"


def test_unknown_symbol_lookup_error():
    with pytest.raises(LookupError):
        features("q")


def test_nasals_are_sonorant_and_vowels_placeless():
    for nasal in "nmŋ":
        assert DEFAULT_TABLE.features(nasal).sonorant
    for vowel in "aeiouə":
        bundle = DEFAULT_TABLE.features(vowel)
        assert bundle.sonorant and bundle.place == "none"


def test_golden_lines_covered_by_inventory():
    for line in GOLDEN_LINES:
        normalize(line)  # raises CharsetError on any gap


def test_feature_table_json_round_trip(tmp_path):
    path = tmp_path / "inventory.json"
    DEFAULT_TABLE.save(path)
    loaded = FeatureTable.load(path)
    assert loaded.inventory == DEFAULT_TABLE.inventory
    for symbol in DEFAULT_TABLE.inventory:
        assert loaded.features(symbol) == DEFAULT_TABLE.features(symbol)


def test_custom_inventory_config():
    table = FeatureTable.from_json(
        {
            "a": {"class": "vowel", "sonorant": True},
            "b": {"class": "stop", "place": "bilabial"},
        }
    )
    assert normalize("ab ba", table) == "ab ba"
    with pytest.raises(CharsetError):
        normalize("abc", table)


@given(st.text(alphabet=sorted(DEFAULT_TABLE.inventory | {" ", ".", ",", "?"}), max_size=40))
def test_normalize_idempotent_property(s):
    once = normalize(s)
    assert normalize(once) == once


@given(st.text(alphabet=sorted(DEFAULT_TABLE.inventory | {" "}), max_size=40))
def test_tokenization_lossless_property(s):
    normalized = normalize(s)
    assert "".join(tokenize_chars(normalized)) == normalized
    assert " ".join(tokenize_words(normalized)) == normalized
