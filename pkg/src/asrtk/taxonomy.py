"""Phonological classification of recognition errors.

Each non-match alignment op over character tokens is assigned to the first
matching rule, in fixed order:

1. schwa loss      — the op involves ə and sits word-finally or between a
                     sonorant and a following consonant
2. final nasal     — a nasal is substituted for another nasal, deleted, or
                     inserted at word-final position
3. place assimilation — a substitution that changes only articulation
                     place, agreeing with the place of the next consonant
4. w/x confusion   — w and x swapped between vowels

Environments are read off the reference token stream (space tokens mark
word boundaries); substitution rules are direction-symmetric, so feeding a
(ref, hyp) pair reversed yields the same category.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ParameterError
from .metrics import DEL, INS, SUB, Alignment, EditOp
from .transcript import DEFAULT_TABLE, FeatureTable


class Category(Enum):
    SCHWA_LOSS = "schwa_loss"
    FINAL_NASAL = "final_nasal"
    PLACE_ASSIMILATION = "place_assimilation"
    WX_CONFUSION = "wx_confusion"
    UNCATEGORIZED = "uncategorized"


CATEGORY_LABELS = {
    Category.SCHWA_LOSS: "schwa lost word-finally or between sonorant and consonant",
    Category.FINAL_NASAL: "word-final nasal confused, dropped, or inserted",
    Category.PLACE_ASSIMILATION: "consonant assimilated to the next consonant's place",
    Category.WX_CONFUSION: "w/x confusion between vowels",
    Category.UNCATEGORIZED: "uncategorized",
}

SCHWA = "ə"
_WX = frozenset({"w", "x"})


@dataclass(frozen=True)
class RefContext:
    """Reference-side neighborhood of one alignment op.

    ``prev``/``next`` are the adjacent reference symbols, or None at the
    utterance edge.  ``following`` holds the rest of the reference stream
    after the op, for next-consonant scans.
    """

    prev: str | None
    next: str | None
    following: tuple[str, ...] = ()

    @property
    def word_final(self) -> bool:
        return self.next is None or self.next == " "


@dataclass(frozen=True)
class ErrorRecord:
    op: EditOp
    context: RefContext
    category: Category
    ref_word: str = ""
    hyp_word: str = ""


def context_for(op: EditOp, ref_tokens: list[str]) -> RefContext:
    """Reference context of an op; for INS, the context of its gap."""
    if op.kind == INS:
        prev_idx, next_idx = op.ref_pos - 1, op.ref_pos
    else:
        prev_idx, next_idx = op.ref_pos - 1, op.ref_pos + 1
    prev = ref_tokens[prev_idx] if prev_idx >= 0 else None
    nxt = ref_tokens[next_idx] if next_idx < len(ref_tokens) else None
    return RefContext(prev=prev, next=nxt, following=tuple(ref_tokens[next_idx:]))


def _check_known(symbol: str | None, table: FeatureTable) -> None:
    if symbol is not None and symbol != " " and symbol not in table:
        raise LookupError(f"symbol {symbol!r} not in inventory")


def _next_consonant(context: RefContext, table: FeatureTable) -> str | None:
    """First consonant after the op within the same reference word."""
    for symbol in context.following:
        if symbol == " ":
            return None
        if table.is_consonant(symbol):
            return symbol
    return None


def classify_error(
    op: EditOp, context: RefContext, table: FeatureTable = DEFAULT_TABLE
) -> Category:
    """First matching rule in fixed order; Match ops are not classifiable."""
    if not op.is_error:
        raise ParameterError("match ops carry no error to classify")
    _check_known(op.ref_sym, table)
    _check_known(op.hyp_sym, table)

    involved = {s for s in (op.ref_sym, op.hyp_sym) if s is not None}

    # 1. schwa loss: ə on either side, word-final or sonorant__consonant
    if SCHWA in involved:
        between = (
            context.prev is not None
            and table.is_sonorant(context.prev)
            and context.next is not None
            and table.is_consonant(context.next)
            and not table.is_sonorant(context.next)
        )
        if context.word_final or between:
            return Category.SCHWA_LOSS

    # 2. final nasal: nasal sub/del/ins at word end
    if context.word_final:
        if op.kind == SUB:
            nasal_pair = table.is_nasal(op.ref_sym) and table.is_nasal(op.hyp_sym)
        elif op.kind == DEL:
            nasal_pair = table.is_nasal(op.ref_sym)
        else:
            nasal_pair = table.is_nasal(op.hyp_sym)
        if nasal_pair:
            return Category.FINAL_NASAL

    # 3. place assimilation: place-only substitution agreeing with the
    #    next consonant (either direction, per the symmetric-sub rule)
    if op.kind == SUB and op.ref_sym in table and op.hyp_sym in table:
        a = table.features(op.ref_sym)
        b = table.features(op.hyp_sym)
        place_only = (
            a.klass == b.klass
            and a.place != b.place
            and a.sonorant == b.sonorant
            and a.aspirated == b.aspirated
        )
        if place_only:
            following = _next_consonant(context, table)
            if following is not None:
                place = table.features(following).place
                if place in (a.place, b.place):
                    return Category.PLACE_ASSIMILATION

    # 4. w/x confusion between vowels
    if op.kind == SUB and involved == _WX:
        if (
            context.prev is not None
            and table.is_vowel(context.prev)
            and context.next is not None
            and table.is_vowel(context.next)
        ):
            return Category.WX_CONFUSION

    return Category.UNCATEGORIZED


def _word_at(tokens: list[str], pos: int) -> str:
    """Word of the token at ``pos`` (or around gap ``pos`` for insertions)."""
    if not tokens:
        return ""
    pos = min(max(pos, 0), len(tokens) - 1)
    if tokens[pos] == " " and pos > 0:
        pos -= 1
    start = pos
    while start > 0 and tokens[start - 1] != " ":
        start -= 1
    end = pos
    while end < len(tokens) - 1 and tokens[end + 1] != " ":
        end += 1
    return "".join(tokens[start : end + 1])


def extract_errors(
    ref_tokens: list[str],
    hyp_tokens: list[str],
    alignment: Alignment,
    table: FeatureTable = DEFAULT_TABLE,
) -> list[ErrorRecord]:
    """Classify every non-match op of one utterance alignment."""
    records = []
    for op in alignment.errors():
        context = context_for(op, ref_tokens)
        category = classify_error(op, context, table)
        records.append(
            ErrorRecord(
                op=op,
                context=context,
                category=category,
                ref_word=_word_at(ref_tokens, op.ref_pos),
                hyp_word=_word_at(hyp_tokens, op.hyp_pos),
            )
        )
    return records


@dataclass
class TaxonomyReport:
    counts: dict[Category, int] = field(default_factory=dict)
    examples: dict[Category, list[str]] = field(default_factory=dict)
    total_errors: int = 0

    def share(self, category: Category) -> float:
        if self.total_errors == 0:
            return 0.0
        return self.counts.get(category, 0) / self.total_errors

    def to_json(self) -> dict:
        return {
            category.value: {
                "count": self.counts.get(category, 0),
                "share": self.share(category),
                "examples": self.examples.get(category, []),
            }
            for category in Category
        }

    def to_text(self) -> str:
        width = max(len(CATEGORY_LABELS[c]) for c in Category)
        lines = [f"{'Mismatch Types':<{width}}  Count  Share  Examples"]
        for category in Category:
            label = CATEGORY_LABELS[category]
            count = self.counts.get(category, 0)
            examples = ", ".join(self.examples.get(category, [])[:3])
            lines.append(f"{label:<{width}}  {count:>5}  {self.share(category):>5.2f}  {examples}")
        return "\n".join(lines)


def taxonomy_report(
    alignments,
    table: FeatureTable = DEFAULT_TABLE,
    max_examples: int = 10,
) -> TaxonomyReport:
    """Aggregate (ref_tokens, hyp_tokens, Alignment) triples per category."""
    report = TaxonomyReport(
        counts={category: 0 for category in Category},
        examples={category: [] for category in Category},
    )
    for ref_tokens, hyp_tokens, alignment in alignments:
        for record in extract_errors(list(ref_tokens), list(hyp_tokens), alignment, table):
            report.counts[record.category] += 1
            report.total_errors += 1
            if len(report.examples[record.category]) < max_examples:
                report.examples[record.category].append(
                    f"{record.ref_word or '∅'} : {record.hyp_word or '∅'}"
                    f" / {_render_context(record.context)}"
                )
    return report


def _render_context(context: RefContext) -> str:
    """Environment notation: neighbors around the error, # at word edges."""
    def edge(symbol: str | None) -> str:
        return "#" if symbol is None or symbol == " " else symbol

    return f"{edge(context.prev)}__{edge(context.next)}"
