"""Levenshtein alignment with backtrace, CER/WER, and corpus aggregation.

CER is character edit distance over reference character count; WER is the
same at word level.  Unit costs (1, 1, 1), no transposition.  By default
the character stream includes inter-word spaces and sentence punctuation is
stripped before scoring; both conventions are explicit options.

The backtrace tie-break is fixed (Match > Sub > Del > Ins) so alignments,
and everything derived from them, are stable across runs and backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, transcript
from .errors import MetricUndefinedError

MATCH = "match"
SUB = "sub"
DEL = "del"
INS = "ins"


@dataclass(frozen=True)
class EditOp:
    """One alignment step.

    ``ref_pos``/``hyp_pos`` index the consumed token; for DEL, ``hyp_pos``
    is the gap index in the hypothesis (and vice versa for INS).
    """

    kind: str
    ref_sym: str | None
    hyp_sym: str | None
    ref_pos: int
    hyp_pos: int

    @property
    def is_error(self) -> bool:
        return self.kind != MATCH


@dataclass(frozen=True)
class Alignment:
    ops: tuple[EditOp, ...]
    distance: int

    def errors(self) -> list[EditOp]:
        return [op for op in self.ops if op.is_error]


@dataclass(frozen=True)
class ScoreOptions:
    cer_spaces: bool = True      # count inter-word spaces as CER tokens
    strip_punct: bool = True     # drop . , ? before scoring


def _encode(ref: list, hyp: list) -> tuple[np.ndarray, np.ndarray]:
    ids: dict = {}
    def encode_one(tokens):
        out = np.empty(len(tokens), dtype=np.int32)
        for i, tok in enumerate(tokens):
            out[i] = ids.setdefault(tok, len(ids))
        return out
    return encode_one(ref), encode_one(hyp)


def edit_distance(ref: list, hyp: list) -> int:
    """Levenshtein distance between two token sequences."""
    if not ref:
        return len(hyp)
    if not hyp:
        return len(ref)
    ref_ids, hyp_ids = _encode(ref, hyp)
    return int(_kernels.edit_matrix(ref_ids, hyp_ids)[-1, -1])


def align(ref: list, hyp: list) -> Alignment:
    """Minimal-cost alignment; ties resolved Match > Sub > Del > Ins."""
    ref = list(ref)
    hyp = list(hyp)
    if not ref or not hyp:
        ops = [EditOp(DEL, sym, None, i, 0) for i, sym in enumerate(ref)]
        ops += [EditOp(INS, None, sym, len(ref), j) for j, sym in enumerate(hyp)]
        return Alignment(ops=tuple(ops), distance=len(ops))

    ref_ids, hyp_ids = _encode(ref, hyp)
    dp = _kernels.edit_matrix(ref_ids, hyp_ids)

    rev: list[EditOp] = []
    i, j = len(ref), len(hyp)
    while i > 0 or j > 0:
        here = dp[i, j]
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] and here == dp[i - 1, j - 1]:
            rev.append(EditOp(MATCH, ref[i - 1], hyp[j - 1], i - 1, j - 1))
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and here == dp[i - 1, j - 1] + 1:
            rev.append(EditOp(SUB, ref[i - 1], hyp[j - 1], i - 1, j - 1))
            i -= 1
            j -= 1
        elif i > 0 and here == dp[i - 1, j] + 1:
            rev.append(EditOp(DEL, ref[i - 1], None, i - 1, j))
            i -= 1
        else:
            rev.append(EditOp(INS, None, hyp[j - 1], i, j - 1))
            j -= 1
    return Alignment(ops=tuple(reversed(rev)), distance=int(dp[-1, -1]))


def replay(ops: tuple[EditOp, ...]) -> list:
    """Apply ops to the reference they came from, yielding the hypothesis."""
    out = []
    for op in ops:
        if op.kind in (MATCH, SUB, INS):
            out.append(op.hyp_sym)
    return out


def _char_tokens(s: str, options: ScoreOptions) -> list[str]:
    if options.strip_punct:
        s = transcript.strip_punctuation(s)
    tokens = transcript.tokenize_chars(s)
    if not options.cer_spaces:
        tokens = [t for t in tokens if t != " "]
    return tokens


def _word_tokens(s: str, options: ScoreOptions) -> list[str]:
    if options.strip_punct:
        s = transcript.strip_punctuation(s)
    return transcript.tokenize_words(s)


def cer(ref: str, hyp: str, options: ScoreOptions = ScoreOptions()) -> float:
    """Character error rate: char edit distance / reference char count."""
    ref_tokens = _char_tokens(transcript.normalize(ref), options)
    hyp_tokens = _char_tokens(transcript.normalize(hyp), options)
    if not ref_tokens:
        raise MetricUndefinedError("CER undefined for empty reference")
    return edit_distance(ref_tokens, hyp_tokens) / len(ref_tokens)


def wer(ref: str, hyp: str, options: ScoreOptions = ScoreOptions()) -> float:
    """Word error rate: word edit distance / reference word count."""
    ref_tokens = _word_tokens(transcript.normalize(ref), options)
    hyp_tokens = _word_tokens(transcript.normalize(hyp), options)
    if not ref_tokens:
        raise MetricUndefinedError("WER undefined for empty reference")
    return edit_distance(ref_tokens, hyp_tokens) / len(ref_tokens)


def _op_counts(alignment: Alignment) -> dict[str, int]:
    counts = {SUB: 0, DEL: 0, INS: 0}
    for op in alignment.ops:
        if op.is_error:
            counts[op.kind] += 1
    return counts


@dataclass(frozen=True)
class UtteranceScore:
    id: str
    cer: float
    wer: float
    char_distance: int
    char_count: int
    word_distance: int
    word_count: int
    char_ops: dict[str, int]
    word_ops: dict[str, int]


@dataclass(frozen=True)
class EvalReport:
    """Micro-averaged corpus scores plus the per-utterance breakdown."""

    cer: float
    wer: float
    char_distance: int
    char_count: int
    word_distance: int
    word_count: int
    char_ops: dict[str, int]
    word_ops: dict[str, int]
    utterances: tuple[UtteranceScore, ...] = ()

    def to_json(self) -> dict:
        return {
            "cer": self.cer,
            "wer": self.wer,
            "char": {
                "distance": self.char_distance,
                "ref_count": self.char_count,
                **self.char_ops,
            },
            "word": {
                "distance": self.word_distance,
                "ref_count": self.word_count,
                **self.word_ops,
            },
            "utterances": [
                {
                    "id": u.id,
                    "cer": u.cer,
                    "wer": u.wer,
                    "char_distance": u.char_distance,
                    "char_count": u.char_count,
                    "word_distance": u.word_distance,
                    "word_count": u.word_count,
                }
                for u in self.utterances
            ],
        }


def corpus_eval(
    pairs,
    options: ScoreOptions = ScoreOptions(),
    ids: list[str] | None = None,
) -> EvalReport:
    """Micro-averaged CER/WER over (ref, hyp) pairs.

    Micro-averaging sums edit distances and reference lengths before
    dividing, matching the convention behind reported corpus figures.
    """
    pairs = list(pairs)
    if ids is None:
        ids = [f"utt{i:06d}" for i in range(len(pairs))]
    rows = []
    char_ops_total = {SUB: 0, DEL: 0, INS: 0}
    word_ops_total = {SUB: 0, DEL: 0, INS: 0}
    for utt_id, (ref, hyp) in zip(ids, pairs):
        ref_chars = _char_tokens(transcript.normalize(ref), options)
        hyp_chars = _char_tokens(transcript.normalize(hyp), options)
        ref_words = _word_tokens(transcript.normalize(ref), options)
        hyp_words = _word_tokens(transcript.normalize(hyp), options)
        if not ref_chars:
            continue
        char_align = align(ref_chars, hyp_chars)
        word_align = align(ref_words, hyp_words)
        char_ops = _op_counts(char_align)
        word_ops = _op_counts(word_align)
        for k in char_ops_total:
            char_ops_total[k] += char_ops[k]
            word_ops_total[k] += word_ops[k]
        rows.append(
            UtteranceScore(
                id=utt_id,
                cer=char_align.distance / len(ref_chars),
                wer=word_align.distance / len(ref_words),
                char_distance=char_align.distance,
                char_count=len(ref_chars),
                word_distance=word_align.distance,
                word_count=len(ref_words),
                char_ops=char_ops,
                word_ops=word_ops,
            )
        )
    if not rows:
        raise MetricUndefinedError("corpus metrics undefined: all references empty")
    char_count = sum(r.char_count for r in rows)
    word_count = sum(r.word_count for r in rows)
    char_distance = sum(r.char_distance for r in rows)
    word_distance = sum(r.word_distance for r in rows)
    return EvalReport(
        cer=char_distance / char_count,
        wer=word_distance / word_count,
        char_distance=char_distance,
        char_count=char_count,
        word_distance=word_distance,
        word_count=word_count,
        char_ops=char_ops_total,
        word_ops=word_ops_total,
        utterances=tuple(rows),
    )


def render_aligned(ref: str, hyp: str, options: ScoreOptions = ScoreOptions()) -> str:
    """Two-line ref/hyp rendering with mismatching words bracketed.

    Deleted words show as ``[word]`` against ``[]`` and vice versa for
    insertions, so errors line up visually.
    """
    ref_words = _word_tokens(transcript.normalize(ref), options)
    hyp_words = _word_tokens(transcript.normalize(hyp), options)
    alignment = align(ref_words, hyp_words)
    ref_line = []
    hyp_line = []
    for op in alignment.ops:
        if op.kind == MATCH:
            ref_line.append(op.ref_sym)
            hyp_line.append(op.hyp_sym)
        elif op.kind == SUB:
            ref_line.append(f"[{op.ref_sym}]")
            hyp_line.append(f"[{op.hyp_sym}]")
        elif op.kind == DEL:
            ref_line.append(f"[{op.ref_sym}]")
            hyp_line.append("[]")
        else:
            ref_line.append("[]")
            hyp_line.append(f"[{op.hyp_sym}]")
    return f"REF: {' '.join(ref_line)}\nHYP: {' '.join(hyp_line)}"
