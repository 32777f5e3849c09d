"""Command-line entry point: ingest, split, augment, eval, taxonomy, validate.

Every subcommand is deterministic for a fixed ``--seed`` and writes a
machine-readable JSON artifact next to its human-readable output.  Module
errors map to distinct exit codes so shell pipelines can tell a charset
problem from a hygiene violation.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import audio_io, augment, corpus, metrics, taxonomy, transcript
from .errors import (
    CharsetError,
    DegenerateInputError,
    FormatError,
    HygieneError,
    MetricUndefinedError,
    PairingError,
    ParameterError,
    ToolkitError,
)

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_IO = 2
EXIT_FORMAT = 3
EXIT_CHARSET = 4
EXIT_HYGIENE = 5
EXIT_PAIRING = 6
EXIT_FINDINGS = 7
EXIT_PARAMETER = 8

_ERROR_CODES = (
    (CharsetError, EXIT_CHARSET),
    (HygieneError, EXIT_HYGIENE),
    (PairingError, EXIT_PAIRING),
    (FormatError, EXIT_FORMAT),
    (ParameterError, EXIT_PARAMETER),
    (DegenerateInputError, EXIT_PARAMETER),
    (MetricUndefinedError, EXIT_PARAMETER),
    (ToolkitError, EXIT_UNEXPECTED),
    (OSError, EXIT_IO),
)


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {value!r}")


def _write_json(doc: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _feature_table(config: dict) -> transcript.FeatureTable:
    if "inventory" in config:
        return transcript.FeatureTable.from_json(config["inventory"])
    return transcript.DEFAULT_TABLE


def _score_options(args) -> metrics.ScoreOptions:
    return metrics.ScoreOptions(cer_spaces=args.cer_spaces, strip_punct=args.strip_punct)


def cmd_ingest(args) -> int:
    out_dir = Path(args.out)
    audio_dir = Path(args.audio_dir)
    table = _feature_table(_load_config(args.config))

    texts: dict[str, str] = {}
    with open(args.transcripts, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise FormatError(f"{args.transcripts}:{lineno}: expected '<id>\\t<text>'")
            utt_id, text = line.split("\t", 1)
            texts[utt_id.strip()] = text

    wavs = {p.stem: p for p in sorted(audio_dir.glob("*.wav"))}
    problems = []
    for utt_id in sorted(set(wavs) - set(texts)):
        problems.append({"id": utt_id, "kind": "missing-transcript"})
    for utt_id in sorted(set(texts) - set(wavs)):
        problems.append({"id": utt_id, "kind": "missing-audio"})

    entries = []
    audio_out = out_dir / "audio"
    audio_out.mkdir(parents=True, exist_ok=True)
    for utt_id in sorted(set(wavs) & set(texts)):
        try:
            text = transcript.normalize(texts[utt_id], table)
        except CharsetError as exc:
            problems.append({"id": utt_id, "kind": "charset", "detail": str(exc)})
            continue
        buffer = audio_io.read_wav(wavs[utt_id])
        buffer = audio_io.resample(buffer, audio_io.CANONICAL_RATE_HZ)
        target = audio_out / f"{utt_id}.wav"
        audio_io.write_wav(buffer, target)
        entries.append(
            corpus.ManifestEntry(
                id=utt_id,
                audio=target.relative_to(out_dir).as_posix(),
                text=text,
                duration_s=buffer.duration_s,
                split=corpus.TRAIN,
                provenance=corpus.Provenance(),
            )
        )

    manifest = corpus.Manifest(entries=tuple(entries))
    corpus.write_manifest(manifest, out_dir / "manifest.jsonl")
    summary = {
        "entries": len(entries),
        "total_minutes": corpus.total_duration(manifest),
        "problems": problems,
    }
    _write_json(summary, out_dir / "ingest.json")
    print(f"ingested {len(entries)} utterances, {summary['total_minutes']:.2f} min")
    for problem in problems:
        print(f"  problem: {problem['kind']}: {problem['id']}", file=sys.stderr)
        if "detail" in problem:
            print(f"    {problem['detail']}", file=sys.stderr)
    return EXIT_FINDINGS if problems else EXIT_OK


def cmd_split(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    manifest = corpus.read_manifest(args.manifest)
    manifest = corpus.rebase_audio_paths(manifest, Path(args.manifest).parent, Path(args.out))
    train, test = corpus.split(manifest, args.test_fraction, seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus.write_manifest(train, out_dir / "train.jsonl")
    corpus.write_manifest(test, out_dir / "test.jsonl")
    summary = {
        "seed": seed,
        "test_fraction": args.test_fraction,
        "train": {"entries": len(train), "minutes": corpus.total_duration(train)},
        "test": {"entries": len(test), "minutes": corpus.total_duration(test)},
    }
    _write_json(summary, out_dir / "split.json")
    print(
        f"train {len(train)} utts / {summary['train']['minutes']:.2f} min | "
        f"test {len(test)} utts / {summary['test']['minutes']:.2f} min"
    )
    return EXIT_OK


def cmd_augment(args) -> int:
    manifest = corpus.read_manifest(args.manifest)
    config_doc = _load_config(args.config).get("augment", {})
    config = augment.AugmentConfig.from_json(config_doc)
    # explicit flag > config file > documented default
    if args.seed is not None:
        seed = args.seed
    elif "seed" in config_doc:
        seed = config.seed
    else:
        seed = DEFAULT_SEED
    config = dataclasses.replace(
        config, seed=seed, include_original=args.include_original or config.include_original
    )
    out_dir = Path(args.out)
    manifest = corpus.rebase_audio_paths(manifest, Path(args.manifest).parent, out_dir)
    augmented = augment.augment_corpus(
        manifest,
        config,
        out_dir / "audio",
        audio_base=out_dir,
        manifest_base=out_dir,
    )
    corpus.write_manifest(augmented, out_dir / "augmented.jsonl")
    before = corpus.total_duration(manifest)
    after = corpus.total_duration(augmented)
    summary = {
        "seed": config.seed,
        "include_original": config.include_original,
        "entries_before": len(manifest),
        "entries_after": len(augmented),
        "minutes_before": before,
        "minutes_after": after,
    }
    _write_json(summary, out_dir / "augment.json")
    print(f"{len(manifest)} -> {len(augmented)} utts | {before:.2f} -> {after:.2f} min")
    return EXIT_OK


def _paired_texts(refs_path: str, hyps_path: str) -> tuple[list[str], list[tuple[str, str]]]:
    refs = corpus.read_manifest(refs_path)
    hyps = corpus.read_manifest(hyps_path).by_id()
    missing = [entry.id for entry in refs if entry.id not in hyps]
    if missing:
        raise PairingError(missing)
    ids = [entry.id for entry in refs]
    pairs = [(entry.text, hyps[entry.id].text) for entry in refs]
    return ids, pairs


def cmd_eval(args) -> int:
    ids, pairs = _paired_texts(args.refs, args.hyps)
    options = _score_options(args)
    report = metrics.corpus_eval(pairs, options, ids=ids)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(report.to_json(), out_dir / "report.json")
    with open(out_dir / "aligned.txt", "w", encoding="utf-8") as fh:
        for utt_id, (ref, hyp) in zip(ids, pairs):
            fh.write(f"# {utt_id}\n{metrics.render_aligned(ref, hyp, options)}\n\n")
    print(f"CER {report.cer:.4f}  WER {report.wer:.4f}  ({len(ids)} utterances)")
    return EXIT_OK


def cmd_taxonomy(args) -> int:
    ids, pairs = _paired_texts(args.refs, args.hyps)
    table = _feature_table(_load_config(args.config))
    options = _score_options(args)
    triples = []
    for ref, hyp in pairs:
        ref_n = transcript.normalize(ref, table)
        hyp_n = transcript.normalize(hyp, table)
        if options.strip_punct:
            ref_n = transcript.strip_punctuation(ref_n)
            hyp_n = transcript.strip_punctuation(hyp_n)
        ref_tokens = transcript.tokenize_chars(ref_n)
        hyp_tokens = transcript.tokenize_chars(hyp_n)
        triples.append((ref_tokens, hyp_tokens, metrics.align(ref_tokens, hyp_tokens)))
    report = taxonomy.taxonomy_report(triples, table)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(report.to_json(), out_dir / "taxonomy.json")
    text = report.to_text()
    with open(out_dir / "taxonomy.txt", "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    table = _feature_table(_load_config(args.config))
    report = corpus.validate_manifest(args.manifest, table)
    if args.out:
        _write_json(report.to_json(), Path(args.out) / "validation.json")
    if report.ok:
        print("manifest OK")
        return EXIT_OK
    for issue in report.issues:
        print(str(issue), file=sys.stderr)
    print(f"{len(report.issues)} issue(s) found", file=sys.stderr)
    return EXIT_FINDINGS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asrtk",
        description="Corpus preparation, augmentation, and evaluation for low-resource ASR.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False, config=False, scoring=False):
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help=f"RNG seed (default {DEFAULT_SEED})")
        if config:
            p.add_argument("--config", help="toolkit config JSON (inventory/augment sections)")
        if scoring:
            p.add_argument("--cer-spaces", type=_parse_bool, default=True, metavar="BOOL")
            p.add_argument("--strip-punct", type=_parse_bool, default=True, metavar="BOOL")

    p = sub.add_parser("ingest", help="build a manifest from WAVs and a TSV transcript file")
    p.add_argument("--audio-dir", required=True)
    p.add_argument("--transcripts", required=True, help="tab-separated '<id>\\t<text>' lines")
    p.add_argument("--out", required=True)
    common(p, config=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("split", help="seeded duration-weighted train/test split")
    p.add_argument("--manifest", required=True)
    p.add_argument("--test-fraction", type=float, required=True)
    p.add_argument("--out", required=True)
    common(p, seed=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("augment", help="expand a train manifest with the four techniques")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--include-original", action="store_true")
    common(p, seed=True, config=True)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("eval", help="score a hypothesis manifest against references")
    p.add_argument("--refs", required=True)
    p.add_argument("--hyps", required=True)
    p.add_argument("--out", required=True)
    common(p, scoring=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("taxonomy", help="classify recognition errors phonologically")
    p.add_argument("--refs", required=True)
    p.add_argument("--hyps", required=True)
    p.add_argument("--out", required=True)
    common(p, config=True, scoring=True)
    p.set_defaults(func=cmd_taxonomy)

    p = sub.add_parser("validate", help="check a manifest against schema, audio, and charset")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out")
    common(p, config=True)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - map to exit codes at the boundary
        for err_type, code in _ERROR_CODES:
            if isinstance(exc, err_type):
                print(f"error: {exc}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
