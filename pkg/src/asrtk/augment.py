"""Deterministic audio augmentation: noise, clipping, reverb, time dropout.

Each transform is a pure function of (input, parameters, seed); repeated
runs are bit-identical.  :func:`augment_corpus` expands a train manifest by
one copy per technique (4 techniques = +400% by count), deriving a stable
per-entry seed from the global seed, entry id, and technique so entries can
be processed in any order or in parallel.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.signal import fftconvolve

from .audio_io import AudioBuffer, read_wav, resample, write_wav
from .corpus import AUGMENTED, TECHNIQUES, TRAIN, Manifest, ManifestEntry, Provenance
from .errors import DegenerateInputError, HygieneError, ParameterError

PEAK_LIMIT = 0.99


@dataclass(frozen=True)
class NoiseConfig:
    snr_db_range: tuple[float, float] = (5.0, 15.0)
    noise_source: str = "white"  # "white" or a WAV path


@dataclass(frozen=True)
class ClipConfig:
    factor_range: tuple[float, float] = (0.3, 0.8)


@dataclass(frozen=True)
class ReverbConfig:
    rt60_range: tuple[float, float] = (0.1, 0.5)
    wet_gain: float = 0.4


@dataclass(frozen=True)
class TimeDropoutConfig:
    max_segment_s: float = 0.2
    segments_per_10s: float = 1.0


@dataclass(frozen=True)
class AugmentConfig:
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    clip: ClipConfig = field(default_factory=ClipConfig)
    reverb: ReverbConfig = field(default_factory=ReverbConfig)
    time_dropout: TimeDropoutConfig = field(default_factory=TimeDropoutConfig)
    seed: int = 0
    include_original: bool = False

    def __post_init__(self):
        for name, lo, hi in (
            ("noise.snr_db_range", *self.noise.snr_db_range),
            ("clip.factor_range", *self.clip.factor_range),
            ("reverb.rt60_range", *self.reverb.rt60_range),
        ):
            if lo > hi:
                raise ParameterError(f"{name} is empty: [{lo}, {hi}]")
        if self.clip.factor_range[0] <= 0 or self.clip.factor_range[1] > 1:
            raise ParameterError("clip factors must lie in (0, 1]")
        if self.reverb.rt60_range[0] <= 0:
            raise ParameterError("rt60 must be positive")
        if self.time_dropout.max_segment_s < 0:
            raise ParameterError("max_segment_s must be >= 0")

    @classmethod
    def from_json(cls, doc: dict) -> "AugmentConfig":
        def pair(values):
            lo, hi = values
            return (float(lo), float(hi))

        noise = doc.get("noise", {})
        clip_ = doc.get("clip", {})
        reverb = doc.get("reverb", {})
        dropout = doc.get("time_dropout", {})
        defaults = cls()
        return cls(
            noise=NoiseConfig(
                snr_db_range=pair(noise.get("snr_db_range", defaults.noise.snr_db_range)),
                noise_source=noise.get("noise_source", defaults.noise.noise_source),
            ),
            clip=ClipConfig(
                factor_range=pair(clip_.get("factor_range", defaults.clip.factor_range))
            ),
            reverb=ReverbConfig(
                rt60_range=pair(reverb.get("rt60_range", defaults.reverb.rt60_range)),
                wet_gain=float(reverb.get("wet_gain", defaults.reverb.wet_gain)),
            ),
            time_dropout=TimeDropoutConfig(
                max_segment_s=float(
                    dropout.get("max_segment_s", defaults.time_dropout.max_segment_s)
                ),
                segments_per_10s=float(
                    dropout.get("segments_per_10s", defaults.time_dropout.segments_per_10s)
                ),
            ),
            seed=int(doc.get("seed", defaults.seed)),
            include_original=bool(doc.get("include_original", defaults.include_original)),
        )


def _limit_peak(samples: np.ndarray) -> np.ndarray:
    peak = float(np.max(np.abs(samples))) if len(samples) else 0.0
    if peak > 1.0:
        return samples * (PEAK_LIMIT / peak)
    return samples


def additive_noise(
    b: AudioBuffer,
    snr_db: float,
    noise: AudioBuffer | str = "white",
    seed: int | np.random.Generator = 0,
) -> AudioBuffer:
    """Mix noise into ``b`` at the requested SNR.

    The gain g satisfies 10*log10(P_signal / (P_noise * g^2)) = snr_db, so
    the power ratio of the clean component to the added component equals the
    request exactly.  snr_db = +inf is the identity.  If the mix exceeds
    full scale the whole output is rescaled to peak 0.99, which preserves
    the component ratio.
    """
    if math.isinf(snr_db) and snr_db > 0:
        return b
    signal_power = float(np.mean(np.square(b.samples)))
    if signal_power == 0.0:
        raise DegenerateInputError("silent input has no defined SNR")

    rng = np.random.default_rng(seed)
    if isinstance(noise, str):
        if noise != "white":
            raise ParameterError(f"unknown noise source {noise!r}")
        noise_samples = rng.standard_normal(len(b.samples))
    else:
        noise_buf = noise
        if noise_buf.sample_rate_hz != b.sample_rate_hz:
            noise_buf = resample(noise_buf, b.sample_rate_hz)
        reps = int(np.ceil(len(b.samples) / len(noise_buf.samples)))
        noise_samples = np.tile(noise_buf.samples, reps)[: len(b.samples)]
    noise_power = float(np.mean(np.square(noise_samples)))
    if noise_power == 0.0:
        raise DegenerateInputError("noise source is silent")

    gain = math.sqrt(signal_power / (noise_power * 10.0 ** (snr_db / 10.0)))
    return b.replace(samples=_limit_peak(b.samples + gain * noise_samples))


def clip(b: AudioBuffer, factor: float) -> AudioBuffer:
    """Hard-limit samples to ±(factor * peak). factor = 1.0 is the identity."""
    if not 0.0 < factor <= 1.0:
        raise ParameterError(f"clip factor must be in (0, 1], got {factor}")
    peak = float(np.max(np.abs(b.samples))) if len(b.samples) else 0.0
    if peak == 0.0:
        return b
    threshold = factor * peak
    return b.replace(samples=np.clip(b.samples, -threshold, threshold))


def synth_rir(
    rt60: float, sample_rate_hz: int, seed: int | np.random.Generator = 0
) -> AudioBuffer:
    """Synthetic room impulse response: exponentially decaying white noise.

    Length is ceil(rt60 * rate) samples; the decay envelope reaches -60 dB
    at exactly rt60.  The first sample is the unit direct path and the whole
    response is normalized to unit energy.
    """
    if rt60 <= 0:
        raise ParameterError(f"rt60 must be positive, got {rt60}")
    n = max(1, int(math.ceil(rt60 * sample_rate_hz)))
    rng = np.random.default_rng(seed)
    envelope = 10.0 ** (-3.0 * np.arange(n) / (rt60 * sample_rate_hz))
    ir = rng.standard_normal(n) * envelope
    ir[0] = 1.0
    ir /= math.sqrt(float(np.sum(np.square(ir))))
    return AudioBuffer(samples=ir, sample_rate_hz=sample_rate_hz)


def reverberate(b: AudioBuffer, ir: AudioBuffer, wet_gain: float) -> AudioBuffer:
    """Wet/dry mix of ``b`` with its full convolution against ``ir``.

    Output keeps the convolution tail: length = len(b) + len(ir) - 1.  A
    single-tap unit impulse returns the input bit-identically.
    """
    if len(ir.samples) == 0:
        raise ParameterError("impulse response is empty")
    if ir.sample_rate_hz != b.sample_rate_hz:
        raise ParameterError(
            f"sample-rate mismatch: signal {b.sample_rate_hz} Hz, ir {ir.sample_rate_hz} Hz"
        )
    if len(ir.samples) == 1 and ir.samples[0] == 1.0:
        return b
    wet = fftconvolve(b.samples, ir.samples, mode="full")
    dry = np.zeros_like(wet)
    dry[: len(b.samples)] = b.samples
    return b.replace(samples=_limit_peak((1.0 - wet_gain) * dry + wet_gain * wet))


def time_dropout(
    b: AudioBuffer,
    max_segment_s: float,
    segments_per_10s: float,
    seed: int | np.random.Generator = 0,
) -> AudioBuffer:
    """Zero out k = round(segments_per_10s * duration/10) random segments.

    Each segment start is uniform over the buffer and its length uniform in
    (0, max_segment_s], clamped at the buffer end.  Length is unchanged.
    """
    if max_segment_s < 0:
        raise ParameterError(f"max_segment_s must be >= 0, got {max_segment_s}")
    k = int(round(segments_per_10s * b.duration_s / 10.0))
    if k <= 0 or max_segment_s == 0.0:
        return b
    rng = np.random.default_rng(seed)
    samples = b.samples.copy()
    n = len(samples)
    for _ in range(k):
        start = int(rng.uniform(0.0, n))
        length_s = (1.0 - rng.uniform()) * max_segment_s  # uniform over (0, max]
        length = int(math.ceil(length_s * b.sample_rate_hz))
        samples[start : min(n, start + length)] = 0.0
    return b.replace(samples=samples)


def derive_seed(global_seed: int, entry_id: str, technique: str) -> int:
    """Stable 64-bit per-entry seed; independent of processing order."""
    digest = hashlib.sha256(f"{global_seed}|{entry_id}|{technique}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _apply_technique(
    buffer: AudioBuffer, technique: str, config: AugmentConfig, seed: int
) -> AudioBuffer:
    rng = np.random.default_rng(seed)
    if technique == "noise":
        lo, hi = config.noise.snr_db_range
        snr_db = rng.uniform(lo, hi)
        source: AudioBuffer | str = config.noise.noise_source
        if source != "white":
            source = read_wav(source)
        return additive_noise(buffer, snr_db, source, rng)
    if technique == "clip":
        lo, hi = config.clip.factor_range
        return clip(buffer, rng.uniform(lo, hi))
    if technique == "reverb":
        lo, hi = config.reverb.rt60_range
        ir = synth_rir(rng.uniform(lo, hi), buffer.sample_rate_hz, rng)
        return reverberate(buffer, ir, config.reverb.wet_gain)
    if technique == "time_dropout":
        return time_dropout(
            buffer,
            config.time_dropout.max_segment_s,
            config.time_dropout.segments_per_10s,
            rng,
        )
    raise ParameterError(f"unknown technique {technique!r}")


def augment_corpus(
    train: Manifest,
    config: AugmentConfig,
    out_dir: str | Path,
    audio_base: str | Path = ".",
    manifest_base: str | Path | None = None,
) -> Manifest:
    """Write one augmented copy per technique for every train entry.

    Audio lands in ``out_dir`` as ``<parent_id>.<technique>.wav``.  Relative
    input paths resolve against ``audio_base`` (the input manifest's
    directory); output entries reference their audio relative to
    ``manifest_base`` (default ``out_dir``'s parent, where the output
    manifest is expected to live).  Original entries are included only when
    ``config.include_original``.
    """
    for entry in train:
        if entry.split != TRAIN:
            raise HygieneError(
                f"refusing to augment non-train entry {entry.id!r} (split={entry.split!r});"
                " test audio is never augmented"
            )
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    audio_base = Path(audio_base)
    manifest_base = Path(manifest_base) if manifest_base is not None else out_dir.parent

    entries: list[ManifestEntry] = []
    for entry in train:
        if config.include_original:
            entries.append(entry)
        source = read_wav(_resolve_audio(entry.audio, audio_base))
        for technique in TECHNIQUES:
            seed = derive_seed(config.seed, entry.id, technique)
            augmented = _apply_technique(source, technique, config, seed)
            name = f"{entry.id}.{technique}.wav"
            write_wav(augmented, out_dir / name)
            entries.append(
                ManifestEntry(
                    id=f"{entry.id}.{technique}",
                    audio=_relative_audio(out_dir / name, manifest_base),
                    text=entry.text,
                    duration_s=augmented.duration_s,
                    split=TRAIN,
                    provenance=Provenance(
                        kind=AUGMENTED, technique=technique, seed=seed, parent=entry.id
                    ),
                )
            )
    return Manifest(entries=tuple(entries))


def _resolve_audio(audio: str, base: Path) -> Path:
    path = Path(audio)
    return path if path.is_absolute() else base / path


def _relative_audio(path: Path, base: Path) -> str:
    try:
        return path.relative_to(base).as_posix()
    except ValueError:
        return str(path)
