"""WAV reading/writing and the canonical in-memory audio representation.

All pipeline DSP operates on :class:`AudioBuffer`: immutable mono float64
samples in [-1, +1] plus a sample rate.  Readers accept PCM 16-bit and
IEEE-float-32 RIFF/WAVE files with 1 or 2 channels; the writer always emits
PCM 16-bit mono.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import FormatError, ParameterError, UnsupportedCodecError

CANONICAL_RATE_HZ = 16000

_WAVE_FORMAT_PCM = 0x0001
_WAVE_FORMAT_IEEE_FLOAT = 0x0003
_WAVE_FORMAT_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True)
class AudioBuffer:
    """Mono audio: float64 samples (nominal range [-1, +1]) at a fixed rate."""

    samples: np.ndarray
    sample_rate_hz: int
    source_id: str | None = None

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ParameterError(f"sample rate must be positive, got {self.sample_rate_hz}")
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ParameterError(f"samples must be 1-D, got shape {samples.shape}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz

    def replace(self, samples: np.ndarray, sample_rate_hz: int | None = None) -> "AudioBuffer":
        return AudioBuffer(
            samples=samples,
            sample_rate_hz=self.sample_rate_hz if sample_rate_hz is None else sample_rate_hz,
            source_id=self.source_id,
        )


def _read_exact(fh, count: int, what: str) -> bytes:
    data = fh.read(count)
    if len(data) != count:
        raise FormatError(f"truncated WAV file: expected {count} bytes of {what}")
    return data


def read_wav(path: str | Path) -> AudioBuffer:
    """Read a RIFF/WAVE file into a mono :class:`AudioBuffer`.

    Stereo input is averaged to mono; int16 samples are scaled by 1/32768.
    The sample rate is preserved as read (use :func:`resample` to reach the
    canonical pipeline rate).
    """
    path = Path(path)
    with open(path, "rb") as fh:
        riff = fh.read(12)
        if len(riff) < 12 or riff[:4] != b"RIFF" or riff[8:12] != b"WAVE":
            raise FormatError(f"{path}: not a RIFF/WAVE file")

        fmt = None
        data = None
        while True:
            header = fh.read(8)
            if len(header) == 0:
                break
            if len(header) < 8:
                raise FormatError(f"{path}: truncated chunk header")
            chunk_id, size = struct.unpack("<4sI", header)
            if chunk_id == b"fmt ":
                fmt = _read_exact(fh, size, "fmt chunk")
            elif chunk_id == b"data":
                data = _read_exact(fh, size, "data chunk")
            else:
                fh.seek(size, 1)
            if size % 2:  # chunks are word-aligned
                fh.seek(1, 1)
            if fmt is not None and data is not None:
                break

    if fmt is None or len(fmt) < 16:
        raise FormatError(f"{path}: missing or short fmt chunk")
    if data is None:
        raise FormatError(f"{path}: missing data chunk")

    tag, channels, rate, _, _, bits = struct.unpack("<HHIIHH", fmt[:16])
    if tag == _WAVE_FORMAT_EXTENSIBLE:
        # cbSize(2) + validBits(2) + channelMask(4) + SubFormat GUID; the
        # first two GUID bytes carry the underlying format tag.
        if len(fmt) < 26:
            raise FormatError(f"{path}: malformed WAVE_FORMAT_EXTENSIBLE fmt chunk")
        tag = struct.unpack_from("<H", fmt, 24)[0]

    if channels not in (1, 2):
        raise UnsupportedCodecError(f"{path}: {channels} channels (only mono/stereo read)")
    if rate <= 0:
        raise FormatError(f"{path}: invalid sample rate {rate}")

    if tag == _WAVE_FORMAT_PCM and bits == 16:
        raw = np.frombuffer(data[: len(data) - len(data) % (2 * channels)], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif tag == _WAVE_FORMAT_IEEE_FLOAT and bits == 32:
        raw = np.frombuffer(data[: len(data) - len(data) % (4 * channels)], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise UnsupportedCodecError(
            f"{path}: unsupported encoding (format tag {tag:#06x}, {bits}-bit)"
        )

    if channels == 2:
        samples = samples.reshape(-1, 2).mean(axis=1)
    if len(samples) == 0:
        raise FormatError(f"{path}: empty data chunk")
    return AudioBuffer(samples=samples, sample_rate_hz=rate, source_id=path.stem)


def write_wav(buffer: AudioBuffer, path: str | Path) -> None:
    """Write ``buffer`` as PCM 16-bit mono.

    Samples must already lie in [-1, +1]; callers peak-normalize first.
    Quantization maps v to round(32768*v) clipped to int16, so a
    read-back differs from the original by at most 1/32768 per sample.
    """
    peak = float(np.max(np.abs(buffer.samples))) if len(buffer.samples) else 0.0
    if peak > 1.0:
        raise ParameterError(f"samples outside [-1, 1] (peak {peak:.6f}); peak-normalize first")
    ints = np.clip(np.round(buffer.samples * 32768.0), -32768, 32767).astype("<i2")
    data = ints.tobytes()
    rate = buffer.sample_rate_hz
    header = b"".join(
        [
            struct.pack("<4sI4s", b"RIFF", 36 + len(data), b"WAVE"),
            struct.pack(
                "<4sIHHIIHH", b"fmt ", 16, _WAVE_FORMAT_PCM, 1, rate, rate * 2, 2, 16
            ),
            struct.pack("<4sI", b"data", len(data)),
        ]
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data)


def resample(buffer: AudioBuffer, target_hz: int) -> AudioBuffer:
    """Band-limited resampling via Kaiser-windowed sinc interpolation.

    Output length is round(len * target/source) (half-up on exact ties);
    identical rates return the buffer unchanged.
    """
    if target_hz <= 0:
        raise ParameterError(f"target rate must be positive, got {target_hz}")
    source_hz = buffer.sample_rate_hz
    if target_hz == source_hz:
        return buffer
    n_in = len(buffer.samples)
    n_out = (n_in * target_hz + source_hz // 2) // source_hz
    filt = _kernels.design(source_hz, target_hz)
    out = _kernels.sinc_mix(
        np.ascontiguousarray(buffer.samples),
        int(n_out),
        filt.step,
        filt.table,
        filt.half_width,
    )
    return buffer.replace(samples=out, sample_rate_hz=target_hz)
