"""Minimal PCM-16 mono WAV loading (the toolkit's interchange format)."""

from __future__ import annotations

import wave
from pathlib import Path

import numpy as np


def load_wav(path: str | Path, expected_rate: int = 16000) -> np.ndarray:
    with wave.open(str(path), "rb") as fh:
        if fh.getcomptype() != "NONE" or fh.getsampwidth() != 2:
            raise ValueError(f"{path}: expected PCM 16-bit WAV")
        if fh.getnchannels() != 1:
            raise ValueError(f"{path}: expected mono audio")
        rate = fh.getframerate()
        if rate != expected_rate:
            raise ValueError(f"{path}: {rate} Hz audio, model expects {expected_rate} Hz")
        frames = fh.readframes(fh.getnframes())
    return np.frombuffer(frames, dtype="<i2").astype(np.float32) / 32768.0
