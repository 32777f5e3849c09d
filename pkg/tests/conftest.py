"""Pytest fixtures over the synthetic corpus helpers."""

import pytest

from synthcorpus import write_corpus


@pytest.fixture
def small_corpus(tmp_path):
    audio_dir, tsv = write_corpus(tmp_path, n_utts=6, seed=7, duration_range=(0.4, 1.2))
    return tmp_path, audio_dir, tsv
