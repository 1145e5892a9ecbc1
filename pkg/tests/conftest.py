"""
Shared fixtures for the eigenflats test suite.

Run with: pytest tests/
Desk-scale runs: pytest -m slow
"""

import numpy as np
import pytest

from eigenflats.config import DEFAULT_SEED
from eigenflats.rootsys import TypeLabel, build_root_system
from eigenflats.wgroup import enumerate_group


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)


@pytest.fixture(scope="session")
def groups():
    """(root system, enumeration) by type label, built once per session."""
    cache = {}

    def get(text):
        if text not in cache:
            rs = build_root_system(TypeLabel.parse(text))
            cache[text] = (rs, enumerate_group(rs, cap=100_000))
        return cache[text]

    return get
