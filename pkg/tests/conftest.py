from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ein2lie import FAMILIES, sample_valid_points

ACCEPTANCE_SEED = 7


@pytest.fixture(scope="session")
def family_samples_100():
    """100 seeded random valid parameter points per family (shared)."""
    return {family: sample_valid_points(family, 100, ACCEPTANCE_SEED) for family in FAMILIES}
