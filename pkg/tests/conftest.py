import random
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def fixture_csv() -> Path:
    return DATA_DIR / "structured_fixture.csv"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
