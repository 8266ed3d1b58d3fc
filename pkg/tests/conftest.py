import sys
from pathlib import Path

import pytest

from oldcong.documents import load_curve

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

FIXTURE_LEVELS = (11, 14, 15, 17, 33, 37, 42, 57)


def fixture_path(N):
    return DATA / f"curve{N}.json"


@pytest.fixture(params=FIXTURE_LEVELS, ids=lambda N: f"N{N}")
def fixture_curve(request):
    return load_curve(fixture_path(request.param))


@pytest.fixture
def curve11():
    return load_curve(fixture_path(11))


@pytest.fixture
def curves():
    return {N: load_curve(fixture_path(N)) for N in FIXTURE_LEVELS}
