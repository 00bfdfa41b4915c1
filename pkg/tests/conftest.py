import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from posigroup import MeasureSpace, canonical_pair  # noqa: E402


@pytest.fixture
def canonical():
    return canonical_pair()


@pytest.fixture
def unit2():
    return MeasureSpace.uniform(2)
