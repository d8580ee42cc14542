import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from routemarket import Instance, load_instance

PR01 = Path(__file__).resolve().parent.parent / "instances" / "pr01.txt"


@pytest.fixture(scope="session")
def pr01() -> Instance:
    return load_instance(PR01)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
