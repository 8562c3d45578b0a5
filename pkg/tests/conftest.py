from __future__ import annotations

from pathlib import Path

import pytest

from hyperreg.mpnum import PrecisionPolicy

REPO = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def pol():
    return PrecisionPolicy(30)


@pytest.fixture(scope="session")
def pol40():
    return PrecisionPolicy(40)


@pytest.fixture(scope="session")
def fixtures_dir():
    return REPO / "fixtures"
