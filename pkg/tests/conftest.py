import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from keyrec.qcldpc import load_code

DATA = Path(__file__).parent.parent / "src" / "keyrec" / "data"


@pytest.fixture(scope="session")
def shipped_codes():
    return {name: load_code(DATA / "codes" / f"{name}.json") for name in ("c1", "c2", "c3")}


@pytest.fixture(scope="session")
def data_dir():
    return DATA
