import json
from pathlib import Path

import pytest

from floppy.curve import nonsingular_curve
from floppy.fileformat import load_json, run_derivation

ROOT = Path(__file__).resolve().parents[1]
DERIVATIONS = ROOT / "data" / "derivations"
NEST = "1<2+1<18>>"


@pytest.fixture
def nest8():
    return nonsingular_curve(NEST, 8)


@pytest.fixture(scope="session")
def case1():
    return run_derivation(load_json(DERIVATIONS / "case1.fcd"), DERIVATIONS)


@pytest.fixture(scope="session")
def case2():
    return run_derivation(load_json(DERIVATIONS / "case2.fcd"), DERIVATIONS)


@pytest.fixture
def write_json(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return p
    return write
