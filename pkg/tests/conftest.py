import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for refvals

import refvals
from symplectica import dirac


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def reference_beam():
    return dirac.BeamMatrix4.from_components(refvals.REFERENCE_BEAM)


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"
