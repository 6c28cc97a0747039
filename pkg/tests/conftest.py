import math

import pytest

from baxterq.kernels import ModelParams
from baxterq.special_functions import Periods

SQRT2 = math.sqrt(2)


@pytest.fixture
def irrational_periods():
    return Periods(1.0, SQRT2)


@pytest.fixture
def complex_periods():
    return Periods(1.0, 1.0 + 1.0j)


@pytest.fixture
def generic_params():
    """Irrational period ratio, so every residue is simple."""
    return ModelParams.from_numbers(1.0, SQRT2, 0.7)


@pytest.fixture
def unit_params():
    """Real preset with Re g < Re w2, used by the quadrature checks."""
    return ModelParams.from_numbers(1.0, 1.0, 0.5)
