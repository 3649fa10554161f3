import math

import numpy as np
import pytest

from minkplane import Plane, regular_polygon

HEXAGON = str(regular_polygon(6))
SQUARE = "polygon:1,1;-1,1;-1,-1;1,-1"
NORMS = ["lp:1", "lp:2", "lp:4", "lp:inf", HEXAGON]


@pytest.fixture(params=NORMS, ids=["l1", "l2", "l4", "linf", "hex"])
def plane(request):
    return Plane(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def approx_pt(a, b, tol=1e-9):
    return np.allclose(np.asarray(a, float), np.asarray(b, float), rtol=0.0, atol=tol)


TWO_PI = 2.0 * math.pi
