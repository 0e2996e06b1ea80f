import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conjugacy as cj

ACCEPT_LORENZ_N = 4000


@pytest.fixture(scope="session")
def lorenz_4k():
    """Shared post-transient Lorenz trajectory (maximum metric)."""
    return cj.gen_lorenz((1.0, 1.0, 1.0), ACCEPT_LORENZ_N, burn_in=2000, sample_time=0.02)


@pytest.fixture(scope="session")
def rotation_series():
    """The circle-rotation benchmark family at full length."""
    import math

    a = math.sqrt(2.0) / 10.0
    return {
        "alpha": a,
        "R1": cj.gen_circle(a, 1.0, 0.0, 2000),
        "R2": cj.gen_circle(a, 1.0, 0.25, 2000),
        "R3": cj.gen_circle(a + 0.02, 1.0, 0.0, 2000),
        "R4": cj.gen_circle(2 * a, 1.0, 0.0, 2000),
        "R5": cj.gen_circle(a, 2.0, 0.0, 2000),
    }
