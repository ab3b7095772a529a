import numpy as np
import pytest

from rieszfd import validate_params


def sample_params(count, seed, margin=0.02):
    """Valid (alpha, theta) pairs covering both branches.

    Keeps `margin` away from alpha = 1 so the trigonometric prefactors stay
    O(1) and rounding noise stays far below the tolerances asserted on the
    sampled identities.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        if rng.random() < 0.5:
            a = float(rng.uniform(margin, 1.0 - margin))
        else:
            a = float(rng.uniform(1.0 + margin, 2.0))
        t = float(rng.uniform(-1.0, 1.0) * min(a, 2.0 - a))
        out.append(validate_params(a, t))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
