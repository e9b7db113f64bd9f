import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def all_masks(h, w):
    """Every bool mask of shape (h, w), stacked as (2**(h*w), h, w)."""
    n = h * w
    codes = np.arange(2**n, dtype=np.uint32)
    bits = (codes[:, None] >> np.arange(n)[None, :]) & 1
    return bits.reshape(-1, h, w).astype(bool)
