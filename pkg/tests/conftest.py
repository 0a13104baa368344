import numpy as np
import pytest

from pcmkit import core, priority


@pytest.fixture
def ratio_421():
    """Consistent 3x3 matrix generated by w = (4, 2, 1)."""
    return priority.ratio_matrix(
        priority.PriorityVector(weights=(4.0, 2.0, 1.0), normalization="geometric_raw")
    )


def random_pcm(rng, n, scale=9.0):
    """One log-uniform random matrix; shared helper for oracle tests."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    vals = np.exp(rng.uniform(-np.log(scale), np.log(scale), size=len(pairs)))
    return core.make_pcm(list(zip(pairs, vals)))
