import numpy as np
import pytest

from netgame.graphs import IntensityProfile, Network


def random_valid_network(rng: np.random.Generator, n: int | None = None, max_out: float = 0.95) -> Network:
    """Random network passing validation: sparse nonnegative rows, out-degrees < max_out."""
    if n is None:
        n = int(rng.integers(2, 9))
    raw = rng.random((n, n)) * (rng.random((n, n)) < 0.7)
    np.fill_diagonal(raw, 0.0)
    sums = raw.sum(axis=1, keepdims=True)
    targets = rng.uniform(0.05, max_out, size=(n, 1))
    scale = np.divide(targets, sums, out=np.zeros_like(sums), where=sums > 0)
    return Network(raw * scale)


def random_symmetric_network(rng: np.random.Generator, n: int | None = None) -> Network:
    """Random undirected (symmetric) network with out-degrees < 1."""
    if n is None:
        n = int(rng.integers(2, 9))
    raw = rng.random((n, n))
    raw = (raw + raw.T) / 2.0
    np.fill_diagonal(raw, 0.0)
    top = raw.sum(axis=1).max()
    cap = rng.uniform(0.3, 0.95)
    return Network(raw * (cap / top if top > 0 else 0.0))


def random_intensities(rng: np.random.Generator, n: int) -> IntensityProfile:
    return IntensityProfile(rng.uniform(0.05, 0.95, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
