import numpy as np
import pytest

from sqgreen import SquareBarrier


def close(x, y, rtol=0.0, atol=0.0):
    """|x - y| <= atol + rtol * |y|, for scalars or arrays."""
    return np.all(np.abs(np.asarray(x) - np.asarray(y)) <= atol + rtol * np.abs(np.asarray(y)))


def rel_err(x, y):
    y = np.asarray(y)
    return float(np.max(np.abs(np.asarray(x) - y) / np.maximum(np.abs(y), 1e-300)))


@pytest.fixture
def barrier():
    return SquareBarrier(5.0, 1.0, 2.0)


@pytest.fixture
def free():
    return SquareBarrier(0.0, 1.0, 2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_instances(rng, n, lattice=None):
    """(barrier, energy) draws covering wells and barriers, away from branch points.

    With ``lattice`` set, a, b land on multiples of it (breakpoint-aligned
    grids for the ODE oracle).
    """
    out = []
    while len(out) < n:
        v0 = float(rng.uniform(-5.0, 10.0))
        a = float(rng.uniform(0.2, 3.0))
        b = float(a + rng.uniform(0.3, 2.0))
        if lattice is not None:
            a = max(lattice, round(a / lattice) * lattice)
            b = max(a + lattice, round(b / lattice) * lattice)
        e = float(rng.uniform(0.1, max(0.2, 2.0 * v0 + 5.0)))
        if abs(e - v0) < 0.05 or abs(e) < 0.05:
            continue
        out.append((SquareBarrier(v0, a, b), e))
    return out
