from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from mixloci import ToleranceConfig
from mixloci.io import load_state

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture(scope="session")
def tol():
    return ToleranceConfig()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def load_fixture(name):
    return load_state(FIXTURES / name)


def random_unitary(dim, rng):
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    Q, R = np.linalg.qr(G)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


# Unnormalized pencil matrices printed in the worked examples; used as
# entrywise references for pencil evaluations (up to positive column scales).

def paper_pencil_example2_target(r):
    r1, r2, r3 = r
    z = 0.0
    return np.array([
        [r1, r2, z, z],
        [z, r3, r1, z],
        [z, z, r2, r3],
    ], dtype=complex)


def paper_pencil_example2_component(r):
    r1, r2, r3 = r
    return np.array([
        [r1, r2, r3],
        [r2, r3, r1],
        [r3, r1, r2],
    ], dtype=complex)


def paper_pencil_example3(r):
    r1, r2, r3 = r
    z = 0.0
    return np.array([
        [r1, r2 + r3, z, z],
        [z, r1 + r2 + r3, r2 + r3, z],
        [z, z, r1, r2 + r3],
    ], dtype=complex)


def paper_pencil_example4(r):
    r1, r2, r3, r4 = r
    z = 0.0
    return np.array([
        [r1, r2, r4, r3, z],
        [z, r1, r3, r4, r1],
        [z, z, r3, r4, r2],
        [z, z, z, r3, r1],
    ], dtype=complex)


def assert_pencil_matches_paper(pencil, paper_fn, ambient, npoints=20, seed=0, atol=1e-10):
    """Entrywise match after solving for one positive scale per column."""
    rng = np.random.default_rng(seed)
    points = [rng.standard_normal(ambient) + 1j * rng.standard_normal(ambient)
              for _ in range(npoints)]
    ours = np.stack([pencil.evaluate(r) for r in points])      # (N, rows, cols)
    ref = np.stack([paper_fn(r) for r in points])
    assert ours.shape == ref.shape
    for col in range(ref.shape[2]):
        a = ref[:, :, col].ravel()
        b = ours[:, :, col].ravel()
        denom = np.vdot(a, a).real
        assert denom > 0
        scale = np.vdot(a, b) / denom
        assert abs(scale.imag) < atol
        assert scale.real > 0
        np.testing.assert_allclose(b, scale.real * a, atol=atol)
