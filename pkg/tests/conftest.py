"""Shared builders for the test suite.

The orthorhombic and monoclinic superbases below are the closed-form
constructions used as oracles: their conorms are known expressions of the
cell parameters, so pipeline outputs can be checked against independent
arithmetic.
"""

import numpy as np
import pytest

from latforms import Basis, Superbase


def oP_superbase(a, b, c):
    return Superbase(
        np.array([[-a, -b, -c], [a, 0, 0], [0, b, 0], [0, 0, c]], dtype=float)
    )


def oS_superbase(a, b, c):
    return Superbase(
        np.array(
            [[-a, -b, -c], [2 * a, 0, 0], [-a, b, 0], [0, 0, c]], dtype=float
        )
    )


def oF_superbase(a, b, c):
    return Superbase(
        np.array(
            [[-a, 0, -c], [a, b, 0], [a, -b, 0], [-a, 0, c]], dtype=float
        )
    )


def oI_superbase(a, b, c):
    return Superbase(
        np.array(
            [[-a, -b, -c], [a, b, -c], [a, -b, c], [-a, b, c]], dtype=float
        )
    )


def monoclinic_superbase(a, b, alpha_deg, c):
    al = np.radians(alpha_deg)
    return Superbase(
        np.array(
            [
                [-a - b * np.cos(al), -b * np.sin(al), -c],
                [a, 0, 0],
                [b * np.cos(al), b * np.sin(al), 0],
                [0, 0, c],
            ]
        )
    )


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_basis(rng, lo=-5.0, hi=5.0, min_det=1e-2):
    while True:
        rows = rng.uniform(lo, hi, size=(3, 3))
        if abs(np.linalg.det(rows)) > min_det:
            return Basis(rows)


def random_obtuse_coform(rng, lo=0.05, hi=2.0):
    from latforms import Coform

    return Coform(tuple(rng.uniform(lo, hi, size=6)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
