"""Rebuild an obtuse superbase (the lattice, up to isometry) from a root form.

The frame convention is ours to fix because every downstream comparison is
isometry-invariant: v0 points along +x, v1 lies in the xy-plane with y >= 0,
and v2 takes one of its two mirror positions across that plane.  The oriented
flag selects the position giving det(v1, v2, v3) > 0, so that re-deriving the
oriented root form from the output reproduces the input; the non-oriented
flag selects the opposite mirror.
"""

import math

import numpy as np

from .errors import DegenerateFormError, NonRealizableFormError
from .forms import VONORM_FROM_CONORM
from .geometry import Superbase

ARC_CLAMP_TOL = 1e-9


def _checked_sqrt(value, scale, what):
    if value < -ARC_CLAMP_TOL * scale:
        raise NonRealizableFormError(
            f"{what} is negative beyond tolerance ({value:g}); "
            "the root form admits no superbase"
        )
    return math.sqrt(max(value, 0.0))


def reconstruct_superbase(rf):
    """An obtuse superbase whose conorms reproduce the root form entrywise.

    Raises DegenerateFormError when the implied vonorms vanish and
    NonRealizableFormError when an angle constraint fails beyond the
    arccos clamping tolerance.
    """
    p = np.array([r * r for r in rf.values])
    vonorms = VONORM_FROM_CONORM @ p
    scale = float(vonorms.max())
    if scale <= 0.0:
        raise DegenerateFormError("all root products vanish")
    lengths = np.sqrt(vonorms[:4])
    if np.any(vonorms[:4] <= 1e-14 * scale):
        raise DegenerateFormError(
            f"a superbase vector would have zero length (vonorms {vonorms[:4]})"
        )
    p23, p13, p12, p01, p02, p03 = p
    l0, l1, l2, _ = lengths

    v0 = np.array([l0, 0.0, 0.0])

    # v1 from |v1| and the angle to v0: cos = -p01 / (|v0||v1|).
    x1 = -p01 / l0
    y1_sq = l1 * l1 - x1 * x1
    y1 = _checked_sqrt(y1_sq, scale, "v1's off-axis component squared")
    if y1 * y1 <= 1e-14 * scale:
        raise DegenerateFormError("v0 and v1 are collinear; flat form")
    v1 = np.array([x1, y1, 0.0])

    # v2 from its angles to v0 and v1; z sign fixed by the oriented flag.
    x2 = -p02 / l0
    y2 = (-p12 - x1 * x2) / y1
    z2_sq = l2 * l2 - x2 * x2 - y2 * y2
    z2 = _checked_sqrt(z2_sq, scale, "v2's out-of-plane component squared")
    if z2 * z2 <= 1e-14 * scale:
        raise DegenerateFormError("v2 lies in the v0-v1 plane; flat form")
    v2 = np.array([x2, y2, -z2 if rf.oriented else z2])

    v3 = -v0 - v1 - v2
    # Closing vector: verify it realises the remaining conorms.
    expected = np.array([p23, p13, p03])
    actual = -np.array([v2 @ v3, v1 @ v3, v0 @ v3])
    if np.abs(expected - actual).max() > 1e-6 * max(scale, 1.0):
        raise NonRealizableFormError(
            "closing vector fails the remaining conorms; "
            f"expected {expected}, got {actual}"
        )
    return Superbase(np.vstack([v0, v1, v2, v3]))
