"""Projective triangle coordinates for root-product triples, plus density grids.

An ordered triple (r23 <= r13 <= r12), scaled to unit sum, lands in the
quotient triangle QT at x = (r12~ - r13~)/2 in [0, 1/2], y = r23~ in [0, 1/3].
An unordered bottom triple lands in the full triangle FT at
x = (r03~ - r02~)/2 in [-1/2, 1/2], y = r01~ in [0, 1].  Density grids bin
points uniformly over each triangle's bounding rectangle (cells outside the
triangle simply stay empty); right/top boundaries close into the last bin so
the vertices always land in valid cells.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFormError, UsageError

QT_BOUNDS = ((0.0, 0.5), (0.0, 1.0 / 3.0))
FT_BOUNDS = ((-0.5, 0.5), (0.0, 1.0))

_BOUNDS = {"QT": QT_BOUNDS, "FT": FT_BOUNDS}


@dataclass(frozen=True)
class TrianglePoint:
    x: float
    y: float
    kind: str

    def __post_init__(self):
        if self.kind not in _BOUNDS:
            raise UsageError(f"kind must be 'QT' or 'FT', got {self.kind!r}")
        (x_lo, x_hi), (y_lo, y_hi) = _BOUNDS[self.kind]
        eps = 1e-9
        if not (x_lo - eps <= self.x <= x_hi + eps and y_lo - eps <= self.y <= y_hi + eps):
            raise UsageError(
                f"point ({self.x}, {self.y}) outside {self.kind} bounds"
            )


def _scaled(triple, what):
    vals = [float(v) for v in triple]
    if len(vals) != 3 or any(v < 0 or not math.isfinite(v) for v in vals):
        raise UsageError(f"{what} needs three finite non-negative values")
    total = sum(vals)
    if total <= 0.0:
        raise DegenerateFormError(f"{what} has zero sum; projection undefined")
    return [v / total for v in vals]


def qt_project(triple):
    """Quotient-triangle point of an ordered triple (r23 <= r13 <= r12)."""
    r23, r13, r12 = (float(v) for v in triple)
    if not r23 <= r13 <= r12:
        raise UsageError(f"triple must be ordered ascending, got {triple}")
    s23, s13, s12 = _scaled(triple, "ordered triple")
    return TrianglePoint((s12 - s13) / 2.0, s23, "QT")


def ft_project(triple):
    """Full-triangle point of an unordered triple (r01, r02, r03)."""
    s01, s02, s03 = _scaled(triple, "triple")
    return TrianglePoint((s03 - s02) / 2.0, s01, "FT")


def project_root_form(rf):
    """(QT point of the top row, FT point of the bottom row).

    A zero row has no projective image; its slot comes back as None so
    callers can count skipped rows instead of crashing.
    """
    qt = None if sum(rf.top) <= 0.0 else qt_project(rf.top)
    ft = None if sum(rf.bottom) <= 0.0 else ft_project(rf.bottom)
    return qt, ft


def orthorhombic_project(a, b, c):
    """QT point of ordered side lengths 0 < a <= b <= c."""
    if not 0 < a <= b <= c:
        raise UsageError(f"side lengths must satisfy 0 < a <= b <= c, got {(a, b, c)}")
    return qt_project((a, b, c))


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """Integer counts over a triangle's bounding rectangle.

    counts[iy, ix] covers the cell with x-bin ix and y-bin iy; bin_of maps a
    point to (ix, iy).
    """

    resolution: int
    counts: np.ndarray
    kind: str

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def total(self):
        return int(self.counts.sum())

    def bin_of(self, point):
        if point.kind != self.kind:
            raise UsageError("point kind does not match grid kind")
        return _bin_of(point, self.kind, self.resolution)


def _bin_of(point, kind, resolution):
    (x_lo, x_hi), (y_lo, y_hi) = _BOUNDS[kind]
    ix = min(int((point.x - x_lo) / (x_hi - x_lo) * resolution), resolution - 1)
    iy = min(int((point.y - y_lo) / (y_hi - y_lo) * resolution), resolution - 1)
    return max(ix, 0), max(iy, 0)


def accumulate_density(points, resolution=200, kind=None):
    """Bin triangle points of one kind into a resolution x resolution grid.

    The total count always equals the number of points; accumulation order
    cannot matter because the counts are integers.
    """
    if resolution < 1:
        raise UsageError("resolution must be at least 1")
    points = list(points)
    if kind is None:
        if not points:
            raise UsageError("kind is required for an empty point sequence")
        kind = points[0].kind
    if any(p.kind != kind for p in points):
        raise UsageError("all points must share one triangle kind")
    counts = np.zeros((resolution, resolution), dtype=np.int64)
    for p in points:
        ix, iy = _bin_of(p, kind, resolution)
        counts[iy, ix] += 1
    return DensityGrid(resolution=int(resolution), counts=counts, kind=kind)
