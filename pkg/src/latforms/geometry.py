"""Vectors, bases, unit cells and superbases of 3-dimensional lattices.

All types are immutable values (arrays are frozen on construction) and all
operations are pure functions, so everything here is safe to call from
parallel workers.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateBasisError,
    InvalidCellError,
    NonOrthogonalError,
    UsageError,
)

DEFAULT_REL_TOL = 1e-9

PARTIAL_SUM_LABELS = ("v0", "v1", "v2", "v3", "v01", "v02", "v03")


def _frozen(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


def vec3(x, y, z):
    """A finite 3-vector as a read-only float array."""
    v = _frozen([x, y, z])
    if not np.all(np.isfinite(v)):
        raise UsageError(f"vector components must be finite, got {v}")
    return v


@dataclass(frozen=True, eq=False)
class Basis:
    """Three independent lattice vectors, stored as rows v1, v2, v3."""

    rows: np.ndarray

    def __post_init__(self):
        rows = _frozen(self.rows)
        if rows.shape != (3, 3):
            raise UsageError(f"basis needs shape (3, 3), got {rows.shape}")
        if not np.all(np.isfinite(rows)):
            raise UsageError("basis entries must be finite")
        scale = np.linalg.norm(rows, axis=1).max()
        if scale == 0.0 or abs(np.linalg.det(rows)) <= 1e-12 * scale**3:
            raise DegenerateBasisError(
                "basis vectors are (numerically) linearly dependent"
            )
        object.__setattr__(self, "rows", rows)

    @property
    def v1(self):
        return self.rows[0]

    @property
    def v2(self):
        return self.rows[1]

    @property
    def v3(self):
        return self.rows[2]

    def signed_volume(self):
        return float(np.linalg.det(self.rows))

    def gram(self):
        return self.rows @ self.rows.T


@dataclass(frozen=True)
class UnitCell:
    """Conventional cell parameters: lengths in Angstroms, angles in degrees."""

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not getattr(self, name) > 0:
                raise InvalidCellError(f"cell length {name} must be positive")
        for name in ("alpha", "beta", "gamma"):
            ang = getattr(self, name)
            if not 0.0 < ang < 180.0:
                raise InvalidCellError(
                    f"cell angle {name}={ang} must lie in (0, 180) degrees"
                )

    def gram(self):
        a, b, c = self.a, self.b, self.c
        ca, cb, cg = (
            np.cos(np.radians(self.alpha)),
            np.cos(np.radians(self.beta)),
            np.cos(np.radians(self.gamma)),
        )
        return np.array(
            [
                [a * a, a * b * cg, a * c * cb],
                [a * b * cg, b * b, b * c * ca],
                [a * c * cb, b * c * ca, c * c],
            ]
        )


@dataclass(frozen=True, eq=False)
class Superbase:
    """Four vectors v0..v3 with v0 + v1 + v2 + v3 = 0 (rows of `vectors`)."""

    vectors: np.ndarray
    rel_tol: float = field(default=DEFAULT_REL_TOL, compare=False)

    def __post_init__(self):
        vs = _frozen(self.vectors)
        if vs.shape != (4, 3):
            raise UsageError(f"superbase needs shape (4, 3), got {vs.shape}")
        scale = np.linalg.norm(vs, axis=1).max()
        closure = np.linalg.norm(vs.sum(axis=0))
        if closure > self.rel_tol * max(scale, 1e-300):
            raise UsageError(
                f"superbase vectors must sum to zero (|sum| = {closure:g})"
            )
        Basis(vs[1:])  # validates linear independence
        object.__setattr__(self, "vectors", vs)

    @property
    def v0(self):
        return self.vectors[0]

    @property
    def v1(self):
        return self.vectors[1]

    @property
    def v2(self):
        return self.vectors[2]

    @property
    def v3(self):
        return self.vectors[3]

    def basis(self):
        return Basis(self.vectors[1:])

    def orientation_sign(self):
        """Sign of det(v1, v2, v3); relabelling by a transposition flips it."""
        return 1 if np.linalg.det(self.vectors[1:]) > 0 else -1


@dataclass(frozen=True, eq=False)
class PartialSums:
    """The seven representatives v0, v1, v2, v3, v01, v02, v03."""

    vectors: np.ndarray

    def __post_init__(self):
        vs = _frozen(self.vectors)
        if vs.shape != (7, 3):
            raise UsageError("partial sums need shape (7, 3)")
        object.__setattr__(self, "vectors", vs)

    def __getitem__(self, label):
        return self.vectors[PARTIAL_SUM_LABELS.index(label)]

    def lengths(self):
        return np.linalg.norm(self.vectors, axis=1)

    def vonorms(self):
        return np.einsum("ij,ij->i", self.vectors, self.vectors)


def unit_cell_to_basis(cell):
    """Cartesian frame for a unit cell: v1 along +x, v2 in the xy-plane.

    The reconstructed Gram matrix reproduces (a, b, c, alpha, beta, gamma);
    a non-positive-definite parameter set raises InvalidCellError.
    """
    a, b, c = cell.a, cell.b, cell.c
    ca = np.cos(np.radians(cell.alpha))
    cb = np.cos(np.radians(cell.beta))
    cg = np.cos(np.radians(cell.gamma))
    sg = np.sin(np.radians(cell.gamma))
    v1 = [a, 0.0, 0.0]
    v2 = [b * cg, b * sg, 0.0]
    cx = c * cb
    cy = c * (ca - cb * cg) / sg
    cz_sq = c * c - cx * cx - cy * cy
    if cz_sq <= (1e-12 * c) ** 2:
        raise InvalidCellError(
            f"cell {cell} has a non-positive Gram determinant"
        )
    v3 = [cx, cy, np.sqrt(cz_sq)]
    return Basis(np.array([v1, v2, v3]))


def basis_to_unit_cell(basis):
    """Cell parameters (lengths, angles in degrees) from a basis Gram matrix."""
    g = basis.gram()
    a, b, c = np.sqrt(np.diag(g))
    alpha = np.degrees(np.arccos(np.clip(g[1, 2] / (b * c), -1.0, 1.0)))
    beta = np.degrees(np.arccos(np.clip(g[0, 2] / (a * c), -1.0, 1.0)))
    gamma = np.degrees(np.arccos(np.clip(g[0, 1] / (a * b), -1.0, 1.0)))
    return UnitCell(float(a), float(b), float(c), float(alpha), float(beta), float(gamma))


def basis_to_superbase(basis):
    """Extend a basis by the closing vector v0 = -(v1 + v2 + v3)."""
    v0 = -basis.rows.sum(axis=0)
    return Superbase(np.vstack([v0, basis.rows]))


def partial_sums(sb):
    """The seven partial-sum representatives of Lambda/2Lambda."""
    v = sb.vectors
    return PartialSums(
        np.vstack([v[0], v[1], v[2], v[3], v[0] + v[1], v[0] + v[2], v[0] + v[3]])
    )


def apply_orthogonal(sb, q, rel_tol=DEFAULT_REL_TOL):
    """Map every superbase vector by an orthogonal matrix Q."""
    q = np.asarray(q, dtype=float)
    if q.shape != (3, 3):
        raise UsageError("orthogonal map must be a 3x3 array")
    if np.abs(q.T @ q - np.eye(3)).max() > max(rel_tol, 1e-12):
        raise NonOrthogonalError("matrix fails Q^T Q = I to tolerance")
    return Superbase(sb.vectors @ q.T)


def random_unimodular(seed, bound=8, steps=40):
    """Seeded integer matrix with determinant +-1 and entries within `bound`.

    Built from elementary row operations (add a row, swap, negate), skipping
    any operation that would push an entry past the bound.
    """
    if bound < 1:
        raise UsageError("bound must be at least 1")
    rng = np.random.default_rng(seed)
    u = np.eye(3, dtype=np.int64)
    for _ in range(steps):
        op = rng.integers(0, 3)
        if op == 0:
            r, s = rng.permutation(3)[:2]
            cand = u.copy()
            cand[r] += int(rng.choice((-1, 1))) * cand[s]
            if np.abs(cand).max() <= bound:
                u = cand
        elif op == 1:
            r, s = rng.permutation(3)[:2]
            u[[r, s]] = u[[s, r]]
        else:
            r = rng.integers(0, 3)
            u[r] = -u[r]
    return u


def superbase_distance(sb_a, sb_b):
    """Chebyshev mismatch of two superbases after least-squares alignment.

    The aligning map is the O(3) Procrustes solution for the two vector
    quadruples, so the value is an upper bound on the exact Chebyshev
    distance minimised over all orthogonal maps (the exact min-max is a
    nonconvex program; the bound is tight enough for convergence checks
    since it vanishes exactly on isometric superbases).
    """
    a = sb_a.vectors
    b = sb_b.vectors
    m = a.T @ b  # sum of outer products v_i u_i^T
    u, _, vt = np.linalg.svd(m)
    r = u @ vt
    return float(np.linalg.norm(b @ r.T - a, axis=1).max())
