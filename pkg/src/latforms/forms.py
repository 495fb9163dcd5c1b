"""Coforms, voforms and canonical root forms.

A coform holds the six conorms p_ij = -v_i . v_j of a superbase in the
layout (p23, p13, p12, p01, p02, p03), i.e. the 2x3 matrix

    [[p23, p13, p12],
     [p01, p02, p03]]

whose columns pair complementary index pairs.  Relabelling the superbase by
a permutation of {0,1,2,3} permutes the six slots: a transposition of two
non-zero indices swaps two columns, a transposition 0<->i diagonally swaps
the entries of the two columns other than i, and the two conorms sharing a
column always stay column mates.

The root form is the canonical representative of sqrt(p) under all 24
relabellings; the orientation-aware variant canonicalises only over the 12
even relabellings composed with the superbase orientation, because a
transposition of superbase labels flips the sign of det(v1, v2, v3).
"""

import enum
import math
from dataclasses import dataclass
from itertools import permutations as _itertools_permutations

import numpy as np

from ._core import canonical_gather
from ._tables import GATHER, PAIRS, VONORM_FROM_CONORM
from .errors import InvalidVoformError, NotObtuseError, UsageError
from .geometry import DEFAULT_REL_TOL

TIE_REL_TOL = 1e-12

VONORM_ORDER = ("v0", "v1", "v2", "v3", "v01", "v02", "v03")


class LatticeSign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class PermutationS4:
    """A permutation of superbase labels 0..3, stored as the image tuple."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != [0, 1, 2, 3]:
            raise UsageError(f"not a permutation of 0..3: {self.images}")

    def __call__(self, index):
        return self.images[index]

    @property
    def is_even(self):
        inv = sum(
            1
            for a in range(4)
            for b in range(a + 1, 4)
            if self.images[a] > self.images[b]
        )
        return inv % 2 == 0

    @property
    def parity(self):
        return "even" if self.is_even else "odd"


ALL_PERMUTATIONS = tuple(
    PermutationS4(images) for images in _itertools_permutations(range(4))
)
EVEN_PERMUTATIONS = tuple(p for p in ALL_PERMUTATIONS if p.is_even)

_PERM_INDEX = {p.images: m for m, p in enumerate(ALL_PERMUTATIONS)}


def _as_six(values, what):
    vals = tuple(float(v) + 0.0 for v in values)  # normalises -0.0
    if len(vals) != 6:
        raise UsageError(f"{what} needs 6 values, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what} values must be finite")
    return vals


@dataclass(frozen=True)
class Coform:
    """Six conorms in layout order (p23, p13, p12, p01, p02, p03)."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", _as_six(self.values, "coform"))

    def __getitem__(self, pair):
        i, j = pair
        return self.values[PAIRS.index(tuple(sorted((i, j))))]

    @property
    def matrix(self):
        return np.array(self.values).reshape(2, 3)

    @classmethod
    def from_matrix(cls, matrix):
        return cls(tuple(np.asarray(matrix, dtype=float).reshape(6)))

    def is_obtuse(self, tol=0.0):
        return all(v >= -tol for v in self.values)


@dataclass(frozen=True)
class Voform:
    """Seven vonorms in the order (v0^2, v1^2, v2^2, v3^2, v01^2, v02^2, v03^2)."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) != 7:
            raise UsageError(f"voform needs 7 values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, label):
        return self.values[VONORM_ORDER.index(label)]


@dataclass(frozen=True)
class RootForm:
    """Canonical 2x3 array of root products (layout as Coform), plus mode."""

    values: tuple
    oriented: bool = False

    def __post_init__(self):
        vals = _as_six(self.values, "root form")
        if any(v < 0 for v in vals):
            raise UsageError("root products must be non-negative")
        object.__setattr__(self, "values", vals)

    @property
    def matrix(self):
        return np.array(self.values).reshape(2, 3)

    @property
    def top(self):
        return self.values[:3]

    @property
    def bottom(self):
        return self.values[3:]

    def column(self, k):
        return (self.values[k], self.values[3 + k])

    def scale(self):
        return max(self.values)


def conorms_of(sb):
    """The six conorms p_ij = -(v_i . v_j) of a superbase."""
    v = sb.vectors
    return Coform(tuple(-float(v[i] @ v[j]) for i, j in PAIRS))


def coform_to_voform(cf):
    """Vonorms from conorms: v_i^2 and v_ij^2 as incidence sums."""
    vals = VONORM_FROM_CONORM @ np.array(cf.values)
    return Voform(tuple(vals))


def zero_conorm_residual(vf):
    """v0^2+v1^2+v2^2+v3^2 - v01^2-v02^2-v03^2; zero for genuine voforms."""
    v = vf.values
    return v[0] + v[1] + v[2] + v[3] - v[4] - v[5] - v[6]


def voform_to_coform(vf, rel_tol=DEFAULT_REL_TOL):
    """Conorms from vonorms via p_ij = (v_i^2 + v_j^2 - v_ij^2) / 2.

    The seven numbers must satisfy the vonorm linear relation, otherwise
    they are not a voform and InvalidVoformError is raised.
    """
    v = vf.values
    scale = max(abs(x) for x in v)
    if abs(zero_conorm_residual(vf)) > rel_tol * max(scale, 1e-300):
        raise InvalidVoformError(
            f"vonorm linear relation violated (residual {zero_conorm_residual(vf):g})"
        )
    p23 = 0.5 * (v[2] + v[3] - v[4])
    p13 = 0.5 * (v[1] + v[3] - v[5])
    p12 = 0.5 * (v[1] + v[2] - v[6])
    p01 = 0.5 * (v[0] + v[1] - v[4])
    p02 = 0.5 * (v[0] + v[2] - v[5])
    p03 = 0.5 * (v[0] + v[3] - v[6])
    return Coform((p23, p13, p12, p01, p02, p03))


def permute_coform(cf, sigma):
    """Relabel conorms: the value of pair {i, j} moves to {sigma(i), sigma(j)}."""
    gather = GATHER[_PERM_INDEX[sigma.images]]
    vals = cf.values
    return Coform(tuple(vals[g] for g in gather))


def root_form(cf, oriented=False, orientation_sign=1, rel_tol=DEFAULT_REL_TOL):
    """Canonical root form of an obtuse coform.

    Conorms in [-tol, 0) are clamped to zero (reduction guarantees
    non-negativity only up to floating-point error); anything below -tol
    raises NotObtuseError.  With oriented=True the canonical search runs
    over even relabellings for orientation_sign=+1 and odd ones for -1, so
    mirror-related superbases (equal coforms, opposite basis orientations)
    generally receive different oriented forms.
    """
    vonorms = VONORM_FROM_CONORM @ np.array(cf.values)
    tol = rel_tol * max(float(vonorms.max()), 1e-300)
    clamped = []
    for p in cf.values:
        if p < -tol:
            raise NotObtuseError(
                f"conorm {p:g} below -{tol:g}; reduce the superbase first"
            )
        clamped.append(0.0 if p < 0.0 else p)
    roots = tuple(math.sqrt(p) for p in clamped)
    if oriented:
        if orientation_sign not in (1, -1):
            raise UsageError("orientation_sign must be +1 or -1")
        mode = 1 if orientation_sign == 1 else 2
    else:
        mode = 0
    best, _ = canonical_gather(roots, mode, TIE_REL_TOL)
    return RootForm(tuple(best), oriented=bool(oriented))


def root_form_of_superbase(sb, oriented=False, rel_tol=DEFAULT_REL_TOL):
    """Root form straight from an obtuse superbase, orientation included."""
    return root_form(
        conorms_of(sb),
        oriented=oriented,
        orientation_sign=sb.orientation_sign(),
        rel_tol=rel_tol,
    )


def detect_special(rf, tie_rel_tol=TIE_REL_TOL):
    """Flags for the mirror-symmetric degeneracies readable off a root form.

    mirror_columns: two columns carry identical root products.
    oF_rows: the two rows coincide.
    two_top_zeros: at least two top-row products vanish.
    """
    tol = tie_rel_tol * max(rf.scale(), 1e-300)
    flags = set()
    cols = [rf.column(k) for k in range(3)]
    for a in range(3):
        for b in range(a + 1, 3):
            if (
                abs(cols[a][0] - cols[b][0]) <= tol
                and abs(cols[a][1] - cols[b][1]) <= tol
            ):
                flags.add("mirror_columns")
    if all(abs(rf.top[k] - rf.bottom[k]) <= tol for k in range(3)):
        flags.add("oF_rows")
    if sum(1 for t in rf.top if t <= tol) >= 2:
        flags.add("two_top_zeros")
    return flags


def lattice_sign(rf, tie_rel_tol=TIE_REL_TOL):
    """Chirality sign read off an oriented canonical root form.

    Neutral covers the mirror-symmetric configurations (two top-row zeros,
    identical columns, or coinciding rows); otherwise the order of the last
    two top products decides, with a tie falling through to the products
    below them.
    """
    if not rf.oriented:
        raise UsageError("lattice_sign needs an oriented root form")
    tol = tie_rel_tol * max(rf.scale(), 1e-300)
    special = detect_special(rf, tie_rel_tol)
    if special:
        return LatticeSign.NEUTRAL
    _, t2, t3 = rf.top
    _, b2, b3 = rf.bottom
    if abs(t2 - t3) > tol:
        return LatticeSign.POSITIVE if t2 < t3 else LatticeSign.NEGATIVE
    if abs(b2 - b3) > tol:
        return LatticeSign.POSITIVE if b2 < b3 else LatticeSign.NEGATIVE
    return LatticeSign.NEUTRAL
