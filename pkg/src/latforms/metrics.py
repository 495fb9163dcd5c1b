"""Distances between lattices: root metrics, continuity bounds and DC7.

The root metric treats two canonical root forms as 6-vectors and minimises a
base distance over the 24 relabellings (12 even ones in oriented mode).  DC7
compares the sorted distances from the origin to its seven closest Voronoi
neighbours; it is an isometry invariant but not a complete one, and
`find_dc7_collisions` searches integer coforms for witnesses.
"""

import math
from itertools import combinations

import numpy as np

from ._core import perm_min_distance
from ._tables import GATHER, PARITY, VONORM_FROM_CONORM, VONORM_GATHER
from .errors import NotObtuseError, UsageError
from .forms import Coform, coform_to_voform, root_form, root_form_of_superbase
from .geometry import DEFAULT_REL_TOL, Superbase, basis_to_superbase, partial_sums
from .reduction import reduce_to_obtuse

# =====================================================================
# Root metrics
# =====================================================================


def _normalize_q(q):
    if q == math.inf or (isinstance(q, str) and q.lower() in ("inf", "infinity")):
        return math.inf
    q = float(q)
    if q < 1.0:
        raise UsageError(f"Minkowski exponent must satisfy q >= 1, got {q}")
    return q


def root_metric(rf_a, rf_b, d=2.0, oriented=False):
    """min over relabellings sigma of d(rf_a, sigma(rf_b)).

    `d` is a Minkowski exponent in [1, inf] or a callable on two 6-vectors.
    Both forms must carry the same `oriented` flag as the mode requested.
    """
    if rf_a.oriented != oriented or rf_b.oriented != oriented:
        raise UsageError(
            "root_metric oriented mode must match both forms' oriented flags"
        )
    mode = 1 if oriented else 0
    if callable(d):
        a = np.array(rf_a.values)
        b = np.array(rf_b.values)
        best = math.inf
        for m in range(24):
            if mode == 1 and PARITY[m] == 1:
                continue
            val = float(d(a, b[GATHER[m]]))
            if val < best:
                best = val
        return best
    return float(perm_min_distance(rf_a.values, rf_b.values, _normalize_q(d), mode))


def lattice_distance(basis_a, basis_b, q=2.0, oriented=False,
                     rel_tol=DEFAULT_REL_TOL):
    """Full pipeline distance: basis -> superbase -> reduce -> root metric."""
    forms = []
    for basis in (basis_a, basis_b):
        sb, _ = reduce_to_obtuse(basis_to_superbase(basis), rel_tol=rel_tol)
        forms.append(root_form_of_superbase(sb, oriented=oriented, rel_tol=rel_tol))
    return root_metric(forms[0], forms[1], d=q, oriented=oriented)


def continuity_bound(l, delta, q):
    """Upper bound 6^(1/q) * sqrt(2 l delta) on RM_q under delta-perturbations."""
    if l < 0 or delta < 0:
        raise UsageError("l and delta must be non-negative")
    q = _normalize_q(q)
    factor = 1.0 if q == math.inf else 6.0 ** (1.0 / q)
    return factor * math.sqrt(2.0 * l * delta)


# =====================================================================
# DC7
# =====================================================================


def dc7_vector(sb, rel_tol=DEFAULT_REL_TOL):
    """Sorted lengths of the seven partial sums of an obtuse superbase.

    For an obtuse superbase the partial sums are the Voronoi-vector
    representatives, so these are the distances from the origin to its
    seven closest neighbours; non-obtuse input is rejected because that
    characterisation needs all conorms non-negative.
    """
    ps = partial_sums(sb)
    vonorms = ps.vonorms()
    v = sb.vectors
    worst = max(
        float(v[i] @ v[j]) for i in range(4) for j in range(i + 1, 4)
    )
    if worst > rel_tol * float(vonorms.max()):
        raise NotObtuseError(
            "dc7_vector needs an obtuse superbase; reduce first"
        )
    out = np.sort(np.sqrt(vonorms))
    out.setflags(write=False)
    return out


def dc7_of_coform(cf):
    """DC7 vector straight from conorms (sorted square roots of the vonorms)."""
    if not cf.is_obtuse():
        raise NotObtuseError("dc7_of_coform needs an obtuse coform")
    vonorms = np.sort(np.array(coform_to_voform(cf).values))
    return np.sqrt(vonorms)


def dc7_distance(a, b):
    """Euclidean distance between two sorted 7-vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (7,) or b.shape != (7,):
        raise UsageError("DC7 vectors have exactly seven entries")
    return float(np.linalg.norm(a - b))


# =====================================================================
# DC7 collision search
# =====================================================================

# Connectivity of the 4-vertex graph whose edges are the strictly positive
# conorms; disconnected coforms correspond to degenerate (rank < 3) forms.
_EDGE_VERTS = ((2, 3), (1, 3), (1, 2), (0, 1), (0, 2), (0, 3))


def _connected(mask):
    adj = [set() for _ in range(4)]
    for bit, (i, j) in enumerate(_EDGE_VERTS):
        if mask >> bit & 1:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == 4


_CONN_LUT = np.array([_connected(m) for m in range(64)], dtype=bool)


def _pack(values, base):
    """Big-endian base-`base` packing; numeric order == lexicographic order."""
    out = np.zeros(values.shape[:-1], dtype=np.int64)
    for k in range(6):
        out = out * base + values[..., k].astype(np.int64)
    return out


def _unpack_array(codes, base):
    out = np.empty((len(codes), 6), dtype=np.int64)
    c = codes.copy()
    for k in range(5, -1, -1):
        out[:, k] = c % base
        c //= base
    return out


def _canonical_codes(values, base):
    """Packed canonical (lexicographically minimal) relabelling per row."""
    n = values.shape[0]
    best = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    for m in range(24):
        best = np.minimum(best, _pack(values[:, GATHER[m]], base))
    return best


def _match_layout(cf_a, cf_b):
    """Relabel cf_b so its voform agrees node-wise with cf_a's wherever possible.

    Returns (matched coform values, number of mismatched vonorm nodes,
    mismatched node indices).  Preference order: fewest mismatches, then
    smallest permutation index.
    """
    va = VONORM_FROM_CONORM @ np.array(cf_a, dtype=np.int64)
    vb = VONORM_FROM_CONORM @ np.array(cf_b, dtype=np.int64)
    best = None
    for m in range(24):
        relabelled = vb[VONORM_GATHER[m]]
        mism = np.nonzero(relabelled != va)[0]
        if best is None or len(mism) < best[1]:
            cf = tuple(int(x) for x in np.array(cf_b)[GATHER[m]])
            best = (cf, len(mism), tuple(int(i) for i in mism))
    return best


def dc7_shift_constraint(cf_a, cf_b):
    """Coefficients c with c . q = 0 exactly when a conorm-wise shift by q
    keeps the pair's vonorm multisets equal.

    Applies when the two voforms agree node-wise except at two nodes with
    crossed values (the construction behind the 6-parameter collision
    family); returns None otherwise.  `find_dc7_collisions` returns pairs
    already relabelled into this matched position.
    """
    va = VONORM_FROM_CONORM @ np.array(cf_a.values)
    vb = VONORM_FROM_CONORM @ np.array(cf_b.values)
    mism = np.nonzero(va != vb)[0]
    if len(mism) != 2:
        return None
    n1, n2 = mism
    if va[n1] != vb[n2] or va[n2] != vb[n1]:
        return None
    return VONORM_FROM_CONORM[n1] - VONORM_FROM_CONORM[n2]


def shift_coform(cf, q):
    """Conorm-wise sum of a coform with an obtuse shift coform."""
    if not q.is_obtuse():
        raise UsageError("shift coform must be obtuse (all entries >= 0)")
    return Coform(tuple(a + b for a, b in zip(cf.values, q.values)))


def find_dc7_collisions(max_conorm, limit=None):
    """Non-isomorphic integer coform pairs with identical vonorm multisets.

    Enumerates all non-degenerate obtuse coforms with integer entries in
    [0, max_conorm], groups them by the sorted 7-tuple of vonorms, and
    returns pairs of distinct canonical classes within a group.  Each pair
    is a DC7 collision: equal sorted neighbour distances (exactly, by
    integer arithmetic) with different root forms.  The second member is
    relabelled to sit node-wise against the first (see
    `dc7_shift_constraint`).  Pairs are returned sorted by their coform
    values, truncated to `limit` when given.
    """
    m = int(max_conorm)
    if m < 1:
        raise UsageError("max_conorm must be at least 1")
    side = np.arange(m + 1, dtype=np.int16)
    grids = np.meshgrid(*([side] * 6), indexing="ij")
    coforms = np.stack([g.reshape(-1) for g in grids], axis=1)
    del grids

    edge_mask = np.zeros(len(coforms), dtype=np.int8)
    for bit in range(6):
        edge_mask |= ((coforms[:, bit] > 0).astype(np.int8)) << bit
    coforms = coforms[_CONN_LUT[edge_mask]]

    base = m + 1
    codes = np.unique(_canonical_codes(coforms, base))
    reps = _unpack_array(codes, base)

    vonorms = reps @ VONORM_FROM_CONORM.T
    keys = np.sort(vonorms, axis=1)
    order = np.lexsort(keys.T[::-1])
    keys = keys[order]
    reps = reps[order]

    boundaries = np.nonzero(np.any(np.diff(keys, axis=0) != 0, axis=1))[0] + 1
    starts = np.concatenate([[0], boundaries])
    stops = np.concatenate([boundaries, [len(keys)]])

    pairs = []
    for s, e in zip(starts, stops):
        if e - s < 2:
            continue
        group = sorted(tuple(int(x) for x in row) for row in reps[s:e])
        for cf_a, cf_b in combinations(group, 2):
            matched, _, _ = _match_layout(cf_a, cf_b)
            pairs.append((Coform(cf_a), Coform(matched)))
    pairs.sort(key=lambda ab: (ab[0].values, ab[1].values))
    if limit is not None:
        pairs = pairs[:limit]
    return pairs
