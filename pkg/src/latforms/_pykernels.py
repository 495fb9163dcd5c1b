"""Pure-Python implementations of the hot kernels.

Mirrors the compiled module `_kernels` operation for operation; whichever is
importable gets picked by `_core`.  Plain float arithmetic on small tuples is
used instead of numpy because these loops run per lattice, not per array.
"""

import math

from ._tables import GATHER, PARITY

BACKEND = "python"

_GATHER = [tuple(int(i) for i in row) for row in GATHER]
_PARITY = [int(p) for p in PARITY]

# Complement {k,l} of each unordered pair {i,j} in {0,1,2,3}.
_COMPLEMENT = {
    (0, 1): (2, 3),
    (0, 2): (1, 3),
    (0, 3): (1, 2),
    (1, 2): (0, 3),
    (1, 3): (0, 2),
    (2, 3): (0, 1),
}
_ALL_PAIRS = tuple(sorted(_COMPLEMENT))


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _vonorm_stats(vs):
    """Sum and maximum of the seven vonorms, plus the zero-conorm residual."""
    n0 = _dot(vs[0], vs[0])
    n1 = _dot(vs[1], vs[1])
    n2 = _dot(vs[2], vs[2])
    n3 = _dot(vs[3], vs[3])
    s01 = tuple(vs[0][c] + vs[1][c] for c in range(3))
    s02 = tuple(vs[0][c] + vs[2][c] for c in range(3))
    s03 = tuple(vs[0][c] + vs[3][c] for c in range(3))
    n01 = _dot(s01, s01)
    n02 = _dot(s02, s02)
    n03 = _dot(s03, s03)
    total = n0 + n1 + n2 + n3 + n01 + n02 + n03
    largest = max(n0, n1, n2, n3, n01, n02, n03)
    residual = n0 + n1 + n2 + n3 - n01 - n02 - n03
    return total, largest, residual


def reduce_loop(vectors, rel_tol, max_iter):
    """Drive a superbase to all-non-negative conorms.

    `vectors` is a sequence of four 3-tuples summing to zero.  Returns
    ``(vectors, steps, converged)`` where each step records
    ``(i, j, eps, vonorm_sum_before, p0_residual_after)``.
    """
    vs = [tuple(float(c) for c in v) for v in vectors]
    steps = []
    for _ in range(max_iter):
        total, largest, _ = _vonorm_stats(vs)
        threshold = rel_tol * largest
        best_eps = threshold
        best_pair = None
        for i, j in _ALL_PAIRS:
            eps = _dot(vs[i], vs[j])  # -p_ij
            if eps > best_eps:
                best_eps = eps
                best_pair = (i, j)
        if best_pair is None:
            return vs, steps, True
        i, j = best_pair
        eps = best_eps
        k, l = _COMPLEMENT[(i, j)]
        vi = vs[i]
        new = list(vs)
        new[i] = (-vi[0], -vi[1], -vi[2])
        new[k] = (vi[0] + vs[k][0], vi[1] + vs[k][1], vi[2] + vs[k][2])
        new[l] = (vi[0] + vs[l][0], vi[1] + vs[l][1], vi[2] + vs[l][2])
        vs = new
        _, _, residual = _vonorm_stats(vs)
        steps.append((i, j, eps, total, residual))
    total, largest, _ = _vonorm_stats(vs)
    done = all(
        _dot(vs[i], vs[j]) <= rel_tol * largest for i, j in _ALL_PAIRS
    )
    return vs, steps, done


def _lex_less(cand, best, tol):
    for k in range(6):
        d = cand[k] - best[k]
        if d < -tol:
            return True
        if d > tol:
            return False
    return False


def canonical_gather(values, mode, tie_rel_tol=1e-12):
    """Lexicographically minimal relabelling of six root products.

    mode: 0 = all 24 permutations, 1 = even only, 2 = odd only.
    Returns ``(best_values, perm_index)``.
    """
    tol = tie_rel_tol * max(abs(v) for v in values)
    best = None
    best_m = -1
    for m in range(24):
        if mode == 1 and _PARITY[m] != 0:
            continue
        if mode == 2 and _PARITY[m] != 1:
            continue
        g = _GATHER[m]
        cand = (
            values[g[0]],
            values[g[1]],
            values[g[2]],
            values[g[3]],
            values[g[4]],
            values[g[5]],
        )
        if best is None or _lex_less(cand, best, tol):
            best = cand
            best_m = m
    return best, best_m


def perm_min_distance(a, b, q, mode):
    """min over allowed relabellings sigma of ||a - sigma(b)||_q.

    q = inf selects the Chebyshev norm; mode as in `canonical_gather`.
    """
    best = math.inf
    for m in range(24):
        if mode == 1 and _PARITY[m] != 0:
            continue
        if mode == 2 and _PARITY[m] != 1:
            continue
        g = _GATHER[m]
        if q == math.inf:
            d = 0.0
            for k in range(6):
                diff = abs(a[k] - b[g[k]])
                if diff > d:
                    d = diff
        else:
            acc = 0.0
            for k in range(6):
                acc += abs(a[k] - b[g[k]]) ** q
            d = acc ** (1.0 / q)
        if d < best:
            best = d
    return best
