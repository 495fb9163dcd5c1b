"""Reduction of an arbitrary superbase to an obtuse one.

A single step flips the sign of one vector and shears the two bystanders:
for a pair (i, j) with conorm p_ij = -v_i . v_j < 0 and eps = v_i . v_j,

    u_i = -v_i,   u_j = v_j,   u_k = v_i + v_k,   u_l = v_i + v_l,

which keeps the four vectors summing to zero, updates the conorms by

    q_ij = eps,            q_jk = p_jk - eps,   q_jl = p_jl - eps,
    q_ik = p_il - eps,     q_il = p_ik - eps,   q_kl = p_kl + eps,

and lowers the sum of the seven vonorms by exactly 4*eps.  Iterating on the
most negative conorm therefore terminates; in floating point a conorm within
rel_tol of zero (relative to the largest vonorm) counts as non-negative so
orthorhombic-style exact zeros cannot cause cycling.
"""

from dataclasses import dataclass

import numpy as np

from ._core import reduce_loop
from .errors import ReductionCapError, ReductionPreconditionError, UsageError
from .geometry import DEFAULT_REL_TOL, Superbase, partial_sums

DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class ReductionStep:
    pair: tuple
    epsilon: float
    vonorm_sum_before: float
    p0_residual_after: float


@dataclass(frozen=True)
class ReductionTrace:
    """Per-step log of a reduction run; `iterations` == len(steps)."""

    steps: tuple
    iterations: int

    @classmethod
    def from_rows(cls, rows):
        steps = tuple(
            ReductionStep((int(i), int(j)), float(e), float(s), float(r))
            for i, j, e, s, r in rows
        )
        return cls(steps=steps, iterations=len(steps))


def reduction_step(sb, pair):
    """Apply one reduction to the given index pair.

    The pair's conorm must be strictly negative (eps = v_i . v_j > 0),
    otherwise ReductionPreconditionError is raised.
    """
    i, j = pair
    if i == j or not {i, j} <= {0, 1, 2, 3}:
        raise UsageError(f"pair must be two distinct indices in 0..3, got {pair}")
    v = sb.vectors
    eps = float(v[i] @ v[j])
    if eps <= 0.0:
        raise ReductionPreconditionError(
            f"conorm p_{min(i, j)}{max(i, j)} = {-eps:g} is non-negative; "
            "no reduction applies to this pair"
        )
    k, l = sorted({0, 1, 2, 3} - {i, j})
    new = np.empty((4, 3))
    new[i] = -v[i]
    new[j] = v[j]
    new[k] = v[i] + v[k]
    new[l] = v[i] + v[l]
    return Superbase(new)


def reduce_to_obtuse(sb, rel_tol=DEFAULT_REL_TOL, max_iter=DEFAULT_MAX_ITER):
    """Drive a superbase to all conorms >= -rel_tol * (max vonorm).

    Returns the reduced superbase together with a ReductionTrace.  Every step
    replaces vectors by integer combinations of the old ones, so the result
    generates the same lattice.  Exceeding `max_iter` raises
    ReductionCapError carrying the partial trace.
    """
    if rel_tol <= 0:
        raise UsageError("rel_tol must be positive")
    if max_iter < 1:
        raise UsageError("max_iter must be at least 1")
    vectors, rows, converged = reduce_loop(sb.vectors, rel_tol, int(max_iter))
    trace = ReductionTrace.from_rows(rows)
    if not converged:
        raise ReductionCapError(
            f"reduction did not converge within {max_iter} steps", trace=trace
        )
    if not rows:
        return sb, trace
    return Superbase(np.array(vectors)), trace


def is_obtuse(sb, rel_tol=DEFAULT_REL_TOL):
    """True when all six conorms are non-negative up to tolerance."""
    v = sb.vectors
    largest = partial_sums(sb).vonorms().max()
    dots = [v[i] @ v[j] for i in range(4) for j in range(i + 1, 4)]
    return max(dots) <= rel_tol * largest
