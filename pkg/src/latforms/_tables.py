"""Index conventions and precomputed permutation tables.

A coform is stored as six conorms in the fixed layout order

    (p23, p13, p12, p01, p02, p03)

matching the 2x3 matrix [[p23, p13, p12], [p01, p02, p03]].  A voform is
stored as seven vonorms in the order

    (v0^2, v1^2, v2^2, v3^2, v01^2, v02^2, v03^2)

where v_ij = v_i + v_j = -(v_k + v_l), so v23^2 = v01^2 etc.

An index permutation sigma of {0,1,2,3} relabels a coform by sending the
conorm of pair {i,j} to pair {sigma(i), sigma(j)}.  GATHER[m, k] is the
source slot whose value lands in slot k under the m-th permutation, so the
relabelled six-vector is ``values[GATHER[m]]``.
"""

from itertools import permutations

import numpy as np

PAIRS = ((2, 3), (1, 3), (1, 2), (0, 1), (0, 2), (0, 3))
PAIR_SLOT = {frozenset(p): k for k, p in enumerate(PAIRS)}

VONORM_LABELS = ("v0", "v1", "v2", "v3", "v01", "v02", "v03")

# Rows: the seven vonorms as 0/1 combinations of the six conorm slots,
# v_i^2 = sum of conorms incident to i, v_ij^2 = sum of the four cross pairs.
VONORM_FROM_CONORM = np.array(
    [
        [0, 0, 0, 1, 1, 1],  # v0^2  = p01+p02+p03
        [0, 1, 1, 1, 0, 0],  # v1^2  = p13+p12+p01
        [1, 0, 1, 0, 1, 0],  # v2^2  = p23+p12+p02
        [1, 1, 0, 0, 0, 1],  # v3^2  = p23+p13+p03
        [0, 1, 1, 0, 1, 1],  # v01^2 = p13+p12+p02+p03
        [1, 0, 1, 1, 0, 1],  # v02^2 = p23+p12+p01+p03
        [1, 1, 0, 1, 1, 0],  # v03^2 = p23+p13+p01+p02
    ],
    dtype=np.int64,
)


def _parity(images):
    inversions = sum(
        1
        for a in range(4)
        for b in range(a + 1, 4)
        if images[a] > images[b]
    )
    return inversions % 2


ALL_IMAGES = tuple(permutations(range(4)))


def _gather_row(images):
    inverse = [0] * 4
    for src, dst in enumerate(images):
        inverse[dst] = src
    return [
        PAIR_SLOT[frozenset((inverse[a], inverse[b]))] for a, b in PAIRS
    ]


GATHER = np.array([_gather_row(s) for s in ALL_IMAGES], dtype=np.int64)
PARITY = np.array([_parity(s) for s in ALL_IMAGES], dtype=np.int64)

# The same relabelling acts on the seven vonorm slots: vertex slots follow
# sigma directly, pair slots follow the induced map on {01, 02, 03} classes
# (the class of {i,j} equals the class of its complement).
_PAIR_CLASS = {frozenset({0, 1}): 4, frozenset({0, 2}): 5, frozenset({0, 3}): 6}
_PAIR_CLASS.update(
    {frozenset({2, 3}): 4, frozenset({1, 3}): 5, frozenset({1, 2}): 6}
)


def _vonorm_gather_row(images):
    inverse = [0] * 4
    for src, dst in enumerate(images):
        inverse[dst] = src
    row = [inverse[i] for i in range(4)]
    for cls_pair in ({0, 1}, {0, 2}, {0, 3}):
        src = _PAIR_CLASS[frozenset(inverse[i] for i in cls_pair)]
        row.append(src)
    return row


VONORM_GATHER = np.array(
    [_vonorm_gather_row(s) for s in ALL_IMAGES], dtype=np.int64
)
