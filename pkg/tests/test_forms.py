"""Tests for coforms, voforms, canonical root forms, sign and specials."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latforms import (
    ALL_PERMUTATIONS,
    Basis,
    Coform,
    InvalidVoformError,
    LatticeSign,
    NotObtuseError,
    PermutationS4,
    RootForm,
    UsageError,
    Voform,
    apply_orthogonal,
    basis_to_superbase,
    coform_to_voform,
    conorms_of,
    detect_special,
    lattice_sign,
    permute_coform,
    random_unimodular,
    reduce_to_obtuse,
    root_form,
    root_form_of_superbase,
    voform_to_coform,
    zero_conorm_residual,
)
from conftest import (
    monoclinic_superbase,
    oF_superbase,
    oI_superbase,
    oP_superbase,
    random_basis,
    random_obtuse_coform,
    random_rotation,
)

# ---------------------------------------------------------------------
# independent oracle: apply an index relabelling through a pair mapping,
# with no use of the library's precomputed tables
# ---------------------------------------------------------------------

LAYOUT_PAIRS = [(2, 3), (1, 3), (1, 2), (0, 1), (0, 2), (0, 3)]


def oracle_permute(values, images):
    by_pair = {frozenset(p): v for p, v in zip(LAYOUT_PAIRS, values)}
    moved = {
        frozenset((images[i], images[j])): by_pair[frozenset((i, j))]
        for i, j in LAYOUT_PAIRS
    }
    return tuple(moved[frozenset(p)] for p in LAYOUT_PAIRS)


def oracle_parity(images):
    swaps = 0
    seq = list(images)
    for k in range(4):
        while seq[k] != k:
            other = seq.index(k)
            seq[k], seq[other] = seq[other], seq[k]
            swaps += 1
    return "even" if swaps % 2 == 0 else "odd"


class TestConorms:
    def test_oP_123(self):
        cf = conorms_of(oP_superbase(1, 2, 3))
        np.testing.assert_allclose(cf.matrix, [[0, 0, 0], [1, 4, 9]], atol=1e-14)

    def test_oI_unit_all_ones(self):
        cf = conorms_of(oI_superbase(1, 1, 1))
        np.testing.assert_allclose(cf.values, np.ones(6), atol=1e-14)

    def test_orthogonal_pair_gives_zero(self):
        sb = basis_to_superbase(
            Basis(np.array([[1, 0, 0], [0, 1, 0], [0.3, 0.4, 2.0]]))
        )
        assert conorms_of(sb)[(1, 2)] == 0.0


class TestVoformConversions:
    def test_symmetric_all_ones(self):
        vf = coform_to_voform(Coform((1,) * 6))
        assert vf.values == (3.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0)

    def test_oP_values(self):
        vf = coform_to_voform(Coform((0, 0, 0, 1, 4, 9)))
        assert vf.values == (14.0, 1.0, 4.0, 9.0, 13.0, 10.0, 5.0)
        assert zero_conorm_residual(vf) == 0.0

    def test_round_trip_exact_on_oP(self):
        cf = Coform((0, 0, 0, 1, 4, 9))
        back = voform_to_coform(coform_to_voform(cf))
        assert back.values == cf.values

    def test_symmetric_inverse(self):
        cf = voform_to_coform(Voform((3, 3, 3, 3, 4, 4, 4)))
        assert cf.values == (1.0,) * 6

    def test_round_trip_random(self, rng):
        for _ in range(200):
            cf = Coform(tuple(rng.uniform(-1, 3, size=6)))
            back = voform_to_coform(coform_to_voform(cf))
            np.testing.assert_allclose(back.values, cf.values, rtol=1e-9, atol=1e-12)

    def test_relation_violation_rejected(self):
        vf = coform_to_voform(Coform((0, 0, 0, 1, 4, 9)))
        bad = Voform((vf.values[0] * 1.1,) + vf.values[1:])
        with pytest.raises(InvalidVoformError):
            voform_to_coform(bad)

    def test_residual_reports_inflation(self):
        vf = coform_to_voform(Coform((1, 1, 1, 1, 1, 1)))
        inflated = Voform((vf.values[0] + 4,) + vf.values[1:])
        assert zero_conorm_residual(inflated) == pytest.approx(4.0)

    def test_residual_zero_after_reduction(self, rng):
        for _ in range(50):
            sb, _ = reduce_to_obtuse(basis_to_superbase(random_basis(rng)))
            vf = coform_to_voform(conorms_of(sb))
            assert abs(zero_conorm_residual(vf)) <= 1e-9 * max(vf.values)


class TestPermuteCoform:
    def test_identity(self):
        cf = Coform((1, 2, 3, 4, 5, 6))
        assert permute_coform(cf, PermutationS4((0, 1, 2, 3))).values == cf.values

    def test_transposition_1_2(self):
        # swapping two non-zero labels swaps the matching columns
        cf = Coform((1, 2, 3, 4, 5, 6))  # (p23,p13,p12,p01,p02,p03)
        out = permute_coform(cf, PermutationS4((0, 2, 1, 3)))
        assert out.values == (2, 1, 3, 5, 4, 6)

    def test_transposition_0_1(self):
        # swapping 0<->1 diagonally swaps the pairs in columns 2 and 3
        cf = Coform((1, 2, 3, 4, 5, 6))
        out = permute_coform(cf, PermutationS4((1, 0, 2, 3)))
        assert out.values == (1, 6, 5, 4, 3, 2)

    def test_matches_oracle_for_all_24(self):
        cf = Coform((1, 2, 3, 4, 5, 6))
        for sigma in ALL_PERMUTATIONS:
            expected = oracle_permute(cf.values, sigma.images)
            assert permute_coform(cf, sigma).values == expected
            assert sigma.parity == oracle_parity(sigma.images)

    def test_column_mates_stay_column_mates(self):
        cf = Coform((1, 2, 3, 4, 5, 6))
        columns = {frozenset(c) for c in ((1, 4), (2, 5), (3, 6))}
        for sigma in ALL_PERMUTATIONS:
            out = permute_coform(cf, sigma)
            moved = {
                frozenset((out.values[k], out.values[k + 3])) for k in range(3)
            }
            assert moved == columns


class TestRootForm:
    def test_oF_112(self):
        rf = root_form_of_superbase(oF_superbase(1, 1, 2))
        np.testing.assert_allclose(
            rf.matrix, [[0, 1, 1], [math.sqrt(3), 1, 1]], atol=1e-12
        )

    def test_monoclinic_example(self):
        rf = root_form_of_superbase(monoclinic_superbase(2, 2, 120, 3), oriented=True)
        s2 = math.sqrt(2)
        np.testing.assert_allclose(rf.matrix, [[0, 0, s2], [s2, s2, 3]], atol=1e-12)

    def test_permutation_invariance(self, rng):
        for _ in range(300):
            cf = random_obtuse_coform(rng)
            sigma = ALL_PERMUTATIONS[rng.integers(0, 24)]
            rf = root_form(cf)
            rf_perm = root_form(permute_coform(cf, sigma))
            assert rf.values == rf_perm.values

    def test_oriented_invariance_under_even_only(self, rng):
        for _ in range(200):
            cf = random_obtuse_coform(rng)
            sigma = ALL_PERMUTATIONS[rng.integers(0, 24)]
            rf = root_form(cf, oriented=True, orientation_sign=1)
            sign = 1 if sigma.is_even else -1
            rf_perm = root_form(
                permute_coform(cf, sigma), oriented=True, orientation_sign=sign
            )
            assert rf.values == rf_perm.values

    def test_not_obtuse_rejected(self):
        with pytest.raises(NotObtuseError):
            root_form(Coform((-0.5, 1, 1, 1, 1, 1)))

    def test_tiny_negative_clamped(self):
        rf = root_form(Coform((-1e-15, 1, 1, 1, 1, 1)))
        assert rf.values[0] == 0.0

    def test_canonical_conditions_non_oriented(self, rng):
        for _ in range(300):
            rf = root_form(random_obtuse_coform(rng))
            t = rf.top
            assert t[0] <= t[1] <= t[2]
            assert t[0] == min(rf.values)
            # top middle is the least of the four entries in columns 2, 3
            assert t[1] == min(t[1], t[2], rf.bottom[1], rf.bottom[2])

    def test_canonical_conditions_oriented(self, rng):
        for _ in range(300):
            rf = root_form(random_obtuse_coform(rng), oriented=True,
                           orientation_sign=int(rng.choice((1, -1))))
            assert rf.values[0] == min(rf.values)
            # the top pair of columns 2,3 is lexicographically no larger
            # than the bottom pair (the vertical double swap is available)
            _, t2, t3 = rf.top
            _, b2, b3 = rf.bottom
            assert (t2, t3) <= (b2, b3)

    def test_pipeline_isometry_invariance(self, rng):
        for trial in range(60):
            basis = random_basis(rng)
            u = random_unimodular(trial, bound=8).astype(float)
            q = random_rotation(rng)
            moved = Basis((u @ basis.rows) @ q.T)
            rf_a = root_form_of_superbase(
                reduce_to_obtuse(basis_to_superbase(basis))[0]
            )
            rf_b = root_form_of_superbase(
                reduce_to_obtuse(basis_to_superbase(moved))[0]
            )
            np.testing.assert_allclose(rf_b.values, rf_a.values, atol=1e-6)

    def test_mirror_keeps_plain_form(self, rng):
        mirror = np.diag([1.0, 1.0, -1.0])
        for _ in range(50):
            sb, _ = reduce_to_obtuse(basis_to_superbase(random_basis(rng)))
            flipped = apply_orthogonal(sb, mirror)
            assert (
                root_form_of_superbase(sb).values
                == root_form_of_superbase(flipped).values
            )

    def test_mirror_changes_oriented_form_for_chiral(self):
        cf = Coform((1, 2, 3, 4, 5, 6))
        plus = root_form(cf, oriented=True, orientation_sign=1)
        minus = root_form(cf, oriented=True, orientation_sign=-1)
        assert plus.values != minus.values


class TestSignAndSpecial:
    def test_monoclinic_neutral(self):
        rf = root_form_of_superbase(monoclinic_superbase(2, 2, 120, 3), oriented=True)
        assert lattice_sign(rf) is LatticeSign.NEUTRAL

    def test_oI_rows_neutral(self):
        rf = root_form_of_superbase(oI_superbase(2.0, 2.2, 2.5), oriented=True)
        assert lattice_sign(rf) is LatticeSign.NEUTRAL
        assert "oF_rows" in detect_special(rf)

    def test_generic_coform_positive(self):
        rf = root_form(Coform((1, 2, 3, 4, 5, 6)), oriented=True, orientation_sign=1)
        assert lattice_sign(rf) is LatticeSign.POSITIVE

    def test_mirror_flips_sign(self):
        cf = Coform((1, 2, 3, 4, 5, 6))
        plus = root_form(cf, oriented=True, orientation_sign=1)
        minus = root_form(cf, oriented=True, orientation_sign=-1)
        assert lattice_sign(plus) is LatticeSign.POSITIVE
        assert lattice_sign(minus) is LatticeSign.NEGATIVE

    def test_requires_oriented(self):
        with pytest.raises(UsageError):
            lattice_sign(root_form(Coform((1, 2, 3, 4, 5, 6))))

    def test_detect_special_oF(self):
        rf = root_form_of_superbase(oF_superbase(1, 1, 2))
        flags = detect_special(rf)
        assert "mirror_columns" in flags
        assert "oF_rows" not in flags

    def test_detect_special_all_ones(self):
        rf = root_form(Coform((1,) * 6))
        assert detect_special(rf) == {"mirror_columns", "oF_rows"}

    def test_detect_special_oP(self):
        rf = root_form(Coform((0, 0, 0, 1, 4, 9)))
        assert detect_special(rf) == {"two_top_zeros"}


# ---------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------

conorm_values = st.floats(
    min_value=0.0, max_value=100.0, allow_nan=False, allow_infinity=False
)


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[conorm_values] * 6), st.permutations(range(4)))
def test_root_form_constant_on_orbits(values, images):
    if sum(values) <= 0:
        return
    cf = Coform(values)
    relabelled = permute_coform(cf, PermutationS4(tuple(images)))
    assert root_form(cf).values == root_form(relabelled).values


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[st.floats(-50, 50, allow_nan=False)] * 6))
def test_voform_round_trip(values):
    cf = Coform(values)
    back = voform_to_coform(coform_to_voform(cf))
    np.testing.assert_allclose(back.values, cf.values, rtol=1e-9, atol=1e-9)
