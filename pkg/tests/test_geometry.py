"""Tests for cells, bases, superbases and the alignment distance."""

import math

import numpy as np
import pytest

from latforms import (
    Basis,
    DegenerateBasisError,
    InvalidCellError,
    NonOrthogonalError,
    Superbase,
    UnitCell,
    UsageError,
    apply_orthogonal,
    basis_to_superbase,
    basis_to_unit_cell,
    conorms_of,
    partial_sums,
    random_unimodular,
    root_form_of_superbase,
    superbase_distance,
    unit_cell_to_basis,
)
from conftest import oP_superbase, random_basis, random_rotation


class TestUnitCellToBasis:
    def test_identity_cube(self):
        b = unit_cell_to_basis(UnitCell(1, 1, 1, 90, 90, 90))
        np.testing.assert_allclose(b.rows, np.eye(3), atol=1e-15)

    def test_orthorhombic_diagonal(self):
        b = unit_cell_to_basis(UnitCell(2, 3, 4, 90, 90, 90))
        np.testing.assert_allclose(b.rows, np.diag([2.0, 3.0, 4.0]), atol=1e-14)

    def test_hexagonal_gamma_120(self):
        b = unit_cell_to_basis(UnitCell(1, 1, 1, 90, 90, 120))
        np.testing.assert_allclose(b.v1, [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(b.v2, [-0.5, math.sqrt(3) / 2, 0], atol=1e-15)
        np.testing.assert_allclose(b.v3, [0, 0, 1], atol=1e-15)
        # independent check: the reconstructed Gram matrix equals the cell's
        cell = UnitCell(1, 1, 1, 90, 90, 120)
        np.testing.assert_allclose(b.gram(), cell.gram(), atol=1e-12)

    def test_gram_round_trip_random(self, rng):
        for _ in range(200):
            a, b, c = rng.uniform(0.5, 10, size=3)
            alpha, beta, gamma = rng.uniform(60, 120, size=3)
            try:
                basis = unit_cell_to_basis(UnitCell(a, b, c, alpha, beta, gamma))
            except InvalidCellError:
                continue
            cell = UnitCell(a, b, c, alpha, beta, gamma)
            np.testing.assert_allclose(
                basis.gram(), cell.gram(), rtol=1e-9, atol=1e-12
            )

    def test_cell_round_trip_identity(self, rng):
        for _ in range(50):
            a, b, c = rng.uniform(0.5, 10, size=3)
            alpha, beta, gamma = rng.uniform(70, 110, size=3)
            cell = UnitCell(a, b, c, alpha, beta, gamma)
            back = basis_to_unit_cell(unit_cell_to_basis(cell))
            for name in ("a", "b", "c", "alpha", "beta", "gamma"):
                assert getattr(back, name) == pytest.approx(
                    getattr(cell, name), rel=1e-9
                )

    def test_invalid_parameters(self):
        with pytest.raises(InvalidCellError):
            UnitCell(1, 1, 1, 90, 90, 0)
        with pytest.raises(InvalidCellError):
            UnitCell(-1, 1, 1, 90, 90, 90)
        with pytest.raises(InvalidCellError):
            unit_cell_to_basis(UnitCell(1, 1, 1, 10, 10, 170))


class TestSuperbase:
    def test_closing_vector(self):
        sb = basis_to_superbase(Basis(np.diag([1.0, 2.0, 3.0])))
        np.testing.assert_allclose(sb.v0, [-1, -2, -3])

    def test_skew_example(self):
        sb = basis_to_superbase(
            Basis(np.array([[1, 0, 0], [0, 1, 0], [0.5, 0.5, 1.0]]))
        )
        np.testing.assert_allclose(sb.v0, [-1.5, -1.5, -1.0])

    def test_sum_is_zero(self, rng):
        for _ in range(100):
            sb = basis_to_superbase(random_basis(rng))
            scale = np.linalg.norm(sb.vectors, axis=1).max()
            assert np.linalg.norm(sb.vectors.sum(axis=0)) <= 1e-9 * scale

    def test_rejects_nonzero_sum(self):
        with pytest.raises(UsageError):
            Superbase(np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0.5]]))

    def test_rejects_degenerate(self):
        with pytest.raises(DegenerateBasisError):
            Superbase(
                np.array([[-2, -1, 0], [1, 0, 0], [0, 1, 0], [1, 0, 0]], dtype=float)
            )


class TestPartialSums:
    def test_oP_123_lengths(self):
        ps = partial_sums(oP_superbase(1, 2, 3))
        expected = sorted(
            [1, 2, 3, math.sqrt(14), math.sqrt(13), math.sqrt(10), math.sqrt(5)]
        )
        np.testing.assert_allclose(sorted(ps.lengths()), expected, rtol=1e-12)

    def test_symmetric_superbase_equal_lengths(self):
        # all four vectors of the (1,1,1) body-centred construction have
        # equal length sqrt(3)
        from conftest import oI_superbase

        ps = partial_sums(oI_superbase(1, 1, 1))
        np.testing.assert_allclose(ps.lengths()[:4], math.sqrt(3), rtol=1e-12)

    def test_pair_sums_total(self, rng):
        for _ in range(50):
            sb = basis_to_superbase(random_basis(rng))
            ps = partial_sums(sb)
            total = ps["v01"] + ps["v02"] + ps["v03"]
            np.testing.assert_allclose(total, 2 * sb.v0, atol=1e-9)

    def test_vonorm_linear_relation(self, rng):
        for _ in range(100):
            sb = basis_to_superbase(random_basis(rng))
            vn = partial_sums(sb).vonorms()
            lhs = vn[:4].sum()
            rhs = vn[4:].sum()
            assert abs(lhs - rhs) <= 1e-9 * max(vn)


class TestApplyOrthogonal:
    def test_identity(self):
        sb = oP_superbase(1, 2, 3)
        out = apply_orthogonal(sb, np.eye(3))
        np.testing.assert_allclose(out.vectors, sb.vectors)

    def test_rotation_preserves_conorms(self):
        sb = oP_superbase(1, 2, 3)
        q = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
        out = apply_orthogonal(sb, q)
        np.testing.assert_allclose(
            conorms_of(out).values, conorms_of(sb).values, atol=1e-12
        )

    def test_reflection_flips_orientation(self):
        sb = oP_superbase(1, 2, 3)
        out = apply_orthogonal(sb, np.diag([1.0, 1.0, -1.0]))
        assert out.orientation_sign() == -sb.orientation_sign()

    def test_partial_sum_lengths_preserved(self, rng):
        for _ in range(50):
            sb = basis_to_superbase(random_basis(rng))
            q = random_rotation(rng)
            before = np.sort(partial_sums(sb).lengths())
            after = np.sort(partial_sums(apply_orthogonal(sb, q)).lengths())
            np.testing.assert_allclose(after, before, rtol=1e-9)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NonOrthogonalError):
            apply_orthogonal(oP_superbase(1, 2, 3), np.diag([1.0, 2.0, 1.0]))


class TestRandomUnimodular:
    def test_determinant_is_unit(self):
        for seed in range(40):
            u = random_unimodular(seed)
            assert round(np.linalg.det(u)) in (1, -1)

    def test_deterministic(self):
        np.testing.assert_array_equal(random_unimodular(7), random_unimodular(7))

    def test_entries_bounded(self):
        for seed in range(40):
            assert np.abs(random_unimodular(seed, bound=5)).max() <= 5

    def test_rejects_bad_bound(self):
        with pytest.raises(UsageError):
            random_unimodular(0, bound=0)

    def test_same_lattice_same_root_form(self, rng):
        from latforms import reduce_to_obtuse

        for seed in range(30):
            basis = random_basis(rng)
            u = random_unimodular(seed, bound=6)
            other = Basis(u.astype(float) @ basis.rows)
            rf_a = root_form_of_superbase(
                reduce_to_obtuse(basis_to_superbase(basis))[0]
            )
            rf_b = root_form_of_superbase(
                reduce_to_obtuse(basis_to_superbase(other))[0]
            )
            np.testing.assert_allclose(rf_a.values, rf_b.values, atol=1e-6)


class TestSuperbaseDistance:
    def test_identical(self):
        sb = oP_superbase(1, 2, 3)
        assert superbase_distance(sb, sb) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_image_recovered(self, rng):
        for _ in range(30):
            sb = basis_to_superbase(random_basis(rng))
            q = random_rotation(rng)
            assert superbase_distance(sb, apply_orthogonal(sb, q)) < 1e-9

    def test_small_shift_bounded(self):
        delta = 1e-3
        basis = Basis(np.diag([1.0, 2.0, 3.0]))
        shifted = Basis(basis.rows + np.array([[delta, 0, 0], [0, 0, 0], [0, 0, 0]]))
        d = superbase_distance(
            basis_to_superbase(basis), basis_to_superbase(shifted)
        )
        assert d <= 2 * delta
