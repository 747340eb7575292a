import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import length_vectors
from polygonspaces import (
    EmptySpaceCertificate,
    PolygonConfiguration,
    complement_poincare_polynomial,
    critical_data,
    energy,
    enumerate_chambers,
    find_polygon,
    hessian_matrix,
    hessian_signature,
    indices_of_mask,
    jacobian_rank,
    lacunary_consistency,
    mask_from_indices,
    parse_length_vector,
)
from polygonspaces.errors import (
    DegenerateConfiguration,
    NonUnitInput,
    NotGeneric,
    SubsetNotLong,
)
from polygonspaces.morse import _integer_inertia


def triangle_config():
    u = np.array(
        [
            [1.0, 0.0, 0.0],
            [-0.5, math.sqrt(3) / 2, 0.0],
            [-0.5, -math.sqrt(3) / 2, 0.0],
        ]
    )
    return PolygonConfiguration(3, u, 0.0)


class TestEnergy:
    def test_equilateral_closes(self):
        lv = parse_length_vector("1,1,1")
        assert abs(energy(lv, triangle_config())) <= 1e-18

    def test_aligned_directions(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        u = np.tile(np.array([[0.0, 0.0, 1.0]]), (6, 1))
        cfg = PolygonConfiguration(3, u, float(lv.total))
        assert energy(lv, cfg) == -float(lv.total) ** 2

    @given(st.integers(0, 10_000))
    @settings(max_examples=30)
    def test_long_singleton_bounds_energy(self, seed):
        # min |sum| is the deficit 1, so the energy never exceeds -1
        lv = parse_length_vector("1,1,3")
        rng = np.random.default_rng(seed)
        u = rng.normal(size=(3, 3))
        u /= np.linalg.norm(u, axis=1, keepdims=True)
        assert energy(lv, PolygonConfiguration(3, u, 0.0)) <= -1 + 1e-9

    def test_non_unit_rejected(self):
        lv = parse_length_vector("1,1,1")
        u = np.eye(3) * 1.5
        with pytest.raises(NonUnitInput):
            energy(lv, PolygonConfiguration(3, u, 0.0))


class TestFindPolygon:
    def test_triangle(self):
        lv = parse_length_vector("1,1,1")
        cfg = find_polygon(lv, 3, seed=0)
        assert cfg.residual < 1e-9 * lv.total

    def test_empty_space_certificate(self):
        cert = find_polygon(parse_length_vector("1,1,3"), 3)
        assert isinstance(cert, EmptySpaceCertificate)
        assert cert.witness == mask_from_indices((3,))
        assert cert.min_residual == 1

    def test_hexagon(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        cfg = find_polygon(lv, 3, seed=0)
        assert cfg.residual < 1e-9 * lv.total
        assert abs(energy(lv, cfg)) < (1e-9 * lv.total) ** 2

    def test_deterministic_given_seed(self):
        lv = parse_length_vector("1,2,2,3,5")
        a = find_polygon(lv, 3, seed=11)
        b = find_polygon(lv, 3, seed=11)
        assert a.residual == b.residual and a.sweeps == b.sweeps
        assert np.array_equal(a.u, b.u)

    def test_monotone_residual_history(self):
        lv = parse_length_vector("1,2,2,3,5")
        cfg = find_polygon(lv, 4, seed=3, record_history=True)
        hist = cfg.residual_history
        assert hist is not None
        for earlier, later in zip(hist, hist[1:]):
            assert later <= earlier * (1 + 1e-12) + 1e-15 * lv.total

    @given(length_vectors(ordered=True, generic=True, max_n=6), st.sampled_from([2, 3, 4]))
    @settings(max_examples=25)
    def test_random_generic_always_resolves(self, lv, d):
        out = find_polygon(lv, d, seed=5)
        from polygonspaces import Kind, classify_subset

        if classify_subset(lv, 1 << (lv.n - 1)).kind is Kind.LONG:
            assert isinstance(out, EmptySpaceCertificate)
        else:
            assert out.residual < 1e-9 * lv.total

    def test_degenerate_closure_fails_honestly(self):
        # (1,1,2) closes only collinearly; descent stalls and must say so
        from polygonspaces.errors import ConvergenceFailure

        with pytest.raises(ConvergenceFailure) as info:
            find_polygon(parse_length_vector("1,1,2"), 3, seed=0)
        assert info.value.best_residual is not None
        assert info.value.best_residual < 0.1

    def test_unordered_empty_detection(self):
        # the dominating side need not sit last for library calls
        cert = find_polygon(parse_length_vector("3,1,1"), 3)
        assert isinstance(cert, EmptySpaceCertificate)
        assert cert.witness == mask_from_indices((1,))
        assert cert.min_residual == 1


class TestHessian:
    def test_explicit_three_gon_matrix(self):
        lv = parse_length_vector("1,1,3")
        H = hessian_matrix(lv, mask_from_indices((3,)))
        assert H.entries == (
            (Fraction(-2), Fraction(-1), Fraction(-1)),
            (Fraction(-1), Fraction(-2), Fraction(-1)),
            (Fraction(-1), Fraction(-1), Fraction(-2, 3)),
        )
        assert H.kernel_vector == (-1, -1, 3)
        assert H.multiply(H.kernel_vector) == (0, 0, 0)

    def test_three_gon_signature(self):
        lv = parse_length_vector("1,1,3")
        assert hessian_signature(lv, mask_from_indices((3,))) == (0, 2, 1)

    def test_full_set_is_minimum(self):
        for text in ("1,1,3", "1,2,2,2,4,4", "1,1,1"):
            lv = parse_length_vector(text)
            sig = hessian_signature(lv, (1 << lv.n) - 1)
            assert sig == (lv.n - 1, 0, 1)

    def test_hexagon_pair(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        assert hessian_signature(lv, mask_from_indices((5, 6))) == (1, 4, 1)

    def test_short_subset_rejected(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        with pytest.raises(SubsetNotLong):
            hessian_signature(lv, mask_from_indices((1, 4, 6)))
        with pytest.raises(SubsetNotLong):
            hessian_matrix(lv, mask_from_indices((1,)))

    @given(length_vectors(ordered=True, generic=True, max_n=6), st.data())
    @settings(max_examples=60)
    def test_index_law(self, lv, data):
        from polygonspaces import Kind, classify_subset

        mask = data.draw(st.integers(1, (1 << lv.n) - 1))
        if classify_subset(lv, mask).kind is not Kind.LONG:
            return
        size = mask.bit_count()
        assert hessian_signature(lv, mask) == (size - 1, lv.n - size, 1)
        H = hessian_matrix(lv, mask)
        assert all(v == 0 for v in H.multiply(H.kernel_vector))

    @pytest.mark.parametrize("trial", range(25))
    def test_integer_inertia_against_eigenvalues(self, trial):
        rng = np.random.default_rng(trial)
        k = int(rng.integers(1, 7))
        m = rng.integers(-6, 7, size=(k, k))
        m = m + m.T
        pos, neg, zero = _integer_inertia([[int(v) for v in row] for row in m])
        eig = np.linalg.eigvalsh(m.astype(float))
        assert pos == int(np.sum(eig > 1e-9))
        assert neg == int(np.sum(eig < -1e-9))
        assert zero == k - pos - neg


class TestCriticalData:
    def test_degenerate_three_gon(self):
        lv = parse_length_vector("1,1,3")
        recs = critical_data(lv, 3)
        got = [(indices_of_mask(r.subset), r.critical_value, r.index) for r in recs]
        assert got == [
            ((1, 2, 3), -25, 0),
            ((1, 3), -9, 2),
            ((2, 3), -9, 2),
            ((3,), -1, 4),
        ]
        assert all(r.dim == 2 for r in recs)

    def test_equilateral(self):
        recs = critical_data(parse_length_vector("1,1,1"), 3)
        assert len(recs) == 4
        assert sorted(r.index for r in recs) == [0, 2, 2, 2]
        subsets = {indices_of_mask(r.subset) for r in recs}
        assert subsets == {(1, 2, 3), (1, 2), (1, 3), (2, 3)}

    def test_dominant_side(self):
        recs = critical_data(parse_length_vector("1,1,1,10"), 3)
        assert len(recs) == 8
        assert all(4 in indices_of_mask(r.subset) for r in recs)

    def test_one_record_per_pair(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        recs = critical_data(lv, 3)
        assert len(recs) == 2 ** (lv.n - 1)

    def test_sorted_by_value(self):
        recs = critical_data(parse_length_vector("1,2,2,2,4,4"), 3)
        values = [r.critical_value for r in recs]
        assert values == sorted(values)

    def test_nongeneric_rejected(self):
        with pytest.raises(NotGeneric):
            critical_data(parse_length_vector("1,1,2"), 3)

    def test_energy_at_aligned_configuration_matches(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        for rec in critical_data(lv, 3)[:6]:
            signs = [
                1.0 if rec.subset >> i & 1 else -1.0 for i in range(lv.n)
            ]
            u = np.zeros((lv.n, 3))
            u[:, 0] = signs
            value = energy(lv, PolygonConfiguration(3, u, 0.0))
            assert abs(value - rec.critical_value) <= 1e-12 * abs(rec.critical_value)


class TestJacobianRank:
    def test_triangle_regular(self):
        lv = parse_length_vector("1,1,1")
        assert jacobian_rank(lv, triangle_config()) == 3

    def test_collinear_rank_drop(self):
        lv = parse_length_vector("1,1,2")
        u = np.array([[1.0, 0, 0], [1.0, 0, 0], [-1.0, 0, 0]])
        cfg = PolygonConfiguration(3, u, 0.0)
        assert jacobian_rank(lv, cfg) < 3

    def test_degenerate_partial_sum(self):
        lv = parse_length_vector("1,1,1,1")
        u = np.array([[1.0, 0, 0], [-1.0, 0, 0], [1.0, 0, 0], [-1.0, 0, 0]])
        with pytest.raises(DegenerateConfiguration):
            jacobian_rank(lv, PolygonConfiguration(3, u, 0.0))

    def test_realized_hexagon_full_rank(self):
        lv = parse_length_vector("1,2,2,2,4,4")
        cfg = find_polygon(lv, 3, seed=2)
        assert jacobian_rank(lv, cfg) == 6


class TestComplementHomology:
    def test_three_gon_polynomial(self):
        assert complement_poincare_polynomial(parse_length_vector("1,1,3"), 3) == [
            1,
            0,
            3,
            0,
            3,
            0,
            1,
        ]

    def test_dominant_side_total(self):
        poly = complement_poincare_polynomial(parse_length_vector("1,1,1,10"), 3)
        assert sum(poly) == 16  # 8 long pairs, two classes each

    def test_lacunary_consistency_examples(self):
        for text in ("1,1,3", "1,1,1,10", "1,2,2,2,4,4"):
            assert lacunary_consistency(parse_length_vector(text), 3)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_census_representatives_consistent(self, n):
        for _, rep in enumerate_chambers(n).chambers:
            assert lacunary_consistency(rep, 3)

    def test_nongeneric_rejected(self):
        with pytest.raises(NotGeneric):
            complement_poincare_polynomial(parse_length_vector("1,1,2"), 3)

    @given(length_vectors(ordered=True, generic=True, max_n=6), st.sampled_from([3, 4, 5]))
    @settings(max_examples=40)
    def test_consistency_property(self, lv, d):
        assert lacunary_consistency(lv, d)
