from fractions import Fraction

import pytest

from helpers import cycle_incidence, independent_rank
from ssweight.errors import DifferentialNotSquareZero
from ssweight.scenarios import (
    elliptic_stratum,
    good_reduction_pn,
    ngon,
    projective_space_cohomology,
    tetrahedron,
)
from ssweight.spectral import (
    build_e1,
    compute_e2,
    duality_check,
    nerve_cohomology_oracle,
    page_relations,
)


class TestE1:
    def test_ngon_cells(self):
        e1 = build_e1(ngon(3))
        dims = {key: e1.dim(*key) for key in e1.support()}
        # oracle: hand enumeration of the cell formula for the three-cycle
        assert dims == {(0, 0): 3, (1, 0): 3, (-1, 2): 3, (0, 2): 3}

    def test_pn_single_column(self):
        e1 = build_e1(good_reduction_pn(3))
        assert all(a == 0 for (a, b) in e1.support())
        assert [e1.dim(0, 2 * c) for c in range(4)] == [1, 1, 1, 1]

    def test_tetrahedron_triple_points_cell(self):
        e1 = build_e1(tetrahedron())
        assert e1.dim(2, 0) == 4  # four triple points

    def test_slope_twist_bookkeeping(self):
        e1 = build_e1(ngon(3))
        for (a, b) in e1.support():
            for s in e1.cell(a, b).summands:
                # degree-2c summand is pure of slope c, twisted down by a-k
                assert Fraction(s.degree, 2) - s.twist == Fraction(b, 2)

    def test_d1_squares_to_zero_everywhere(self):
        for sc in (ngon(4), tetrahedron(), elliptic_stratum()):
            e1 = build_e1(sc)
            assert all(r.ok for r in page_relations(e1))


class TestE2:
    def test_ngon_dims_against_incidence_oracle(self):
        # oracle: rank of the signed cycle incidence is N-1, independently
        for N in (3, 4):
            r = independent_rank(cycle_incidence(N))
            assert r == N - 1
            e2 = compute_e2(build_e1(ngon(N)))
            assert e2.dim(0, 0) == N - r
            assert e2.dim(1, 0) == N - r
            assert e2.dim(-1, 2) == N - r
            assert e2.dim(0, 2) == N - r

    def test_ngon_abutment(self):
        e2 = compute_e2(build_e1(ngon(3)))
        assert e2.abutment() == {0: 1, 1: 2, 2: 1}

    def test_pn_e2_equals_e1(self):
        e1 = build_e1(good_reduction_pn(2))
        e2 = compute_e2(e1)
        for (a, b) in e1.support():
            assert e2.dim(a, b) == e1.dim(a, b)

    def test_ngon_x_p1_kunneth(self):
        prod = ngon(3).product_with_factor(projective_space_cohomology(1))
        e2 = compute_e2(build_e1(prod))
        # oracle: Kunneth with the curve answer (1,2,1) times (1,0,1)
        assert e2.abutment() == {0: 1, 1: 2, 2: 2, 3: 2, 4: 1}

    def test_induced_operators_well_defined(self):
        for sc in (ngon(3), tetrahedron(), elliptic_stratum()):
            e2 = compute_e2(build_e1(sc))
            for (a, b) in e2.support():
                e2.induced_n(a, b)
                e2.induced_l(a, b)

    def test_broken_differential_raises(self):
        # needs triple points: scaling one restriction breaks the two-path
        # consistency plane -> line -> point and rho o rho becomes nonzero
        sc = tetrahedron()
        maps = dict(sc.restrictions[((1,), (1, 2))])
        maps[0] = maps[0].scale(2)
        sc.restrictions[((1,), (1, 2))] = maps
        with pytest.raises(DifferentialNotSquareZero):
            compute_e2(build_e1(sc))

    def test_euler_characteristic_per_row(self):
        for sc in (ngon(4), tetrahedron(), elliptic_stratum()):
            e1 = build_e1(sc)
            e2 = compute_e2(e1)
            rows = {b for (_, b) in e1.support()}
            for b in rows:
                chi1 = sum(
                    (-1) ** a * e1.dim(a, b) for (a, bb) in e1.support() if bb == b
                )
                chi2 = sum(
                    (-1) ** a * e2.dim(a, b) for (a, bb) in e2.support() if bb == b
                )
                assert chi1 == chi2


class TestDuality:
    def test_ngon(self):
        assert all(c.ok for c in duality_check(compute_e2(build_e1(ngon(3)))))

    def test_pn(self):
        assert all(
            c.ok for c in duality_check(compute_e2(build_e1(good_reduction_pn(2))))
        )

    def test_tetrahedron(self):
        assert all(c.ok for c in duality_check(compute_e2(build_e1(tetrahedron()))))


class TestNerveOracle:
    def test_cycle_graph(self):
        sc = ngon(3)
        # oracle: cochain ranks of the cycle graph
        assert nerve_cohomology_oracle(sc, 0) == 1
        assert nerve_cohomology_oracle(sc, 1) == 1
        assert nerve_cohomology_oracle(sc, 2) == 0

    def test_boundary_of_simplex(self):
        sc = tetrahedron()
        # oracle: the nerve is the two-sphere
        assert [nerve_cohomology_oracle(sc, a) for a in range(3)] == [1, 0, 1]

    def test_single_vertex(self):
        sc = good_reduction_pn(2)
        assert nerve_cohomology_oracle(sc, 0) == 1
        assert nerve_cohomology_oracle(sc, 1) == 0

    def test_weight_zero_row_matches(self):
        for sc in (ngon(5), tetrahedron(), good_reduction_pn(2)):
            e2 = compute_e2(build_e1(sc))
            for a in range(0, sc.max_level + 1):
                assert e2.dim(a, 0) == nerve_cohomology_oracle(sc, a)


class TestCellFormula:
    def test_summands_realize_cell_formula(self):
        # brute-force re-enumeration of the cell formula, independent of the
        # page construction loop
        for sc in (tetrahedron(), ngon(4), elliptic_stratum()):
            e1 = build_e1(sc)
            for (a, b), cell in e1.cells.items():
                expected = []
                for k in range(max(a, 0), max(a, 0) + sc.max_level + 2):
                    level = 2 * k - a + 1
                    degree = 2 * (a - k) + b
                    d = sc.level_dim(level, degree)
                    if d:
                        expected.append((k, level, degree, d))
                got = [(s.k, s.level, s.degree, s.dim) for s in cell.summands]
                assert got == expected
