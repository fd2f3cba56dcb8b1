import math

import pytest

from treeenergy.errors import InvariantViolation
from treeenergy.experiments import (
    ConvergenceRow,
    EnergyEngine,
    HypoCensusRow,
    _strictly_below,
    conjecture1,
    hypo_census,
    minimal,
    tstar_scan,
)
from treeenergy.spectral import EnergyResult, Method, energy
from treeenergy.trees import bn_tree, canonical_code, path_tree, star_tree


@pytest.fixture(scope="module")
def conj6():
    return conjecture1(max_level=6)


class TestConjecture1:
    def test_first_row_is_star(self, conj6):
        r = conj6.rows[0]
        assert r.vertex_count == 4
        assert r.energy == pytest.approx(2 * math.sqrt(3), abs=1e-9)
        assert r.ratio == pytest.approx(math.sqrt(3) / 2, abs=1e-9)

    def test_monotone_and_crosses_one(self, conj6):
        assert conj6.monotone
        assert conj6.first_above_one == 1
        assert conj6.iso_checked_upto == 6

    def test_gaps_shrink(self, conj6):
        gaps = [r.gap for r in conj6.rows]
        assert all(b < a for a, b in zip(gaps[1:], gaps[2:]))

    def test_row_validation(self):
        with pytest.raises(InvariantViolation):
            ConvergenceRow(2, 21, 1.0, 1.0, 0.0, 0.0, 0.0)

    def test_polynomial_engine_agrees(self, conj6):
        poly = conjecture1(max_level=4, engine=EnergyEngine(Method.POLYNOMIAL))
        for a, b in zip(conj6.rows, poly.rows):
            assert a.energy == pytest.approx(b.energy, abs=1e-9)


class TestMinimal:
    def test_d2_small(self):
        rows = minimal(range(2, 11), 2)
        assert all(r.report.tstar_match and r.report.argmin_unique for r in rows)
        assert all(r.energy_per_vertex < r.alpha_d for r in rows)

    def test_d1(self):
        (row,) = minimal([4], 1)
        assert row.report.argmin_code == canonical_code(path_tree(4))
        assert row.alpha_d is None


class TestStrictlyBelow:
    def test_clear_cases(self):
        t = star_tree(4)
        e = energy(t)
        assert _strictly_below(t, e, 4) is True
        assert _strictly_below(t, e, 3) is False

    def test_exact_equality_is_boundary(self):
        t = path_tree(2)
        assert _strictly_below(t, energy(t), 2) is None

    def test_near_boundary_resolved_exactly(self):
        # a float just under the threshold that the exact enclosure rejects
        t = star_tree(10)  # E = 6 exactly
        fake = EnergyResult(6 - 1e-12, Method.DENSE, 0.0)
        assert _strictly_below(t, fake, 6) is None
        assert _strictly_below(t, fake, 6 + 1e-10) is True


@pytest.fixture(scope="module")
def census():
    return hypo_census(10, 3, tstar_d=3, tstar_max_n=60)


class TestHypoCensus:
    def test_n4_star_hypo(self, census):
        row = census.rows[3]
        assert row.n == 4 and row.hypo >= 1
        assert canonical_code(bn_tree(0)) in row.hypo_witnesses

    def test_counts_ordered(self, census):
        for row in census.rows:
            assert row.strong <= row.hypo <= row.total

    def test_row_validation(self):
        with pytest.raises(InvariantViolation):
            HypoCensusRow(5, 3, 2, 1, 2, (), ())

    def test_tstar_scan(self, census):
        s = census.tstar
        assert s.first_hypo == 1 and s.first_strong == 9
        assert len(s.energies) == 60

    def test_scan_eventual_thresholds(self):
        s = tstar_scan(3, 200)
        assert s.hypo_from == 3 and s.strong_from == 23
        assert s.energies[-1] / 200 < 1
