import math

import numpy as np
import pytest

from ringaxis.action import hessian_vector, minimize
from ringaxis.geometry import build_config, csc_sum
from ringaxis.jacobi import (
    analyze,
    jacobi_solution,
    report_to_dict,
    saddle_scan,
    scan_to_csv,
    second_variation_mode,
)
from ringaxis.loopspace import SymmetryClass, project, zero_loop

# frozen 50-digit references
CONJUGATE_N2 = 0.176776695296636881  # 1 / (4*sqrt(2))
CONJUGATE_N3 = 0.21934566882541541
OMEGA_N2 = 17.771531752633465  # sqrt(32) * pi
HALF_PERIOD_VALUE_N2 = 0.028882619928414458
MODE_N2_K1 = -138.174461615251021  # -14 pi^2
MODE_N2_K3 = 19.7392088021787172  # 2 pi^2


class TestJacobiSolution:
    def test_starts_at_zero(self):
        assert jacobi_solution(build_config(2), 0.0) == 0.0

    def test_unit_initial_slope(self):
        config = build_config(3)
        step = 1e-6
        slope = (jacobi_solution(config, step) - jacobi_solution(config, -step)) / (2 * step)
        assert slope == pytest.approx(1.0, abs=1e-9)

    def test_vanishes_at_the_conjugate_point(self):
        config = build_config(2)
        c = math.pi * math.sqrt(config.radius**3 / config.n)
        assert abs(jacobi_solution(config, c)) <= 1e-14

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_solves_the_jacobi_equation(self, n):
        # central second difference oracle, step 1e-5
        config = build_config(n)
        coefficient = config.n / config.radius**3
        step = 1e-5
        rng = np.random.default_rng(n)
        for t in rng.uniform(0.0, 1.0, 100):
            h = jacobi_solution(config, t)
            second = (
                jacobi_solution(config, t + step) - 2.0 * h + jacobi_solution(config, t - step)
            ) / step**2
            assert abs(second + coefficient * h) <= 1e-6

    def test_nontrivial_between_endpoints(self):
        config = build_config(2)
        c = math.pi * math.sqrt(config.radius**3 / config.n)
        interior = jacobi_solution(config, np.linspace(0.1 * c, 0.9 * c, 50))
        assert np.min(np.abs(interior)) > 1e-3


class TestAnalyze:
    def test_two_mass_report(self):
        report = analyze(build_config(2))
        assert report.p_coeff == 0.5
        assert report.q_coeff == pytest.approx(-32.0 * math.pi**2 / 2.0, rel=1e-13)
        assert report.omega == pytest.approx(OMEGA_N2, rel=1e-13)
        assert report.conjugate_point == pytest.approx(CONJUGATE_N2, rel=1e-13)
        assert report.zero_loop_is_saddle is True
        # the explicit solution does NOT vanish at the half period
        assert report.half_period_value == pytest.approx(HALF_PERIOD_VALUE_N2, rel=1e-12)
        assert abs(report.half_period_value) > 1e-3
        assert report.claimed_conjugate_point == 0.25
        assert report.csc_identity_holds is False

    def test_three_mass_report(self):
        report = analyze(build_config(3))
        assert report.conjugate_point == pytest.approx(CONJUGATE_N3, rel=1e-13)
        assert report.zero_loop_is_saddle is True

    @pytest.mark.parametrize("n", [2, 3, 7, 40])
    def test_claimed_location_is_the_closed_form_one(self, n):
        # under the 4/n closed form the half frequency would be n*pi, i.e. c = 1/(2n)
        report = analyze(build_config(n))
        assert report.claimed_conjugate_point * 2 * n == pytest.approx(1.0, rel=1e-15)
        claimed_omega = math.pi / report.claimed_conjugate_point
        assert claimed_omega / 2 == pytest.approx(n * math.pi, rel=1e-12)

    @pytest.mark.parametrize("n", list(range(2, 50)) + [200, 473, 1000])
    def test_conjugate_point_algebraic_cross_check(self, n):
        # pi * sqrt(r^3/n) and (1/4) * sqrt(csc_sum/n) are the same number
        config = build_config(n)
        report = analyze(config)
        direct = 0.25 * math.sqrt(config.csc_sum / n)
        assert abs(report.conjugate_point - direct) <= 1e-12 * direct

    def test_report_serialization(self):
        doc = report_to_dict(analyze(build_config(2)))
        assert doc["n"] == 2
        assert doc["zero_loop_is_saddle"] is True
        assert set(doc) == {
            "n", "p_coeff", "q_coeff", "omega", "conjugate_point", "half_period_value",
            "zero_loop_is_saddle", "claimed_conjugate_point", "csc_identity_holds",
        }


class TestSecondVariationMode:
    def test_two_mass_unstable_fundamental(self):
        assert second_variation_mode(build_config(2), 1) == pytest.approx(MODE_N2_K1, rel=1e-13)

    def test_two_mass_stable_third_mode(self):
        assert second_variation_mode(build_config(2), 3) == pytest.approx(MODE_N2_K3, rel=1e-13)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_sign_rule(self, n):
        config = build_config(n)
        threshold = 2.0 * math.sqrt(n / config.csc_sum)  # omega / (2 pi)
        for k in range(1, 11):
            value = second_variation_mode(config, k)
            assert (value < 0.0) == (k < threshold)

    def test_rejects_nonpositive_mode(self):
        with pytest.raises(ValueError):
            second_variation_mode(build_config(2), 0)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_matches_zero_loop_hessian_diagonal(self, n):
        config = build_config(n)
        loop = zero_loop(SymmetryClass.LAMBDA2, 16)
        for k in range(1, 17):
            direction = np.zeros(32)
            direction[16 + k - 1] = 1.0
            diagonal = hessian_vector(config, loop, direction, 256)[16 + k - 1]
            expected = second_variation_mode(config, k)
            assert abs(diagonal - expected) <= 1e-10 * abs(expected)

    def test_unstable_mode_is_admissible_in_both_classes(self):
        # sin(2 pi t) has k=1 odd: both projections leave it untouched
        for symmetry in SymmetryClass:
            loop = project([(1, 0.0, 1.0)], symmetry)
            assert loop.harmonics() == [(1, 0.0, 1.0)]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_saddle_implies_descent_below_planar_action(self, n):
        config = build_config(n)
        assert analyze(config).zero_loop_is_saddle
        result = minimize(
            config, SymmetryClass.LAMBDA1, max_harmonic=16, grid=256,
            start=zero_loop(SymmetryClass.LAMBDA1, 16),
        )
        assert result.action < config.n / config.radius - 1e-6


class TestSaddleScan:
    def test_small_rings_are_all_saddles(self):
        result = saddle_scan(2, 10)
        assert len(result.rows) == 9
        assert all(row.is_saddle for row in result.rows)
        assert result.n_star is None

    def test_conjugate_point_increases_over_the_scan(self):
        rows = saddle_scan(2, 600).rows
        points = [row.conjugate_point for row in rows]
        assert all(b > a for a, b in zip(points, points[1:]))

    def test_crossing_boundary_certified_by_direct_summation(self):
        result = saddle_scan(2, 600)
        n_star = result.n_star
        assert n_star is not None
        # independent plain-sum oracle for the boundary inequalities
        def plain_sum(n):
            j = np.arange(1, n)
            return float(np.sum(1.0 / np.sin(np.pi * np.minimum(j, n - j) / n)))
        assert plain_sum(n_star) >= 4.0 * n_star
        assert plain_sum(n_star - 1) < 4.0 * (n_star - 1)
        for row in result.rows:
            assert row.is_saddle == (row.n < n_star)

    def test_rows_match_per_n_analysis(self):
        for row in saddle_scan(5, 8).rows:
            config = build_config(row.n)
            report = analyze(config)
            assert row.csc_sum == config.csc_sum
            assert row.radius == config.radius
            assert row.conjugate_point == report.conjugate_point
            assert row.is_saddle == report.zero_loop_is_saddle

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            saddle_scan(1, 10)
        with pytest.raises(ValueError):
            saddle_scan(5, 3)

    def test_csv_layout(self):
        text = scan_to_csv(saddle_scan(2, 4))
        lines = text.splitlines()
        assert lines[0] == "n,csc_sum,radius,conjugate_point,is_saddle"
        assert len(lines) == 4
        fields = lines[1].split(",")
        assert fields[0] == "2"
        assert float(fields[1]) == csc_sum(2)
        assert fields[4] == "true"
        # shortest round-trip float text: parsing recovers the exact double
        assert float(fields[3]) == saddle_scan(2, 4).rows[0].conjugate_point
