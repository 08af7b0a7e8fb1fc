"""Closed-form law vs numeric oracles: special functions, pieces, volumes."""

import math

import numpy as np
import pytest
import scipy.special

from golden_gaps import analytic as an
from golden_gaps.field import PHI_FLOAT, GoldenNumber

PB = PHI_FLOAT - 1.0


class TestDilog:
    def test_at_one(self):
        assert an.dilog(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-14)

    def test_at_zero(self):
        assert an.dilog(0.0) == 0.0

    def test_golden_difference_identity(self):
        got = an.dilog(PB) - an.dilog(PB * PB)
        assert got == pytest.approx(math.pi**2 / 30, abs=1e-13)

    def test_against_scipy_spence(self):
        for x in np.linspace(0.0, 1.0, 101):
            assert an.dilog(float(x)) == pytest.approx(
                float(scipy.special.spence(1.0 - x)), abs=1e-12
            )

    def test_domain(self):
        with pytest.raises(ValueError):
            an.dilog(-0.1)
        with pytest.raises(ValueError):
            an.dilog(1.1)


class TestSmallFunctions:
    def test_ath(self):
        assert an.ath(0.0) == 0.0
        assert an.ath(PB**3) == pytest.approx(0.5 * math.log(PHI_FLOAT), abs=1e-14)
        with pytest.raises(ValueError):
            an.ath(1.0)

    def test_rfun(self):
        assert an.rfun(0.0) == 1.0
        assert an.rfun(0.25) == 0.0
        assert an.rfun(PB**3) == pytest.approx(PB**3, abs=1e-14)  # 1 - 4x = x^2 here
        with pytest.raises(ValueError):
            an.rfun(0.3)


class TestPartialCdfs:
    def test_zero_below_the_gap_floor(self):
        assert an.cdf_partial("inf", 1.0) == 0.0
        assert an.cdf_partial("phi", 1.0) == 0.0
        assert an.cdf_partial("1", 1.0) == 0.0

    def test_terminal_values_are_zone_areas(self):
        assert an.cdf_partial("phi", math.inf) == pytest.approx(PB**4, abs=1e-15)
        assert an.cdf_partial("1", math.inf) == pytest.approx(PB**5 / 2, abs=1e-15)
        assert an.cdf_partial("inf", math.inf) == pytest.approx(PB, abs=1e-15)
        assert an.cdf_partial("phi", 1e6) == pytest.approx(PB**4, abs=1e-12)

    def test_unknown_zone(self):
        with pytest.raises(ValueError):
            an.cdf_partial("2", 1.0)

    def test_nondecreasing(self):
        grid = np.linspace(0.0, 12.0, 500)
        for zone in an.ZONES:
            vals = an.cdf_partial(zone, grid)
            assert np.all(np.diff(vals) >= -1e-12)


class TestPartialPdfs:
    def test_values_at_two(self):
        assert an.pdf_partial("inf", 2.0) == pytest.approx(0.25 * math.log(2.0), abs=1e-14)
        assert an.pdf_partial("1", 2.0) == pytest.approx(
            0.25 * math.log(2.0 * PB), abs=1e-14
        )
        assert an.pdf_partial("phi", 2.0) == pytest.approx(
            0.25 * math.log(2.0 * PB), abs=1e-14
        )
        assert an.pdf_partial("phi", 1.0) == 0.0

    def test_nonnegative(self):
        grid = np.linspace(0.0, 12.0, 500)
        for zone in an.ZONES:
            assert np.all(an.pdf_partial(zone, grid) >= 0.0)

    def test_matches_cdf_derivative(self):
        h = 1e-6
        for zone in an.ZONES:
            for alpha in (1.3, 1.9, 2.5, 3.3, 4.1, 5.0, 6.6, 7.5):
                num = (an.cdf_partial(zone, alpha + h) - an.cdf_partial(zone, alpha - h)) / (
                    2 * h
                )
                assert num == pytest.approx(an.pdf_partial(zone, alpha), abs=1e-7)


class TestGapLaw:
    def test_cdf_normalized(self):
        assert an.gap_cdf(math.inf) == pytest.approx(1.0, abs=1e-15)
        assert an.gap_cdf(1e6) == pytest.approx(1.0, abs=1e-5)

    def test_no_mass_below_one(self):
        assert an.gap_cdf(1.0) == 0.0
        grid = np.linspace(0.0, 1.0, 50)
        assert np.all(an.gap_pdf(grid) == 0.0)

    def test_pdf_value_at_two(self):
        want = (2.0 / PHI_FLOAT) * (
            0.25 * math.log(2.0) + 2 * 0.25 * math.log(2.0 * PB)
        )
        assert an.gap_pdf(2.0) == pytest.approx(want, abs=1e-14)

    def test_quadratic_tail(self):
        for t in (1e3, 1e4, 1e5):
            assert 1.8 <= an.tail_constant(t) <= 2.2
        assert an.tail_constant(1e4) == pytest.approx(2.0, abs=1e-3)

    def test_integrates_to_one(self):
        assert an.pdf_normalization() == pytest.approx(1.0, abs=1e-4)

    def test_mean_matches_kac_value(self):
        assert an.mean_gap_quadrature() == pytest.approx(an.MEAN_GAP, abs=1e-6)

    def test_cdf_is_integral_of_pdf(self):
        from scipy.integrate import quad

        grid = np.linspace(0.2, 9.0, 100)
        edges = [float(b) for b in an.breakpoints()]
        for alpha in grid:
            pts = [p for p in edges if p < alpha]
            val, _ = quad(an.gap_pdf, 0.0, alpha, points=pts or None, limit=200)
            assert val == pytest.approx(an.gap_cdf(float(alpha)), abs=1e-8)


class TestBreakpoints:
    def test_exact_values_sorted(self):
        bps = an.breakpoints()
        floats = [float(b) for b in bps]
        assert floats == sorted(floats)
        assert floats == pytest.approx(
            [1.0, 1.6180339887, 2.4721359550, 2.6180339887, 4.0, 4.2360679775,
             6.4721359550, 6.8541019662],
            abs=1e-9,
        )
        phi = GoldenNumber(0, 1)
        assert bps[1] == phi
        assert bps[3] == phi * phi
        assert bps[5] == phi**3
        assert bps[7] == phi**4

    def test_cdf_and_pdf_continuous_at_breakpoints(self):
        for zone in an.ZONES:
            pieces, _ = an.zone_pieces(zone)
            for (_, hi, F1, f1), (lo, _, F2, f2) in zip(pieces, pieces[1:]):
                at = np.array([hi])
                assert abs(float(F1(at)[0] - F2(at)[0])) < 1e-9
                assert abs(float(f1(at)[0] - f2(at)[0])) < 1e-9

    def test_all_eight_candidates_are_kinks(self):
        # the density is continuous everywhere but its derivative jumps at
        # every candidate point; the kink at 1 sits on the edge of the
        # support, the other seven are interior
        report = an.pdf_kink_report()
        assert len(report) == 8
        for row in report:
            assert abs(row["jump"]) > 1e-3
        interior = [r for r in report if r["alpha"] > 1.0]
        assert len(interior) == 7


class TestAreaOracle:
    def test_zone_areas(self):
        assert an.area_oracle("inf", math.inf) == pytest.approx(PB, abs=1e-10)
        assert an.area_oracle("phi", math.inf) == pytest.approx(PB**4, abs=1e-10)
        assert an.area_oracle("1", math.inf) == pytest.approx(PB**5 / 2, abs=1e-10)

    def test_matches_closed_forms_on_coarse_grid(self):
        # the full 200-point validation runs in the acceptance suite
        for zone in an.ZONES:
            for alpha in np.linspace(0.3, 9.7, 25):
                assert an.area_oracle(zone, float(alpha)) == pytest.approx(
                    float(an.cdf_partial(zone, float(alpha))), abs=1e-9
                )

    def test_validates_input(self):
        with pytest.raises(ValueError):
            an.area_oracle("inf", -1.0)


class TestVolumes:
    def test_closed_forms(self):
        vr = an.volumes()
        ln2phi = math.log(PHI_FLOAT) ** 2
        assert vr.v1 == pytest.approx(-ln2phi + math.pi**2 / 30, abs=1e-13)
        assert vr.vphi == pytest.approx(-ln2phi + math.pi**2 / 15, abs=1e-13)
        assert vr.vinf == pytest.approx(
            2 * ln2phi + math.pi**2 / 30 + math.pi**2 / 6, abs=1e-13
        )

    def test_total_identity(self):
        vr = an.volumes()
        assert abs(vr.vtotal - 3 * math.pi**2 / 10) < 1e-10

    def test_quadrature_agreement(self):
        vr = an.volumes()
        assert vr.max_discrepancy < 1e-6

    def test_report_dict(self):
        d = an.volumes().as_dict()
        assert set(d) >= {"v1", "vphi", "vinf", "vtotal", "vtotal_numeric"}
