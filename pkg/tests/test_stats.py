"""Statistics layer: histograms, empirical CDFs, KS, samplers, Monte Carlo."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from golden_gaps import analytic, bcz, stats
from golden_gaps.field import PHI_FLOAT

EDGES = np.linspace(0.0, 10.0, 21)


def histogram_strategy():
    return st.lists(
        st.floats(min_value=-5.0, max_value=15.0, allow_nan=False), min_size=0, max_size=60
    ).map(lambda xs: stats.Histogram.from_samples(np.array(xs, dtype=float), EDGES))


class TestHistogram:
    def test_counts_and_out_of_range(self):
        h = stats.Histogram.from_samples(np.array([0.5, 1.5, 25.0, -3.0]), EDGES)
        assert h.total == 4
        assert h.counts.sum() == 2
        assert h.out_of_range == 2

    def test_density_normalization(self):
        rng = np.random.Generator(np.random.PCG64(1))
        h = stats.Histogram.from_samples(rng.random(10_000) * 10.0, EDGES)
        widths = np.diff(EDGES)
        assert float(np.sum(h.density() * widths)) == pytest.approx(1.0, abs=1e-9)

    def test_merge_requires_same_edges(self):
        h = stats.Histogram.from_samples(np.array([1.0]), EDGES)
        other = stats.Histogram.from_samples(np.array([1.0]), np.linspace(0, 5, 6))
        with pytest.raises(ValueError):
            h + other

    @given(histogram_strategy(), histogram_strategy(), histogram_strategy())
    @settings(max_examples=60, deadline=None)
    def test_merge_associative_commutative(self, h1, h2, h3):
        left = (h1 + h2) + h3
        right = h1 + (h2 + h3)
        assert np.array_equal(left.counts, right.counts)
        assert left.total == right.total
        swapped = h2 + h1
        assert np.array_equal(swapped.counts, (h1 + h2).counts)


class TestEmpiricalCdf:
    def test_single_jump(self):
        cdf = stats.EmpiricalCdf(np.array([2.0]))
        assert cdf(1.9) == 0.0
        assert cdf(2.0) == 1.0
        assert cdf(2.1) == 1.0

    def test_monotone_right_continuous_range(self):
        values = np.array([3.0, 1.0, 2.0, 2.0])
        cdf = stats.EmpiricalCdf(values)
        xs = np.linspace(0.0, 4.0, 100)
        ys = cdf(xs)
        assert np.all(np.diff(ys) >= 0)
        assert set(np.unique(ys)) <= {0.0, 0.25, 0.5, 0.75, 1.0}

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            stats.EmpiricalCdf(np.array([]))

    def test_no_mass_below_one_on_gap_sample(self):
        sample = bcz.gaps_via_bcz(200)
        assert stats.empirical_cdf(sample)(1.0) == 0.0


class TestKsDistance:
    def test_identical_inputs(self):
        values = np.sort(np.random.Generator(np.random.PCG64(2)).random(500))
        ecdf = stats.EmpiricalCdf(values)
        # the ECDF of its own jump points differs only by the 1/n staircase
        assert stats.ks_distance(ecdf, ecdf) <= 1.0 / len(values) + 1e-12

    def test_against_scipy(self):
        from scipy.stats import kstest

        rng = np.random.Generator(np.random.PCG64(3))
        values = rng.random(2000)
        ours = stats.ks_distance(stats.EmpiricalCdf(values), lambda x: np.clip(x, 0, 1))
        theirs = kstest(values, "uniform").statistic
        assert ours == pytest.approx(theirs, abs=1e-12)

    def test_gap_sample_convergence(self):
        g = bcz.gaps_via_bcz(1000)
        d = stats.ks_distance(stats.empirical_cdf(g), analytic.gap_cdf)
        assert d <= 0.02

    def test_empirical_cdf_near_analytic_at_three(self):
        g = bcz.gaps_via_bcz(1000)
        ecdf = stats.empirical_cdf(g)
        assert ecdf(3.0) == pytest.approx(analytic.gap_cdf(3.0), abs=0.01)


class TestUniformity:
    def test_degenerate_two_point_set(self):
        assert stats.uniformity_test(np.array([0.0, 1.0])) == pytest.approx(0.5)

    def test_slopes_equidistribute(self):
        g = bcz.gaps_via_bcz(1000)
        slopes = stats.slopes_from_gaps(g)
        assert slopes[0] == 0.0
        assert slopes[-1] == pytest.approx(1.0, abs=1e-9)
        assert stats.uniformity_test(slopes) <= 0.02


class TestSampler:
    def test_samples_lie_in_section(self):
        rng = np.random.Generator(np.random.PCG64(4))
        a, b = stats.sample_omega(100_000, rng)
        assert np.all((a > 0) & (a <= 1))
        assert np.all(b <= 1.0)
        assert np.all(b > 1.0 - a * PHI_FLOAT)

    def test_area_density_is_uniform(self):
        # u = a^2 and the relative b-position are independent uniforms
        rng = np.random.Generator(np.random.PCG64(5))
        a, b = stats.sample_omega(200_000, rng)
        u = a * a
        v = (1.0 - b) / (a * PHI_FLOAT)
        for coord in (u, v):
            assert stats.uniformity_test(coord) < 0.005


class TestHSpacing:
    def test_query_validation(self):
        with pytest.raises(ValueError):
            stats.HSpacingQuery(h=2, thresholds=(1.0,))
        with pytest.raises(ValueError):
            stats.HSpacingQuery(h=1, thresholds=(-1.0,))
        with pytest.raises(ValueError):
            stats.HSpacingQuery(h=1, thresholds=(1.0,), samples=10)

    def test_threshold_one_is_certain(self):
        res = stats.h_spacing_mc(stats.HSpacingQuery(h=1, thresholds=(1.0,), samples=50_000))
        assert res.estimate == 1.0

    def test_matches_gap_law_survival(self):
        for t in (1.5, 2.0, 5.0):
            res = stats.h_spacing_mc(
                stats.HSpacingQuery(h=1, thresholds=(t,), samples=200_000, seed=17)
            )
            want = 1.0 - analytic.gap_cdf(t)
            assert abs(res.estimate - want) <= 3.0 * res.std_error

    def test_deterministic_given_seed_and_thread_count_independent(self):
        q = stats.HSpacingQuery(h=2, thresholds=(1.5, 2.0), samples=40_000, seed=9)
        serial = stats.h_spacing_mc(q)
        threaded = stats.h_spacing_mc(q, threads=4)
        again = stats.h_spacing_mc(q)
        assert serial.estimate == threaded.estimate == again.estimate


class TestPushforward:
    def test_map_preserves_uniform_measure(self):
        out = stats.pushforward_chi_square(200_000, seed=8)
        from scipy.stats import chi2

        assert out["statistic"] <= chi2.ppf(1.0 - 1e-3, out["dof"])
