"""Empirical statistics connecting gap samples to the analytic law.

Histograms, empirical CDFs, Kolmogorov-Smirnov distances, slope
equidistribution checks, joint spacing estimates by seeded Monte Carlo over
the section, and a chi-square check that the section map preserves the
uniform measure.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2 as _chi2

from .bcz import apply_map_array, return_time_array
from .field import PHI_FLOAT
from .lattice import GapSample, SlopeSet


@dataclass(frozen=True)
class Histogram:
    """Fixed-edge counting histogram; merging requires identical edges."""

    bin_edges: np.ndarray
    counts: np.ndarray  # int64, len(bin_edges) - 1
    total: int  # all offered samples, in range or not

    @classmethod
    def from_samples(cls, values: np.ndarray, bin_edges: np.ndarray) -> "Histogram":
        edges = np.asarray(bin_edges, dtype=np.float64)
        counts, _ = np.histogram(values, bins=edges)
        return cls(bin_edges=edges, counts=counts.astype(np.int64), total=len(values))

    @property
    def out_of_range(self) -> int:
        return self.total - int(self.counts.sum())

    def density(self) -> np.ndarray:
        """Per-bin density normalized by the total sample count."""
        widths = np.diff(self.bin_edges)
        return self.counts / (self.total * widths)

    def __add__(self, other: "Histogram") -> "Histogram":
        if not np.array_equal(self.bin_edges, other.bin_edges):
            raise ValueError("histograms have different bin edges")
        return Histogram(
            bin_edges=self.bin_edges,
            counts=self.counts + other.counts,
            total=self.total + other.total,
        )


class EmpiricalCdf:
    """Right-continuous step function of a sample; 0 below min, 1 above max."""

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            raise ValueError("empirical cdf needs a nonempty sample")
        self.sorted = np.sort(values)
        self.n = self.sorted.size

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.searchsorted(self.sorted, x, side="right") / self.n
        return float(out) if out.ndim == 0 else out

    def jumps(self) -> np.ndarray:
        return self.sorted


def empirical_cdf(sample: GapSample) -> EmpiricalCdf:
    return EmpiricalCdf(sample.gaps)


def ks_distance(empirical: EmpiricalCdf, cdf, refine: int = 512, chunk: int = 1 << 20) -> float:
    """Sup distance between a step function and a continuous CDF.

    Exact over the jump points (evaluating the CDF against the step values on
    both sides of each jump) plus a refinement grid between the extremes.
    """
    xs = empirical.jumps()
    n = empirical.n
    best = 0.0
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        fx = np.asarray(cdf(xs[start:stop]), dtype=np.float64)
        hi = np.arange(start + 1, stop + 1) / n
        lo = np.arange(start, stop) / n
        best = max(best, float(np.max(np.abs(fx - hi))), float(np.max(np.abs(fx - lo))))
    if refine > 1:
        grid = np.linspace(xs[0], xs[-1], refine)
        dev = np.abs(np.asarray(cdf(grid)) - empirical(grid))
        best = max(best, float(np.max(dev)))
    return best


def slopes_from_gaps(sample: GapSample) -> np.ndarray:
    """Reconstruct the sorted slope set in [0, 1] from a gap sample."""
    r_sq = float(sample.radius) ** 2
    slopes = np.empty(sample.gaps.size + 1, dtype=np.float64)
    slopes[0] = 0.0
    np.cumsum(sample.gaps, out=slopes[1:])
    slopes[1:] /= r_sq
    return slopes


def uniformity_test(slopes: SlopeSet | np.ndarray) -> float:
    """KS distance of a slope set from the uniform law on [0, 1]."""
    values = slopes.slopes if isinstance(slopes, SlopeSet) else np.asarray(slopes)
    ecdf = EmpiricalCdf(values)
    return ks_distance(ecdf, lambda x: np.clip(x, 0.0, 1.0))


# ----------------------------------------------------------------------
# Monte Carlo over the section
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class HSpacingQuery:
    """Joint survival query: all of the first h return times at or above t_j."""

    h: int
    thresholds: tuple[float, ...]
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.h < 1 or len(self.thresholds) != self.h:
            raise ValueError("need exactly h positive thresholds")
        if any(t <= 0 for t in self.thresholds):
            raise ValueError("thresholds must be positive")
        if self.samples < 1000:
            raise ValueError("need at least 1000 samples")


@dataclass(frozen=True)
class HSpacingResult:
    estimate: float
    std_error: float
    samples: int
    seed: int
    guard_hits: int = 0

    def as_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
            "guard_hits": self.guard_hits,
        }


def sample_omega(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """n points uniform in the section (the invariant probability measure).

    The b-extent at fixed a has length a*phi, so a has density 2a on (0, 1]
    (inverse transform: a = sqrt(u)) and b is uniform on (1 - a*phi, 1].
    """
    a = np.sqrt(rng.random(n))
    b = 1.0 - rng.random(n) * a * PHI_FLOAT
    return a, b


_STREAMS = 8  # fixed decomposition keeps results thread-count independent


def h_spacing_mc(query: HSpacingQuery, threads: int | None = None) -> HSpacingResult:
    """Monte Carlo estimate of the joint measure in an h-spacing query.

    The sample budget is split over a fixed number of independent seeded
    streams; a thread pool may execute streams concurrently, and results merge
    in stream order, so the estimate depends only on (query, seed).
    """
    seqs = np.random.SeedSequence(query.seed).spawn(_STREAMS)
    base = query.samples // _STREAMS
    sizes = [base + (1 if i < query.samples % _STREAMS else 0) for i in range(_STREAMS)]

    def run_stream(args):
        seq, size = args
        if size == 0:
            return 0, 0
        rng = np.random.Generator(np.random.PCG64(seq))
        a, b = sample_omega(size, rng)
        alive = np.ones(size, dtype=bool)
        guard = 0
        for j in range(query.h):
            rt = return_time_array(a, b)
            alive &= rt >= query.thresholds[j]
            if j + 1 < query.h:
                a, b, _, near = apply_map_array(a, b)
                guard += near
        return int(alive.sum()), guard

    jobs = list(zip(seqs, sizes))
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run_stream, jobs))
    else:
        outcomes = [run_stream(j) for j in jobs]

    hits = sum(o[0] for o in outcomes)
    guard_hits = sum(o[1] for o in outcomes)
    p = hits / query.samples
    se = float(np.sqrt(p * (1.0 - p) / query.samples))
    return HSpacingResult(
        estimate=p, std_error=se, samples=query.samples, seed=query.seed, guard_hits=guard_hits
    )


def pushforward_chi_square(
    n: int = 1_000_000, seed: int = 0, grid: int = 20
) -> dict:
    """Chi-square uniformity of the image of uniform section samples.

    Uniform samples are pushed through the map once, then binned on an
    equal-measure grid (u = a^2 against the relative b-position), giving a
    chi-square statistic with grid^2 - 1 degrees of freedom.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    a, b = sample_omega(n, rng)
    a2, b2, _, near = apply_map_array(a, b)
    u = np.clip(a2 * a2, 0.0, np.nextafter(1.0, 0.0))
    v = np.clip((1.0 - b2) / (a2 * PHI_FLOAT), 0.0, np.nextafter(1.0, 0.0))
    iu = (u * grid).astype(np.int64)
    iv = (v * grid).astype(np.int64)
    counts = np.bincount(iu * grid + iv, minlength=grid * grid).astype(np.float64)
    expected = n / (grid * grid)
    stat = float(np.sum((counts - expected) ** 2) / expected)
    dof = grid * grid - 1
    return {
        "statistic": stat,
        "dof": dof,
        "pvalue": float(_chi2.sf(stat, dof)),
        "samples": n,
        "seed": seed,
        "guard_hits": near,
    }
