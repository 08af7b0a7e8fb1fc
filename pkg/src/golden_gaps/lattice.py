"""Saddle-connection vectors of the golden L and the slope/gap sets they induce.

The vector set is the linear orbit of (1, 0) under the Hecke-style group
generated by the quarter rotation S = [[0,-1],[1,0]] and the shear
P = [[1,phi],[0,1]]. Enumeration is breadth-first with exact dedup, pruned at
Euclidean norm 2*phi*Rmax, then filtered to the closed sector
0 <= Im <= Re <= Rmax. This is the slow, trustworthy route; the section-map
orbit is the fast route, and the two are cross-checked as exact multisets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import GoldenMatrix, GoldenNumber, GoldenVector

ROTATION = GoldenMatrix(0, -1, 1, 0)
SHEAR = GoldenMatrix(1, GoldenNumber(0, 1), 0, 1)


def veech_generators() -> list[GoldenMatrix]:
    """Generators S, P of the symmetry group together with their inverses."""
    return [ROTATION, SHEAR, ROTATION.inverse(), SHEAR.inverse()]


@dataclass(frozen=True)
class SlopeSet:
    """Sorted distinct slopes in [0, 1] of sector vectors with Re <= radius."""

    radius: int
    slopes: np.ndarray  # float64, strictly increasing
    count: int
    slopes_exact: list[GoldenNumber] | None = dc_field(default=None, repr=False)


@dataclass(frozen=True)
class GapSample:
    """Multiset of consecutive slope differences scaled by radius^2."""

    radius: int
    method: str  # "direct" or "bcz"
    gaps: np.ndarray  # float64, in slope order (not sorted)
    count: int  # number of slopes N(R); len(gaps) == count - 1
    gaps_exact: list[GoldenNumber] | None = dc_field(default=None, repr=False)

    def min_gap(self) -> float:
        return float(np.min(self.gaps))

    def mean_gap(self) -> float:
        return float(np.mean(self.gaps))


def _sign_int(m: int, n: int) -> int:
    """Exact sign of m + n*phi for integers."""
    a = 2 * m + n
    if n == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return 1 if n > 0 else -1
    if a > 0 and n > 0:
        return 1
    if a < 0 and n < 0:
        return -1
    c = a * a - 5 * n * n
    if a > 0:
        return (c > 0) - (c < 0)
    return (c < 0) - (c > 0)


def enumerate_vectors(rmax: int, prune_factor: int = 2) -> list[GoldenVector]:
    """All orbit vectors in the sector 0 <= Im <= Re <= rmax, each exactly once.

    Breadth-first search over the generator action with exact dedup. The
    frontier is pruned at Euclidean norm prune_factor * phi * rmax, a safety
    margin that lets reduction paths leave the sector before coming back down;
    the cross-check against the section-map route guards the choice.

    Orbit vectors have integer coefficients over the basis (1, phi), so the
    search runs on coefficient 4-tuples (mre, nre, mim, nim).
    """
    if rmax < 1:
        raise ValueError("rmax must be >= 1")
    # bound^2 where bound = prune_factor * phi * rmax; phi^2 = 1 + phi
    c = prune_factor * prune_factor * rmax * rmax
    bm, bn = c, c

    seed = (1, 0, 0, 0)
    visited: set[tuple[int, int, int, int]] = {seed}
    frontier: deque[tuple[int, int, int, int]] = deque([seed])
    while frontier:
        mre, nre, mim, nim = frontier.popleft()
        for w in (
            (-mim, -nim, mre, nre),  # quarter rotation
            (mre + nim, nre + mim + nim, mim, nim),  # shear by phi
            (mim, nim, -mre, -nre),  # inverse rotation
            (mre - nim, nre - mim - nim, mim, nim),  # inverse shear
        ):
            if w in visited:
                continue
            wm, wn, wm2, wn2 = w
            # |w|^2 = re^2 + im^2, with (m+n*phi)^2 = (m^2+n^2) + (2mn+n^2)*phi
            sm = wm * wm + wn * wn + wm2 * wm2 + wn2 * wn2
            sn = 2 * wm * wn + wn * wn + 2 * wm2 * wn2 + wn2 * wn2
            if _sign_int(bm - sm, bn - sn) < 0:
                continue
            visited.add(w)
            frontier.append(w)

    sector = [
        GoldenVector(GoldenNumber(mre, nre), GoldenNumber(mim, nim))
        for mre, nre, mim, nim in visited
        if _sign_int(mim, nim) >= 0
        and _sign_int(mre - mim, nre - nim) >= 0
        and _sign_int(mre, nre) > 0
        and _sign_int(mre - rmax, nre) <= 0
    ]
    sector.sort(key=lambda v: (v.im * v.re.inverse(), v.re))
    return sector


def slopes(rmax: int) -> SlopeSet:
    """Sorted exact slope set of the sector vectors with Re <= rmax."""
    vectors = enumerate_vectors(rmax)
    distinct = sorted(set(v.slope() for v in vectors))
    return SlopeSet(
        radius=rmax,
        slopes=np.array([float(s) for s in distinct], dtype=np.float64),
        count=len(distinct),
        slopes_exact=distinct,
    )


def gaps_direct(rmax: int) -> GapSample:
    """Scaled consecutive slope differences rmax^2 * (s_{i+1} - s_i), exact."""
    if rmax < 2:
        raise ValueError("rmax must be >= 2")
    ss = slopes(rmax)
    assert ss.slopes_exact is not None
    r_sq = GoldenNumber(rmax * rmax)
    exact = [
        (b - a) * r_sq for a, b in zip(ss.slopes_exact, ss.slopes_exact[1:])
    ]
    return GapSample(
        radius=rmax,
        method="direct",
        gaps=np.array([float(g) for g in exact], dtype=np.float64),
        count=ss.count,
        gaps_exact=exact,
    )
