"""First-return dynamics on the short-horizontal section of the golden L.

The section is Omega = {(a, b): 0 < a <= 1, 1 - a*phi < b <= 1}. Three zones
partition it, each tagged by the lattice vector whose sheared image realizes
the next slope; on each zone the return time is an explicit rational function
of (a, b) and the return map is Z[phi]-linear followed by a shear that places
the new b back in (1 - a'*phi, 1].

Three evaluation paths share this logic:

* exact points (GoldenNumber coordinates, every comparison exact),
* guarded floats (double comparisons; a margin within GUARD of a zone or
  shear boundary is resolved exactly when integer-coefficient state is
  available, and treated as on-boundary otherwise),
* a compiled int64 kernel over the scaled coefficient state (same guarded
  semantics, handing any near-boundary or large-coefficient step back to the
  big-integer path).

Orbits launched from the radius-R renormalized start have coordinates in
(1/R) * Z[phi], so scaling by R gives integer coefficient state and makes the
fast path exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .field import PHI_FLOAT, GoldenNumber, GoldenVector
from .lattice import GapSample

GUARD = 1e-12  # float comparisons closer than this to a boundary escalate
PHI_BAR_FLOAT = PHI_FLOAT - 1.0

_PHI = GoldenNumber(0, 1)
_PHI_BAR = GoldenNumber(-1, 1)
_ONE = GoldenNumber(1)


class InternalInvariantError(RuntimeError):
    """A structural guarantee of the dynamics failed; indicates a bug."""


class Zone(enum.Enum):
    """The three-part partition of the section."""

    Z1 = "Z1"
    ZPHI = "Zphi"
    ZINF = "Zinf"

    @property
    def witness(self) -> GoldenVector:
        """Lattice vector realizing the smallest slope for points of the zone."""
        return _WITNESS[self]


_WITNESS = {
    Zone.Z1: GoldenVector(GoldenNumber(0, 1), GoldenNumber(0, 1)),  # (phi, phi)
    Zone.ZPHI: GoldenVector(GoldenNumber(1), GoldenNumber(0, 1)),  # (1, phi)
    Zone.ZINF: GoldenVector(GoldenNumber(0), GoldenNumber(1)),  # (0, 1)
}


@dataclass(frozen=True)
class SectionPoint:
    """A point of the section, with exact or float coordinates (both alike)."""

    a: GoldenNumber | float
    b: GoldenNumber | float

    def __post_init__(self):
        if isinstance(self.a, GoldenNumber) != isinstance(self.b, GoldenNumber):
            raise TypeError("a and b must both be exact or both be floats")

    @property
    def mode(self) -> str:
        return "exact" if isinstance(self.a, GoldenNumber) else "float"

    def as_floats(self) -> tuple[float, float]:
        return float(self.a), float(self.b)


@dataclass
class OrbitTrace:
    """A finite stretch of orbit: visited points, their return times, closure."""

    points: list[SectionPoint]
    return_times: list[float]
    zones: list[Zone]
    closed: bool
    return_times_exact: list[GoldenNumber] | None = None
    guard_hits: int = 0


# ----------------------------------------------------------------------
# membership and classification
# ----------------------------------------------------------------------


def in_omega(a, b) -> bool:
    """Membership test 0 < a <= 1, 1 - a*phi < b <= 1.

    Exact for GoldenNumber inputs. For floats, values within GUARD of a
    boundary are treated as exactly on it, which keeps the strict/non-strict
    conventions deterministic.
    """
    if isinstance(a, GoldenNumber) or isinstance(b, GoldenNumber):
        a = a if isinstance(a, GoldenNumber) else GoldenNumber(Fraction(a))
        b = b if isinstance(b, GoldenNumber) else GoldenNumber(Fraction(b))
        return (
            a.sign() > 0
            and (a - _ONE).sign() <= 0
            and (b - (_ONE - a * _PHI)).sign() > 0
            and (b - _ONE).sign() <= 0
        )
    return (
        a > GUARD
        and a <= 1.0 + GUARD
        and b - (1.0 - a * PHI_FLOAT) > GUARD
        and b <= 1.0 + GUARD
    )


def classify(point: SectionPoint) -> Zone:
    """Zone of a section point.

    The zone upper boundaries are inclusive and the lower ones strict, with
    each zone's printed lower bound intersected with the section bound
    1 - a*phi. Raises ValueError off the section.
    """
    a, b = point.a, point.b
    if not in_omega(a, b):
        raise ValueError(f"point ({a}, {b}) is not in the section")
    if isinstance(a, GoldenNumber):
        if (b - _PHI_BAR * (_ONE - a)).sign() > 0:
            return Zone.ZINF
        if (b - (_PHI_BAR - a)).sign() > 0:
            return Zone.ZPHI
        return Zone.Z1
    m_inf = b - PHI_BAR_FLOAT * (1.0 - a)
    if m_inf > GUARD:
        return Zone.ZINF
    if abs(m_inf) <= GUARD:  # on the Zphi/Zinf boundary: upper bound of Zphi
        return Zone.ZPHI
    m_phi = b - (PHI_BAR_FLOAT - a)
    if m_phi > GUARD:
        return Zone.ZPHI
    return Zone.Z1


def return_time(point: SectionPoint):
    """Time to the next section hit; exact GoldenNumber for exact points."""
    zone = classify(point)
    a, b = point.a, point.b
    if isinstance(a, GoldenNumber):
        if zone is Zone.ZINF:
            return (a * b).inverse()
        if zone is Zone.ZPHI:
            return (a * (a * _PHI_BAR + b)).inverse()
        return (a * (a + b)).inverse()
    if zone is Zone.ZINF:
        return 1.0 / (a * b)
    if zone is Zone.ZPHI:
        return 1.0 / (a * (a * PHI_BAR_FLOAT + b))
    return 1.0 / (a * (a + b))


# ----------------------------------------------------------------------
# the map
# ----------------------------------------------------------------------


def normalization_k(a_new, b_raw) -> int:
    """The unique integer k with b_raw + k*phi*a_new in (1 - phi*a_new, 1].

    A closed-form floor supplies the candidate; the membership condition is
    then verified and corrected, since the floor hint can be off by one when
    the raw value sits at the edge of the shear interval.
    """
    if isinstance(a_new, GoldenNumber):
        k = ((_ONE - b_raw) / (_PHI * a_new)).floor()
        lo = _ONE - _PHI * a_new
        for _ in range(64):
            b2 = b_raw + k * _PHI * a_new
            if (b2 - _ONE).sign() > 0:
                k -= 1
            elif (b2 - lo).sign() <= 0:
                k += 1
            else:
                return k
        raise InternalInvariantError("shear normalization did not settle")
    k = math.floor((1.0 - b_raw) / (PHI_FLOAT * a_new))
    lo = 1.0 - PHI_FLOAT * a_new
    for _ in range(64):
        b2 = b_raw + k * PHI_FLOAT * a_new
        if b2 - 1.0 > GUARD:
            k -= 1
        elif b2 - lo <= GUARD:  # within guard of the open edge counts as outside
            k += 1
        else:
            return k
    raise InternalInvariantError("shear normalization did not settle")


def apply_map(point: SectionPoint) -> SectionPoint:
    """One step of the return map."""
    zone = classify(point)
    a, b = point.a, point.b
    exact = isinstance(a, GoldenNumber)
    phi = _PHI if exact else PHI_FLOAT
    if zone is Zone.ZINF:
        a2 = b
        b_raw = -a
    elif zone is Zone.ZPHI:
        a2 = a + b * phi
        b_raw = b
    else:
        a2 = (a + b) * phi
        b_raw = a + b * phi
    k = normalization_k(a2, b_raw)
    b2 = b_raw + k * phi * a2
    result = SectionPoint(a2, b2)
    if exact and not in_omega(a2, b2):
        raise InternalInvariantError("image left the section")
    return result


def invert_map(point: SectionPoint) -> SectionPoint:
    """The unique exact preimage under the return map (exact points only).

    Searches the three zone branches, undoing the shear for each admissible
    integer k, and keeps the candidates that land in the right zone and map
    back to the given point.
    """
    if point.mode != "exact":
        raise ValueError("preimage search requires exact coordinates")
    a2, b2 = point.a, point.b
    if not in_omega(a2, b2):
        raise ValueError("point is not in the section")
    candidates: list[SectionPoint] = []

    def consider(a, b, zone: Zone):
        if not in_omega(a, b):
            return
        p = SectionPoint(a, b)
        if classify(p) is not zone:
            return
        if apply_map(p) == point:
            candidates.append(p)

    # Each branch reconstructs a as an affine function of the shear count k.
    # Bracketing k with the a-range each zone allows (intersected with the
    # section) keeps the scan to a handful of candidates.
    step = _PHI * a2
    fa2 = float(a2)
    # branch Zinf: a' = b, b' = -a + k*phi*b  =>  b = a', a = k*phi*a' - b'
    for k in _k_range(
        lambda k: step * k - b2, max(0.0, 1.0 - fa2 * PHI_FLOAT), 1.0
    ):
        consider(step * k - b2, a2, Zone.ZINF)
    # branch Zphi: a' = a + b*phi, b' = b + k*phi*a'  =>  b = b' - k*phi*a'
    for k in _k_range(
        lambda k: a2 - (b2 - step * k) * _PHI, PHI_BAR_FLOAT**2, 1.0
    ):
        b = b2 - step * k
        consider(a2 - b * _PHI, b, Zone.ZPHI)
    # branch Z1: a' = (a+b)*phi, b' = a + b*phi + k*phi*a'
    s = a2 * _PHI_BAR
    for k in _k_range(
        lambda k: s - ((b2 - step * k) - s) * _PHI, PHI_BAR_FLOAT, 1.0
    ):
        w = b2 - step * k
        b = (w - s) * _PHI
        consider(s - b, b, Zone.Z1)

    if len(candidates) != 1:
        raise InternalInvariantError(
            f"expected a unique preimage, found {len(candidates)}"
        )
    return candidates[0]


def _k_range(a_of_k, a_min: float, a_max: float, span: int = 1):
    """Integers k whose reconstructed a-coordinate can lie in [a_min, a_max].

    a_of_k is affine in k, so bracketing the solutions of a = a_min and
    a = a_max with a float estimate and padding by `span` covers all
    admissible k.
    """
    a0 = float(a_of_k(0))
    a1 = float(a_of_k(1))
    slope = a1 - a0
    if abs(slope) < 1e-15:
        return range(0, 1)
    k_lo = (a_min - a0) / slope
    k_hi = (a_max - a0) / slope
    lo = math.floor(min(k_lo, k_hi)) - span
    hi = math.ceil(max(k_lo, k_hi)) + span
    return range(lo, hi + 1)


# ----------------------------------------------------------------------
# renormalized starting point and orbits
# ----------------------------------------------------------------------


def radius_shift_count(radius: int) -> int:
    """floor(radius / phi), computed with integer arithmetic."""
    return (radius + isqrt(5 * radius * radius)) // 2 - radius


def section_point_for_radius(radius: int, mode: str = "exact") -> SectionPoint:
    """Section coordinates of the surface renormalized to horizontal scale R.

    a = 1/R and b = k*phi/R with k the unique integer landing b in
    (1 - phi/R, 1].
    """
    if radius < 2:
        raise ValueError("radius must be >= 2")
    k = radius_shift_count(radius)
    if mode == "exact":
        return SectionPoint(
            GoldenNumber(Fraction(1, radius)), GoldenNumber(0, Fraction(k, radius))
        )
    if mode == "float":
        return SectionPoint(1.0 / radius, k * PHI_FLOAT / radius)
    raise ValueError(f"unknown mode {mode!r}")


def orbit(point: SectionPoint, n: int) -> OrbitTrace:
    """First n map iterates with their return times.

    Detects exact recurrence to the start (exact mode only), sets the closed
    flag, and stops there since the remaining points would repeat.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    points: list[SectionPoint] = []
    rts: list[float] = []
    zones: list[Zone] = []
    exact = point.mode == "exact"
    rts_exact: list[GoldenNumber] | None = [] if exact else None
    closed = False
    current = point
    for i in range(n):
        zone = classify(current)
        rt = return_time(current)
        points.append(current)
        zones.append(zone)
        if exact:
            rts_exact.append(rt)  # type: ignore[union-attr]
            rts.append(float(rt))
        else:
            rts.append(rt)
        current = apply_map(current)
        if exact and current == point:
            closed = True
            break
    return OrbitTrace(
        points=points,
        return_times=rts,
        zones=zones,
        closed=closed,
        return_times_exact=rts_exact,
    )


# ----------------------------------------------------------------------
# integer-coefficient engine (state scaled by R, coefficients in Z[phi])
# ----------------------------------------------------------------------


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


def _val_int(m: int, n: int) -> float:
    """float(m + n*phi), switching to high precision under cancellation."""
    v = m + n * PHI_FLOAT
    if abs(v) < 1e-9 * (abs(m) + abs(n)):
        bits = max(abs(m), abs(n)).bit_length() + 64
        return float(GoldenNumber(m, n).to_real(max(bits, 64)))
    return v


def _step_ints(radius: int, ma: int, na: int, mb: int, nb: int, want_exact: bool):
    """One exact step of the scaled dynamics.

    State is (A, B) = radius * (a, b) with integer coefficients in Z[phi].
    Returns (zone_code, rt_float, rt_exact_or_None, new state...).
    """
    r = radius
    # zone: B - phibar*(R - A) > 0 means Zinf
    if _sign_int(mb - ma + na + r, nb - r + ma) > 0:
        zone = 2
        ma2, na2 = mb, nb
        mbr, nbr = -ma, -na
        md = ma * mb + na * nb
        nd = ma * nb + na * mb + na * nb
    elif _sign_int(mb + ma + r, nb + na - r) > 0:  # B - (phibar*R - A) > 0
        zone = 1
        ma2, na2 = ma + nb, na + mb + nb
        mbr, nbr = mb, nb
        mw, nw = na - ma + mb, ma + nb  # A*phibar + B
        md = ma * mw + na * nw
        nd = ma * nw + na * mw + na * nw
    else:
        zone = 0
        ms, ns = ma + mb, na + nb
        ma2, na2 = ns, ms + ns
        mbr, nbr = ma + nb, na + mb + nb
        md = ma * ms + na * ns
        nd = ma * ns + na * ms + na * ns
    r_sq = r * r
    rt = r_sq / _val_int(md, nd)
    rt_exact = None
    if want_exact:
        norm = md * md + md * nd - nd * nd
        rt_exact = GoldenNumber(
            Fraction(r_sq * (md + nd), norm), Fraction(-r_sq * nd, norm)
        )
    # shear: B2 = Braw + k*phi*A2 into (R - phi*A2, R]
    fa2 = _val_int(ma2, na2)
    fbr = _val_int(mbr, nbr)
    k = math.floor((r - fbr) / (PHI_FLOAT * fa2))
    for _ in range(64):
        mb2 = mbr + k * na2
        nb2 = nbr + k * (ma2 + na2)
        if _sign_int(r - mb2, -nb2) < 0:  # B2 > R
            k -= 1
        elif _sign_int(mb2 - r + na2, nb2 + ma2 + na2) <= 0:  # B2 <= R - phi*A2
            k += 1
        else:
            return zone, rt, rt_exact, ma2, na2, mb2, nb2
    raise InternalInvariantError("shear normalization did not settle")


def _grow(out: np.ndarray) -> np.ndarray:
    out2 = np.empty(int(out.size * 1.5) + 1024, dtype=np.float64)
    out2[: out.size] = out
    return out2


def gaps_via_bcz(radius: int, mode: str = "float") -> GapSample:
    """Scaled slope gaps at the given radius, read off the section-map orbit.

    Iterates from the renormalized start, collecting return times, which are
    the scaled gaps. The run stops once the accumulated return time reaches
    radius^2, i.e. once the sweep has crossed the whole slope interval [0, 1];
    compensated summation keeps the accumulated value far more accurate than
    the minimum gap of 1, so the stopping step is exact in both modes. In
    exact mode the sum is also verified to close exactly at radius^2.
    """
    if radius < 2:
        raise ValueError("radius must be >= 2")
    if mode not in ("float", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    want_exact = mode == "exact"
    r_sq = radius * radius
    target = r_sq - 0.5
    ma, na = 1, 0
    mb, nb = 0, radius_shift_count(radius)

    est = int(r_sq / 3.5) + 1024
    out = np.empty(est, dtype=np.float64)
    count = 0
    cum = 0.0
    comp = 0.0
    exact_gaps: list[GoldenNumber] | None = [] if want_exact else None
    cum_exact = GoldenNumber(0) if want_exact else None

    from . import _fast

    kernel = None if want_exact else _fast.get_kernel()

    while cum < target:
        if kernel is not None and max(abs(ma), abs(na), abs(mb), abs(nb)) <= _fast.COEFF_CAP:
            status, ma, na, mb, nb, cum, comp, count = kernel(
                radius, ma, na, mb, nb, cum, comp, count, out
            )
            if status == 0:
                break
            if status == 2:
                out = _grow(out)
                continue
            # status 1: near-boundary or large coefficients; do one exact step
        if count >= out.size:
            out = _grow(out)
        zone, rt, rt_exact, ma, na, mb, nb = _step_ints(
            radius, ma, na, mb, nb, want_exact
        )
        out[count] = rt
        count += 1
        y = rt - comp
        t = cum + y
        comp = (t - cum) - y
        cum = t
        if want_exact:
            exact_gaps.append(rt_exact)  # type: ignore[union-attr]
            cum_exact = cum_exact + rt_exact  # type: ignore[operator]
            if (cum_exact - GoldenNumber(r_sq)).sign() >= 0:
                break

    if want_exact:
        if cum_exact != GoldenNumber(r_sq):
            raise InternalInvariantError(
                "exact sweep did not close at radius^2; enumeration mismatch"
            )
        # round the exact values so float output is identical across routes
        gaps = np.array([float(g) for g in exact_gaps], dtype=np.float64)
    else:
        gaps = out[:count].copy()
    return GapSample(
        radius=radius,
        method="bcz",
        gaps=gaps,
        count=count + 1,
        gaps_exact=exact_gaps,
    )


def scaled_state_for_radius(radius: int) -> tuple[int, int, int, int]:
    """Integer coefficients of (R*a, R*b) at the renormalized start."""
    return 1, 0, 0, radius_shift_count(radius)


def orbit_period(radius: int, max_steps: int | None = None) -> int:
    """Exact number of steps until the renormalized start recurs."""
    start = scaled_state_for_radius(radius)
    state = start
    limit = max_steps if max_steps is not None else 10 * radius * radius + 1000
    for i in range(1, limit + 1):
        _, _, _, ma, na, mb, nb = _step_ints(radius, *state, False)
        state = (ma, na, mb, nb)
        if state == start:
            return i
    raise InternalInvariantError("orbit did not recur within the step limit")


def orbit_mean_return(a: float, b: float, n: int) -> float:
    """Time average of the return time along n float steps from (a, b).

    A lean scalar loop for long Birkhoff averages; comparisons use the plain
    float verdicts, appropriate for generic starting points away from zone
    boundaries.
    """
    if not in_omega(a, b):
        raise ValueError(f"({a}, {b}) is not in the section")
    total = 0.0
    comp = 0.0
    for _ in range(n):
        m_inf = b - PHI_BAR_FLOAT * (1.0 - a)
        if m_inf > 0.0:
            rt = 1.0 / (a * b)
            a2 = b
            b_raw = -a
        elif b - (PHI_BAR_FLOAT - a) > 0.0:
            rt = 1.0 / (a * (a * PHI_BAR_FLOAT + b))
            a2 = a + b * PHI_FLOAT
            b_raw = b
        else:
            rt = 1.0 / (a * (a + b))
            a2 = (a + b) * PHI_FLOAT
            b_raw = a + b * PHI_FLOAT
        step = PHI_FLOAT * a2
        b2 = b_raw + math.floor((1.0 - b_raw) / step) * step
        if b2 > 1.0:
            b2 -= step
        elif b2 <= 1.0 - step:
            b2 += step
        a, b = a2, b2
        y = rt - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total / n


# ----------------------------------------------------------------------
# vectorized float dynamics (for Monte Carlo statistics)
# ----------------------------------------------------------------------


def classify_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Zone codes (0 = Z1, 1 = Zphi, 2 = Zinf) for float samples."""
    zinf = b > PHI_BAR_FLOAT * (1.0 - a)
    zphi = ~zinf & (b > PHI_BAR_FLOAT - a)
    return np.where(zinf, 2, np.where(zphi, 1, 0)).astype(np.int8)


def return_time_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    zones = classify_array(a, b)
    denom = np.where(
        zones == 2,
        a * b,
        np.where(zones == 1, a * (a * PHI_BAR_FLOAT + b), a * (a + b)),
    )
    return 1.0 / denom


def apply_map_array(
    a: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Vectorized map step; returns (a', b', zone codes, near-boundary count).

    Near-boundary samples (within GUARD) are resolved by the float verdict;
    the count is reported so statistical callers can confirm it stays
    negligible relative to the sample budget.
    """
    zones = classify_array(a, b)
    margin_inf = np.abs(b - PHI_BAR_FLOAT * (1.0 - a))
    margin_phi = np.abs(b - (PHI_BAR_FLOAT - a))
    near = int(np.count_nonzero(margin_inf <= GUARD) + np.count_nonzero(margin_phi <= GUARD))

    a2 = np.where(zones == 2, b, np.where(zones == 1, a + b * PHI_FLOAT, (a + b) * PHI_FLOAT))
    b_raw = np.where(zones == 2, -a, np.where(zones == 1, b, a + b * PHI_FLOAT))
    step = PHI_FLOAT * a2
    k = np.floor((1.0 - b_raw) / step)
    b2 = b_raw + k * step
    # correct the floor at most once on each side
    too_high = b2 > 1.0
    b2 = np.where(too_high, b2 - step, b2)
    too_low = b2 <= 1.0 - step
    b2 = np.where(too_low, b2 + step, b2)
    near += int(np.count_nonzero(np.abs(1.0 - b2) <= GUARD))
    return a2, b2, zones, near
