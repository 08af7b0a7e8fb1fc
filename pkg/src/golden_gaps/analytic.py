"""Closed forms for the limiting gap law and the section volumes.

The cumulative law F is assembled from three per-zone area functions: for a
level alpha, each zone contributes the area of its points whose return time
is below alpha. The probability normalization carries the factor 2/phi, the
density of the invariant measure, so that F(inf) = 1 exactly (the three zone
areas sum to phi/2, the area of the section).

Two printed-formula corrections are baked in, both forced by the area oracle
and by continuity at the piece boundaries: the final zone-infinity piece
carries -(phibar/2) * r(phi/alpha) (not +), and the terminal constant piece of
zone 1 starts at phi^2 (not phi^3). Every piece is cross-validated against
adaptive quadrature of the zone geometry in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import quad

from .field import PHI_FLOAT, GoldenNumber

PB = PHI_FLOAT - 1.0  # 1/phi
LN_PHI = math.log(PHI_FLOAT)
PI = math.pi

# exact breakpoint candidates, in increasing order
_BREAKPOINTS_EXACT = [
    GoldenNumber(1),
    GoldenNumber(0, 1),  # phi
    GoldenNumber(-4, 4),  # 4/phi
    GoldenNumber(1, 1),  # phi^2
    GoldenNumber(4),
    GoldenNumber(1, 2),  # phi^3
    GoldenNumber(0, 4),  # 4*phi
    GoldenNumber(2, 3),  # phi^4
]

ZONES = ("1", "phi", "inf")


def breakpoints() -> list[GoldenNumber]:
    """The eight candidate non-smoothness points of the gap law, increasing."""
    return list(_BREAKPOINTS_EXACT)


# ----------------------------------------------------------------------
# special functions
# ----------------------------------------------------------------------


def dilog(x: float) -> float:
    """Li2(x) on [0, 1] to absolute accuracy 1e-12.

    Direct power series up to 1/2; above that, the reflection identity
    Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x) hands the argument back to the
    fast-converging range.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("dilog argument must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return PI * PI / 6.0
    if x > 0.5:
        return PI * PI / 6.0 - math.log(x) * math.log1p(-x) - dilog(1.0 - x)
    total = 0.0
    term = 1.0
    for n in range(1, 200):
        term *= x
        inc = term / (n * n)
        total += inc
        if inc < 1e-18:
            break
    return total


def ath(x):
    """Inverse hyperbolic tangent, (1/2) ln((1+x)/(1-x))."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(x) >= 1.0):
        raise ValueError("ath argument must satisfy |x| < 1")
    out = np.arctanh(x)
    return float(out) if out.ndim == 0 else out


def rfun(x):
    """sqrt(1 - 4x), defined for x <= 1/4."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x > 0.25 + 1e-15):
        raise ValueError("rfun argument must satisfy x <= 1/4")
    out = np.sqrt(np.clip(1.0 - 4.0 * x, 0.0, None))
    return float(out) if out.ndim == 0 else out


def _omr(x):
    """1 - rfun(x), in the cancellation-free form 4x / (1 + r)."""
    return 4.0 * x / (1.0 + rfun(x))


# ----------------------------------------------------------------------
# per-zone pieces
# ----------------------------------------------------------------------

_B1, _BPHI, _B4PB, _BPHI2, _B4, _BPHI3, _B4PHI, _BPHI4 = (
    float(b) for b in _BREAKPOINTS_EXACT
)


def zone_pieces(zone: str):
    """(lo, hi, F, f) rows covering [0, inf) plus the terminal area constant."""
    zero = lambda a: np.zeros_like(a)
    if zone == "inf":
        pieces = [
            (0.0, _B1, zero, zero),
            (
                _B1,
                _B4PHI,
                lambda a: 1.0 - (1.0 + np.log(a)) / a,
                lambda a: np.log(a) / (a * a),
            ),
            (
                _B4PHI,
                _BPHI4,
                lambda a: 1.0
                - (1.0 + np.log(a) - 4.0 * ath(rfun(PHI_FLOAT / a))) / a
                - PB * rfun(PHI_FLOAT / a),
                lambda a: (np.log(a) - 4.0 * ath(rfun(PHI_FLOAT / a))) / (a * a),
            ),
            (
                _BPHI4,
                math.inf,
                lambda a: 1.5 * PB
                - (1.0 + 2.0 * np.log(PB * a / 2.0) + 2.0 * np.log(_omr(PHI_FLOAT / a)))
                / a
                - 0.5 * PB * rfun(PHI_FLOAT / a),
                lambda a: (
                    2.0 * np.log(PB * a / 2.0) + 2.0 * np.log(_omr(PHI_FLOAT / a))
                )
                / (a * a),
            ),
        ]
        terminal = PB
    elif zone == "phi":
        pieces = [
            (0.0, _BPHI, zero, zero),
            (
                _BPHI,
                _B4,
                lambda a: PB - (1.0 + np.log(PB * a)) / a,
                lambda a: np.log(PB * a) / (a * a),
            ),
            (
                _B4,
                _BPHI3,
                lambda a: PB
                - (1.0 + np.log(PB * a) - 4.0 * ath(rfun(1.0 / a))) / a
                - rfun(1.0 / a),
                lambda a: (np.log(PB * a) - 4.0 * ath(rfun(1.0 / a))) / (a * a),
            ),
            (_BPHI3, math.inf, lambda a: np.full_like(a, PB**4), zero),
        ]
        terminal = PB**4
    elif zone == "1":
        pieces = [
            (0.0, _BPHI, zero, zero),
            (
                _BPHI,
                _B4PB,
                lambda a: PB - (1.0 + np.log(PB * a)) / a,
                lambda a: np.log(PB * a) / (a * a),
            ),
            (
                _B4PB,
                _BPHI2,
                lambda a: PB
                - (1.0 + np.log(PB * a) - 2.0 * ath(rfun(PB / a))) / a
                - 0.5 * PHI_FLOAT * rfun(PB / a),
                lambda a: (np.log(PB * a) - 2.0 * ath(rfun(PB / a))) / (a * a),
            ),
            (_BPHI2, math.inf, lambda a: np.full_like(a, PB**5 / 2.0), zero),
        ]
        terminal = PB**5 / 2.0
    else:
        raise ValueError(f"unknown zone {zone!r}; expected one of {ZONES}")
    return pieces, terminal


def _eval_zone(zone: str, alpha, density: bool):
    pieces, terminal = zone_pieces(zone)
    arr = np.asarray(alpha, dtype=np.float64)
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    if np.any(a < 0):
        raise ValueError("alpha must be nonnegative")
    out = np.empty_like(a)
    inf_mask = np.isinf(a)
    out[inf_mask] = 0.0 if density else terminal
    for lo, hi, cdf_piece, pdf_piece in pieces:
        mask = (a >= lo) & (a < hi) & ~inf_mask
        if mask.any():
            out[mask] = (pdf_piece if density else cdf_piece)(a[mask])
    return float(out[0]) if scalar else out


def cdf_partial(zone: str, alpha):
    """Unnormalized zone contribution: area of the zone below level alpha."""
    return _eval_zone(zone, alpha, density=False)


def pdf_partial(zone: str, alpha):
    """Derivative of cdf_partial in alpha."""
    return _eval_zone(zone, alpha, density=True)


def gap_cdf(alpha):
    """The limiting distribution function of scaled slope gaps."""
    return (2.0 / PHI_FLOAT) * (
        cdf_partial("1", alpha) + cdf_partial("phi", alpha) + cdf_partial("inf", alpha)
    )


def gap_pdf(alpha):
    """The limiting density of scaled slope gaps; identically 0 on [0, 1]."""
    return (2.0 / PHI_FLOAT) * (
        pdf_partial("1", alpha) + pdf_partial("phi", alpha) + pdf_partial("inf", alpha)
    )


def tail_constant(t):
    """t^2 * (1 - gap_cdf(t)); approaches 2 as t grows."""
    t = np.asarray(t, dtype=np.float64)
    out = t * t * (1.0 - gap_cdf(t))
    return float(out) if out.ndim == 0 else out


MEAN_GAP = 3.0 * PI * PI / (5.0 * PHI_FLOAT)  # (2/phi) * total volume


# ----------------------------------------------------------------------
# numeric area oracle
# ----------------------------------------------------------------------


def _zone_geometry(zone: str):
    """(a_lo, a_hi, lower(a), upper(a), level_curve(a, alpha)) for the zone."""
    if zone == "inf":
        return (
            0.0,
            1.0,
            lambda a: np.maximum(1.0 - a * PHI_FLOAT, PB * (1.0 - a)),
            lambda a: np.ones_like(np.asarray(a, dtype=np.float64)),
            lambda a, alpha: 1.0 / (alpha * a),
        )
    if zone == "phi":
        return (
            PB * PB,
            1.0,
            lambda a: np.maximum(1.0 - a * PHI_FLOAT, PB - a),
            lambda a: PB * (1.0 - a),
            lambda a, alpha: 1.0 / (alpha * a) - a * PB,
        )
    if zone == "1":
        return (
            PB,
            1.0,
            lambda a: 1.0 - a * PHI_FLOAT,
            lambda a: PB - a,
            lambda a, alpha: 1.0 / (alpha * a) - a,
        )
    raise ValueError(f"unknown zone {zone!r}; expected one of {ZONES}")


def _oracle_kinks(zone: str, alpha: float) -> list[float]:
    """Abscissae where the oracle integrand can lose smoothness."""
    pts = [PB * PB, PB]
    if not math.isinf(alpha):
        pts.append(1.0 / alpha)  # level curve exits the unit height
        pts.append(PHI_FLOAT / alpha)
        if zone == "inf" and alpha >= 4.0 * PHI_FLOAT:
            r = rfun(PHI_FLOAT / alpha)
            pts += [
                (1.0 - r) / (2.0 * PHI_FLOAT),
                (1.0 + r) / (2.0 * PHI_FLOAT),
                (1.0 - r) / 2.0,
                (1.0 + r) / 2.0,
            ]
        if zone == "phi" and alpha >= 4.0:
            r = rfun(1.0 / alpha)
            pts += [
                (1.0 - r) / 2.0,
                (1.0 + r) / 2.0,
                PHI_FLOAT * (1.0 - r) / 2.0,
                PHI_FLOAT * (1.0 + r) / 2.0,
            ]
        if zone == "1" and alpha >= 4.0 * PB:
            r = rfun(PB / alpha)
            pts += [PHI_FLOAT * (1.0 - r) / 2.0, PHI_FLOAT * (1.0 + r) / 2.0]
    return pts


def area_oracle(zone: str, alpha: float, tolerance: float = 1e-10) -> float:
    """Zone area below level alpha by closed-form inner integral + quadrature.

    The b-extent at fixed a is an interval length in closed form, so only the
    outer a-integral is numeric. This is the ground truth the printed pieces
    are validated against.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if tolerance < 1e-14:
        raise ValueError("tolerance is below what the quadrature can certify")
    a_lo, a_hi, lower, upper, curve = _zone_geometry(zone)
    if alpha == 0.0:
        return 0.0

    def length(a):
        a = np.asarray(a, dtype=np.float64)
        lo = lower(a)
        if math.isinf(alpha):
            eff = lo
        else:
            eff = np.maximum(lo, curve(a, alpha))
        return np.clip(upper(a) - eff, 0.0, None)

    pts = sorted({p for p in _oracle_kinks(zone, alpha) if a_lo < p < a_hi})
    val, _ = quad(
        length,
        a_lo,
        a_hi,
        points=pts if pts else None,
        limit=400,
        epsabs=tolerance * 0.05,
        epsrel=1e-13,
    )
    return val


# ----------------------------------------------------------------------
# volumes
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class VolumeReport:
    """Closed-form zone volumes against their quadrature counterparts."""

    v1: float
    vphi: float
    vinf: float
    vtotal: float
    v1_numeric: float
    vphi_numeric: float
    vinf_numeric: float
    vtotal_numeric: float
    vtotal_identity: float  # 3 pi^2 / 10
    max_discrepancy: float

    def as_dict(self) -> dict:
        return asdict(self)


def _volume_quadrature(zone: str) -> float:
    """Integral of the return time over a zone (inner b-integral in closed form)."""
    opts = dict(limit=400, epsabs=1e-12, epsrel=1e-13)
    if zone == "1":
        val, _ = quad(
            lambda a: (-LN_PHI - np.log(1.0 - a * PB)) / a, PB, 1.0, **opts
        )
        return val
    if zone == "phi":
        p1, _ = quad(lambda a: (-LN_PHI - np.log(1.0 - a)) / a, PB * PB, PB, **opts)
        p2, _ = quad(lambda a: -np.log(1.0 - a * PB) / a, PB, 1.0, **opts)
        return p1 + p2
    if zone == "inf":
        p1, _ = quad(
            lambda a: PHI_FLOAT if a == 0.0 else -np.log1p(-a * PHI_FLOAT) / a,
            0.0,
            PB * PB,
            **opts,
        )
        p2, _ = quad(lambda a: (LN_PHI - np.log(1.0 - a)) / a, PB * PB, 1.0, **opts)
        return p1 + p2
    raise ValueError(f"unknown zone {zone!r}")


def volumes() -> VolumeReport:
    """Closed-form partial volumes, their quadrature counterparts, and the total."""
    li_pb = dilog(PB)
    li_pb2 = dilog(PB * PB)
    lp2 = LN_PHI * LN_PHI
    v1 = -lp2 + li_pb - li_pb2
    vphi = -lp2 + 2.0 * (li_pb - li_pb2)
    vinf = 2.0 * lp2 + li_pb - li_pb2 + dilog(1.0)
    v1n = _volume_quadrature("1")
    vphin = _volume_quadrature("phi")
    vinfn = _volume_quadrature("inf")
    vtotal = v1 + vphi + vinf
    vtotaln = v1n + vphin + vinfn
    return VolumeReport(
        v1=v1,
        vphi=vphi,
        vinf=vinf,
        vtotal=vtotal,
        v1_numeric=v1n,
        vphi_numeric=vphin,
        vinf_numeric=vinfn,
        vtotal_numeric=vtotaln,
        vtotal_identity=3.0 * PI * PI / 10.0,
        max_discrepancy=max(
            abs(v1 - v1n), abs(vphi - vphin), abs(vinf - vinfn), abs(vtotal - vtotaln)
        ),
    )


# ----------------------------------------------------------------------
# whole-line integrals and smoothness diagnostics
# ----------------------------------------------------------------------


def _tail_g(u):
    """g(u) = alpha^2 * pdf-tail piece at alpha = 1/u, simplified and stable."""
    u = np.asarray(u, dtype=np.float64)
    return 2.0 * np.log1p(_omr(PHI_FLOAT * u) / (1.0 + rfun(PHI_FLOAT * u)))


def pdf_normalization() -> float:
    """Integral of gap_pdf over [0, inf), via piecewise quadrature + exact tail."""
    total = 0.0
    edges = [float(b) for b in _BREAKPOINTS_EXACT]
    for lo, hi in zip(edges, edges[1:]):
        val, _ = quad(gap_pdf, lo, hi, limit=200, epsabs=1e-10, epsrel=1e-12)
        total += val
    tail, _ = quad(_tail_g, 0.0, PB**4, limit=200, epsabs=1e-10, epsrel=1e-12)
    return total + (2.0 / PHI_FLOAT) * tail


def mean_gap_quadrature() -> float:
    """Integral of alpha * gap_pdf over [0, inf)."""
    total = 0.0
    edges = [float(b) for b in _BREAKPOINTS_EXACT]
    for lo, hi in zip(edges, edges[1:]):
        val, _ = quad(
            lambda a: a * gap_pdf(a), lo, hi, limit=200, epsabs=1e-10, epsrel=1e-12
        )
        total += val

    def h(u):
        if u < 1e-12:
            return 2.0 * PHI_FLOAT
        return _tail_g(u) / u

    tail, _ = quad(h, 0.0, PB**4, limit=200, epsabs=1e-10, epsrel=1e-12)
    return total + (2.0 / PHI_FLOAT) * tail


def pdf_kink_report(h: float = 1e-6) -> list[dict]:
    """One-sided density derivatives at each candidate breakpoint.

    Richardson-extrapolated one-sided differences, evaluated strictly inside
    the adjacent pieces. Square-root pieces have an infinite one-sided
    derivative at their opening breakpoint; the report shows those as the
    large finite-difference values they produce.
    """
    report = []
    for b_exact in _BREAKPOINTS_EXACT:
        b = float(b_exact)

        def left(hh):
            return (gap_pdf(b - 1e-12) - gap_pdf(b - hh)) / hh

        def right(hh):
            return (gap_pdf(b + hh) - gap_pdf(b + 1e-12)) / hh

        dl = 2.0 * left(h / 2.0) - left(h)
        dr = 2.0 * right(h / 2.0) - right(h)
        report.append(
            {
                "alpha": b,
                "alpha_exact": b_exact.exact_str(),
                "left_derivative": dl,
                "right_derivative": dr,
                "jump": dr - dl,
            }
        )
    return report
