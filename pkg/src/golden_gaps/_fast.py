"""Compiled int64 kernel for the scaled section-map orbit.

The kernel advances the integer coefficient state with float comparisons and
hands control back to the caller whenever a margin falls inside the guard
band, a coefficient leaves the certified range, or the output buffer fills.
Status codes: 0 = cumulative target reached, 1 = escalate to exact step,
2 = output buffer full. Falls back to None when numba is unavailable.
"""

from __future__ import annotations

import math

_kernel = None
_tried = False

COEFF_CAP = 1 << 31  # keeps every int64 product far from overflow
GUARD_REL = 1e-12


def get_kernel():
    """Build (once) and return the compiled kernel, or None without numba."""
    global _kernel, _tried
    if _tried:
        return _kernel
    _tried = True
    try:
        from numba import njit
    except Exception:
        return None

    phi = (1.0 + math.sqrt(5.0)) / 2.0
    phibar = phi - 1.0
    cap = COEFF_CAP
    guard = GUARD_REL

    @njit(cache=True)
    def kernel(radius, ma, na, mb, nb, cum, comp, count, out):
        rf = float(radius)
        target = rf * rf - 0.5
        nmax = out.shape[0]
        while cum < target:
            if count >= nmax:
                return 2, ma, na, mb, nb, cum, comp, count
            if (
                abs(ma) > cap or abs(na) > cap or abs(mb) > cap or abs(nb) > cap
            ):
                return 1, ma, na, mb, nb, cum, comp, count
            fa = ma + na * phi
            fb = mb + nb * phi
            # zone test 1: B - phibar*(R - A) > 0 -> Zinf
            xm = mb - ma + na + radius
            xn = nb - radius + ma
            fx = xm + xn * phi
            if abs(fx) <= guard * (abs(xm) + 1.7 * abs(xn) + 1.0):
                return 1, ma, na, mb, nb, cum, comp, count
            if fx > 0.0:
                ma2 = mb
                na2 = nb
                mbr = -ma
                nbr = -na
                denom = fa * fb
            else:
                # zone test 2: B + A - phibar*R > 0 -> Zphi
                ym = mb + ma + radius
                yn = nb + na - radius
                fy = ym + yn * phi
                if abs(fy) <= guard * (abs(ym) + 1.7 * abs(yn) + 1.0):
                    return 1, ma, na, mb, nb, cum, comp, count
                if fy > 0.0:
                    ma2 = ma + nb
                    na2 = na + mb + nb
                    mbr = mb
                    nbr = nb
                    denom = fa * (fa * phibar + fb)
                else:
                    ma2 = na + nb
                    na2 = ma + mb + na + nb
                    mbr = ma + nb
                    nbr = na + mb + nb
                    denom = fa * (fa + fb)
            # cancellation watch on the values feeding the return time
            if abs(fa) < 1e-9 * (abs(ma) + abs(na) + 1.0) or abs(fb) < 1e-9 * (
                abs(mb) + abs(nb) + 1.0
            ):
                return 1, ma, na, mb, nb, cum, comp, count
            rt = rf * rf / denom
            fa2 = ma2 + na2 * phi
            fbr = mbr + nbr * phi
            k = int(math.floor((rf - fbr) / (phi * fa2)))
            ok = False
            mb2 = 0
            nb2 = 0
            for _ in range(64):
                mb2 = mbr + k * na2
                nb2 = nbr + k * (ma2 + na2)
                him = radius - mb2
                hin = -nb2
                fhi = him + hin * phi
                if abs(fhi) <= guard * (abs(him) + 1.7 * abs(hin) + 1.0):
                    return 1, ma, na, mb, nb, cum, comp, count
                if fhi < 0.0:
                    k -= 1
                    continue
                lom = mb2 - radius + na2
                lon = nb2 + ma2 + na2
                flo = lom + lon * phi
                if abs(flo) <= guard * (abs(lom) + 1.7 * abs(lon) + 1.0):
                    return 1, ma, na, mb, nb, cum, comp, count
                if flo <= 0.0:
                    k += 1
                    continue
                ok = True
                break
            if not ok:
                return 1, ma, na, mb, nb, cum, comp, count
            out[count] = rt
            count += 1
            y = rt - comp
            t = cum + y
            comp = (t - cum) - y
            cum = t
            ma = ma2
            na = na2
            mb = mb2
            nb = nb2
        return 0, ma, na, mb, nb, cum, comp, count

    _kernel = kernel
    return _kernel
