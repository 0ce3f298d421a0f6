"""Independent oracle for the trailing-trace root (z, e) behind a shock.

Deliberately shares no code with the package under test: the two
constraint polynomials are transcribed separately here, grouped
differently, and the root is located by nested 1D bisections instead of
a 2D Newton iteration.  Extended precision (numpy longdouble) keeps the
residual floor well below the comparison tolerance.

Constraints, with q = 1 + e, xi = (vl - z)^2, beta = vl + z:

    P1(z, e) = (xi beta^2 + xi^2/8 - (9/8) q vr^4)(xi - q vr^2)
               - (xi beta - q vr^3)^2
    P2(z, e) = e xi^2 (3 vr^2 q - xi) - (xi - q vr^2)^3

The physically relevant root has z <= 0 <= e, both O(jump^3).
"""

import numpy as np

LD = np.longdouble


def residual_P1(vl, vr, z, e):
    vl, vr, z, e = LD(vl), LD(vr), LD(z), LD(e)
    u = vl - z
    xi = u * u
    beta = vl + z
    q = LD(1) + e
    vr2 = vr * vr
    lhs = (xi * beta * beta + xi * xi / LD(8) - LD(9) / LD(8) * q * vr2 * vr2)
    lhs = lhs * (xi - q * vr2)
    rhs = xi * beta - q * vr2 * vr
    return lhs - rhs * rhs


def residual_P2(vl, vr, z, e):
    vl, vr, z, e = LD(vl), LD(vr), LD(z), LD(e)
    u = vl - z
    xi = u * u
    q = LD(1) + e
    vr2 = vr * vr
    gap = xi - q * vr2
    return e * xi * xi * (LD(3) * vr2 * q - xi) - gap * gap * gap


def _bisect(f, lo, hi, iters=180):
    lo, hi = LD(lo), LD(hi)
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    assert flo * fhi < 0, "oracle bracket lost the sign change"
    for _ in range(iters):
        mid = (lo + hi) / LD(2)
        fm = f(mid)
        if fm == 0:
            return mid
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return (lo + hi) / LD(2)


def _solve_e_given_z(vl, vr, z, e_scale):
    """Root of P2(z, .) = 0; P2 is increasing in e near the small root."""
    f = lambda e: residual_P2(vl, vr, z, e)
    if f(LD(0)) == 0:
        return LD(0)
    hi = LD(max(e_scale, 1e-30)) * LD(4)
    for _ in range(200):
        if f(LD(0)) * f(hi) <= 0:
            break
        hi *= LD(2)
    else:
        raise AssertionError("oracle could not bracket e")
    return _bisect(f, LD(0), hi)


def solve_oracle(vl, vr):
    """Nested-bisection root (z, e) for left/right traces vl > vr > 0."""
    vl, vr = float(vl), float(vr)
    if vl == vr:
        return 0.0, 0.0
    jump = vl - vr
    mean = 0.5 * (vl + vr)
    x = jump / mean
    z_scale = 9.0 * jump ** 3 / (16.0 * mean ** 2) / (1.0 - 2.25 * x * x)
    e_scale = 4.0 * jump ** 3 / mean ** 3

    def g(z):
        e = _solve_e_given_z(vl, vr, z, e_scale)
        return residual_P1(vl, vr, z, e)

    lo, hi = LD(-8.0 * z_scale - 1e-30), LD(1e-30)
    glo, ghi = g(lo), g(hi)
    grow = 0
    while glo * ghi > 0:
        lo *= LD(2)
        hi = LD(min(float(hi) * 2.0 + 1e-12, vl - vr))
        glo, ghi = g(lo), g(hi)
        grow += 1
        assert grow < 40, "oracle could not bracket z"
    z = _bisect(g, lo, hi)
    e = _solve_e_given_z(vl, vr, z, e_scale)
    return float(z), float(e)


def oracle_row(mean, jump):
    vl = mean + 0.5 * jump
    vr = mean - 0.5 * jump
    z, e = solve_oracle(vl, vr)
    return {
        "mean": mean,
        "jump": jump,
        "vl": vl,
        "vr": vr,
        "z": z,
        "e": e,
        "P1": float(residual_P1(vl, vr, z, e)),
        "P2": float(residual_P2(vl, vr, z, e)),
    }
