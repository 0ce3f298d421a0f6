"""Rankine-Hugoniot algebra on the shock.

Given one-sided traces (vl, vr) of w, the entropy and the slow Riemann
variable behind the front are pinned by two polynomial constraints
E1(z, e) = E2(z, e) = 0 in the unknowns z = z_- and e = e^{k_-} - 1.
A damped Newton iteration started from the cubic-order asymptotic seed
finds the weak-shock root; the front speed then follows from the
momentum relation with the entropy factor dropped (the paper's choice
of evolution speed, accurate to the same order as the traces).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDenominator, InsufficientSamples,
                     NewtonDiverged, SeedOutOfRange)
from .riemann import AzimuthalPoint, lax_check

_LD = np.longdouble


@dataclass(frozen=True)
class ShockTraces:
    """One-sided limits of w at the front; vl behind, vr ahead."""

    vl: float
    vr: float

    @property
    def jump(self):
        return self.vl - self.vr

    @property
    def mean(self):
        return 0.5 * (self.vl + self.vr)


@dataclass(frozen=True)
class JumpSolution:
    z_minus: float
    k_minus: float
    e_minus: float
    sdot: float
    residual_E1: float
    residual_E2: float
    admissible: object


def _parts(vl, vr, z, e, ld=False):
    conv = _LD if ld else float
    vl, vr, z, e = conv(vl), conv(vr), conv(z), conv(e)
    u = vl - z
    xi = u * u
    beta = vl + z
    q = conv(1) + e
    return u, xi, beta, q, vr * vr


def residuals_E1_E2(vl, vr, z_minus, e_minus):
    """The two constraint polynomials, evaluated in extended precision.

    E1 couples the squared momentum and energy relations; E2 isolates
    the entropy factor.  Both vanish identically at zero jump.
    """
    u, xi, beta, q, vr2 = _parts(vl, vr, z_minus, e_minus, ld=True)
    vr = _LD(vr)
    A = xi * beta * beta + xi * xi / _LD(8) - _LD(9) / _LD(8) * q * vr2 * vr2
    B = xi - q * vr2
    C = xi * beta - q * vr2 * vr
    e1 = A * B - C * C
    e2 = _LD(e_minus) * xi * xi * (_LD(3) * vr2 * q - xi) - B * B * B
    return float(e1), float(e2)


def _jacobian(vl, vr, z, e):
    u, xi, beta, q, vr2 = _parts(vl, vr, z, e)
    vr3 = vr2 * vr
    vr4 = vr2 * vr2
    xi_z = -2.0 * u
    A = xi * beta * beta + xi * xi / 8.0 - 1.125 * q * vr4
    B = xi - q * vr2
    C = xi * beta - q * vr3
    A_z = xi_z * beta * beta + 2.0 * xi * beta + 0.25 * xi * xi_z
    C_z = xi_z * beta + xi
    e1_z = A_z * B + A * xi_z - 2.0 * C * C_z
    e1_e = -1.125 * vr4 * B - A * vr2 + 2.0 * C * vr3
    e2_z = e * (2.0 * xi * xi_z * (3.0 * vr2 * q - xi) - xi * xi * xi_z) \
        - 3.0 * B * B * xi_z
    e2_e = xi * xi * (3.0 * vr2 * q - xi) + e * xi * xi * 3.0 * vr2 \
        + 3.0 * B * B * vr2
    return np.array([[e1_z, e1_e], [e2_z, e2_e]])


def asymptotic_seed(jump, mean):
    """Cubic-order seed (z_app, e_app); exact root sits within O(jump^5)."""
    x = jump / mean
    if abs(x) >= 2.0 / 3.0:
        raise SeedOutOfRange(f"|jump/mean|={abs(x)} >= 2/3")
    den = 1.0 - 2.25 * x * x
    q1 = 1.0 / den
    q2 = (1.0 - 0.5625 * x * x) / den
    z_app = -(9.0 * jump ** 3 / (16.0 * mean * mean)) * q1
    e_app = (4.0 * jump ** 3 / mean ** 3) * q2
    return z_app, e_app


def shock_speed(vl, vr, z_minus):
    """Front speed (2/3)((vl-z)^2 (vl+z) - vr^3)/((vl-z)^2 - vr^2)."""
    u = vl - z_minus
    xi = u * u
    den = xi - vr * vr
    if abs(den) < 1e-14 * max(1.0, xi):
        raise DegenerateDenominator("vanishing jump in the speed formula")
    return (2.0 / 3.0) * (xi * (vl + z_minus) - vr ** 3) / den


def sdot_mass(vl, vr, z_minus, e_minus):
    """Front speed from the mass relation at the solved root."""
    q = 1.0 + e_minus
    u = vl - z_minus
    xi = u * u
    den = xi - q * vr * vr
    if abs(den) < 1e-14 * max(1.0, xi):
        raise DegenerateDenominator("vanishing jump in the mass speed")
    return (2.0 / 3.0) * (xi * (vl + z_minus) - q * vr ** 3) / den


def sdot_momentum(vl, vr, z_minus, e_minus):
    """Front speed from the momentum/energy relation at the solved root."""
    q = 1.0 + e_minus
    u = vl - z_minus
    xi = u * u
    beta = vl + z_minus
    den = xi * beta - q * vr ** 3
    if abs(den) < 1e-14 * max(1.0, abs(xi * beta)):
        raise DegenerateDenominator("vanishing jump in the momentum speed")
    num = xi * beta * beta + xi * xi / 8.0 - 1.125 * q * vr ** 4
    return (2.0 / 3.0) * num / den


def solve_jump(traces, tol=1e-12):
    """Damped Newton root of (E1, E2) from the asymptotic seed.

    Degenerate traces (vl == vr) return the all-zero solution with the
    limiting speed vl.  Raises NewtonDiverged past 50 iterations or when
    damping cannot reduce the residual, which signals traces outside the
    weak-shock regime.
    """
    vl, vr = traces.vl, traces.vr
    if vl == vr:
        pt = AzimuthalPoint(w=vl)
        rep = lax_check(pt, pt, vl)
        return JumpSolution(z_minus=0.0, k_minus=0.0, e_minus=0.0, sdot=vl,
                            residual_E1=0.0, residual_E2=0.0, admissible=rep)
    if not (vl > vr > 0.0):
        raise NewtonDiverged(f"traces not physically ordered: vl={vl}, vr={vr}")

    z, e = asymptotic_seed(traces.jump, traces.mean)
    r1, r2 = residuals_E1_E2(vl, vr, z, e)
    norm = max(abs(r1), abs(r2))
    for _ in range(50):
        if norm <= tol:
            break
        jac = _jacobian(vl, vr, z, e)
        try:
            dz, de = np.linalg.solve(jac, [-r1, -r2])
        except np.linalg.LinAlgError as exc:
            raise NewtonDiverged(f"singular Jacobian at z={z}, e={e}") from exc
        lam = 1.0
        for _ in range(40):
            z_new, e_new = z + lam * dz, e + lam * de
            n1, n2 = residuals_E1_E2(vl, vr, z_new, e_new)
            if max(abs(n1), abs(n2)) < norm:
                z, e, r1, r2 = z_new, e_new, n1, n2
                norm = max(abs(n1), abs(n2))
                break
            lam *= 0.5
        else:
            if norm <= 10.0 * tol:
                break
            raise NewtonDiverged(f"damping floor at residual {norm}")
    else:
        raise NewtonDiverged(f"no convergence, residual {norm}")

    k = math.log1p(e)
    sd = shock_speed(vl, vr, z)
    left = AzimuthalPoint(w=vl, z=z, k=k)
    right = AzimuthalPoint(w=vr)
    rep = lax_check(left, right, sd)
    return JumpSolution(z_minus=z, k_minus=k, e_minus=e, sdot=sd,
                        residual_E1=r1, residual_E2=r2, admissible=rep)


def jump_scaling_report(times, series, expected=None):
    """Log-log fits of jump amplitudes against time.

    ``series`` maps a name to an array of positive samples aligned with
    ``times``; returns {name: (exponent, prefactor, r_squared)}.  Needs
    at least 8 samples spanning a decade.
    """
    times = np.asarray(times, dtype=float)
    if times.size < 8 or times.max() / times.min() < 10.0:
        raise InsufficientSamples("need >= 8 samples across >= 1 decade")
    out = {}
    for name, vals in series.items():
        vals = np.abs(np.asarray(vals, dtype=float))
        if np.any(vals <= 0.0):
            raise InsufficientSamples(f"nonpositive samples in {name!r}")
        lt, lv = np.log(times), np.log(vals)
        slope, intercept = np.polyfit(lt, lv, 1)
        fit = slope * lt + intercept
        ss_res = float(np.sum((lv - fit) ** 2))
        ss_tot = float(np.sum((lv - lv.mean()) ** 2))
        r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
        out[name] = (float(slope), float(math.exp(intercept)), r2)
    if expected is not None:
        out["expected"] = expected
    return out
