"""Outer fixed point for the front curve.

The front is not known in advance: the fields behind it determine its
speed through the jump conditions, and the front in turn carries the
fields.  The outer iteration alternates a full development of the
fields behind a trial curve with the integral update

    s(t) <- integral_0^t F(w_-, w_+, z_-)(tau) dtau,

starting from the straight curve s(t) = kappa t.  Each accepted
iterate must stay inside the regular-curve corridor
|sdot - kappa| <= mbar^4 t, |s - kappa t| <= mbar^4 t^2 / 2,
|sddot| <= 6 mbar^4; leaving it signals a window too long or an
envelope constant too small for the datum.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import OuterIterationStall, RegularityViolated
from .fields import GridSpec, _make_slice_times, develop_fields

__all__ = ["ShockCurve", "RegularCurveReport", "evolve_shock",
           "regular_curve_check", "shock_speed_limit_at_zero"]


@dataclass
class ShockCurve:
    """One iterate of the front: positions and speeds on a time grid.

    Interpolation is monotone cubic, so the curve can be queried at
    arbitrary times through pos() / speed() and handed to the field
    development as-is.
    """

    t_grid: np.ndarray
    s_values: np.ndarray
    sdot_values: np.ndarray
    iterate_index: int = 0
    increments: Optional[list] = None

    def __post_init__(self):
        self.t_grid = np.asarray(self.t_grid, dtype=float)
        self.s_values = np.asarray(self.s_values, dtype=float)
        self.sdot_values = np.asarray(self.sdot_values, dtype=float)
        self._s_fn = PchipInterpolator(self.t_grid, self.s_values,
                                       extrapolate=True)
        self._sdot_fn = PchipInterpolator(self.t_grid, self.sdot_values,
                                          extrapolate=True)

    def pos(self, t):
        return self._s_fn(t)

    def speed(self, t):
        return self._sdot_fn(t)


@dataclass(frozen=True)
class RegularCurveReport:
    """Corridor ratios (violation = ratio above 1) for one curve."""

    speed_ratio: float
    position_ratio: float
    accel_ratio: float
    start_speed_ok: bool

    @property
    def ok(self):
        return (self.start_speed_ok and self.speed_ratio <= 1.0
                and self.position_ratio <= 1.0 and self.accel_ratio <= 1.0)


def regular_curve_check(curve, kappa, mbar):
    """Evaluate the three corridor inequalities on the curve's grid."""
    t = curve.t_grid
    s = curve.s_values
    sd = curve.sdot_values
    m4 = float(mbar) ** 4
    pos = t > 0.0
    speed_ratio = float(np.max(np.abs(sd[pos] - kappa) / (m4 * t[pos]),
                               initial=0.0))
    position_ratio = float(np.max(np.abs(s[pos] - kappa * t[pos])
                                  / (0.5 * m4 * t[pos] ** 2), initial=0.0))
    # second derivative by nonuniform central differences
    accel_ratio = 0.0
    if t.size >= 3:
        h1 = t[1:-1] - t[:-2]
        h2 = t[2:] - t[1:-1]
        sdd = 2.0 * (h1 * s[2:] - (h1 + h2) * s[1:-1] + h2 * s[:-2]) \
            / (h1 * h2 * (h1 + h2))
        accel_ratio = float(np.max(np.abs(sdd)) / (6.0 * m4))
    start_ok = abs(float(sd[0]) - kappa) <= 1e-12 * max(1.0, abs(kappa))
    return RegularCurveReport(speed_ratio=speed_ratio,
                              position_ratio=position_ratio,
                              accel_ratio=accel_ratio,
                              start_speed_ok=start_ok)


def shock_speed_limit_at_zero(datum):
    """Front speed limit as t -> 0+: the pre-shock wave value."""
    return float(datum.kappa)


def evolve_shock(datum, t_end, tol_outer=1e-6, tol_inner=None,
                 n_slices=64, n_sub=2, grid=None, max_outer=30,
                 newton_tol=1e-12):
    """Drive the curve iteration to its fixed point.

    Returns (curve, fields) where fields is a full development behind
    the converged curve, so the fixed-point residual |sdot - F| is an
    honest one-more-sweep measurement rather than zero by construction.
    """
    if tol_inner is None:
        tol_inner = 0.1 * tol_outer  # inner error pollutes F directly
    kappa = float(datum.kappa)
    times = _make_slice_times(t_end, n_slices)
    curve = ShockCurve(times, kappa * times, np.full(times.size, kappa),
                       iterate_index=0)
    rep = regular_curve_check(curve, kappa, datum.mbar)
    if not rep.ok:
        raise RegularityViolated(f"straight start outside corridor: {rep}")

    increments = []
    dev = None
    for i in range(1, max_outer + 1):
        dev = develop_fields(datum, curve, t_end, tol_inner=tol_inner,
                             n_slices=n_slices, n_sub=n_sub, grid=grid,
                             newton_tol=newton_tol)
        f_arr = dev.traces["sdot_rh"].copy()
        f_arr[0] = kappa
        s_new = PchipInterpolator(times, f_arr).antiderivative()(times)
        s_new[0] = 0.0
        delta = float(np.max(np.abs(s_new - curve.s_values))
                      + np.max(np.abs(f_arr - curve.sdot_values)))
        increments.append(delta)
        curve = ShockCurve(times, s_new, f_arr, iterate_index=i)
        rep = regular_curve_check(curve, kappa, datum.mbar)
        if not rep.ok:
            raise RegularityViolated(
                f"iterate {i} left the corridor: speed {rep.speed_ratio:.3g},"
                f" position {rep.position_ratio:.3g},"
                f" accel {rep.accel_ratio:.3g}")
        if delta <= tol_outer:
            dev = develop_fields(datum, curve, t_end, tol_inner=tol_inner,
                                 n_slices=n_slices, n_sub=n_sub, grid=grid,
                                 newton_tol=newton_tol)
            curve.increments = increments
            return curve, dev
    raise OuterIterationStall(
        f"outer iteration at {increments[-1]:.3e} after {max_outer} sweeps")
