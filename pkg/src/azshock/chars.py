"""Characteristic tracing against a field snapshot.

A *field set* is any object exposing

    lam(family, theta, tau, side=None)   wave speed, family in {1, 2, 3}
    shock_at(tau)             front position s(tau)
    shock_speed_at(tau)       front speed
    kappa, t_min, t_end       scalars
    times                     solver time grid (ascending, times[0] == 0)
    s1_at(tau), s2_at(tau)    weak-curve positions (optional, for tags)

The integrator is classical RK4 with fixed steps; shock crossings are
located by bisection on theta - s(tau) inside the bracketing step.

Traces never interpolate across the front.  Each trace keeps the side
of its anchor and passes it to ``lam`` ("behind" or "ahead"); the field
set clamps positions past the front onto its own side's limit.  Without
this a characteristic absorbing into the front would pick up the other
side's slower speed at RK4 stage points beyond it and ride just behind
the front forever instead of crossing.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import RootNotBracketed, StepSizeUnderflow

_EVENT_CAP = 60


@dataclass
class CharTrace:
    family: int
    anchor: tuple
    positions: np.ndarray
    times: np.ndarray
    stop_time: Optional[float] = None
    crossing_margin: Optional[float] = None
    region_tags: list = field(default_factory=list)

    def at(self, tau):
        """Position along the trace at time tau (linear in the samples)."""
        return float(np.interp(tau, self.times, self.positions))


@dataclass(frozen=True)
class WeakCurves:
    times: np.ndarray
    s1_samples: np.ndarray
    s2_samples: np.ndarray
    theta1: float
    theta2: float


def _rk4_step(f, theta, tau, dt):
    k1 = f(theta, tau)
    k2 = f(theta + 0.5 * dt * k1, tau + 0.5 * dt)
    k3 = f(theta + 0.5 * dt * k2, tau + 0.5 * dt)
    k4 = f(theta + dt * k3, tau + dt)
    return theta + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _region_tag(fields, theta, tau):
    if tau <= 0.0:
        return "smooth"
    s = fields.shock_at(tau)
    if theta >= s:
        return "ahead"
    s2 = fields.s2_at(tau) if hasattr(fields, "s2_at") else None
    s1 = fields.s1_at(tau) if hasattr(fields, "s1_at") else None
    if s2 is not None and theta >= s2:
        return "dk"
    if s1 is not None and theta >= s1:
        return "dz"
    return "smooth"


def _integrate(fields, family, theta0, tau0, tau1, n_steps=None,
               stop_at_shock=True):
    """March theta' = lam_family from tau0 to tau1 (either direction).

    Returns (positions, times, stop_time, margin); stop_time is None
    when no crossing occurred.  The crossing sample is appended exactly
    on the front.
    """
    gap0 = theta0 - fields.shock_at(tau0)
    side = "ahead" if gap0 > 0.0 else "behind"
    speed = lambda th, ta: fields.lam(family, th, ta, side=side)
    if n_steps is None:
        n_steps = max(24, len(getattr(fields, "times", range(48))))
    dt = (tau1 - tau0) / n_steps
    if dt == 0.0:
        raise StepSizeUnderflow("empty integration interval")
    pos = [theta0]
    ts = [tau0]
    theta, tau = theta0, tau0
    gap = theta - fields.shock_at(tau)
    for i in range(n_steps):
        theta_new = _rk4_step(speed, theta, tau, dt)
        tau_new = tau1 if i == n_steps - 1 else tau0 + (i + 1) * dt
        gap_new = theta_new - fields.shock_at(tau_new)
        if stop_at_shock and gap != 0.0 and gap * gap_new < 0.0:
            # bisect the substep on the crossing indicator
            lo_dt, hi_dt = 0.0, dt
            th_hit, ta_hit = theta_new, tau_new
            for _ in range(_EVENT_CAP):
                mid_dt = 0.5 * (lo_dt + hi_dt)
                if mid_dt == lo_dt or mid_dt == hi_dt:
                    break
                th_mid = _rk4_step(speed, theta, tau, mid_dt)
                ta_mid = tau + mid_dt
                g_mid = th_mid - fields.shock_at(ta_mid)
                if gap * g_mid < 0.0:
                    hi_dt = mid_dt
                    th_hit, ta_hit = th_mid, ta_mid
                else:
                    lo_dt = mid_dt
                    th_hit, ta_hit = th_mid, ta_mid
            margin = abs(fields.shock_speed_at(ta_hit)
                         - fields.lam(family, th_hit, ta_hit, side=side))
            pos.append(fields.shock_at(ta_hit))
            ts.append(ta_hit)
            return (np.asarray(pos), np.asarray(ts), ta_hit, margin)
        theta, tau, gap = theta_new, tau_new, gap_new
        pos.append(theta)
        ts.append(tau)
    return np.asarray(pos), np.asarray(ts), None, None


def trace_eta(x, fields, t_end, n_steps=None):
    """Forward fast-family characteristic from the label (x, 0)."""
    p, t, stop, margin = _integrate(fields, 3, x, 0.0, t_end, n_steps)
    tags = [_region_tag(fields, th, ta) for th, ta in zip(p, t)]
    return CharTrace(family=3, anchor=(x, 0.0), positions=p, times=t,
                     stop_time=stop, crossing_margin=margin, region_tags=tags)


def trace_backward(family, theta, t, fields, n_steps=None):
    """Backward characteristic from (theta, t) to 0 or the front."""
    p, ts, stop, margin = _integrate(fields, family, theta, t, 0.0, n_steps)
    tags = [_region_tag(fields, th, ta) for th, ta in zip(p, ts)]
    return CharTrace(family=family, anchor=(theta, t), positions=p, times=ts,
                     stop_time=stop, crossing_margin=margin, region_tags=tags)


def stopping_time(family, theta, t, fields, shock=None, n_steps=None):
    """Largest time at which the backward trace meets the front.

    Returns None when the trace reaches t = 0 without crossing.  The
    crossing is already bisected to well below 1e-12 t by the event
    location inside the integrator.
    """
    trace = trace_backward(family, theta, t, fields, n_steps)
    return trace.stop_time


def _terminal_indicator(fields, family, theta, t_end):
    """Positive past the marginal characteristic, negative before it."""
    trace = trace_backward(family, theta, t_end, fields)
    if trace.stop_time is not None:
        return trace.stop_time, trace
    return trace.positions[-1] - 0.0, trace


def build_weak_curves(fields, shock=None, n_bisect=60):
    """Weak-discontinuity curves from the characteristics through origin.

    Bisects the terminal angle at t_end so that the backward trace of
    each slow family passes through (0, 0); the recorded traces are the
    curves s1 (family 1) and s2 (family 2), resampled on fields.times.
    """
    t_end = fields.t_end
    kappa = fields.kappa
    s_end = fields.shock_at(t_end)
    lo0, hi0 = s_end - kappa * t_end, s_end
    out = {}
    for fam in (1, 2):
        lo, hi = lo0, hi0
        g_lo, _ = _terminal_indicator(fields, fam, lo, t_end)
        g_hi, _ = _terminal_indicator(fields, fam, hi, t_end)
        if not (g_lo < 0.0 < g_hi):
            raise RootNotBracketed(
                f"family {fam}: indicator {g_lo}, {g_hi} on corridor")
        trace = None
        for _ in range(n_bisect):
            mid = 0.5 * (lo + hi)
            g_mid, tr = _terminal_indicator(fields, fam, mid, t_end)
            if g_mid < 0.0:
                lo = mid
                trace = tr
            else:
                hi = mid
        if trace is None:
            _, trace = _terminal_indicator(fields, fam, lo, t_end)
        out[fam] = (lo, trace)

    times = np.asarray(fields.times, dtype=float)
    curves = {}
    for fam in (1, 2):
        theta_ring, trace = out[fam]
        order = np.argsort(trace.times)
        tt = trace.times[order]
        pp = trace.positions[order]
        sam = np.interp(times, tt, pp, left=0.0)
        sam[times <= 0.0] = 0.0
        curves[fam] = (theta_ring, sam)
    return WeakCurves(times=times,
                      s1_samples=curves[1][1], s2_samples=curves[2][1],
                      theta1=curves[1][0], theta2=curves[2][0])


class ConstantFieldSet:
    """Uniform state w = kappa, z = k = a = 0 with the front s = kappa t.

    Closed forms: lam1 = kappa/3, lam2 = 2 kappa/3, lam3 = kappa;
    the weak curves are s1 = kappa t/3, s2 = 2 kappa t/3.
    """

    def __init__(self, kappa, t_end, n_times=49):
        self.kappa = float(kappa)
        self.t_end = float(t_end)
        self.t_min = 0.0
        self.times = np.linspace(0.0, t_end, n_times)

    def lam(self, family, theta, tau, side=None):
        return {1: self.kappa / 3.0, 2: 2.0 * self.kappa / 3.0,
                3: self.kappa}[family]

    def shock_at(self, tau):
        return self.kappa * tau

    def shock_speed_at(self, tau):
        return self.kappa

    def s1_at(self, tau):
        return self.kappa * tau / 3.0

    def s2_at(self, tau):
        return 2.0 * self.kappa * tau / 3.0
