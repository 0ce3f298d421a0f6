"""Scaling fits and one-sided regularity probes.

Everything in this module is measurement: log-log least squares for
power laws, one-sided Holder exponents against a limit value, and a
finite-difference curvature audit on the approach to the lower edge of
the entropy band behind the front.  Nothing here mutates solver state.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientLadder, InsufficientSamples, NonPositiveSample

__all__ = [
    "FitResult",
    "fit_power_law",
    "derivative_ladder",
    "estimate_holder",
    "entropy_edge_ladder",
    "slow_edge_ladder",
    "CurvatureReport",
    "second_derivative_audit",
]


@dataclass(frozen=True)
class FitResult:
    """Exponent and prefactor of a power-law fit, with diagnostics."""

    exponent: float
    prefactor: float
    r_squared: float
    n_samples: int
    window: tuple

    def __post_init__(self):
        if not np.isfinite(self.exponent):
            raise ValueError("fit exponent must be finite")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError("r_squared must lie in [0, 1]")


def _loglog_fit(xs, ys):
    lx = np.log(xs)
    ly = np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - slope * lx - intercept
    ss_res = float(resid @ resid)
    dy = ly - ly.mean()
    ss_tot = float(dy @ dy)
    tiny = 1e-20 * max(1.0, float(ly @ ly))
    if ss_tot <= tiny:
        r2 = 1.0 if ss_res <= tiny else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return float(slope), float(np.exp(intercept)), r2


def fit_power_law(ts, vals):
    """Least-squares power law |vals| ~ prefactor * ts**exponent.

    Runs on (log t, log |v|), so the sign of the samples is ignored;
    what must not happen is a zero sample or a nonpositive abscissa.
    Needs at least 8 samples spanning a decade.
    """
    ts = np.asarray(ts, dtype=float)
    vals = np.asarray(vals, dtype=float)
    if ts.ndim != 1 or ts.shape != vals.shape:
        raise ValueError("ts and vals must be 1-d arrays of equal length")
    if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(vals))):
        raise NonPositiveSample("samples must be finite")
    if np.any(ts <= 0.0) or np.any(vals == 0.0):
        raise NonPositiveSample("need ts > 0 and vals != 0 for a log-log fit")
    if ts.size < 8:
        raise InsufficientSamples(f"need at least 8 samples, got {ts.size}")
    if ts.max() / ts.min() < 10.0:
        raise InsufficientSamples("samples span less than a decade")
    expo, pref, r2 = _loglog_fit(ts, np.abs(vals))
    return FitResult(expo, pref, r2, int(ts.size),
                     (float(ts.min()), float(ts.max())))


def derivative_ladder(positions, values):
    """Midpoint difference quotients of a scattered one-sided profile.

    Sorts by position and differences adjacent entries, so a profile
    sampled on a geometric ladder yields slopes on a geometric ladder
    with the exponent intact.  Duplicate positions are dropped.
    Returns an (n-1, 2) array of (midpoint, slope) rows.
    """
    th = np.asarray(positions, dtype=float)
    fv = np.asarray(values, dtype=float)
    order = np.argsort(th)
    th, fv = th[order], fv[order]
    dth = np.diff(th)
    keep = dth > 0.0
    mid = (0.5 * (th[1:] + th[:-1]))[keep]
    slope = np.diff(fv)[keep] / dth[keep]
    return np.column_stack([mid, slope])


def estimate_holder(base_point, side, field_derivative_samples,
                    grid_floor=None):
    """One-sided Holder exponent of a sampled quantity at a base point.

    base_point is (x0, f0) with f0 the one-sided limit; side "+" or "-"
    picks the approach direction.  The samples are (position, value)
    rows on a roughly geometric ladder and the fit is
    |f(x0 + h) - f0| ~ h**alpha.  When grid_floor is given and the
    smallest rung sits within a few floors of it, the two smallest
    rungs are dropped: they sample the resolution layer, where the
    profile is interpolation rather than field, and only flatten the
    fit.
    """
    x0, f0 = float(base_point[0]), float(base_point[1])
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    samples = np.asarray(field_derivative_samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise ValueError("samples must be an (n, 2) array of"
                         " (position, value) rows")
    sgn = 1.0 if side == "+" else -1.0
    h = sgn * (samples[:, 0] - x0)
    df = np.abs(samples[:, 1] - f0)
    if np.any(h <= 0.0):
        raise InsufficientLadder(
            "samples must sit strictly on the requested side")
    order = np.argsort(h)
    h, df = h[order], df[order]
    if grid_floor is not None and grid_floor > 0.0 and h[0] <= 4.0 * grid_floor:
        h, df = h[2:], df[2:]
    keep = df > 0.0
    h, df = h[keep], df[keep]
    if h.size < 5:
        raise InsufficientLadder(f"only {h.size} usable rungs")
    if h.max() / h.min() < 10.0:
        raise InsufficientLadder("ladder spans less than a decade")
    alpha, pref, r2 = _loglog_fit(h, df)
    return FitResult(alpha, pref, r2, int(h.size),
                     (float(h.min()), float(h.max())))


def entropy_edge_ladder(dev, j):
    """Entropy profile above s2 at slice j, read off the swirl labels.

    Labels that crossed the front carry the entropy trace value from
    their crossing time, and their crossing times are geometric, so the
    profile stays resolved right down to the edge, far below the slice
    grid.  Returns (base_point, samples) ready for a "+" side slope
    ladder: pass the samples through derivative_ladder first.
    """
    theta, _a, k_val, behind = dev.snaps2[j]
    s2 = float(dev.s2_arr[j])
    front = float(dev.slices[j].shock_pos)
    sel = behind & (k_val > 0.0) & (theta > s2) & (theta < front)
    if not sel.any():
        raise InsufficientLadder("no crossed labels above the entropy edge")
    return (s2, 0.0), np.column_stack([theta[sel], k_val[sel]])


def slow_edge_ladder(dev, j):
    """Slow-field profile above s1 at slice j, read off its labels.

    One label is emitted from the front per slice time, so the ladder
    of distances to s1 is geometric like the slice times themselves.
    Returns (base_point, samples) for a "+" side slope ladder.
    """
    theta, z_val = dev.snaps1[j]
    s1 = float(dev.s1_arr[j])
    front = float(dev.slices[j].shock_pos)
    sel = (theta > s1) & (theta <= front)
    if not sel.any():
        raise InsufficientLadder("no emitted labels above the slow edge")
    return (s1, 0.0), np.column_stack([theta[sel], z_val[sel]])


_CURVATURE_SIGNS = {"w": 1.0, "z": -1.0, "k": 1.0, "a": -1.0}


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    """Second-difference scan above the entropy edge at one time."""

    t: float
    h: np.ndarray
    d2: dict
    signs: dict
    signs_ok: bool
    exponents: dict
    sum_exponent: float
    sum_bounded: bool

    @property
    def ok(self):
        return self.signs_ok and self.sum_bounded


def _ladder_exponent(h, vals):
    v = np.abs(np.asarray(vals, dtype=float))
    if v.size == 0 or np.max(v) <= 0.0:
        return float("nan")
    # a stencil that collapsed inside one interpolation cell returns an
    # exact zero; such rungs carry no curvature and are dropped
    keep = v > 1e-9 * np.max(v)
    if keep.sum() < 3:
        return float("nan")
    return float(np.polyfit(np.log(h[keep]), np.log(v[keep]), 1)[0])


def second_derivative_audit(state, curves, t=None, n_rungs=12, ratio=0.62,
                            floor=None, rel_step=0.4):
    """Centered second differences of (w, z, k, a) walking down to the
    lower edge of the entropy band.

    The offset ladder starts at half the band width and shrinks by
    ``ratio`` per rung, truncated at ``floor`` when one is given (pass
    a few grid spacings: below that the interpolant carries no
    curvature information).  At each rung h the local step is
    ``rel_step * h`` so the stencil never leaves the band.

    The report carries the raw second differences plus three verdicts.
    First, whether the finest-rung signs match the expected pattern: w
    and k curve up, z and a curve down.  Second, the fitted h-exponent
    of each field.  Third, whether the sum w + z stays flat while z and
    k individually steepen: the singular halves of w and z are built by
    the same entropy gradient swept at the same relative speed, once
    entering the band and once leaving it, so they cancel in the sum
    and only the smooth backgrounds survive.  An identically vanishing
    sum reports sum_exponent = inf.

    Note the w sign is a statement about the h -> 0 limit: the positive
    singular half of w rides on the smooth curvature transported from
    the cusp datum, which is large and negative at any fixed distance,
    so on coarse data the measured w sign can legitimately disagree
    with the limit.  The a curvature is order t and clears the grid
    interpolation noise only on fine grids; on coarse ones its reported
    sign is a coin flip.
    """
    if t is None:
        t = float(state.times[-1])
    s2 = float(curves.s2_at(t))
    front = float(curves.shock_at(t))
    gap = front - s2
    if gap <= 0.0:
        raise InsufficientLadder("entropy edge sits at or above the front")
    h = 0.5 * gap * ratio ** np.arange(n_rungs)
    if floor is not None:
        h = h[h >= floor]
    if h.size < 3:
        raise InsufficientLadder("curvature ladder has fewer than 3 rungs")
    n = h.size
    d = rel_step * h
    th = np.concatenate([s2 + h - d, s2 + h, s2 + h + d])
    d2 = {}
    for name in ("w", "z", "k", "a"):
        f = np.asarray(state.value(name, th, t, "behind"), dtype=float)
        d2[name] = (f[:n] - 2.0 * f[n:2 * n] + f[2 * n:]) / d ** 2
    signs = {name: bool(np.all(sgn * d2[name][-2:] > 0.0))
             for name, sgn in _CURVATURE_SIGNS.items()}
    exponents = {name: _ladder_exponent(h, d2[name]) for name in d2}
    ssum = d2["w"] + d2["z"]
    scale = max(np.abs(d2["w"]).max(), np.abs(d2["z"]).max())
    if np.abs(ssum).max() <= 1e-9 * scale:
        sum_exponent = math.inf
    else:
        sum_exponent = _ladder_exponent(h, ssum)
    singular = (exponents["z"] <= -0.25) and (exponents["k"] <= -0.25)
    if math.isfinite(sum_exponent):
        sum_flat = sum_exponent > -0.25
    else:
        # inf means exact cancellation; nan means the sum changes sign
        # on the ladder, which is also not a one-sided blowup
        sum_flat = True
    return CurvatureReport(
        t=float(t), h=h, d2=d2, signs=signs,
        signs_ok=all(signs.values()),
        exponents=exponents, sum_exponent=float(sum_exponent),
        sum_bounded=bool(singular and sum_flat))
