"""Pre-shock data and the Burgers flow map with a prescribed front.

The initial datum carries a cube-root cusp, w0(theta) = kappa
- b theta^{1/3} + c theta^{2/3} + g0(theta), with the odd cube root for
negative angles.  Inverting the free-streaming map eta_B = x + t w0(x)
past the first singularity produces a two-branch solution; the extremal
labels x_-(t) < 0 < x_+(t) that land exactly on the front are the roots
of a rescaled cubic y^3 - y + G(y, tau) = zeta.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import AtShock, BranchAmbiguity, NoRoot

_RESIDUAL_TOL = 1e-12


def _cbrt(x):
    return np.cbrt(x)


def _zero(theta):
    return np.zeros_like(np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class CuspDatum:
    """Initial-data family with a cube-root cusp at the origin."""

    kappa: float
    b: float = 1.0
    c_coef: float = 0.0
    mbar: Optional[float] = None
    g0: Optional[Callable] = None
    a0: Optional[Callable] = None

    def __post_init__(self):
        if not self.kappa > 1.0:
            raise ValueError(f"kappa={self.kappa} must exceed 1")
        if not 0.5 <= self.b <= 2.0:
            raise ValueError(f"b={self.b} outside [1/2, 2]")
        if abs(self.c_coef) > 0.5 * self.b:
            raise ValueError(f"|c|={abs(self.c_coef)} too large against b={self.b}")
        if self.mbar is None:
            object.__setattr__(self, "mbar", 4.0 * self.kappa)
        if self.mbar < 2.0 * self.kappa:
            raise ValueError(f"mbar={self.mbar} must dominate kappa={self.kappa}")
        if self.g0 is None:
            object.__setattr__(self, "g0", _zero)
        if self.a0 is None:
            object.__setattr__(self, "a0", _zero)
        self._validate_samples()

    def _validate_samples(self):
        theta = np.linspace(-math.pi, math.pi, 257)
        vals = self.w0(theta)
        if np.any(vals < 0.5 * self.kappa) or np.any(vals > self.mbar):
            raise ValueError("w0 leaves the corridor [kappa/2, mbar]")
        rem = np.abs(np.asarray(self.g0(theta), dtype=float))
        if np.any(rem > self.mbar * np.abs(theta) + 1e-14):
            raise ValueError("remainder g0 violates |g0| <= mbar |theta|")
        swirl = np.abs(np.asarray(self.a0(theta), dtype=float))
        if np.any(~np.isfinite(swirl)) or np.any(swirl > self.mbar):
            raise ValueError("swirl datum a0 must stay within [-mbar, mbar]")

    def w0(self, theta):
        """Initial wave profile; accepts scalars or arrays."""
        theta = np.asarray(theta, dtype=float)
        r = _cbrt(theta)
        return (self.kappa - self.b * r + self.c_coef * r * r
                + np.asarray(self.g0(theta), dtype=float))


@dataclass(frozen=True)
class BurgersInverse:
    """Inversion context of eta_B(., t) past the front at shock_pos."""

    t: float
    shock_pos: float
    x_minus: float
    x_plus: float
    tau: float
    zeta: float
    bracket_minus: tuple = field(default=(0.0, 0.0))
    bracket_plus: tuple = field(default=(0.0, 0.0))


def burgers_flow(x, t, datum):
    """Free-streaming flow map x + t w0(x)."""
    x = np.asarray(x, dtype=float)
    out = x + t * datum.w0(x)
    return float(out) if out.ndim == 0 else out


def cubic_roots_Zpm(zeta):
    """Largest and smallest real roots of Z^3 - Z = zeta, |zeta| <= 1/10.

    All three roots are real in this range; the extreme pair comes from
    the trigonometric solution of the depressed cubic.
    """
    if abs(zeta) > 0.1:
        raise ValueError(f"|zeta|={abs(zeta)} exceeds series radius 1/10")
    phi = math.acos(1.5 * math.sqrt(3.0) * zeta) / 3.0
    two = 2.0 / math.sqrt(3.0)
    z_plus = two * math.cos(phi)
    z_minus = two * math.cos(phi - 4.0 * math.pi / 3.0)
    return z_plus, z_minus


def _rescaled_cubic(datum, t, shock_pos):
    # y^3 - y + G(y, tau) = zeta with x = (tau y)^3, tau = sqrt(b t)
    tau = math.sqrt(datum.b * t)
    zeta = (shock_pos - datum.kappa * t) / tau ** 3

    def h(y):
        x = (tau * y) ** 3
        g = (datum.c_coef / datum.b) * tau * y * y \
            + float(datum.g0(x)) / (datum.b * tau)
        return y ** 3 - y + g - zeta

    return tau, zeta, h


def _bracketed_root(h, lo, hi, tol=1e-15, cap=200):
    """Bisection with a secant acceleration; needs h(lo) h(hi) < 0."""
    flo, fhi = h(lo), h(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoRoot(f"no sign change on [{lo}, {hi}]")
    for _ in range(cap):
        mid = 0.5 * (lo + hi)
        if fhi != flo:
            sec = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < sec < hi:
                mid = sec
        fm = h(mid)
        if fm == 0.0 or hi - lo < tol * max(1.0, abs(mid)):
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _scan_bracket(h, start, direction, step=0.05, span=1.5):
    """Walk from start along direction until h changes sign."""
    a = start
    fa = h(a)
    n = int(span / step)
    for i in range(1, n + 1):
        b = start + direction * step * i
        fb = h(b)
        if fa * fb <= 0.0:
            return (a, b) if a < b else (b, a)
        a, fa = b, fb
    raise NoRoot("sign scan exhausted without bracketing")


def extremal_labels(t, shock_pos, datum, full=False):
    """Labels x_- < 0 < x_+ mapped onto the front by eta_B(., t).

    Solves the rescaled cubic with seeds from the unperturbed roots
    Z_+-(zeta); the pure cusp with shock_pos = kappa t lands exactly on
    x_+- = +-(b t)^{3/2}.
    """
    if not t > 0.0:
        raise ValueError("extremal labels need t > 0")
    if abs(shock_pos - datum.kappa * t) > 0.5 * datum.mbar ** 4 * t * t:
        raise NoRoot("shock position outside the admissible corridor")
    tau, zeta, h = _rescaled_cubic(datum, t, shock_pos)
    if abs(zeta) > 0.1:
        raise NoRoot(f"rescaled offset zeta={zeta} outside series radius")
    zp, zm = cubic_roots_Zpm(zeta)

    roots = []
    brackets = []
    for seed, orient in ((zm, -1.0), (zp, +1.0)):
        if h(seed) == 0.0:
            roots.append(seed)
            brackets.append((seed, seed))
            continue
        # the extreme roots see h change sign outward; scan both ways
        try:
            lo, hi = _scan_bracket(h, seed, orient, step=0.02, span=0.6)
        except NoRoot:
            lo, hi = _scan_bracket(h, seed, -orient, step=0.02, span=0.6)
        roots.append(_bracketed_root(h, lo, hi))
        brackets.append((lo, hi))
    y_minus, y_plus = roots
    x_minus = (tau * y_minus) ** 3
    x_plus = (tau * y_plus) ** 3
    if not x_minus < 0.0 < x_plus:
        raise NoRoot(f"extremal labels failed to straddle 0: {x_minus}, {x_plus}")
    if full:
        return BurgersInverse(t=t, shock_pos=shock_pos, x_minus=x_minus,
                              x_plus=x_plus, tau=tau, zeta=zeta,
                              bracket_minus=tuple(brackets[0]),
                              bracket_plus=tuple(brackets[1]))
    return x_minus, x_plus


def burgers_inverse(t, shock_pos, datum):
    """Full inversion context (extremal labels plus bracketing data)."""
    return extremal_labels(t, shock_pos, datum, full=True)


def _invert_labels(thetas, t, shock_pos, datum, x_minus, x_plus):
    """Vectorized one-sided inversion of eta_B; thetas must avoid the front."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    ahead = thetas > shock_pos
    lo = np.where(ahead, x_plus, thetas - t * datum.mbar)
    hi = np.where(ahead, np.maximum(thetas - 0.5 * t * datum.kappa, x_plus + 1.0),
                  x_minus)
    # eta_B is monotone outside [x_-, x_+]; plain bisection is safe
    for _ in range(110):
        mid = 0.5 * (lo + hi)
        val = mid + t * datum.w0(mid)
        take_lo = val < thetas
        lo = np.where(take_lo, mid, lo)
        hi = np.where(take_lo, hi, mid)
    return 0.5 * (lo + hi)


def burgers_solution(theta, t, shock_pos, datum):
    """Burgers solution w0(eta_B^{-1}(theta, t)) on one side of the front."""
    if t == 0.0:
        if theta == shock_pos:
            raise AtShock("evaluation exactly on the front")
        return float(datum.w0(theta))
    if theta == shock_pos:
        raise AtShock("evaluation exactly on the front")
    x_minus, x_plus = extremal_labels(t, shock_pos, datum)
    lab = _invert_labels(theta, t, shock_pos, datum, x_minus, x_plus)
    return float(datum.w0(lab)[0])


def burgers_solution_grid(thetas, t, shock_pos, datum, inverse=None):
    """Vectorized Burgers branch values for angles off the front."""
    if inverse is None:
        inverse = burgers_inverse(t, shock_pos, datum)
    labs = _invert_labels(thetas, t, shock_pos, datum,
                          inverse.x_minus, inverse.x_plus)
    return datum.w0(labs)


def selfsimilar_profile_Wbar(y):
    """Unique real root of W^3 + W = -y."""
    y = float(y)
    # Cardano for the strictly monotone depressed cubic, then one Newton
    # polish to clear the cbrt rounding
    disc = math.sqrt(0.25 * y * y + 1.0 / 27.0)
    w = np.cbrt(-0.5 * y + disc) + np.cbrt(-0.5 * y - disc)
    w = float(w)
    f = w ** 3 + w + y
    w -= f / (3.0 * w * w + 1.0)
    return w


def quartic_fractional_inverse(a3, a4, x):
    """Invert x = a3 y^3 + a4 y^4 on the branch through the origin.

    Returns (y, (c1, c2, c3)) where the fractional series
    y = c1 x^{1/3} + c2 x^{2/3} + c3 x + ... has c1 = a3^{-1/3},
    c2 = -a4 a3^{-5/3}/3, c3 = a4^2 a3^{-3}/3.  The branch folds where
    the derivative vanishes, at x_fold = -(27/256) a3^4 / a4^3; requests
    past the fold raise BranchAmbiguity.  Validity radius observed
    empirically: series error stays O(x^{4/3}) for |x| below ~half the
    fold scale.
    """
    if not a3 > 0.0:
        raise ValueError("a3 must be positive")
    c1 = a3 ** (-1.0 / 3.0)
    c2 = -a4 * a3 ** (-5.0 / 3.0) / 3.0
    c3 = a4 * a4 / (3.0 * a3 ** 3)
    if x == 0.0:
        return 0.0, (c1, c2, c3)
    if a4 != 0.0:
        x_fold = -(27.0 / 256.0) * a3 ** 4 / a4 ** 3
        if x * x_fold > 0.0 and abs(x) >= abs(x_fold):
            raise BranchAmbiguity(f"|x|={abs(x)} at or past the fold {x_fold}")
        y_crit = -0.75 * a3 / a4
    else:
        y_crit = math.inf

    r = float(np.cbrt(x))
    seed = c1 * r + c2 * r * r + c3 * x

    def f(y):
        return a3 * y ** 3 + a4 * y ** 4 - x

    # bracket around the seed on the origin branch
    lo, hi = sorted((0.0, 2.0 * seed if seed != 0.0 else 2.0 * c1 * r))
    grow = 0
    while f(lo) * f(hi) > 0.0:
        lo, hi = lo - abs(seed), hi + abs(seed)
        grow += 1
        if grow > 60:
            raise BranchAmbiguity("could not bracket the origin branch")
    y = _bracketed_root(f, lo, hi)
    if abs(y) >= abs(y_crit):
        raise BranchAmbiguity("numeric root drifted past the branch fold")
    return y, (c1, c2, c3)
