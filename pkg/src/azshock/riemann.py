"""Pointwise algebra for azimuthal Euler flow in Riemann variables.

State is carried as (w, z, k, a) where w = b + c and z = b - c combine
the swirl component b with the rescaled sound speed c, k is the entropy
and a the radial velocity component.  The adiabatic exponent is fixed to
gamma = 2 throughout; radius enters physical conversions only as a scale
factor.
"""

import math
from dataclasses import dataclass

from .errors import NonPositiveSoundSpeed, SingularDenominator

GAMMA = 2.0
ALPHA = 0.5  # (gamma - 1) / 2
CV = 1.0


@dataclass(frozen=True)
class AzimuthalPoint:
    """Riemann-variable state at one angle."""

    w: float
    z: float = 0.0
    k: float = 0.0
    a: float = 0.0

    @property
    def b(self):
        return 0.5 * (self.w + self.z)

    @property
    def c(self):
        return 0.5 * (self.w - self.z)

    @classmethod
    def from_bc(cls, b, c, k=0.0, a=0.0):
        return cls(w=b + c, z=b - c, k=k, a=a)

    def is_physical(self):
        return self.c > 0.0


@dataclass(frozen=True)
class WaveSpeeds:
    """The three azimuthal wave speeds, equally spaced by 2c/3."""

    lam1: float
    lam2: float
    lam3: float


@dataclass(frozen=True)
class PhysicalState:
    u_theta: float
    u_r: float
    rho: float
    p: float
    E: float
    S: float
    T_inv: float


@dataclass(frozen=True)
class SpecificVorticity:
    varpi: float


@dataclass(frozen=True)
class AdmissibilityReport:
    """Entropy-condition bookkeeping for one shock state pair."""

    lam3_ahead_below: bool
    lam3_behind_above: bool
    lam12_below: bool
    mass_flux_sign_ok: bool
    no_shock: bool

    @property
    def all_ok(self):
        return (self.lam3_ahead_below and self.lam3_behind_above
                and self.lam12_below and self.mass_flux_sign_ok
                and not self.no_shock)


def wave_speeds(p):
    """Wave speeds (lam1, lam2, lam3) of the state ``p``.

    lam2 = 2(w + z)/3 is the material speed; the acoustic speeds sit at
    lam2 -+ (w - z)/3, so the spacing is 2c/3 on either side.
    """
    lam2 = 2.0 * (p.w + p.z) / 3.0
    d = (p.w - p.z) / 3.0
    return WaveSpeeds(lam1=lam2 - d, lam2=lam2, lam3=lam2 + d)


def to_physical(p, r=1.0):
    """Convert a Riemann-variable state to primitive/conserved fields.

    At radius r: u_theta = r b, u_r = r a, rho = (r c)^2 e^{-k} / 4,
    pressure p = rho^2 e^k / 2 and E = rho |u|^2 / 2 + p.  Raises
    NonPositiveSoundSpeed when w <= z.
    """
    c = p.c
    if c <= 0.0:
        raise NonPositiveSoundSpeed(f"w={p.w} <= z={p.z}")
    sigma = r * c
    rho = 0.25 * sigma * sigma * math.exp(-p.k)
    pres = 0.5 * rho * rho * math.exp(p.k)
    u_theta = r * p.b
    u_r = r * p.a
    energy = 0.5 * rho * (u_theta * u_theta + u_r * u_r) + pres
    return PhysicalState(u_theta=u_theta, u_r=u_r, rho=rho, p=pres,
                         E=energy, S=p.k,
                         T_inv=CV * (GAMMA - 1.0) * rho / pres)


def entropy_jump_closed_form(Q, tol=1e-12):
    """Exact e^{S_-} - 1 across a gamma = 2 shock with density ratio Q.

    Q is the ahead/behind density ratio rho_+ / rho_-; compression has
    Q < 1 and produces positive entropy.
    """
    den = 1.0 - 3.0 * Q
    if abs(den) < tol:
        raise SingularDenominator(f"1 - 3Q = {den}")
    d = Q - 1.0
    return d * d * d / den


def _b_gamma_first_order(gamma, Q):
    # first-order Taylor data of the bookkeeping polynomial B_gamma at Q = 1
    b1 = (gamma - 2.0) * (gamma - 1.0) * gamma * (gamma + 1.0) / 12.0
    db1 = -(gamma - 3.0) * (gamma - 2.0) * (gamma - 1.0) * gamma * (gamma + 1.0) / 40.0
    return b1 + (Q - 1.0) * db1


def entropy_jump_residual_general_gamma(gamma, Q, e_minus):
    """Residual of the general-gamma entropy jump relation.

    Returns e_minus minus the cubic leading form
    (Q-1)^3 / ((gamma-1) - (gamma+1) Q) * (gamma(gamma-1)(gamma+1)/6
    - (Q-1) B_gamma(Q)), with B_gamma kept to first order about Q = 1.
    Reduces exactly to the closed form at gamma = 2 where B_2 vanishes.
    """
    den = (gamma - 1.0) - (gamma + 1.0) * Q
    d = Q - 1.0
    lead = gamma * (gamma - 1.0) * (gamma + 1.0) / 6.0
    return e_minus - d * d * d / den * (lead - d * _b_gamma_first_order(gamma, Q))


def entropy_series(jump_p, state_plus):
    """Leading cubic entropy jump from the pressure jump.

    [S] = (1/12) (1/T_+) (d^2V/dp^2)|_S [p]^3 with the ideal-gas second
    derivative (1/gamma)(1 + 1/gamma) V / p^2 obtained from
    p V^gamma = const at fixed entropy.
    """
    V = 1.0 / state_plus.rho
    d2v = (1.0 / GAMMA) * (1.0 + 1.0 / GAMMA) * V / (state_plus.p * state_plus.p)
    return (1.0 / 12.0) * state_plus.T_inv * d2v * jump_p ** 3


def mass_flux(p, sdot, r=1.0):
    """Mass flux rho (lam2 - sdot) through a front moving at speed sdot."""
    phys = to_physical(p, r=r)
    return phys.rho * (wave_speeds(p).lam2 - sdot)


def lax_check(left, right, sdot):
    """Admissibility report for a discontinuity between two states.

    left is the state behind (larger angle side of the flow of
    information), right the state ahead.  Checks the acoustic family
    ordering lam3(right) < sdot < lam3(left), that the slower families
    stay below the front on both sides, and that the mass flux has one
    sign through the front.
    """
    ws_l = wave_speeds(left)
    ws_r = wave_speeds(right)
    lam3_ahead_below = ws_r.lam3 < sdot
    lam3_behind_above = ws_l.lam3 > sdot
    lam12_below = max(ws_l.lam1, ws_l.lam2, ws_r.lam1, ws_r.lam2) < sdot
    try:
        m_l = mass_flux(left, sdot)
        m_r = mass_flux(right, sdot)
        flux_ok = m_l * m_r > 0.0
    except NonPositiveSoundSpeed:
        flux_ok = False
    no_shock = (left.w == right.w and left.z == right.z and left.k == right.k)
    return AdmissibilityReport(lam3_ahead_below=lam3_ahead_below,
                               lam3_behind_above=lam3_behind_above,
                               lam12_below=lam12_below,
                               mass_flux_sign_ok=flux_ok,
                               no_shock=no_shock)


def specific_vorticity(p, dtheta_a):
    """Specific vorticity 4 (w + z - da/dtheta) e^k / c^2."""
    c = p.c
    if c <= 0.0:
        raise NonPositiveSoundSpeed(f"w={p.w} <= z={p.z}")
    return SpecificVorticity(varpi=4.0 * (p.w + p.z - dtheta_a)
                             * math.exp(p.k) / (c * c))
