import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from azshock import errors
from azshock.riemann import (
    AzimuthalPoint,
    entropy_jump_closed_form,
    entropy_jump_residual_general_gamma,
    entropy_series,
    lax_check,
    mass_flux,
    specific_vorticity,
    to_physical,
    wave_speeds,
)

finite = st.floats(min_value=-50.0, max_value=50.0,
                   allow_nan=False, allow_infinity=False)


def test_wave_speeds_reference_values():
    ws = wave_speeds(AzimuthalPoint(w=3.0, z=0.0))
    assert ws.lam1 == 1.0
    assert ws.lam2 == 2.0
    assert ws.lam3 == 3.0

    ws = wave_speeds(AzimuthalPoint(w=4.0, z=0.3))
    assert math.isclose(ws.lam1, 4.0 / 3.0 + 0.3)
    assert math.isclose(ws.lam2, 2.0 * 4.3 / 3.0)
    assert math.isclose(ws.lam3, 4.0 + 0.1)


@given(w=finite, z=finite)
def test_wave_speed_spacing_exact(w, z):
    p = AzimuthalPoint(w=w, z=z)
    ws = wave_speeds(p)
    # construction is bit-for-bit reproducible from the formulas: lam2 is
    # the material speed and the acoustic speeds sit exactly 2c/3 away
    gap = 2.0 * p.c / 3.0
    assert ws.lam2 == 2.0 * (w + z) / 3.0
    assert ws.lam1 == ws.lam2 - gap
    assert ws.lam3 == ws.lam2 + gap
    # the evaluated gaps agree to the last rounding of lam2 -+ gap
    ulp = np.spacing(max(abs(ws.lam1), abs(ws.lam2), abs(ws.lam3), 1e-300))
    assert abs((ws.lam2 - ws.lam1) - (ws.lam3 - ws.lam2)) <= 2.0 * ulp


@pytest.mark.parametrize("w,z", [(3.0, 0.0), (4.5, -1.5), (6.0, 0.75),
                                 (1.5, 0.375), (-3.0, 1.5)])
def test_wave_speed_spacing_bitwise_on_thirds_grid(w, z):
    # with w, z on a dyadic-thirds grid every term rounds exactly, so the
    # spacing identity holds with no tolerance at all
    p = AzimuthalPoint(w=w, z=z)
    ws = wave_speeds(p)
    assert ws.lam2 - ws.lam1 == ws.lam3 - ws.lam2 == 2.0 * p.c / 3.0


@given(w=finite, z=finite)
def test_bc_round_trip(w, z):
    p = AzimuthalPoint(w=w, z=z)
    q = AzimuthalPoint.from_bc(p.b, p.c)
    assert q.w == pytest.approx(w, abs=1e-13, rel=1e-13)
    assert q.z == pytest.approx(z, abs=1e-13, rel=1e-13)
    # the (b, c) -> (w, z) -> (b, c) direction is exact: the two halves
    # regroup without cancellation error
    b, c = 1.25, 0.375
    r = AzimuthalPoint.from_bc(b, c)
    assert r.b == b and r.c == c


def test_to_physical_reference_states():
    kappa = 4.0
    ps = to_physical(AzimuthalPoint(w=kappa), r=1.0)
    assert ps.u_theta == kappa / 2.0
    assert ps.u_r == 0.0
    assert ps.rho == kappa * kappa / 16.0
    assert ps.S == 0.0

    ps = to_physical(AzimuthalPoint(w=4.0, z=-0.1, k=0.01, a=0.5), r=2.0)
    assert math.isclose(ps.rho, (4.0 / 16.0) * 4.1 ** 2 * math.exp(-0.01))
    assert math.isclose(ps.u_theta, 2.0 * (4.0 - 0.1) / 2.0)
    assert math.isclose(ps.u_r, 1.0)
    # gamma = 2 bookkeeping: p = rho^2 e^S / 2 and E = rho |u|^2 / 2 + p
    assert math.isclose(ps.p, 0.5 * ps.rho ** 2 * math.exp(ps.S))
    assert math.isclose(ps.E, 0.5 * ps.rho * (ps.u_theta ** 2 + ps.u_r ** 2) + ps.p)
    assert math.isclose(ps.T_inv, ps.rho / ps.p)


def test_to_physical_rejects_vanishing_sound_speed():
    with pytest.raises(errors.NonPositiveSoundSpeed):
        to_physical(AzimuthalPoint(w=2.0, z=2.0))
    with pytest.raises(errors.NonPositiveSoundSpeed):
        to_physical(AzimuthalPoint(w=1.0, z=2.0))


def test_entropy_jump_closed_form_values():
    assert entropy_jump_closed_form(1.0) == 0.0
    assert math.isclose(entropy_jump_closed_form(0.9), 1.0 / 1700.0)
    assert math.isclose(entropy_jump_closed_form(1.1), -1.0 / 2300.0)
    with pytest.raises(errors.SingularDenominator):
        entropy_jump_closed_form(1.0 / 3.0)


@given(q=st.floats(min_value=0.55, max_value=0.999))
def test_compression_produces_entropy(q):
    # Q = rho_+/rho_- < 1 means the density behind exceeds the density ahead
    assert entropy_jump_closed_form(q) > 0.0


def test_general_gamma_residual_reduces_at_gamma_two():
    for q in (0.9, 0.95, 1.05):
        e = entropy_jump_closed_form(q)
        assert abs(entropy_jump_residual_general_gamma(2.0, q, e)) < 1e-15


def test_general_gamma_residual_cubic_order():
    # for gamma != 2 the first-order B_gamma truncation still matches the
    # closed-form route through cubic order, so residuals of the exact
    # cubic-in-(Q-1) model shrink like (Q-1)^4 relative to (Q-1)^3
    gamma = 1.4
    qs = 1.0 - np.logspace(-4, -1, 10)
    lead = []
    for q in qs:
        d = q - 1.0
        den = (gamma - 1.0) - (gamma + 1.0) * q
        model = d ** 3 / den * (gamma * (gamma - 1.0) * (gamma + 1.0) / 6.0)
        res = entropy_jump_residual_general_gamma(gamma, q, model)
        lead.append(abs(res) / abs(d) ** 4)
    assert max(lead) < 10.0 * min(lead) + 1e-12


def test_entropy_series_zero_and_coefficient():
    plus = to_physical(AzimuthalPoint(w=4.0))
    assert entropy_series(0.0, plus) == 0.0
    # gamma = 2: coefficient is (1/12)(1/T+)(3/4) V/p^2
    jp = 1e-3
    expect = (1.0 / 12.0) * plus.T_inv * 0.75 / (plus.rho * plus.p ** 2) * jp ** 3
    assert math.isclose(entropy_series(jp, plus), expect)


def test_entropy_series_matches_closed_form_to_first_order():
    # sweep weak shocks, comparing the cubic pressure series against the
    # exact closed form; the relative error must shrink linearly in [p]
    plus = to_physical(AzimuthalPoint(w=4.0))
    jumps, rel = [], []
    for q in 1.0 - np.logspace(-3.2, -1.2, 12):
        s_minus = math.log1p(entropy_jump_closed_form(q))
        rho_minus = plus.rho / q
        p_minus = 0.5 * rho_minus ** 2 * math.exp(s_minus)
        jp = p_minus - plus.p
        series = entropy_series(jp, plus)
        jumps.append(jp)
        rel.append(abs(series - s_minus) / s_minus)
    expo = np.polyfit(np.log(jumps), np.log(rel), 1)[0]
    assert 0.9 <= expo <= 1.1


def test_lax_check_reference_pairs():
    left = AzimuthalPoint(w=4.2)
    right = AzimuthalPoint(w=3.8)
    rep = lax_check(left, right, 4.0)
    assert rep.lam3_ahead_below and rep.lam3_behind_above
    assert rep.lam12_below and rep.mass_flux_sign_ok
    assert rep.all_ok and not rep.no_shock

    same = AzimuthalPoint(w=4.0)
    rep = lax_check(same, same, wave_speeds(same).lam3)
    assert rep.no_shock
    assert not rep.lam3_ahead_below and not rep.lam3_behind_above
    assert not rep.all_ok


def test_mass_flux_sign_and_continuity_direction():
    left = AzimuthalPoint(w=4.2)
    right = AzimuthalPoint(w=3.8)
    m_l = mass_flux(left, 4.0)
    m_r = mass_flux(right, 4.0)
    # front outruns the material speed on both sides
    assert m_l < 0.0 and m_r < 0.0


def test_specific_vorticity_values():
    assert specific_vorticity(AzimuthalPoint(w=4.0), 0.0).varpi == 4.0
    assert specific_vorticity(AzimuthalPoint(w=4.0), 4.0).varpi == 0.0
    with pytest.raises(errors.NonPositiveSoundSpeed):
        specific_vorticity(AzimuthalPoint(w=1.0, z=1.0), 0.0)


@given(w=st.floats(min_value=0.5, max_value=20.0),
       z=st.floats(min_value=-0.4, max_value=0.4),
       k=st.floats(min_value=-0.2, max_value=0.2),
       a=st.floats(min_value=-5.0, max_value=5.0))
def test_physical_state_positivity(w, z, k, a):
    p = AzimuthalPoint(w=w, z=z, k=k, a=a)
    if not p.is_physical():
        return
    ps = to_physical(p)
    assert ps.rho > 0.0 and ps.p > 0.0 and ps.T_inv > 0.0
    assert ps.E >= ps.p
