"""Characteristic tracing: closed forms in a uniform state, exact
straight-line transport in a cusp datum, event location and sentinels."""

import math

import numpy as np
import pytest

from azshock import chars
from azshock.chars import ConstantFieldSet, build_weak_curves, stopping_time
from azshock.errors import RootNotBracketed, StepSizeUnderflow
from azshock.preshock import CuspDatum, burgers_solution_grid

KAPPA = 4.0
T_END = 1e-2


@pytest.fixture(scope="module")
def const_fields():
    return ConstantFieldSet(KAPPA, T_END)


class BurgersFieldSet:
    """Speeds built pointwise from the cusp solution; front at kappa t.

    The fast speed equals w, so fast characteristics are straight lines
    theta = x + t w0(x) and fixed-step RK4 reproduces them to roundoff
    (every stage sits on the trajectory where w is constant).
    """

    def __init__(self, datum, t_end, n_times=49):
        self.datum = datum
        self.kappa = datum.kappa
        self.t_end = float(t_end)
        self.t_min = 0.0
        self.times = np.linspace(0.0, t_end, n_times)

    def lam(self, family, theta, tau, side=None):
        th = float(theta)
        s = self.kappa * tau
        if side == "behind":
            th = min(th, s - 1e-18 - 1e-16 * abs(s))
        elif side == "ahead":
            th = max(th, s + 1e-18 + 1e-16 * abs(s))
        arr = np.array([th])
        if tau <= 0.0:
            w = self.datum.w0(arr)
        else:
            w = burgers_solution_grid(arr, tau, s, self.datum)
        w = float(w[0])
        return {1: w / 3.0, 2: 2.0 * w / 3.0, 3: w}[family]

    def shock_at(self, tau):
        return self.kappa * tau

    def shock_speed_at(self, tau):
        return self.kappa


def test_constant_field_eta_parallel_to_front(const_fields):
    # lam3 == front speed: the gap x is carried unchanged, no crossing
    for x in (-0.03, -1e-4, 0.02):
        tr = chars.trace_eta(x, const_fields, T_END)
        assert tr.stop_time is None
        assert tr.positions[-1] == pytest.approx(x + KAPPA * T_END, abs=1e-14)
        assert tr.times[-1] == T_END


def test_constant_field_family2_crossing(const_fields):
    t = T_END
    for frac in (0.75, 0.9, 0.99):
        theta = frac * KAPPA * t  # between s2 = 2kt/3 and s = kt
        t_star = stopping_time(2, theta, t, const_fields)
        exact = (3.0 * theta - 2.0 * KAPPA * t) / KAPPA
        assert t_star == pytest.approx(exact, abs=1e-14 * t)


def test_constant_field_family1_crossing(const_fields):
    t = T_END
    for frac in (0.4, 0.6, 0.95):
        theta = frac * KAPPA * t  # between s1 = kt/3 and s = kt
        t_dstar = stopping_time(1, theta, t, const_fields)
        exact = (3.0 * theta - KAPPA * t) / (2.0 * KAPPA)
        assert t_dstar == pytest.approx(exact, abs=1e-14 * t)


def test_constant_field_no_crossing_sentinel(const_fields):
    t = T_END
    # left of s1 the slow family reaches t = 0 without meeting the front
    assert stopping_time(1, 0.2 * KAPPA * t, t, const_fields) is None
    # left of s2 same for the middle family
    assert stopping_time(2, 0.5 * KAPPA * t, t, const_fields) is None


def test_constant_field_transversality_margins(const_fields):
    t = T_END
    tr1 = chars.trace_backward(1, 0.6 * KAPPA * t, t, const_fields)
    tr2 = chars.trace_backward(2, 0.9 * KAPPA * t, t, const_fields)
    assert tr1.crossing_margin >= KAPPA / 2.0 - 1e-12
    assert tr2.crossing_margin >= KAPPA / 4.0 - 1e-12
    assert tr1.crossing_margin == pytest.approx(2.0 * KAPPA / 3.0, rel=1e-12)
    assert tr2.crossing_margin == pytest.approx(KAPPA / 3.0, rel=1e-12)


def test_constant_field_weak_curves(const_fields):
    wc = build_weak_curves(const_fields)
    assert wc.theta1 == pytest.approx(KAPPA * T_END / 3.0, rel=1e-9)
    assert wc.theta2 == pytest.approx(2.0 * KAPPA * T_END / 3.0, rel=1e-9)
    tt = wc.times
    assert np.allclose(wc.s1_samples, KAPPA * tt / 3.0, atol=1e-9 * T_END)
    assert np.allclose(wc.s2_samples, 2.0 * KAPPA * tt / 3.0,
                       atol=1e-9 * T_END)
    assert wc.s1_samples[0] == 0.0 and wc.s2_samples[0] == 0.0


def test_weak_curves_unbracketed():
    class Runaway(ConstantFieldSet):
        def shock_at(self, tau):
            return 2.0 * self.kappa * tau

        def shock_speed_at(self, tau):
            return 2.0 * self.kappa

    with pytest.raises(RootNotBracketed):
        build_weak_curves(Runaway(KAPPA, T_END))


def test_empty_interval_raises(const_fields):
    with pytest.raises(StepSizeUnderflow):
        chars.trace_backward(1, 0.01, 0.0, const_fields)


def test_region_tags(const_fields):
    t = T_END
    tr = chars.trace_backward(1, 0.6 * KAPPA * t, t, const_fields)
    assert tr.region_tags[0] == "dz"  # anchor between s1 and s2
    tr3 = chars.trace_eta(0.02, const_fields, t)
    assert tr3.region_tags[-1] == "ahead"


def test_burgers_straight_lines():
    datum = CuspDatum(kappa=KAPPA, b=1.0)
    fs = BurgersFieldSet(datum, 1e-3)
    for x in (-0.02, -0.005, 0.01):
        w0x = float(datum.w0(np.array([x]))[0])
        tr = chars.trace_eta(x, fs, 1e-3)
        if tr.stop_time is None:
            expect = x + 1e-3 * w0x
            assert tr.positions[-1] == pytest.approx(expect, abs=2e-12)


def test_burgers_crossing_time_exact():
    datum = CuspDatum(kappa=KAPPA, b=1.0)
    fs = BurgersFieldSet(datum, 1e-3)
    x = -1e-5
    w0x = float(datum.w0(np.array([x]))[0])  # > kappa behind the front
    tr = chars.trace_eta(x, fs, 1e-3)
    # straight line x + tau w0(x) meets kappa tau at -x / (w0 - kappa)
    expect = -x / (w0x - KAPPA)
    assert tr.stop_time == pytest.approx(expect, rel=1e-9)
    assert tr.positions[-1] == pytest.approx(KAPPA * tr.stop_time, rel=1e-12)
    assert tr.crossing_margin == pytest.approx(w0x - KAPPA, rel=1e-6)


def test_backward_trace_duality(const_fields):
    # backward from the forward endpoint returns to the anchor
    t = T_END
    theta = 0.9 * KAPPA * t
    tr = chars.trace_backward(2, theta, t, const_fields)
    assert tr.stop_time is not None
    # forward from the crossing point along the same family lands back
    t_star = tr.stop_time
    pos_star = tr.positions[-1]
    p, ts, stop, _ = chars._integrate(const_fields, 2, pos_star, t_star, t,
                                      stop_at_shock=False)
    assert p[-1] == pytest.approx(theta, abs=1e-13)
