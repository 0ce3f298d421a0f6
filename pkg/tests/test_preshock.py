import math

import numpy as np
import pytest

from azshock import errors
from azshock.preshock import (
    BurgersInverse,
    CuspDatum,
    burgers_flow,
    burgers_inverse,
    burgers_solution,
    burgers_solution_grid,
    cubic_roots_Zpm,
    extremal_labels,
    quartic_fractional_inverse,
    selfsimilar_profile_Wbar,
)


@pytest.fixture
def desk():
    return CuspDatum(kappa=4.0, b=1.0)


def test_datum_validation():
    with pytest.raises(ValueError):
        CuspDatum(kappa=0.5)
    with pytest.raises(ValueError):
        CuspDatum(kappa=4.0, b=0.1)
    with pytest.raises(ValueError):
        CuspDatum(kappa=4.0, b=1.0, c_coef=0.9)
    with pytest.raises(ValueError):
        CuspDatum(kappa=4.0, b=1.0, mbar=5.0)
    # remainder too steep against mbar |theta|
    with pytest.raises(ValueError):
        CuspDatum(kappa=4.0, b=1.0, g0=lambda th: 100.0 * np.asarray(th))


def test_w0_odd_cube_root(desk):
    assert desk.w0(0.0) == desk.kappa
    assert math.isclose(desk.w0(0.001), 4.0 - 0.1)
    assert math.isclose(desk.w0(-0.001), 4.0 + 0.1)


def test_burgers_flow_values(desk):
    assert burgers_flow(0.3, 0.0, desk) == 0.3
    t = 0.01
    x = (desk.b * t) ** 1.5
    assert math.isclose(burgers_flow(x, t, desk), desk.kappa * t, rel_tol=1e-14)
    assert math.isclose(burgers_flow(0.1, 0.01, desk),
                        0.1 + 0.01 * (4.0 - 0.1 ** (1.0 / 3.0)))


def test_cubic_roots_reference():
    zp, zm = cubic_roots_Zpm(0.0)
    assert math.isclose(zp, 1.0, abs_tol=1e-15)
    assert math.isclose(zm, -1.0, abs_tol=1e-15)
    with pytest.raises(ValueError):
        cubic_roots_Zpm(0.2)


def test_cubic_roots_are_roots_and_series():
    series = lambda z: (1.0 + z / 2.0 - 3.0 * z ** 2 / 8.0 + z ** 3 / 2.0
                        - 105.0 * z ** 4 / 128.0 + 1.5 * z ** 5)
    for zeta in np.linspace(-0.1, 0.1, 21):
        zp, zm = cubic_roots_Zpm(zeta)
        assert abs(zp ** 3 - zp - zeta) < 1e-14
        assert abs(zm ** 3 - zm - zeta) < 1e-14
        assert zm < zp
        # the next series coefficient is -3003/1024, so the sharp remainder
        # constant is just under 3.7 once the tail is included
        assert abs(zp - series(zeta)) <= 4.0 * abs(zeta) ** 6 + 1e-14
        assert abs(zm + series(-zeta)) <= 4.0 * abs(zeta) ** 6 + 1e-14
        # the middle root is minus the sum of the extreme pair
        assert abs(zp + zm - zeta - zeta ** 3 - 3.0 * zeta ** 5) \
            <= 40.0 * abs(zeta) ** 7 + 1e-14


def test_extremal_labels_pure_cusp_exact(desk):
    for t in (1e-5, 1e-4, 1e-3, 1e-2):
        xm, xp = extremal_labels(t, desk.kappa * t, desk)
        ref = (desk.b * t) ** 1.5
        assert abs(xp - ref) <= 1e-12 * ref
        assert abs(xm + ref) <= 1e-12 * ref
        # flow map really lands both labels on the front
        assert abs(burgers_flow(xp, t, desk) - desk.kappa * t) \
            <= 1e-12 * (1.0 + desk.kappa * t)
        assert abs(burgers_flow(xm, t, desk) - desk.kappa * t) \
            <= 1e-12 * (1.0 + desk.kappa * t)


def test_extremal_labels_range_and_inverse_context(desk):
    t = 1e-3
    inv = burgers_inverse(t, desk.kappa * t, desk)
    assert isinstance(inv, BurgersInverse)
    scale = (desk.b * t) ** 1.5
    for x in (inv.x_minus, inv.x_plus):
        assert 0.8 * scale < abs(x) < 1.2 * scale
    assert inv.x_minus < 0.0 < inv.x_plus


def test_extremal_labels_against_sign_scan_oracle():
    datum = CuspDatum(kappa=4.0, b=1.0, c_coef=0.05)
    t = 1e-3
    s = datum.kappa * t
    xm, xp = extremal_labels(t, s, datum)
    # dense-grid sign scan plus bisection on eta_B(x) - s
    span = 10.0 * (datum.b * t) ** 1.5
    xs = np.linspace(-span, span, 20001)
    res = burgers_flow(xs, t, datum) - s
    sign_flips = np.where(np.sign(res[:-1]) * np.sign(res[1:]) < 0)[0]
    roots = []
    for i in sign_flips:
        lo, hi = xs[i], xs[i + 1]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if (burgers_flow(lo, t, datum) - s) * (burgers_flow(mid, t, datum) - s) <= 0:
                hi = mid
            else:
                lo = mid
        roots.append(0.5 * (lo + hi))
    assert abs(min(roots) - xm) < 1e-10
    assert abs(max(roots) - xp) < 1e-10


def test_extremal_labels_corridor_guard(desk):
    with pytest.raises(errors.NoRoot):
        extremal_labels(1e-3, desk.kappa * 1e-3 + 1.0, desk)
    with pytest.raises(ValueError):
        extremal_labels(0.0, 0.0, desk)


def test_general_label_error_bound():
    datum = CuspDatum(kappa=4.0, b=1.0, c_coef=0.05,
                      g0=lambda th: 0.2 * np.asarray(th))
    ratios = []
    for t in np.logspace(-5, -2, 8):
        xm, xp = extremal_labels(t, datum.kappa * t, datum)
        ref = (datum.b * t) ** 1.5
        ratios.append(max(abs(xp - ref), abs(xm + ref)) / t ** 2)
    assert max(ratios) < datum.mbar ** 4


def test_burgers_solution_sides_and_jump(desk):
    t = 1e-3
    s = desk.kappa * t
    with pytest.raises(errors.AtShock):
        burgers_solution(s, t, s, desk)
    assert math.isclose(burgers_solution(0.3, 0.0, 0.0, desk),
                        float(desk.w0(0.3)))
    eps = 1e-14
    wl = burgers_solution(s - eps, t, s, desk)
    wr = burgers_solution(s + eps, t, s, desk)
    ref = desk.b ** 1.5 * math.sqrt(t)
    assert math.isclose(wl, desk.kappa + ref, rel_tol=1e-6)
    assert math.isclose(wr, desk.kappa - ref, rel_tol=1e-6)
    # mean of the one-sided limits through the labels is exactly kappa
    xm, xp = extremal_labels(t, s, desk)
    vals = desk.w0(np.array([xm, xp]))
    assert math.isclose(0.5 * float(vals.sum()), desk.kappa, rel_tol=1e-13)
    assert math.isclose(float(vals[0] - vals[1]), 2.0 * ref, rel_tol=1e-12)


def test_jump_time_derivative_fit(desk):
    # d/dt of the jump tracks b^{3/2} t^{-1/2} with a bounded additive error
    ts = np.logspace(-4, -2, 12)
    jumps = []
    for t in ts:
        xm, xp = extremal_labels(t, desk.kappa * t, desk)
        v = desk.w0(np.array([xm, xp]))
        jumps.append(float(v[0] - v[1]))
    jumps = np.asarray(jumps)
    mid = 0.5 * (ts[1:] + ts[:-1])
    dj = np.diff(jumps) / np.diff(ts)
    err = np.abs(dj - desk.b ** 1.5 * mid ** -0.5)
    assert np.all(err <= 2.0 * desk.mbar ** 4)


def test_monotone_outside_extremal_labels(desk):
    t = 1e-3
    xm, xp = extremal_labels(t, desk.kappa * t, desk)
    left = np.linspace(xm - 0.05, xm, 200)
    right = np.linspace(xp, xp + 0.05, 200)
    for xs in (left, right):
        vals = burgers_flow(xs, t, desk)
        assert np.all(np.diff(vals) > 0.0)


def test_mean_drift_bound():
    datum = CuspDatum(kappa=4.0, b=1.0, c_coef=0.05)
    for t in np.logspace(-4, -2, 6):
        xm, xp = extremal_labels(t, datum.kappa * t, datum)
        v = datum.w0(np.array([xm, xp]))
        assert abs(0.5 * float(v.sum()) - datum.kappa) <= datum.mbar ** 4 / 3.0 * t


def test_burgers_solution_grid_matches_scalar(desk):
    t = 1e-3
    s = desk.kappa * t
    thetas = np.array([s - 3e-4, s - 1e-5, s + 1e-5, s + 3e-4])
    grid = burgers_solution_grid(thetas, t, s, desk)
    for th, g in zip(thetas, grid):
        assert math.isclose(g, burgers_solution(float(th), t, s, desk),
                            rel_tol=1e-12)


def test_selfsimilar_profile():
    assert selfsimilar_profile_Wbar(0.0) == 0.0
    assert math.isclose(selfsimilar_profile_Wbar(-2.0), 1.0, rel_tol=1e-14)
    w = selfsimilar_profile_Wbar(10.0)
    # Newton oracle
    y = -1.0
    for _ in range(60):
        y -= (y ** 3 + y + 10.0) / (3.0 * y * y + 1.0)
    assert abs(w - y) < 1e-12
    # odd function, decreasing, cubic-dominated far field
    for v in (0.5, 3.0, 40.0):
        assert math.isclose(selfsimilar_profile_Wbar(-v),
                            -selfsimilar_profile_Wbar(v), rel_tol=1e-13)
    ys = np.linspace(-5, 5, 101)
    vals = [selfsimilar_profile_Wbar(v) for v in ys]
    assert np.all(np.diff(vals) < 0.0)


def test_quartic_inverse_pure_cube():
    y, coefs = quartic_fractional_inverse(1.0, 0.0, 8e-9)
    assert math.isclose(y, 2e-3, rel_tol=1e-12)
    assert coefs == (1.0, 0.0, 0.0)


def test_quartic_inverse_series_and_root():
    y, (c1, c2, c3) = quartic_fractional_inverse(1.0, 1.0, 1e-6)
    assert math.isclose(c1, 1.0) and math.isclose(c2, -1.0 / 3.0) \
        and math.isclose(c3, 1.0 / 3.0)
    series = 1e-2 - (1.0 / 3.0) * 1e-4 + (1.0 / 3.0) * 1e-6
    assert abs(y - series) < 10.0 * (1e-6) ** (4.0 / 3.0)
    assert abs(y ** 3 + y ** 4 - 1e-6) < 1e-18


def test_quartic_inverse_reference_coefficients():
    _, (c1, c2, c3) = quartic_fractional_inverse(8.0, 2.0, 1e-9)
    assert math.isclose(c1, 0.5)
    assert math.isclose(c2, -(1.0 / 3.0) * 2.0 * 8.0 ** (-5.0 / 3.0))
    assert math.isclose(c3, (1.0 / 3.0) * 4.0 * 8.0 ** -3.0)


def test_quartic_inverse_error_order():
    # series error shrinks like x^{4/3}: fit the log-log slope
    xs = np.logspace(-8, -4, 9)
    errs = []
    for x in xs:
        y, (c1, c2, c3) = quartic_fractional_inverse(1.0, 1.0, float(x))
        r = np.cbrt(x)
        errs.append(abs(y - (c1 * r + c2 * r * r + c3 * x)))
    slope = np.polyfit(np.log(xs), np.log(errs), 1)[0]
    assert 1.25 <= slope <= 1.45


def test_quartic_inverse_branch_guard():
    fold = -(27.0 / 256.0)
    with pytest.raises(errors.BranchAmbiguity):
        quartic_fractional_inverse(1.0, 1.0, 1.5 * fold)
    # negative x inside the fold stays on the origin branch
    y, _ = quartic_fractional_inverse(1.0, 1.0, 0.5 * fold)
    assert y < 0.0
    with pytest.raises(ValueError):
        quartic_fractional_inverse(-1.0, 0.0, 1e-3)
