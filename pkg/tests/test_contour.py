import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplexslice.charfun import eval_F, eval_phase_lift
from simplexslice.contour import (
    SumCase,
    domain,
    eval_f_tilde,
    eval_f_tilde_direct,
    log_f_tilde,
    log_f_tilde_slope,
    solve_y,
    trace,
    y_prime,
    y_v_closed,
)
from simplexslice.direction import as_direction, facet_direction
from simplexslice.errors import XOutsideDomain

from conftest import unit_vectors

V = as_direction([1.0])
U = as_direction([0.8, 0.6])
FIG = as_direction([math.sqrt(0.62), -math.sqrt(0.19), -math.sqrt(0.19)])


def test_domains():
    assert domain(V).case_tag is SumCase.PositiveSum
    assert domain(V).e_u == (-math.pi, math.pi)
    assert domain(U).d_u_right == pytest.approx(4.487990, abs=1e-6)
    assert domain(facet_direction(4)).case_tag is SumCase.ZeroSum
    assert not domain(facet_direction(4)).finite
    neg = as_direction([-0.8, -0.6])
    assert domain(neg).case_tag is SumCase.NegativeSum
    assert domain(neg).d_u_right == pytest.approx(4.487990, abs=1e-6)


def test_y_v_closed_values():
    assert y_v_closed(0.0) == 0.0
    assert y_v_closed(math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    x = np.array([0.999e-3, 1.001e-3])
    a, b = y_v_closed(x)
    assert a == pytest.approx(b * (0.999 / 1.001) ** 2, rel=1e-9)
    near = y_v_closed(np.array([3.0, 3.1, 3.14, 3.141]))
    assert np.all(np.diff(near) > 0) and near[-1] > 1000
    with pytest.raises(XOutsideDomain):
        y_v_closed(math.pi)


def test_solve_y_v_matches_closed_form():
    x = np.linspace(-3.14, 3.14, 1001)
    assert np.max(np.abs(solve_y(V, x) - y_v_closed(x))) < 1e-10 * 10
    assert solve_y(V, math.pi / 2) == pytest.approx(1.0, abs=1e-14)


def test_solve_y_against_bisection_oracle():
    # independent bisection on the literal arccot form in 40-digit arithmetic
    with mpmath.workdps(40):
        acot = lambda t: mpmath.pi / 2 - mpmath.atan(t)
        x = mpmath.mpf(1)
        u1, u2 = mpmath.mpf(0.8), mpmath.mpf(0.6)
        phi = lambda y: x * (u1 + u2) - acot((1 / u1 - y) / x) - acot((1 / u2 - y) / x)
        lo, hi = mpmath.mpf(-10), mpmath.mpf(10)
        for _ in range(200):
            mid = (lo + hi) / 2
            if phi(mid) > 0:
                lo = mid
            else:
                hi = mid
        ref = float(lo)
    assert solve_y(U, 1.0) == pytest.approx(ref, abs=1e-13)


def test_solve_y_origin_and_domain():
    assert solve_y(U, 0.0) == 0.0
    with pytest.raises(XOutsideDomain):
        solve_y(U, 5.0)
    with pytest.raises(XOutsideDomain):
        solve_y(V, -math.pi)


@given(unit_vectors(), st.floats(0.0, 1.0))
def test_zero_phase_and_even(v, frac):
    u = as_direction(v)
    right = min(domain(u).d_u_right, 30.0)
    x = frac * 0.999 * right
    y = solve_y(u, x)
    assert solve_y(u, -x) == y
    if x > 0:
        assert abs(eval_phase_lift(u, x, y)) <= 1e-12


@given(unit_vectors())
def test_smooth_at_origin(v):
    u = as_direction(v)
    for h in (1e-2, 1e-3, 1e-4):
        y0, yp, ym = solve_y(u, np.array([0.0, h, -h]))
        assert abs(yp - ym) / h == 0.0
        # y_u(x) ~ c x^2 near zero, so second differences stay bounded
        assert abs(yp + ym - 2 * y0) / h ** 2 < 10.0


def test_divergence_at_endpoints():
    for u, sign in ((U, 1), (as_direction([-0.8, -0.6]), -1), (as_direction([-0.9, 0.3, math.sqrt(0.1)]), -1)):
        right = domain(u).d_u_right
        x = right * (1 - np.logspace(-1, -7, 7))
        y = solve_y(u, x) * sign
        assert np.all(np.diff(y) > 0)
        assert y[-1] > 1e4


def test_centered_case_grows_linearly():
    u = facet_direction(3)
    x = np.array([10.0, 20.0, 40.0])
    y = solve_y(u, x)
    assert np.all(np.diff(y) > 0)
    assert y[2] / x[2] == pytest.approx(y[1] / x[1], rel=0.1)


def test_f_tilde_values():
    assert eval_f_tilde(U, 0.0) == 1.0
    assert eval_f_tilde(V, math.pi / 2) == pytest.approx(2 / (math.e * math.pi), rel=1e-13)
    re, im = eval_f_tilde_direct(U, np.linspace(-4, 4, 41))
    assert np.all(np.abs(im) <= 1e-9 * np.abs(re))
    assert np.allclose(re, eval_f_tilde(U, np.linspace(-4, 4, 41)), rtol=1e-12)


def test_log_f_tilde_consistent():
    x = np.linspace(0.1, 4.4, 20)
    assert np.allclose(np.exp(log_f_tilde(U, x)), eval_f_tilde(U, x), rtol=1e-12)


@given(unit_vectors(), st.floats(0.01, 0.95))
def test_slope_formula_against_differences(v, frac):
    u = as_direction(v)
    x = frac * min(domain(u).d_u_right, 10.0)
    h = 1e-5
    fd = (solve_y(u, x + h) - solve_y(u, x - h)) / (2 * h)
    yp = y_prime(u, x, solve_y(u, x))
    assert fd == pytest.approx(yp, rel=1e-5, abs=1e-7)
    fd = (log_f_tilde(u, x + h) - log_f_tilde(u, x - h)) / (2 * h)
    assert fd == pytest.approx(log_f_tilde_slope(u, x, solve_y(u, x)), rel=1e-5, abs=1e-7)


def test_logderiv_v_reference():
    slope = log_f_tilde_slope(V, math.pi / 2, 1.0)
    assert slope == pytest.approx(-(math.pi ** 2 / 4 + 1) / (math.pi / 2), rel=1e-14)
    assert slope == pytest.approx(-2.207416, abs=1e-6)


def test_trace():
    assert trace(V, []) == []
    grid = np.linspace(-3, 3, 601)
    samples = trace(V, grid)
    assert max(abs(s.y - y_v_closed(s.x)) for s in samples) < 1e-10
    assert samples[300].x == 0.0 and samples[300].f_tilde == 1.0
    fac = trace(facet_direction(3), np.linspace(-20, 20, 401))
    assert all(s.f_tilde > 0 for s in fac)
    fig = trace(FIG, np.linspace(-20, 20, 401))
    ys = np.array([s.y for s in fig])
    assert np.allclose(ys, ys[::-1])
    assert np.all(np.isfinite(ys))


def test_f_is_real_along_contour():
    x = np.linspace(-15, 15, 301)
    vals = eval_F(FIG, x + 1j * solve_y(FIG, x))
    assert np.all(np.abs(vals.imag) <= 1e-9 * np.abs(vals.real))
    assert np.all(vals.real > 0)
