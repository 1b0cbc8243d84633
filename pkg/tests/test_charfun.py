import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from simplexslice.charfun import (
    arccot,
    eval_F,
    eval_modulus,
    eval_phase_lift,
    eval_psi,
    log_modulus,
    phase_partials,
    tail_envelope,
)
from simplexslice.direction import as_direction
from simplexslice.errors import FewerThanTwoEntries, NonpositiveX, PoleHit, YOutOfRange

from conftest import unit_vectors

V = as_direction([1.0])
U = as_direction([0.8, 0.6])

xs = st.floats(0.01, 30.0)
ys = st.floats(-5.0, 5.0)


def mp_phase(entries, x, y):
    """Phase lift written out term by term with an arccot of range (0, pi)."""
    with mpmath.workdps(40):
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        acot = lambda t: mpmath.pi / 2 - mpmath.atan(t)
        total = x * mpmath.fsum(mpmath.mpf(u) for u in entries)
        for u in map(mpmath.mpf, entries):
            if u > 0:
                total -= acot((1 / u - y) / x)
            else:
                total += acot(-(1 / u - y) / x)
        return float(total)


def test_F_at_origin():
    assert eval_F(U, 0.0) == 1.0
    assert eval_modulus(U, 0.0, 0.0) == 1.0


def test_F_v_at_reference_point():
    val = eval_F(V, math.pi / 2 + 1j)
    assert val.real == pytest.approx(2 / (math.e * math.pi), rel=1e-14)
    assert abs(val.imag) < 1e-15


def test_pole_hit():
    with pytest.raises(PoleHit):
        eval_F(U, 1j / 0.8)
    with pytest.raises(PoleHit):
        log_modulus(U, 0.0, 1 / 0.6)


def test_modulus_on_real_axis():
    x = np.linspace(-10, 10, 101)
    assert np.allclose(eval_modulus(V, x, 0.0), 1 / np.sqrt(1 + x * x), rtol=1e-14)
    ref = 1 / np.sqrt(1 + 0.64 * x * x) / np.sqrt(1 + 0.36 * x * x)
    assert np.allclose(eval_modulus(U, x, 0.0), ref, rtol=1e-14)


@given(unit_vectors(), xs, ys)
def test_modulus_matches_product(v, x, y):
    u = as_direction(v)
    f = eval_F(u, x + 1j * y)
    assert eval_modulus(u, x, y) == pytest.approx(abs(f), rel=1e-12)


@given(unit_vectors(), xs, ys)
def test_phase_lift_is_an_argument(v, x, y):
    u = as_direction(v)
    phi = eval_phase_lift(u, x, y)
    d = (phi - np.angle(eval_F(u, x + 1j * y))) / (2 * math.pi)
    assert abs(d - round(d)) * 2 * math.pi < 1e-10


@given(unit_vectors(max_size=5), st.floats(0.05, 10.0), ys)
def test_phase_lift_against_literal_arccot(v, x, y):
    u = as_direction(v)
    if np.min(np.abs(1 / u.array - y)) < 1e-6:
        return
    assert eval_phase_lift(u, x, y) == pytest.approx(mp_phase(u.entries, x, y), abs=1e-11)


def test_phase_lift_v_closed_form():
    x = np.linspace(0.01, 6, 50)
    for y in (-3.0, 0.0, 0.5, 1.0, 4.0):
        assert np.allclose(eval_phase_lift(V, x, y), x - arccot((1 - y) / x), atol=1e-14)
    assert eval_phase_lift(V, math.pi / 2, 1.0) == pytest.approx(0.0, abs=1e-15)


@given(unit_vectors(), st.floats(0.05, 20.0))
def test_phase_decreasing_in_y(v, x):
    u = as_direction(v)
    y = np.linspace(-10, 10, 401)
    phi = eval_phase_lift(u, x, y)
    assert np.all(np.diff(phi) < 0)


def test_phase_needs_positive_x():
    with pytest.raises(NonpositiveX):
        eval_phase_lift(U, 0.0, 0.1)


@given(unit_vectors(), xs, ys)
def test_conjugate_symmetry(v, x, y):
    u = as_direction(v)
    a = eval_F(u, -x + 1j * y)
    b = eval_F(u, x + 1j * y)
    assert a == pytest.approx(b.conjugate(), rel=1e-13, abs=1e-300)


@given(unit_vectors(), st.floats(0.01, 5.0), st.floats(-3.0, 3.0))
def test_phase_partials_match_differences(v, x, y):
    u = as_direction(v)
    if np.min(np.abs(1 / u.array - y)) < 0.05:
        return
    h = 1e-6
    dx, dy = phase_partials(u, x, y)
    fdx = (eval_phase_lift(u, x + h, y) - eval_phase_lift(u, x - h, y)) / (2 * h)
    fdy = (eval_phase_lift(u, x, y + h) - eval_phase_lift(u, x, y - h)) / (2 * h)
    assert dx == pytest.approx(fdx, rel=1e-5, abs=1e-6)
    assert dy == pytest.approx(fdy, rel=1e-5, abs=1e-6)


@given(unit_vectors(), st.floats(1e-3, 1.0), st.floats(-0.9, 0.9))
def test_psi_times_x_is_phase(v, x, y):
    u = as_direction(v)
    assert x * eval_psi(u, x, y) == pytest.approx(eval_phase_lift(u, x, y), abs=1e-12)


@given(unit_vectors())
def test_psi_at_origin(v):
    u = as_direction(v)
    assert eval_psi(u, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    h = 1e-5
    d = (eval_psi(u, 0.0, h) - eval_psi(u, 0.0, -h)) / (2 * h)
    assert d == pytest.approx(-1.0, abs=1e-6)


def test_psi_series_branch_continuous():
    x = np.array([0.999e-4, 1.001e-4]) / 0.8
    a, b = eval_psi(U, x, 0.0)
    assert a == pytest.approx(b, abs=1e-9)


def test_psi_y_range():
    with pytest.raises(YOutOfRange):
        eval_psi(U, 0.1, 1.0)


@given(unit_vectors(min_size=2), st.floats(0.01, 1e3), st.floats(-8.0, 8.0))
def test_envelope_dominates_modulus(v, x, y):
    u = as_direction(v)
    if u.n_plus_1 < 2:
        return
    assert tail_envelope(u, x, y) >= eval_modulus(u, x, y) * (1 - 1e-12)


def test_envelope_dominates_on_random_grid():
    rng = np.random.default_rng(3)
    for k in (2, 3, 6):
        g = rng.standard_normal(k)
        u = as_direction(g / np.linalg.norm(g))
        x = rng.uniform(1e-3, 50, 10_000)
        y = rng.uniform(-10, 10, 10_000)
        assert np.all(tail_envelope(u, x, y) >= eval_modulus(u, x, y) * (1 - 1e-12))


def test_envelope_decay():
    x = np.array([10.0, 100.0, 1000.0])
    scaled = tail_envelope(U, x, 0.0) * x * x
    assert np.all(scaled <= 1 / (0.8 * 0.6) + 1e-12)
    assert scaled[-1] == pytest.approx(1 / 0.48, rel=1e-5)


def test_envelope_needs_two_entries():
    with pytest.raises(FewerThanTwoEntries):
        tail_envelope(V, 1.0, 0.0)
