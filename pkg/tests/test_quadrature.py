import math

import numpy as np
import pytest
from scipy import integrate as sint

from simplexslice.errors import ToleranceNotMet
from simplexslice.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, gk15, integrate


def test_weights_sum_to_two():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.allclose(NODES, -NODES[::-1])


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_exact_for_polynomials(deg):
    exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
    assert KRONROD_WEIGHTS @ NODES ** deg == pytest.approx(exact, abs=1e-14)
    if deg <= 13:
        assert GAUSS_WEIGHTS @ NODES ** deg == pytest.approx(exact, abs=1e-14)


def test_gauss_not_exact_beyond_13():
    assert abs(GAUSS_WEIGHTS @ NODES ** 14 - 2 / 15) > 1e-8


def test_gk15_vectorized_panels():
    k, err, absk = gk15(np.cos, [0.0, 1.0], [1.0, 2.0])
    assert k == pytest.approx([math.sin(1), math.sin(2) - math.sin(1)], abs=1e-15)
    assert np.all(err < 1e-14)


@pytest.mark.parametrize("f,a,b", [
    (lambda x: np.exp(-x) * np.cos(5 * x), 0.0, 20.0),
    (lambda x: 1.0 / (1.0 + 25 * x * x), -1.0, 1.0),
    (lambda x: np.sqrt(x), 0.0, 1.0),
])
def test_matches_scipy(f, a, b):
    ref, _ = sint.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=500)
    res = integrate(f, [a, b], 1e-12, 1e-12)
    assert res.value == pytest.approx(ref, abs=5e-12)


def test_complex_integrand():
    res = integrate(lambda x: np.exp(1j * x), [0.0, math.pi], 1e-13, 1e-13)
    assert res.value.real == pytest.approx(0.0, abs=1e-13)
    assert res.value.imag == pytest.approx(2.0, abs=1e-13)


def test_budget_exhaustion():
    with pytest.raises(ToleranceNotMet):
        integrate(lambda x: np.sin(1.0 / np.maximum(x, 1e-300)), [1e-6, 1.0], 1e-14, 1e-14, max_panels=50)
