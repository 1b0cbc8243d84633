import json
import math

import numpy as np
import pytest

from simplexslice import verify
from simplexslice.direction import as_direction, facet_direction

V = as_direction([1.0])
U = as_direction([0.8, 0.6])
MIXED = -facet_direction(3)


def test_report_invariant_and_json():
    r = verify.check_pointwise(U)
    assert r.passed == (r.worst_residual <= r.tolerance)
    js = r.to_json()
    assert json.loads(json.dumps(js))["check_name"] == "pointwise"


def test_lower_bound_equality_case():
    r = verify.check_lower_bound([[1.0, 0.0, 0.0]])
    assert r.passed and r.worst_residual <= 1e-12


def test_lower_bound_facet_margins_shrink():
    r = verify.check_lower_bound([facet_direction(n) for n in range(2, 9)])
    assert r.passed
    m = r.details["margins"]
    assert all(a > b > 0 for a, b in zip(m, m[1:]))


def test_contour_equivalence_cases():
    corpus = [U, facet_direction(4), as_direction([-0.9, 0.3, math.sqrt(0.1)])]
    r = verify.check_contour_equivalence(corpus)
    assert r.passed
    assert set(r.details["cases"]) == {"PositiveSum", "NegativeSum", "ZeroSum"}


def test_pointwise_and_sandwich():
    for u in (V, U, MIXED):
        assert verify.check_pointwise(u).passed
        assert verify.check_sandwich(u).passed
    assert verify.check_pointwise(V).worst_residual == 0.0
    assert verify.check_sandwich(V).worst_residual <= 1e-12
    at_origin = verify.check_pointwise(U, grid=[0.0])
    assert at_origin.worst_residual == 0.0


def test_pointwise_reference_value():
    from simplexslice.contour import eval_f_tilde
    assert eval_f_tilde(U, math.pi / 2) >= 2 / (math.e * math.pi)


def test_ode_including_near_origin():
    assert verify.check_ode(U).passed
    assert verify.check_ode(U, grid=[1e-3, 0.5]).passed
    r = verify.check_ode(V)
    assert r.passed and len(r.parts) == 2


def test_differential_inequality():
    for u in (U, MIXED, facet_direction(5)):
        assert verify.check_differential_inequality(u).passed


def test_cauchy_schwarz():
    r = verify.check_cauchy_schwarz(U)
    assert r.passed
    # single-term case is an equality
    rv = verify.check_cauchy_schwarz(V)
    assert rv.passed
    assert all(abs(p.worst_residual) <= 1e-13 for p in rv.parts[:2])


def test_collapse_identity_random():
    rng = np.random.default_rng(0)
    g = rng.standard_normal(6)
    u = as_direction(g / np.linalg.norm(g))
    x = rng.uniform(1e-3, 10, 1000)
    y = rng.uniform(-10, 10, 1000)
    *_, cl, cr, _ = verify.cauchy_schwarz_terms(u, x, y)
    assert np.max(np.abs(cl - cr) / np.maximum(1, np.abs(cr))) <= 1e-12


def test_logderiv():
    r = verify.check_logderiv(U, grid=np.linspace(1e-3, math.pi - 1e-2, 500))
    assert r.passed
    assert verify.check_logderiv(V).passed
    assert len(verify.check_logderiv(V).parts) == 3


def test_corpus_coverage():
    corpus = verify.build_corpus(42)
    assert len(corpus) >= 200
    sizes = {u.n_plus_1 for u in corpus}
    assert min(sizes) <= 2 and max(sizes) >= 12
    signs = {np.sign(u.sum_u) for u in corpus}
    assert signs == {-1.0, 0.0, 1.0}
    assert any(abs(u.array).max() >= 0.999 for u in corpus if u.n_plus_1 > 1)


def test_suite_deterministic():
    corpus = verify.build_corpus(7, 30)
    a = [r.to_json() for r in verify.run_suite(["pointwise", "sandwich"], corpus=corpus, vector_sample=6)]
    b = [r.to_json() for r in verify.run_suite(["sandwich", "pointwise"], corpus=corpus, vector_sample=6)]
    assert a == b
    assert [r["check_name"] for r in a] == ["pointwise", "sandwich"]


def test_unknown_check():
    with pytest.raises(ValueError):
        verify.run_suite(["nope"])
