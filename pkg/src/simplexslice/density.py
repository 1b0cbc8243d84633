"""Density at zero of Z = sum_j u_j (Y_j - 1), Y_j i.i.d. standard exponential.

Four independent routes:

* ``density_contour``: (1/2pi) times the integral of the positive function
  F~_u over E_u (the integral of F_u shifted onto its zero-phase contour);
* ``density_realaxis``: (1/2pi) times the oscillatory integral of F_u over R;
* ``density_partial_fractions``: closed-form hypoexponential density;
* ``density_monte_carlo``: a window estimator on simulated samples.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import mpmath
import numpy as np

from .charfun import eval_F
from .contour import domain, f_tilde_array
from .direction import DirectionVector, as_direction, section_volume_from_density
from .errors import (
    BadParameters,
    FewerThanTwoEntries,
    IllConditioned,
    ImaginaryResidueTooLarge,
    NotCentered,
    RepeatedEntries,
)
from .quadrature import integrate

PF_MIN_GAP = 1e-4
PF_MAX_WEIGHT = 1e8
PF_DIGITS = 50
MC_BATCH = 1 << 16


@dataclass(frozen=True)
class IntegrationConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 20000
    tail_epsilon: float = 1e-10
    endpoint_margin: float = 1e-6

    def __post_init__(self):
        for name, val in asdict(self).items():
            if not val > 0:
                raise BadParameters(f"IntegrationConfig.{name} must be positive, got {val}")


@dataclass
class DensityEstimate:
    value: float
    method: str
    error_estimate: float
    meta: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"value": self.value, "method": self.method,
                "error_estimate": self.error_estimate, "meta": self.meta}


def residue_reference() -> float:
    """exp(-1): 2 pi i Res(F_v, i) / (2 pi), the value attained by u = (1)."""
    return math.exp(-1.0)


def _geometric_edges(stop: float, first: float = 0.25) -> np.ndarray:
    k = math.ceil(math.log2(stop / first)) if stop > first else 0
    inner = first * 2.0 ** np.arange(k)
    inner = inner[inner < stop]
    return np.concatenate([[0.0], inner, [stop]])


def _tail_cutoff(u: DirectionVector, eps: float) -> tuple[float, float]:
    """Cutoff X with a certified bound on (1/pi) * integral_X^inf F~_u (centered u).

    Two bounds are combined: every factor satisfies |1 + i u_j t| >= |u_j| x,
    giving F~ <= P x^-k with P = 1/prod|u_j|; and the two-term envelope
    F~ <= C0 / x^2 once x exceeds the reciprocals of the remaining entries.
    """
    a = np.sort(np.abs(u.array))[::-1]
    k = a.size
    log_p = -float(np.sum(np.log(a)))
    x_prod = math.exp((log_p - math.log((k - 1) * math.pi * eps)) / (k - 1))
    c0 = 1.0 / (a[0] * a[1])
    r0 = float(1.0 / a[2:].min()) if k > 2 else 0.0
    x_env = max(r0, c0 / (math.pi * eps))
    x_max = max(min(x_prod, x_env), 1.0)
    bound = min(math.exp(log_p - (k - 1) * math.log(x_max)) / (k - 1),
                c0 / x_max if x_max >= r0 else math.inf) / math.pi
    return x_max, bound


def density_contour(u, cfg: IntegrationConfig | None = None) -> DensityEstimate:
    """G_u(0) as (1/pi) * integral over [0, sup E_u) of F~_u (F~_u is even)."""
    cfg = cfg or IntegrationConfig()
    u = as_direction(u)
    dom = domain(u)

    def integrand(xs):
        return f_tilde_array(u, xs)

    meta: dict[str, Any] = {"case": dom.case_tag.value}
    if dom.finite:
        right = dom.d_u_right
        cut = right * (1.0 - cfg.endpoint_margin)
        edges = np.linspace(0.0, cut, 9)
        # F~_u is strictly decreasing on D_u, so the skipped piece is at most F~(cut) * gap
        remainder = float(integrand(np.array([cut]))[0]) * (right - cut) / math.pi
        meta.update(d_u_right=right, truncation=cut)
    else:
        cut, remainder = _tail_cutoff(u, cfg.tail_epsilon)
        edges = _geometric_edges(cut)
        meta.update(truncation=cut)
    res = integrate(integrand, edges, cfg.abs_tol * math.pi, cfg.rel_tol,
                    max_panels=cfg.max_subdivisions)
    meta.update(nodes=res.n_eval, panels=res.n_panels, tail_bound=remainder)
    return DensityEstimate(res.value / math.pi, "Contour",
                           res.error / math.pi + remainder, meta)


def _realaxis_edges(u: DirectionVector, stop: float) -> np.ndarray:
    # panels no wider than a quarter period of the local phase rate of F_u
    au = np.abs(u.array)
    mu = abs(u.sum_u)

    def rate(t):
        return mu + float(np.sum(au / (1.0 + (au * t) ** 2)))

    switch = min(stop, 10.0 / au.min())
    edges = [0.0]
    t = 0.0
    while t < switch:
        t = min(t + min(0.5 * math.pi / rate(t), max(t, 0.5)), stop)
        edges.append(t)
    if t < stop:
        if mu > 0:
            w = 0.5 * math.pi / rate(t)
            n = math.ceil((stop - t) / w)
            edges.extend(np.linspace(t, stop, n + 1)[1:])
        else:
            g = _geometric_edges(stop / t, 1.0)[1:] * t
            edges.extend(g[g > t])
    return np.asarray(edges)


def density_realaxis(u, cfg: IntegrationConfig | None = None) -> DensityEstimate:
    """G_u(0) by Fourier inversion along the real axis.

    The integral is truncated at X where a certified tail bound falls below
    tail_epsilon: |F_u(t)| <= P t^-k, and when sum(u) != 0 one integration by
    parts gives |int_X^inf F_u| <= 2 P X^-k / |sum u|.
    """
    cfg = cfg or IntegrationConfig()
    u = as_direction(u)
    k = u.n_plus_1
    if k < 2:
        raise FewerThanTwoEntries("F_u is not absolutely integrable with a single nonzero entry")
    mu = abs(u.sum_u)
    log_p = -float(np.sum(np.log(np.abs(u.array))))
    eps = cfg.tail_epsilon
    cands = [math.exp((log_p - math.log((k - 1) * math.pi * eps)) / (k - 1))]
    if mu > 0:
        cands.append(math.exp((math.log(2.0) + log_p - math.log(mu * math.pi * eps)) / k))
    stop = max(min(cands), 10.0)
    tail = math.exp(log_p - (k - 1) * math.log(stop)) / (k - 1)
    if mu > 0:
        tail = min(tail, 2.0 * math.exp(log_p - k * math.log(stop)) / mu)
    tail /= math.pi

    def integrand(ts):
        return eval_F(u, ts) + eval_F(u, -ts)

    edges = _realaxis_edges(u, stop)
    res = integrate(integrand, edges, cfg.abs_tol * 2 * math.pi, cfg.rel_tol,
                    max_panels=edges.size + cfg.max_subdivisions)
    value = res.value.real / (2 * math.pi)
    imag = res.value.imag / (2 * math.pi)
    err = res.error / (2 * math.pi) + tail
    if abs(imag) > max(1e-9, 10 * err):
        raise ImaginaryResidueTooLarge(f"real-axis integral has imaginary part {imag:.3g}")
    meta = {"truncation": stop, "nodes": res.n_eval, "panels": res.n_panels,
            "tail_bound": tail, "imag": imag}
    return DensityEstimate(value, "RealAxis", err, meta)


def _pf_weights(u: DirectionVector):
    vals = sorted(u.entries)
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    if gaps and min(gaps) <= 4 * np.finfo(float).eps:
        raise RepeatedEntries("partial fractions need pairwise distinct entries")
    if gaps and min(gaps) < PF_MIN_GAP:
        raise IllConditioned(f"entries closer than {PF_MIN_GAP:g}; use the contour method")
    us = [mpmath.mpf(e) for e in u.entries]
    weights = [mpmath.fprod(uj / (uj - uk) for k, uk in enumerate(us) if k != j)
               for j, uj in enumerate(us)]
    if max(abs(w) for w in weights) > PF_MAX_WEIGHT:
        raise IllConditioned("partial-fraction weights exceed 1e8")
    return us, weights


def partial_fraction_weights(u) -> list[float]:
    """A_j = prod_{k != j} u_j / (u_j - u_k)."""
    with mpmath.workdps(PF_DIGITS):
        return [float(w) for w in _pf_weights(as_direction(u))[1]]


def density_partial_fractions(u) -> float:
    """Closed-form G_u(0) for pairwise distinct entries.

    prod_j 1/(1 + i u_j t) = sum_j A_j / (1 + i u_j t), and 1/(1 + i u_j t) is
    the transform of the density of u_j Y, namely exp(-s/u_j)/|u_j| on the
    side s/u_j > 0.  G_u(0) is the density of sum u_j Y_j at s = mu = sum(u),
    so only poles whose sign matches mu contribute.  For mu = 0 both one-sided
    limits agree (the density is continuous) and the positive side is used.
    Evaluated in 50-digit arithmetic since the A_j alternate in sign.
    """
    u = as_direction(u)
    with mpmath.workdps(PF_DIGITS):
        us, weights = _pf_weights(u)
        mu = mpmath.fsum(us)
        side = 1 if mu >= 0 else -1
        total = mpmath.fsum(w / abs(uj) * mpmath.exp(-mu / uj)
                            for w, uj in zip(weights, us) if uj * side > 0)
    return float(total)


def estimate_partial_fractions(u) -> DensityEstimate:
    """density_partial_fractions wrapped as an estimate (error: double rounding)."""
    u = as_direction(u)
    value = density_partial_fractions(u)
    return DensityEstimate(value, "PartialFractions", 4 * np.finfo(float).eps * abs(value),
                           {"digits": PF_DIGITS})


def density_monte_carlo(u, n_samples: int = 1_000_000, bandwidth: float = 0.01,
                        seed: int = 0) -> DensityEstimate:
    """Window estimate P(|Z| <= h) / (2h) with its binomial standard error.

    Samples are drawn in fixed-size batches, each from its own child of
    SeedSequence(seed), so the result does not depend on evaluation order.
    """
    if n_samples < 10_000 or not bandwidth > 0:
        raise BadParameters("need n_samples >= 1e4 and bandwidth > 0")
    u = as_direction(u)
    uu = u.array
    n_batches = -(-n_samples // MC_BATCH)
    children = np.random.SeedSequence(seed).spawn(n_batches)
    hits = 0
    for i, child in enumerate(children):
        m = min(MC_BATCH, n_samples - i * MC_BATCH)
        rng = np.random.default_rng(child)
        z = (rng.standard_exponential((m, uu.size)) - 1.0) @ uu
        hits += int(np.count_nonzero(np.abs(z) <= bandwidth))
    p = hits / n_samples
    se = math.sqrt(max(p * (1 - p), 1.0 / n_samples) / n_samples) / (2 * bandwidth)
    meta = {"n_samples": n_samples, "bandwidth": bandwidth, "seed": seed, "hits": hits}
    return DensityEstimate(p / (2 * bandwidth), "MonteCarlo", se, meta)


def section_volume(a, n: int, cfg: IntegrationConfig | None = None) -> float:
    """(n-1)-volume of the central section of the n-simplex orthogonal to ``a``."""
    if not isinstance(a, DirectionVector):
        a = as_direction(a)
    if a.n_plus_1 > n + 1:
        raise BadParameters(f"direction has {a.n_plus_1} entries, more than n+1 = {n + 1}")
    if not a.is_centered:
        raise NotCentered(f"central sections need sum(a) = 0, got {a.sum_u:.3g}")
    return section_volume_from_density(n, density_contour(a, cfg).value)
