"""The zero-phase contour y = y_u(x) on which F_u is real and positive.

For x > 0 the phase lift Phi_u(x, y) is strictly decreasing in y, running
from x*sum(u) + m_- pi (y -> -inf) down to x*sum(u) - m_+ pi (y -> +inf).
A zero therefore exists exactly on

    D_u = {x > 0 : -m_- pi < x sum(u) < m_+ pi},

and y_u is extended evenly through y_u(0) = 0 to E_u = -D_u U {0} U D_u.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .charfun import _phase, eval_F, log_modulus, phase_partials
from .direction import DirectionVector, as_direction
from .errors import BracketFailure, ImaginaryResidueTooLarge, NonpositiveX, XOutsideDomain

PHASE_TOL = 1e-12
IMAG_REL_TOL = 1e-9
Y_V_SERIES_CUTOFF = 1e-3

_MAX_EXPAND = 1100
_MAX_ITER = 200
_EPS = np.finfo(float).eps


class SumCase(enum.Enum):
    PositiveSum = "PositiveSum"
    NegativeSum = "NegativeSum"
    ZeroSum = "ZeroSum"


@dataclass(frozen=True)
class ContourDomain:
    case_tag: SumCase
    d_u_right: float  # right end of D_u, +inf in the centered case

    @property
    def e_u(self) -> tuple[float, float]:
        return (-self.d_u_right, self.d_u_right)

    @property
    def finite(self) -> bool:
        return math.isfinite(self.d_u_right)

    def contains(self, x) -> np.ndarray:
        return np.abs(np.asarray(x, dtype=float)) < self.d_u_right


@dataclass(frozen=True)
class ContourSample:
    x: float
    y: float
    y_prime: float
    f_tilde: float
    residual_phase: float


def domain(u: DirectionVector) -> ContourDomain:
    u = as_direction(u)
    s = u.sum_u
    if s > 0:
        return ContourDomain(SumCase.PositiveSum, u.m_plus * math.pi / s)
    if s < 0:
        return ContourDomain(SumCase.NegativeSum, u.m_minus * math.pi / -s)
    return ContourDomain(SumCase.ZeroSum, math.inf)


def _solve_positive(u: DirectionVector, x: np.ndarray, seed: np.ndarray):
    """Vectorized safeguarded Newton for Phi_u(x, y) = 0, x > 0.

    Returns (y, |Phi_u(x, y)|).
    """
    y = seed.astype(float).copy()
    f = _phase(u, x, y)
    lo = np.where(f >= 0, y, -np.inf)
    hi = np.where(f <= 0, y, np.inf)

    # geometric bracket expansion away from the seed
    step = np.maximum(1.0, np.abs(y))
    need = ~(np.isfinite(lo) & np.isfinite(hi))
    for _ in range(_MAX_EXPAND):
        if not need.any():
            break
        idx = np.nonzero(need)[0]
        up = np.isinf(hi[idx])
        trial = np.where(up, y[idx] + step[idx], y[idx] - step[idx])
        if not np.all(np.isfinite(trial)):
            raise BracketFailure("bracket expansion overflowed; x is outside D_u?")
        ft = _phase(u, x[idx], trial)
        above = ft > 0
        lo[idx] = np.where(above, trial, lo[idx])
        hi[idx] = np.where(~above, trial, hi[idx])
        step[idx] *= 2.0
        need[idx] = ~(np.isfinite(lo[idx]) & np.isfinite(hi[idx]))
    if need.any():
        raise BracketFailure("could not bracket the zero of the phase lift")

    best_y = y.copy()
    best_f = np.abs(f)
    active = f != 0
    force_bisect = np.zeros_like(active)
    width = hi - lo
    for _ in range(_MAX_ITER):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        xa, ya, fa = x[idx], y[idx], f[idx]
        la, ha = lo[idx], hi[idx]
        _, dy = phase_partials(u, xa, ya)
        with np.errstate(divide="ignore", invalid="ignore"):
            yn = ya - fa / dy
        bad = ~((yn > la) & (yn < ha)) | force_bisect[idx]
        yn = np.where(bad, la + 0.5 * (ha - la), yn)
        fn = _phase(u, xa, yn)
        la = np.where(fn >= 0, yn, la)
        ha = np.where(fn <= 0, yn, ha)
        new_width = ha - la
        force_bisect[idx] = new_width > 0.5 * width[idx]
        width[idx] = new_width
        lo[idx], hi[idx], y[idx], f[idx] = la, ha, yn, fn
        better = np.abs(fn) < best_f[idx]
        best_y[idx] = np.where(better, yn, best_y[idx])
        best_f[idx] = np.where(better, np.abs(fn), best_f[idx])
        # stop on step size, not on |Phi|: dPhi/dy can be tiny where y is large
        ymag = np.maximum(1.0, np.abs(yn))
        done = (fn == 0) | (new_width <= 4 * _EPS * ymag) | (np.abs(yn - ya) <= _EPS * ymag)
        active[idx] = ~done
    if np.any(best_f > PHASE_TOL):
        raise BracketFailure(f"phase residual {best_f.max():.3g} above tolerance")
    return best_y, best_f


def _prepare(u, x, dom: ContourDomain | None = None):
    u = as_direction(u)
    dom = dom or domain(u)
    x = np.asarray(x, dtype=float)
    if not np.all(dom.contains(x)):
        raise XOutsideDomain(f"x must lie in E_u = ({-dom.d_u_right}, {dom.d_u_right})")
    return u, dom, x


def _solve_abs(u: DirectionVector, ax: np.ndarray, seed=None):
    # ax >= 0 flat array; returns (y, residual)
    y = np.zeros_like(ax)
    res = np.zeros_like(ax)
    pos = ax > 0
    if pos.any():
        s = np.zeros(int(pos.sum())) if seed is None else np.broadcast_to(seed, ax.shape)[pos]
        y[pos], res[pos] = _solve_positive(u, ax[pos], s)
    return y, res


def solve_y(u, x, seed=None):
    """y_u(x): the unique zero of Phi_u(|x|, .) (0 at x = 0)."""
    u, _, xa = _prepare(u, x)
    y, _ = _solve_abs(u, np.abs(xa).ravel(), None if seed is None else np.ravel(seed))
    y = y.reshape(xa.shape)
    return y.item() if np.ndim(x) == 0 else y


def y_v_closed(x):
    """y_v(x) = 1 - x cot x for the one-dimensional vector v = (1), |x| < pi."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) >= math.pi):
        raise XOutsideDomain("y_v is defined on (-pi, pi)")
    small = np.abs(xa) < Y_V_SERIES_CUTOFF
    x2 = xa * xa
    safe = np.where(small, 1.0, xa)
    res = np.where(small, x2 / 3.0 + x2 * x2 / 45.0, 1.0 - safe / np.tan(safe))
    return res.item() if np.ndim(x) == 0 else res


def _diff_sums(u: DirectionVector, x, y):
    # A = sum_j x/(x^2 + (1/u_j - y)^2), B = sum_j (-y + u_j (x^2 + y^2))/(x^2 + (1/u_j - y)^2)
    uu = u.array
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ux = np.multiply.outer(x, uu)
    c = 1.0 - np.multiply.outer(y, uu)
    w = uu * uu / (ux * ux + c * c)
    r2 = (x * x + y * y)[..., None]
    a = np.sum(w * x[..., None], axis=-1)
    b = np.sum(w * (-y[..., None] + uu * r2), axis=-1)
    return a, b


def y_prime(u, x, y):
    """Slope of the contour from the implicit differential equation, x > 0."""
    u = as_direction(u)
    if np.any(np.asarray(x) <= 0):
        raise NonpositiveX("the contour slope formula needs x > 0")
    a, b = _diff_sums(u, x, y)
    res = b / a
    return res.item() if np.ndim(x) == 0 and np.ndim(y) == 0 else res


def log_f_tilde_slope(u, x, y):
    """Closed-form d/dx log F~_u(x) = -(A^2 + B^2)/A at a contour point, x > 0."""
    u = as_direction(u)
    if np.any(np.asarray(x) <= 0):
        raise NonpositiveX("the log-derivative formula needs x > 0")
    a, b = _diff_sums(u, x, y)
    res = -(a * a + b * b) / a
    return res.item() if np.ndim(x) == 0 and np.ndim(y) == 0 else res


def _f_tilde_from(u: DirectionVector, ax, y, res):
    lm = log_modulus(u, ax, y)
    mod = np.exp(lm)
    # on the contour F = |F| exp(i Phi) with Phi the (tiny) achieved phase
    phase = np.where(ax > 0, _phase(u, np.where(ax > 0, ax, 1.0), y), 0.0)
    re = mod * np.cos(phase)
    im = mod * np.sin(phase)
    if np.any(np.abs(im) > IMAG_REL_TOL * np.abs(re)):
        raise ImaginaryResidueTooLarge("F_u is not real on the computed contour")
    return re


def f_tilde_array(u: DirectionVector, ax: np.ndarray, seed=None):
    """F~_u at nonnegative abscissae (no domain check, used by the integrators)."""
    y, res = _solve_abs(u, ax, seed)
    return _f_tilde_from(u, ax, y, res)


def eval_f_tilde(u, x):
    """F~_u(x) = F_u(x + i y_u(x)), a positive real even function on E_u."""
    u, _, xa = _prepare(u, x)
    ax = np.abs(xa).ravel()
    out = f_tilde_array(u, ax).reshape(xa.shape)
    return out.item() if np.ndim(x) == 0 else out


def eval_f_tilde_direct(u, x):
    """F~_u via the complex product of eval_F, returning (real, imag)."""
    u = as_direction(u)
    y = solve_y(u, x)
    val = eval_F(u, np.asarray(x) + 1j * np.asarray(y))
    return np.real(val), np.imag(val)


_TRACE_CHUNK = 64


def trace(u, grid) -> list[ContourSample]:
    """Contour samples at the grid abscissae, warm-started chunk by chunk."""
    grid = np.asarray(list(grid), dtype=float)
    if grid.size == 0:
        return []
    u, _, grid = _prepare(u, grid)
    ax = np.abs(grid)
    order = np.argsort(ax, kind="stable")
    y = np.zeros_like(ax)
    res = np.zeros_like(ax)
    seed = 0.0
    for start in range(0, order.size, _TRACE_CHUNK):
        idx = order[start:start + _TRACE_CHUNK]
        yc, rc = _solve_abs(u, ax[idx], np.full(idx.size, seed))
        y[idx], res[idx] = yc, rc
        seed = yc[-1]
    ft = _f_tilde_from(u, ax, y, res)
    slope = np.zeros_like(ax)
    pos = ax > 0
    if pos.any():
        slope[pos] = y_prime(u, ax[pos], y[pos])
    slope = np.sign(grid) * slope
    return [ContourSample(float(a), float(b), float(c), float(d), float(e))
            for a, b, c, d, e in zip(grid, y, slope, ft, res)]


def log_f_tilde(u, x):
    """log F~_u(x); stays finite where F~_u itself underflows."""
    u, _, xa = _prepare(u, x)
    ax = np.abs(xa).ravel()
    y, _ = _solve_abs(u, ax)
    out = log_modulus(u, ax, y).reshape(xa.shape)
    return out.item() if np.ndim(x) == 0 else out
