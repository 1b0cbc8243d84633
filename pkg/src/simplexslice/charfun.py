"""Characteristic function F_u(t) = prod_j exp(i u_j t) / (1 + i u_j t).

F_u is the Fourier transform of the density of sum_j u_j (Y_j - 1) with Y_j
standard exponential.  Besides F itself this module provides the exact modulus,
a certified decay envelope, and the real-valued phase lift Phi_u (a continuous
branch of arg F_u(x + iy) on x > 0) together with its analytic extension
psi_u = Phi_u / x through x = 0.

All functions accept scalars or numpy arrays for the coordinates and broadcast.
"""

from __future__ import annotations

import math

import numpy as np

from .direction import DirectionVector
from .errors import FewerThanTwoEntries, NonpositiveX, PoleHit, YOutOfRange

POLE_EPS = 1e-300
PHI_SERIES_CUTOFF = 1e-4

# pi split into a double and its rounding error, used to subtract whole
# multiples of pi from the phase without losing the small remainder
_PI_HI = math.pi
_PI_LO = 1.2246467991473532e-16


def arccot(theta):
    """Continuous arccot with range (0, pi)."""
    return np.pi / 2 - np.arctan(theta)


def _scalar_out(res, *inputs):
    if all(np.ndim(a) == 0 for a in inputs):
        return res.item() if isinstance(res, np.ndarray) else res
    return res


def eval_F(u: DirectionVector, t):
    """F_u(t) for complex t (scalar or array)."""
    t_arr = np.asarray(t, dtype=complex)
    uu = u.array
    den = 1.0 + 1j * np.multiply.outer(t_arr, uu)
    if np.any(np.abs(den) < POLE_EPS):
        raise PoleHit(f"t hits a pole i/u_j of F_u")
    factors = np.exp(1j * np.multiply.outer(t_arr, uu)) / den
    return _scalar_out(np.prod(factors, axis=-1), t)


def log_modulus(u: DirectionVector, x, y):
    """log |F_u(x + iy)| = -y sum(u) - 1/2 sum_j log(u_j^2 x^2 + (1 - u_j y)^2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    uu = u.array
    ux = np.multiply.outer(x, uu)
    c = 1.0 - np.multiply.outer(y, uu)
    q = ux * ux + c * c
    if np.any(np.sqrt(q) < POLE_EPS):
        raise PoleHit("(x, y) is a pole of F_u")
    return -y * u.sum_u - 0.5 * np.sum(np.log(q), axis=-1)


def eval_modulus(u: DirectionVector, x, y):
    """|F_u(x + iy)|, evaluated in log space so long products cannot underflow early."""
    res = np.exp(log_modulus(u, x, y))
    return _scalar_out(res, x, y)


def _pole_gap_sq(u: DirectionVector, x, y):
    # x^2 + min_j (1/u_j - y)^2
    inv = 1.0 / u.array
    d = np.min((inv - np.asarray(y, dtype=float)[..., None]) ** 2, axis=-1)
    return np.asarray(x, dtype=float) ** 2 + d


def envelope_constant(u: DirectionVector, x, y):
    """Constant C in the decay envelope |F| <= C exp(-y sum u) / (x^2 + m^2).

    With r^2 = x^2 + min_j (1/u_j - y)^2 every factor obeys
    |1 + i u_j t| >= |u_j| r, so keeping the two largest |u_j| for the 1/r^2
    decay and bounding each remaining factor by 1/(|u_j| r) gives a certified
    constant.  It is non-increasing in r and equals 1/(|u_1||u_2|) once
    r >= max over the remaining j of 1/|u_j|.
    """
    a = np.sort(np.abs(u.array))[::-1]
    if a.size < 2:
        raise FewerThanTwoEntries("the decay envelope needs at least two nonzero entries")
    r = np.sqrt(_pole_gap_sq(u, x, y))
    c = 1.0 / (a[0] * a[1])
    if a.size > 2:
        rest = a[2:]
        c = c * np.prod(1.0 / (np.multiply.outer(r, rest)), axis=-1)
    return c


def tail_envelope(u: DirectionVector, x, y):
    """Certified upper bound on |F_u(x + iy)| decaying like 1/x^2."""
    if u.nonzero_count < 2:
        raise FewerThanTwoEntries("the decay envelope needs at least two nonzero entries")
    if np.any(np.asarray(x) == 0):
        raise NonpositiveX("envelope is stated for x != 0")
    y = np.asarray(y, dtype=float)
    res = envelope_constant(u, x, y) * np.exp(-y * u.sum_u) / _pole_gap_sq(u, x, y)
    return _scalar_out(res, x, y)


def _check_positive_x(x):
    if np.any(np.asarray(x) <= 0):
        raise NonpositiveX("phase lift is defined for x > 0 only")


def eval_phase_lift(u: DirectionVector, x, y):
    """Phi_u(x, y) = x sum(u) - sum_{u_j>0} alpha_j + sum_{u_j<0} beta_j for x > 0.

    alpha_j = arccot((1/u_j - y)/x) and beta_j = arccot(-(1/u_j - y)/x) are the
    angles of the segment from i/u_j to x + iy.  Each is evaluated as
    atan2(|u_j| x, 1 - u_j y); whole multiples of pi are split off so that the
    zero of Phi is resolved to a few ulps of the remainder.
    """
    _check_positive_x(x)
    res = _phase(u, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return _scalar_out(res, x, y)


def _phase(u: DirectionVector, x, y):
    uu = u.array
    s = np.sign(uu)
    a = np.multiply.outer(x, np.abs(uu))
    c = 1.0 - np.multiply.outer(y, uu)
    behind = c < 0
    # atan2(a, c) = pi - atan2(a, -c) when c < 0
    rem = np.where(behind, -np.arctan2(a, -c), np.arctan2(a, c))
    k = np.sum(s * behind, axis=-1)
    return (x * u.sum_u - k * _PI_HI) - k * _PI_LO - np.sum(s * rem, axis=-1)


def phase_partials(u: DirectionVector, x, y):
    """(dPhi/dx, dPhi/dy) at (x, y), x > 0.

    dPhi/dy = -sum_j x / (x^2 + (1/u_j - y)^2) < 0, written as
    -sum_j u_j^2 x / (u_j^2 x^2 + (1 - u_j y)^2) to stay finite for small u_j.
    """
    uu = u.array
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ux = np.multiply.outer(x, uu)
    c = 1.0 - np.multiply.outer(y, uu)
    q = ux * ux + c * c
    d_y = -np.sum(uu * ux / q, axis=-1)
    d_x = u.sum_u - np.sum(uu * c / q, axis=-1)
    return d_x, d_y


def _phi_small(theta):
    # arctan(theta)/theta with its removable singularity filled in
    theta = np.asarray(theta, dtype=float)
    t2 = theta * theta
    small = np.abs(theta) < PHI_SERIES_CUTOFF
    safe = np.where(small, 1.0, theta)
    return np.where(small, 1.0 - t2 / 3.0 + t2 * t2 / 5.0, np.arctan(safe) / safe)


def eval_psi(u: DirectionVector, x, y):
    """psi_u(x, y) = sum(u) - sum_j u_j/(1 - u_j y) * phi(u_j x / (1 - u_j y)).

    Real analytic on R x (-1, 1) and equal to Phi_u(x, y)/x for x > 0.
    """
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) >= 1.0):
        raise YOutOfRange("psi_u is defined for |y| < 1")
    uu = u.array
    c = 1.0 - np.multiply.outer(y, uu)
    if np.any(c <= 0):
        raise YOutOfRange("y coincides with a pole 1/u_j")
    w = uu / c
    theta = np.asarray(x, dtype=float)[..., None] * w
    res = u.sum_u - np.sum(w * _phi_small(theta), axis=-1)
    return _scalar_out(res, x, y)
