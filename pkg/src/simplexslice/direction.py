"""Direction vectors and closed-form simplex geometry.

The regular n-simplex is the convex hull of the standard basis of R^{n+1}.
A central section is cut by the hyperplane through the centroid orthogonal
to a unit vector ``a`` with sum(a) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import AllZero, BadParameters, EmptyVector, NotUnitNorm

NORM_TOL = 1e-9
CENTER_TOL = 1e-12
ZERO_ENTRY_TOL = 1e-14

# largest n for which n! is computed exactly as an integer
_EXACT_FACTORIAL_MAX = 20


@dataclass(frozen=True)
class DirectionVector:
    """Unit vector with its sign census.

    ``sum_u`` is snapped to exactly 0.0 when |sum| <= CENTER_TOL so that the
    centered case is handled consistently by every downstream module.
    """

    entries: tuple[float, ...]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.entries, dtype=float)
        arr.setflags(write=False)
        return arr

    @property
    def n_plus_1(self) -> int:
        return len(self.entries)

    @cached_property
    def m_plus(self) -> int:
        return sum(1 for e in self.entries if e > 0)

    @cached_property
    def m_minus(self) -> int:
        return sum(1 for e in self.entries if e < 0)

    @cached_property
    def sum_u(self) -> float:
        s = math.fsum(self.entries)
        return 0.0 if abs(s) <= CENTER_TOL else s

    @property
    def is_centered(self) -> bool:
        return self.sum_u == 0.0

    @property
    def is_canonical(self) -> bool:
        return all(e != 0.0 for e in self.entries)

    @cached_property
    def nonzero_count(self) -> int:
        return self.m_plus + self.m_minus

    def __neg__(self) -> DirectionVector:
        return DirectionVector(tuple(-e for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)


def validate_unit(entries: Iterable[float], tol: float = NORM_TOL) -> DirectionVector:
    """Check that ``entries`` is a unit vector and renormalize it exactly.

    Raises EmptyVector, AllZero, or NotUnitNorm (|norm - 1| > tol).
    """
    vals = [float(e) for e in entries]
    if not vals:
        raise EmptyVector("direction vector has no entries")
    if not all(math.isfinite(v) for v in vals):
        raise BadParameters(f"non-finite entry in {vals}")
    if all(v == 0.0 for v in vals):
        raise AllZero("direction vector is identically zero")
    norm = math.hypot(*vals)
    if abs(norm - 1.0) > tol:
        raise NotUnitNorm(f"norm {norm!r} deviates from 1 by more than {tol:g}")
    return DirectionVector(tuple(v / norm for v in vals))


def canonicalize(u: DirectionVector) -> DirectionVector:
    """Drop (numerically) zero entries; idempotent."""
    kept = [e for e in u.entries if abs(e) >= ZERO_ENTRY_TOL]
    if len(kept) == len(u.entries):
        return u
    if not kept:
        raise AllZero("no entry survives zero-entry removal")
    norm = math.hypot(*kept)
    return DirectionVector(tuple(e / norm for e in kept))


def as_direction(u: DirectionVector | Iterable[float], tol: float = NORM_TOL) -> DirectionVector:
    """Accept either a DirectionVector or raw entries; return the canonical vector."""
    if not isinstance(u, DirectionVector):
        u = validate_unit(u, tol)
    return canonicalize(u)


def facet_direction(n: int) -> DirectionVector:
    """Unit normal of the central hyperplane parallel to a facet of the n-simplex."""
    if n < 2:
        raise BadParameters(f"facet direction needs n >= 2, got {n}")
    s = math.sqrt(n * (n + 1))
    return DirectionVector((n / s,) + (-1.0 / s,) * n)


def _log_factorial(n: int) -> float:
    return math.lgamma(n + 1)


def _checked_exp(log_value: float, what: str) -> float:
    # exp underflows to 0 or overflows to inf outside roughly [-745, 709]
    if log_value < math.log(np.finfo(float).tiny) or log_value > math.log(np.finfo(float).max):
        raise OverflowError(f"{what} is outside double-precision range (log = {log_value:.6g})")
    return math.exp(log_value)


def simplex_volume(n: int) -> float:
    """n-dimensional volume of the regular simplex with side sqrt(2): sqrt(n+1)/n!."""
    if n < 1:
        raise BadParameters(f"n must be >= 1, got {n}")
    if n <= _EXACT_FACTORIAL_MAX:
        return math.sqrt(n + 1) / math.factorial(n)
    return _checked_exp(0.5 * math.log(n + 1) - _log_factorial(n), f"simplex_volume({n})")


def _volume_prefactor(n: int) -> float:
    # sqrt(n+1)/(n-1)!, the factor linking G_a(0) to the section volume
    if n < 1:
        raise BadParameters(f"n must be >= 1, got {n}")
    if n - 1 <= _EXACT_FACTORIAL_MAX:
        return math.sqrt(n + 1) / math.factorial(n - 1)
    return _checked_exp(0.5 * math.log(n + 1) - _log_factorial(n - 1), f"prefactor({n})")


def facet_section_volume(n: int) -> float:
    """(n-1)-volume of the central section parallel to a facet."""
    if n < 2:
        raise BadParameters(f"n must be >= 2, got {n}")
    log_ratio = (n - 1) * math.log(n / (n + 1))
    if n - 1 <= _EXACT_FACTORIAL_MAX:
        return math.sqrt(n) / math.factorial(n - 1) * math.exp(log_ratio)
    return _checked_exp(0.5 * math.log(n) - _log_factorial(n - 1) + log_ratio,
                        f"facet_section_volume({n})")


def facet_density(n: int) -> float:
    """Closed-form density at zero for the facet direction: (n/(n+1))^(n - 1/2)."""
    if n < 2:
        raise BadParameters(f"n must be >= 2, got {n}")
    return math.exp((n - 0.5) * math.log(n / (n + 1)))


def section_volume_from_density(n: int, g0: float) -> float:
    if g0 < 0:
        raise BadParameters(f"density must be nonnegative, got {g0}")
    return _volume_prefactor(n) * g0


def volume_lower_bound(n: int) -> float:
    """sqrt(n+1)/((n-1)! e), the universal lower bound on central sections."""
    return _volume_prefactor(n) * math.exp(-1.0)
