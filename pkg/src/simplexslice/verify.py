"""Numerical certification of the lower-bound argument.

Each ``check_*`` function evaluates one inequality or identity over a grid
(or a corpus of directions) and returns a VerificationReport whose
``worst_residual`` is the largest violation found; a report passes iff that
residual is within its tolerance.  Composite reports hold their parts and
carry residuals normalized by each part's tolerance (tolerance 1.0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import contour
from .density import IntegrationConfig, density_contour, density_realaxis
from .direction import DirectionVector, as_direction, canonicalize, facet_direction, validate_unit
from .errors import SimplexSliceError

INV_E = math.exp(-1.0)
FD_STEP = 1e-5
UNBOUNDED_GRID_STOP = 20.0
V = validate_unit([1.0])


@dataclass
class VerificationReport:
    check_name: str
    passed: bool
    worst_residual: float
    worst_location: str
    grid_spec: str
    tolerance: float
    details: dict[str, Any] = field(default_factory=dict)
    parts: list["VerificationReport"] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        out = {
            "check_name": self.check_name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "worst_location": self.worst_location,
            "grid_spec": self.grid_spec,
            "tolerance": self.tolerance,
        }
        if self.details:
            out["details"] = self.details
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        return out


def fmt_vector(u: DirectionVector) -> str:
    return "(" + ", ".join(f"{e:.6g}" for e in u.entries) + ")"


def _report(name, residuals, locations, grid_spec, tol, details=None) -> VerificationReport:
    residuals = np.asarray(residuals, dtype=float).ravel()
    if residuals.size == 0:
        return VerificationReport(name, True, -math.inf, "", grid_spec, tol, details or {})
    if np.any(np.isnan(residuals)):
        i = int(np.nonzero(np.isnan(residuals))[0][0])
        worst = math.inf
    else:
        i = int(np.argmax(residuals))
        worst = float(residuals[i])
    loc = locations(i) if callable(locations) else str(locations[i])
    return VerificationReport(name, bool(worst <= tol), worst, loc, grid_spec, tol, details or {})


def _combine(name: str, parts: Sequence[VerificationReport], grid_spec: str = "") -> VerificationReport:
    parts = list(parts)
    scaled = [p.worst_residual / p.tolerance for p in parts]
    i = int(np.argmax(scaled))
    return VerificationReport(
        name, all(p.passed for p in parts), float(scaled[i]),
        f"{parts[i].check_name}: {parts[i].worst_location}",
        grid_spec or "residuals normalized by each part's tolerance", 1.0, parts=parts)


def _rel(diff, ref):
    return np.abs(diff) / np.maximum(1.0, np.abs(ref))


def _is_v(u: DirectionVector) -> bool:
    return u.entries == (1.0,)


def _single_entry(u: DirectionVector) -> bool:
    # (1) and (-1): both give the density 1/e
    return u.n_plus_1 == 1


def default_open_grid(n: int = 1000) -> np.ndarray:
    """n points strictly inside (-pi, pi)."""
    return np.linspace(-math.pi, math.pi, n + 2)[1:-1]


def default_positive_grid(u: DirectionVector, n: int = 200, start: float = 1e-3,
                          stop: float = math.pi - 1e-2) -> np.ndarray:
    """n points in [start, stop] clipped to D_u (stop = inf means "to the edge of D_u")."""
    right = contour.domain(u).d_u_right
    hi = min(stop, 0.99 * right)
    if not math.isfinite(hi):
        hi = UNBOUNDED_GRID_STOP
    return np.linspace(start, hi, n)


# --------------------------------------------------------------- corpus level


def check_lower_bound(corpus: Iterable, cfg: IntegrationConfig | None = None,
                      tol: float = 1e-9) -> VerificationReport:
    """G_u(0) >= 1/e for every u; equality for u = (+-1, 0, ..., 0)."""
    corpus = [as_direction(u) for u in corpus]
    residuals, labels, margins = [], [], []
    for u in corpus:
        d = density_contour(u, cfg).value
        margins.append(d - INV_E)
        residuals.append(abs(d - INV_E) if _single_entry(u) else INV_E - d)
        labels.append(f"u={fmt_vector(u)}, density={d:.12g}")
    return _report("lower_bound", residuals, labels, f"{len(corpus)} directions", tol,
                   {"margins": margins})


def check_contour_equivalence(corpus: Iterable, cfg: IntegrationConfig | None = None,
                              tol: float = 1e-6) -> VerificationReport:
    """Contour integral of F~_u equals the real-axis integral of F_u."""
    corpus = [as_direction(u) for u in corpus]
    residuals, labels, cases = [], [], {}
    skipped = 0
    for u in corpus:
        if u.n_plus_1 < 2:
            skipped += 1
            continue
        c = density_contour(u, cfg).value
        r = density_realaxis(u, cfg).value
        residuals.append(abs(c - r))
        tag = contour.domain(u).case_tag.value
        cases[tag] = cases.get(tag, 0) + 1
        labels.append(f"u={fmt_vector(u)} [{tag}], contour={c:.12g}, realaxis={r:.12g}")
    return _report("contour_equivalence", residuals, labels, f"{len(residuals)} directions", tol,
                   {"cases": cases, "skipped_single_entry": skipped})


# ---------------------------------------------------------------- per vector


def check_pointwise(u, grid=None, tol: float = 1e-10) -> VerificationReport:
    """F~_u(x) >= F~_v(x) on (-pi, pi)."""
    u = as_direction(u)
    grid = default_open_grid() if grid is None else np.asarray(grid, dtype=float)
    fu = contour.eval_f_tilde(u, grid)
    fv = contour.eval_f_tilde(V, grid)
    return _report("pointwise", fv - fu,
                   lambda i: f"u={fmt_vector(u)}, x={grid[i]:.9g}",
                   f"{grid.size} points in (-pi, pi)", tol)


def check_sandwich(u, grid=None, tol: float = 1e-10) -> VerificationReport:
    """-y_v(x) <= y_u(x) <= y_v(x) on (-pi, pi)."""
    u = as_direction(u)
    grid = default_open_grid() if grid is None else np.asarray(grid, dtype=float)
    yu = contour.solve_y(u, grid)
    yv = contour.y_v_closed(grid)
    res = np.maximum(yu - yv, -yv - yu)
    return _report("sandwich", res, lambda i: f"u={fmt_vector(u)}, x={grid[i]:.9g}",
                   f"{grid.size} points in (-pi, pi)", tol)


def _richardson(fun: Callable, x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    d1 = (fun(x + h) - fun(x - h)) / (2 * h)
    d2 = (fun(x + h / 2) - fun(x - h / 2)) / h
    return (4 * d2 - d1) / 3


def check_ode(u, grid=None, tol: float = 1e-6) -> VerificationReport:
    """The implicit differential equation for y_u against finite differences."""
    u = as_direction(u)
    grid = default_positive_grid(u) if grid is None else np.asarray(grid, dtype=float)
    y = contour.solve_y(u, grid)
    slope = contour.y_prime(u, grid, y)
    fd = _richardson(lambda s: contour.solve_y(u, s), grid)
    gspec = f"{grid.size} points in [{grid.min():.3g}, {grid.max():.3g}]"
    fd_part = _report("ode_vs_finite_difference", _rel(fd - slope, slope),
                      lambda i: f"u={fmt_vector(u)}, x={grid[i]:.9g}", gspec, tol)
    if not _is_v(u):
        return VerificationReport("ode", fd_part.passed, fd_part.worst_residual,
                                  fd_part.worst_location, gspec, tol)
    yv = contour.y_v_closed(grid)
    closed = (-yv + grid ** 2 + yv ** 2) / grid
    v_part = _report("ode_closed_form_v", _rel(contour.y_prime(u, grid, yv) - closed, closed),
                     lambda i: f"x={grid[i]:.9g}", gspec, 1e-8)
    return _combine("ode", [fd_part, v_part])


def check_differential_inequality(u, grid=None, tol: float = 1e-10) -> VerificationReport:
    """y_u' <= (-y_u + x^2 + y_u^2)/x on D_u."""
    u = as_direction(u)
    grid = default_positive_grid(u, stop=math.inf) if grid is None else np.asarray(grid, dtype=float)
    y = contour.solve_y(u, grid)
    slope = contour.y_prime(u, grid, y)
    rhs = (-y + grid ** 2 + y ** 2) / grid
    return _report("differential_inequality", (slope - rhs) / np.maximum(1.0, np.abs(rhs)),
                   lambda i: f"u={fmt_vector(u)}, x={grid[i]:.9g}",
                   f"{grid.size} points in D_u", tol)


def cauchy_schwarz_terms(u: DirectionVector, x, y):
    """Per-j pieces of the two Cauchy-Schwarz bounds at contour points.

    Returns (a, b, rhs1, rhs2, collapse_lhs, collapse_rhs, combined) with
    a = sum_j x/D_j, b = sum_j (-y + u_j(x^2+y^2))/D_j, D_j = x^2 + (1/u_j - y)^2.
    """
    uu = u.array
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    inv = 1.0 / uu
    d = x ** 2 + (inv - y) ** 2
    r2 = x ** 2 + y ** 2
    a = np.sum(x / d, axis=-1)
    b = np.sum((-y + uu * r2) / d, axis=-1)
    rhs1 = np.sum((x * inv) ** 2 / d ** 2, axis=-1)
    rhs2 = np.sum((-y * inv + r2) ** 2 / d ** 2, axis=-1)
    collapse_lhs = (x * inv) ** 2 + (-y * inv + r2) ** 2
    collapse_rhs = r2 * d
    combined = np.sum(r2 / d, axis=-1)
    return a, b, rhs1, rhs2, collapse_lhs, collapse_rhs, combined


def check_cauchy_schwarz(u, grid=None, tol: float = 1e-12) -> VerificationReport:
    u = as_direction(u)
    grid = default_positive_grid(u, stop=math.inf) if grid is None else np.asarray(grid, dtype=float)
    y = contour.solve_y(u, grid)
    a, b, rhs1, rhs2, cl, cr, comb = cauchy_schwarz_terms(u, grid, y)
    gspec = f"{grid.size} points in D_u"

    def loc(i):
        return f"u={fmt_vector(u)}, x={grid[i]:.9g}"

    def loc_j(i):
        p, j = divmod(i, u.n_plus_1)
        return f"u={fmt_vector(u)}, x={grid[p]:.9g}, j={j}"

    parts = [
        _report("cauchy_1", (a * a - rhs1) / np.maximum(1.0, rhs1), loc, gspec, tol),
        _report("cauchy_2", (b * b - rhs2) / np.maximum(1.0, rhs2), loc, gspec, tol),
        _report("collapse_identity", _rel(cl - cr, cr), loc_j, gspec, tol),
        _report("combined_sum", _rel(rhs1 + rhs2 - comb, comb), loc, gspec, tol),
    ]
    return _combine("cauchy_schwarz", parts)


def check_logderiv(u, grid=None, tol: float = 1e-6) -> VerificationReport:
    """Closed-form log-derivative of F~_u and its comparison with that of F~_v."""
    u = as_direction(u)
    grid = default_positive_grid(u, n=500) if grid is None else np.asarray(grid, dtype=float)
    y = contour.solve_y(u, grid)
    closed = contour.log_f_tilde_slope(u, grid, y)
    fd = _richardson(lambda s: contour.log_f_tilde(u, s), grid)
    yv = contour.y_v_closed(grid)
    slope_v = -(grid ** 2 + yv ** 2) / grid
    gspec = f"{grid.size} points in (0, pi)"

    def loc(i):
        return f"u={fmt_vector(u)}, x={grid[i]:.9g}"

    parts = [
        _report("logderiv_vs_finite_difference", _rel(fd - closed, closed), loc, gspec, tol),
        _report("log_inequality", (slope_v - closed) / np.maximum(1.0, np.abs(slope_v)),
                loc, gspec, 1e-8),
    ]
    if _is_v(u):
        parts.append(_report("logderiv_closed_form_v", _rel(closed - slope_v, slope_v), loc, gspec, 1e-8))
    return _combine("logderiv", parts)


# ------------------------------------------------------------------- corpora


def random_directions(seed: int, size: int, dims=(2, 12), centered: bool = False,
                      sign: int = 0) -> list[DirectionVector]:
    """Uniform directions on the sphere (normalized Gaussians).

    ``centered`` projects onto sum = 0 first; ``sign`` = +-1 flips each sample
    so that its coordinate sum has that sign.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(size):
        k = int(rng.integers(dims[0], dims[1] + 1))
        g = rng.standard_normal(k)
        if centered:
            g = g - g.mean()
        if sign and np.sign(g.sum()) != sign:
            g = -g
        out.append(validate_unit(g / np.linalg.norm(g)))
    return out


def edge_cases() -> list[DirectionVector]:
    near_axis = [0.999, math.sqrt(1 - 0.999 ** 2)]
    near_axis_neg = [0.999, -math.sqrt(1 - 0.999 ** 2) / math.sqrt(2)] * 1
    near_axis_neg.append(-math.sqrt(1 - 0.999 ** 2) / math.sqrt(2))
    degenerate = np.array([0.5, 0.5 + 1e-3, -0.4, 0.3])
    cases = [
        [1.0],
        [-1.0],
        [1.0, 0.0, 0.0],
        [0.8, 0.6],
        [0.6, -0.8],
        near_axis,
        near_axis_neg,
        list(degenerate / np.linalg.norm(degenerate)),
        [math.sqrt(0.62), -math.sqrt(0.19), -math.sqrt(0.19)],
        [math.sqrt(0.42), math.sqrt(0.38), math.sqrt(0.20)],
        [2 ** -0.5, -(2 ** -0.5)],
    ]
    out = [canonicalize(validate_unit(c)) for c in cases]
    out += [facet_direction(n) for n in (2, 3, 4, 8)]
    out += [-facet_direction(3)]
    return out


def build_corpus(seed: int = 42, size: int = 200) -> list[DirectionVector]:
    """Edge cases plus random directions covering all three signs of sum(u)."""
    base = edge_cases()
    third = max(1, (size - len(base)) // 3)
    rand = (random_directions(seed, third, sign=1)
            + random_directions(seed + 1, third, sign=-1)
            + random_directions(seed + 2, size - len(base) - 2 * third, centered=True))
    return base + rand


CORPUS_CHECKS = ("lower_bound", "contour_equivalence")
VECTOR_CHECKS = {
    "pointwise": check_pointwise,
    "sandwich": check_sandwich,
    "ode": check_ode,
    "differential_inequality": check_differential_inequality,
    "cauchy_schwarz": check_cauchy_schwarz,
    "logderiv": check_logderiv,
}
ALL_CHECKS = CORPUS_CHECKS + tuple(VECTOR_CHECKS)


def over_corpus(name: str, fn: Callable, corpus: Sequence[DirectionVector], **kw) -> VerificationReport:
    """Run a per-vector check on every direction; keep the worst instance."""
    reports = []
    for u in corpus:
        try:
            reports.append(fn(u, **kw))
        except SimplexSliceError as exc:
            reports.append(VerificationReport(name, False, math.inf, f"u={fmt_vector(u)}: {exc!r}",
                                              "", 0.0))
    worst = max(reports, key=lambda r: r.worst_residual / r.tolerance if r.tolerance else math.inf)
    return VerificationReport(name, all(r.passed for r in reports), worst.worst_residual,
                              worst.worst_location,
                              f"{len(reports)} directions; {worst.grid_spec}", worst.tolerance,
                              {"directions": len(reports)})


def run_suite(checks: Iterable[str] | None = None, seed: int = 42,
              cfg: IntegrationConfig | None = None, corpus: Sequence[DirectionVector] | None = None,
              vector_sample: int = 24, equivalence_sample: int = 40) -> list[VerificationReport]:
    """Run the selected checks; reports come back sorted by check name.

    The lower bound runs on the whole corpus.  Grid checks and the (slower)
    real-axis comparison use the leading slice of the corpus, which always
    starts with the constructed edge cases.
    """
    checks = list(ALL_CHECKS if checks is None else checks)
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    corpus = build_corpus(seed) if corpus is None else [as_direction(u) for u in corpus]
    reports = []
    for name in checks:
        if name == "lower_bound":
            reports.append(check_lower_bound(corpus, cfg))
        elif name == "contour_equivalence":
            sample = _spread_sample(corpus, equivalence_sample)
            reports.append(check_contour_equivalence(sample, cfg))
        else:
            sample = _spread_sample(corpus, vector_sample)
            reports.append(over_corpus(name, VECTOR_CHECKS[name], sample))
    return sorted(reports, key=lambda r: r.check_name)


def _spread_sample(corpus: Sequence[DirectionVector], k: int) -> list[DirectionVector]:
    # edge cases first, then an evenly spaced pick from the rest
    if len(corpus) <= k:
        return list(corpus)
    head = list(corpus[: k // 2])
    rest = corpus[k // 2:]
    idx = np.linspace(0, len(rest) - 1, k - len(head)).round().astype(int)
    return head + [rest[i] for i in idx]


def facet_margins(nmax: int, cfg: IntegrationConfig | None = None) -> list[tuple[int, float]]:
    """(n, G_facet(0) - 1/e) for n = 2..nmax, computed by the contour method."""
    return [(n, density_contour(facet_direction(n), cfg).value - INV_E) for n in range(2, nmax + 1)]
