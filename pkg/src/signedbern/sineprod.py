"""Sine products prod_j sin(2 pi beta^-j xi) and their bound by ||nu^(n)||.

Up to a unimodular factor the product is the Fourier transform of nu^(n),
so its sup norm cannot exceed the total variation.  The scan here only ever
produces a lower estimate of the sup, which makes the comparison with the
exact bound a zero-tolerance check.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .algebraic import field_spec, refine_enclosure
from .measure import SignedMeasure, signed_bernoulli

__all__ = [
    "BoundViolation",
    "SineProductScan",
    "beta_float",
    "eval_sine_product",
    "fourier_transform",
    "golden_section_max",
    "default_xi_max",
    "scan",
    "decay_slope",
]

INV_PHI = (math.sqrt(5) - 1) / 2


class BoundViolation(AssertionError):
    """A sampled |F_n| exceeded ||nu^(n)||."""


_beta_cache: dict[int, float] = {}


def beta_float(m: int) -> float:
    if m not in _beta_cache:
        spec = refine_enclosure(field_spec(m), Fraction(1, 2**70))
        _beta_cache[m] = float((spec.lo + spec.hi) / 2)
    return _beta_cache[m]


def eval_sine_product(m: int, n: int, xi):
    """F_n(beta; xi) for scalar or array xi."""
    if n < 1:
        raise ValueError("n must be >= 1")
    beta = beta_float(m)
    xi = np.asarray(xi, dtype=float)
    out = np.ones_like(xi)
    for j in range(1, n + 1):
        out = out * np.sin(2 * np.pi * xi / beta**j)
    return out if out.ndim else float(out)


def fourier_transform(nu: SignedMeasure, xi) -> np.ndarray:
    """sum over atoms of weight * exp(-2 pi i x xi)."""
    beta = beta_float(nu.m)
    powers = beta ** np.arange(nu.m)
    scale = beta**nu.level
    xs = np.array([np.dot(p.coeffs, powers) / scale for p, _ in nu.atoms])
    ws = np.array([w for _, w in nu.atoms], dtype=float) / 2**nu.level
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    return np.exp(-2j * np.pi * np.outer(xi, xs)) @ ws


def golden_section_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 200) -> tuple[float, float]:
    """Local maximiser of f on [a, b]; returns (x, f(x))."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def default_xi_max(m: int, n: int) -> float:
    return min(10 * beta_float(m) ** n, 1e4)


@dataclass
class SineProductScan:
    m: int
    n: int
    xi_max: float
    samples: int
    max_abs: float
    argmax_xi: float
    bound: Fraction
    refined: bool

    @property
    def within_bound(self) -> bool:
        return self.max_abs <= self.bound

    def to_json(self) -> dict:
        d = asdict(self)
        d["bound"] = f"{self.bound.numerator}/{self.bound.denominator}"
        d["within_bound"] = self.within_bound
        d["schema_version"] = 1
        return d


def scan(
    m: int,
    n: int,
    xi_max: float | None = None,
    samples: int = 200_000,
    refine: bool = True,
    bound: Fraction | None = None,
    return_grid: bool = False,
):
    """Grid scan of |F_n| on [0, xi_max] with golden-section refinement at the peak.

    ``bound`` defaults to the exact total variation of nu^(n).  Raises
    :class:`BoundViolation` if the sampled maximum exceeds it.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if xi_max is None:
        xi_max = default_xi_max(m, n)
    if bound is None:
        bound = signed_bernoulli(field_spec(m), n)[-1].total_variation()
    grid = np.linspace(0.0, xi_max, samples)
    values = eval_sine_product(m, n, grid)
    k = int(np.argmax(np.abs(values)))
    best_x, best = float(grid[k]), float(abs(values[k]))
    refined = False
    if refine:
        h = grid[1] - grid[0]
        x, v = golden_section_max(
            lambda t: abs(eval_sine_product(m, n, t)),
            max(0.0, best_x - h),
            min(xi_max, best_x + h),
        )
        if v > best:
            best_x, best = x, v
        refined = True
    result = SineProductScan(m, n, float(xi_max), samples, best, best_x, bound, refined)
    if not result.within_bound:
        raise BoundViolation(
            f"|F_{n}({best_x})| = {best!r} exceeds ||nu^({n})|| = {bound}"
        )
    if return_grid:
        return result, grid, values
    return result


def decay_slope(m: int, ns, samples: int = 50_000) -> float:
    """Least-squares slope of log max|F_n| against n (diagnostic only)."""
    ns = list(ns)
    logs = [math.log(scan(m, n, samples=samples).max_abs) for n in ns]
    return float(np.polyfit(ns, logs, 1)[0])
