"""Recurrence, characteristic roots and the growth constant for even m.

a_n = 2^n ||nu^(n)|| satisfies a_n = 2^n for n <= m and
a_n = 2 a_(n-1) - 2 a_(n-m) + 2 a_(n-m-1) afterwards.  Its characteristic
polynomial is f(z) = z^(m+1) - 2 z^m + 2 z - 2 with a unique real root
lambda in (1, 2), so that a_n ~ C lambda^n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

__all__ = [
    "RecurrenceTable",
    "RealEnclosure",
    "RootReport",
    "AsymptoticsReport",
    "recurrence",
    "characteristic_poly",
    "solve_real_root",
    "solve_all_roots",
    "series_divide",
    "generating_function_coeffs",
    "estimate_constant",
    "fraction_to_decimal",
]


def _require_even(m: int) -> None:
    if m < 2 or m % 2:
        raise ValueError(f"recurrence holds only for even m >= 2, got m={m}")


@dataclass(frozen=True)
class RecurrenceTable:
    m: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def total_variation(self, n: int) -> Fraction:
        return Fraction(self.values[n], 2**n)


def recurrence(m: int, N: int) -> RecurrenceTable:
    """a_0..a_N by direct unrolling."""
    _require_even(m)
    if N < 0:
        raise ValueError("N must be non-negative")
    a: list[int] = []
    for n in range(N + 1):
        if n <= m:
            a.append(2**n)
        else:
            a.append(2 * a[n - 1] - 2 * a[n - m] + 2 * a[n - m - 1])
    return RecurrenceTable(m, tuple(a))


def characteristic_poly(m: int) -> tuple[int, ...]:
    """Ascending coefficients of z^(m+1) - 2 z^m + 2 z - 2."""
    c = [0] * (m + 2)
    c[0], c[1], c[m], c[m + 1] = -2, 2, -2, 1
    return tuple(c)


def _horner(coeffs: Sequence, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def fraction_to_decimal(x: Fraction, digits: int) -> str:
    """Round ``x`` to ``digits`` places after the point (half-even)."""
    with localcontext() as ctx:
        ctx.prec = digits + 50
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits)))


@dataclass(frozen=True)
class RealEnclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def nested_in(self, other: RealEnclosure) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def decimal(self, digits: int) -> str:
        return fraction_to_decimal(self.mid, digits)


def solve_real_root(m: int, precision: int = 30, max_iter: int = 20000) -> RealEnclosure:
    """Bisect f on (1, 2) until the enclosure is narrower than 10^-precision."""
    _require_even(m)
    f = characteristic_poly(m)
    lo, hi = Fraction(1), Fraction(2)
    if not (_horner(f, lo) < 0 < _horner(f, hi)):  # pragma: no cover
        raise ArithmeticError("f does not change sign on (1, 2)")
    target = Fraction(1, 10**precision)
    it = 0
    while hi - lo >= target:
        if it >= max_iter:
            raise ArithmeticError(f"precision 1e-{precision} not reached in {max_iter} steps")
        mid = (lo + hi) / 2
        if _horner(f, mid) < 0:
            lo = mid
        else:
            hi = mid
        it += 1
    floor = Fraction(2 * (m - 1), m + 1)
    if not lo > floor:
        raise ArithmeticError(f"real root not above 2(m-1)/(m+1) = {floor}")
    return RealEnclosure(lo, hi)


@dataclass
class RootReport:
    m: int
    lam: RealEnclosure
    complex_roots: list[complex]
    moduli: list[float]
    residuals: list[float]
    real_root_float: float
    real_root_residual: float
    dominant: bool
    below_three_halves: bool
    interval_check: bool
    squarefree: bool
    margin: float = 1e-6

    def to_json(self, digits: int = 20) -> dict:
        return {
            "schema_version": 1,
            "m": self.m,
            "lambda": self.lam.decimal(digits),
            "lambda_half": fraction_to_decimal(self.lam.mid / 2, digits),
            "lambda_enclosure": [_ratstr(self.lam.lo), _ratstr(self.lam.hi)],
            "real_root_residual": self.real_root_residual,
            "complex_roots": [
                {"re": z.real, "im": z.imag, "modulus": r, "residual": e}
                for z, r, e in zip(self.complex_roots, self.moduli, self.residuals)
            ],
            "max_complex_modulus": max(self.moduli),
            "dominant": self.dominant,
            "below_three_halves": self.below_three_halves,
            "interval_check": self.interval_check,
            "squarefree": self.squarefree,
        }


def _ratstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _is_squarefree(coeffs: Sequence[int]) -> bool:
    import sympy

    z = sympy.Symbol("z")
    p = sympy.Poly(list(reversed(coeffs)), z, domain="ZZ")
    return sympy.gcd(p, p.diff(z)).degree() == 0


def _aberth(coeffs: Sequence[int], tol: float = 1e-14, max_iter: int = 500) -> list[complex]:
    # Aberth-Ehrlich simultaneous iteration on a monic integer polynomial
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    c = [x / lead for x in coeffs]
    dc = [k * c[k] for k in range(1, deg + 1)]
    radius = 1 + max(abs(x) for x in c[:-1])
    # perturbed circle avoids symmetric stalls on real-coefficient inputs
    z = [0.5 * radius * cmath.exp(1j * (2 * math.pi * k / deg + 0.4)) for k in range(deg)]
    for _ in range(max_iter):
        worst = 0.0
        for i in range(deg):
            p = _horner(c, z[i])
            dp = _horner(dc, z[i])
            if p == 0:
                continue
            ratio = p / dp
            s = sum(1 / (z[i] - z[j]) for j in range(deg) if j != i)
            step = ratio / (1 - ratio * s)
            z[i] -= step
            worst = max(worst, abs(step) / max(1.0, abs(z[i])))
        if worst < tol:
            break
    else:
        raise ArithmeticError("root iteration did not converge")
    return z


def _newton_polish(coeffs: Sequence[int], z: complex, steps: int = 5) -> complex:
    dc = [k * coeffs[k] for k in range(1, len(coeffs))]
    for _ in range(steps):
        d = _horner(dc, z)
        if d == 0:
            break
        z = z - _horner(coeffs, z) / d
    return z


def solve_all_roots(m: int, precision: int = 30, cap: int = 12, margin: float = 1e-6) -> RootReport:
    """All m+1 roots of f, with residuals and the dominance checks."""
    _require_even(m)
    if m > cap:
        raise ValueError(f"m={m} exceeds root-finder cap {cap}")
    f = characteristic_poly(m)
    squarefree = _is_squarefree(f)
    roots = [_newton_polish(f, z) for z in _aberth(f)]
    if len(roots) != m + 1:  # pragma: no cover
        raise ArithmeticError("wrong number of roots")
    lam = solve_real_root(m, precision)
    lam_f = float(lam.mid)
    # the real root is the one nearest lambda; the rest are the complex ones
    k = min(range(len(roots)), key=lambda i: abs(roots[i] - lam_f))
    real = roots.pop(k)
    roots.sort(key=lambda z: (round(z.real, 12), z.imag))
    moduli = [abs(z) for z in roots]
    residuals = [abs(_horner(f, z)) for z in roots]
    floor = Fraction(2 * (m - 1), m + 1)
    return RootReport(
        m=m,
        lam=lam,
        complex_roots=roots,
        moduli=moduli,
        residuals=residuals,
        real_root_float=real.real,
        real_root_residual=abs(_horner(f, real)),
        dominant=max(moduli) < lam_f - margin,
        below_three_halves=max(moduli) < 1.5,
        interval_check=floor < lam.lo and lam.hi < 2,
        squarefree=squarefree,
        margin=margin,
    )


def series_divide(num: Sequence[int], den: Sequence[int], N: int) -> list[int]:
    """First N+1 Taylor coefficients of num/den for integer series with den[0] = 1."""
    if not den or den[0] != 1:
        raise ValueError("denominator must have constant term 1")
    out: list[int] = []
    for n in range(N + 1):
        c = num[n] if n < len(num) else 0
        for k in range(1, min(n, len(den) - 1) + 1):
            c -= den[k] * out[n - k]
        out.append(c)
    return out


def generating_function_coeffs(m: int, N: int) -> list[int]:
    """Coefficients of (1 + 2 z^m) / (1 - 2 z + 2 z^m - 2 z^(m+1))."""
    _require_even(m)
    num = [0] * (m + 1)
    num[0], num[m] = 1, 2
    den = [0] * (m + 2)
    den[0], den[1], den[m], den[m + 1] = 1, -2, 2, -2
    return series_divide(num, den, N)


@dataclass
class AsymptoticsReport:
    m: int
    n_used: int
    C_estimate: float
    bracket: tuple[Fraction, Fraction]
    estimate_exact: Fraction
    converging: bool
    ratios: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)

    @property
    def width(self) -> Fraction:
        return self.bracket[1] - self.bracket[0]

    def contains(self, x) -> bool:
        return self.bracket[0] <= Fraction(x) <= self.bracket[1]

    def to_json(self, digits: int = 15) -> dict:
        return {
            "schema_version": 1,
            "m": self.m,
            "n_used": self.n_used,
            "C_estimate": fraction_to_decimal(self.estimate_exact, digits),
            "bracket": [fraction_to_decimal(b, digits) for b in self.bracket],
            "bracket_width": float(self.width),
            "converging": self.converging,
        }


def _ratio_bounds(a_n: int, n: int, lam: RealEnclosure) -> tuple[Fraction, Fraction]:
    # a_n lambda^-n is decreasing in lambda
    return Fraction(a_n) / lam.hi**n, Fraction(a_n) / lam.lo**n


def estimate_constant(table: RecurrenceTable, lam: RealEnclosure, n_used: int | None = None) -> AsymptoticsReport:
    """Bracket C from the spread of a_n lambda^-n over the last m+1 indices.

    The bracket absorbs the uncertainty of lambda.  ``converging`` compares it
    with the bracket one window earlier; a bracket that does not shrink hints
    at a subdominant root as large as lambda.
    """
    m = table.m
    N = len(table) - 1 if n_used is None else n_used
    if N + 1 < 2 * m + 2 or N >= len(table):
        raise ValueError(f"need 2m+2 <= N+1 <= table length, got N={N}")

    def window(end: int) -> tuple[Fraction, Fraction, list]:
        rows = []
        for n in range(end - m, end + 1):
            lo, hi = _ratio_bounds(table[n], n, lam)
            rows.append((n, lo, hi))
        return min(r[1] for r in rows), max(r[2] for r in rows), rows

    lo, hi, rows = window(N)
    plo, phi, _ = window(N - m - 1)
    est_lo, est_hi = _ratio_bounds(table[N], N, lam)
    est = (est_lo + est_hi) / 2
    return AsymptoticsReport(
        m=m,
        n_used=N,
        C_estimate=float(est),
        bracket=(lo, hi),
        estimate_exact=est,
        converging=(hi - lo) < (phi - plo),
        ratios=rows,
    )
