"""Exact arithmetic in Z[beta] for the multinacci number of degree m.

beta is the real root in (1, 2) of x^m - x^(m-1) - ... - x - 1.  Elements are
integer coefficient vectors of length m in the power basis 1, beta, ...,
beta^(m-1).  Comparisons go through :func:`sign`, which evaluates an element
over a rational enclosure of beta and bisects the enclosure until the sign is
decided.  No floating point is involved anywhere in this module.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "FieldSpec",
    "FieldElement",
    "ExactComparator",
    "multinacci_poly",
    "field_spec",
    "is_irreducible",
    "reduce",
    "add",
    "sub",
    "negate",
    "mul_by_beta",
    "mul",
    "sign",
    "compare",
    "refine_enclosure",
    "interval_eval",
    "to_float",
]

# width of the enclosure the sign oracle starts from
_START_BITS = 64
# extra bisection steps per failed sign attempt
_BISECT_CHUNK = 32


def multinacci_poly(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of x^m - x^(m-1) - ... - x - 1."""
    if m < 2:
        raise ValueError(f"multinacci degree must be >= 2, got {m}")
    return (-1,) * m + (1,)


@lru_cache(maxsize=None)
def is_irreducible(m: int) -> bool:
    """Check irreducibility of the degree-m multinacci polynomial over Q."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(multinacci_poly(m))), x, domain="ZZ")
    return bool(poly.is_irreducible)


@dataclass(frozen=True)
class FieldSpec:
    """The multinacci parameter together with a rational enclosure of beta."""

    m: int
    lo: Fraction = Fraction(1)
    hi: Fraction = Fraction(2)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"multinacci degree must be >= 2, got {self.m}")
        if not (1 <= self.lo < self.hi <= 2):
            raise ValueError(f"enclosure [{self.lo}, {self.hi}] not inside [1, 2]")
        if _poly_at(self.m, self.lo) > 0 or _poly_at(self.m, self.hi) < 0:
            raise ValueError(f"enclosure [{self.lo}, {self.hi}] does not bracket beta")

    @property
    def min_poly(self) -> tuple[int, ...]:
        return multinacci_poly(self.m)

    @property
    def parity(self) -> str:
        return "even" if self.m % 2 == 0 else "odd"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.m)

    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.m - 1))

    def const(self, c: int) -> FieldElement:
        return FieldElement((c,) + (0,) * (self.m - 1))

    def beta(self) -> FieldElement:
        return reduce((0, 1), self)


def field_spec(m: int) -> FieldSpec:
    """Build the spec for degree m, refusing a reducible multinacci polynomial.

    The zero test (all coefficients zero) is only sound when the polynomial
    is the minimal polynomial of beta, so irreducibility is checked here.
    """
    if m < 2:
        raise ValueError(f"multinacci degree must be >= 2, got {m}")
    if not is_irreducible(m):
        raise ValueError(f"x^{m} - ... - 1 is reducible; zero test unsound")
    return FieldSpec(m)


@dataclass(frozen=True)
class FieldElement:
    """c_0 + c_1 beta + ... + c_(m-1) beta^(m-1), always reduced."""

    coeffs: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: FieldElement) -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError(
                f"field mismatch: degree {len(self.coeffs)} vs {len(other.coeffs)}"
            )

    def __add__(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        return FieldElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        return FieldElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        return FieldElement(tuple(-a for a in self.coeffs))

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return FieldElement(tuple(other * a for a in self.coeffs))
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        prod = [0] * (2 * self.m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return FieldElement(_reduce_coeffs(prod, self.m))

    __rmul__ = __mul__

    def shift(self, c: int) -> FieldElement:
        """Add the integer constant c."""
        return FieldElement((self.coeffs[0] + c,) + self.coeffs[1:])

    def times_beta(self) -> FieldElement:
        # beta * beta^(m-1) = beta^m = 1 + beta + ... + beta^(m-1)
        top = self.coeffs[-1]
        return FieldElement(
            (top,) + tuple(c + top for c in self.coeffs[:-1])
        )

    def times_beta_pow(self, k: int) -> FieldElement:
        out = self
        for _ in range(k):
            out = out.times_beta()
        return out

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)})"


def _reduce_coeffs(raw: Sequence[int], m: int) -> tuple[int, ...]:
    # polynomial remainder modulo x^m - x^(m-1) - ... - 1, top degree down
    work = list(raw)
    for d in range(len(work) - 1, m - 1, -1):
        c = work[d]
        if c:
            work[d] = 0
            for i in range(1, m + 1):
                work[d - i] += c
    work = work[:m]
    work.extend([0] * (m - len(work)))
    return tuple(work)


def _degree(spec: FieldSpec | int) -> int:
    return spec if isinstance(spec, int) else spec.m


def reduce(raw: Iterable[int], spec: FieldSpec | int) -> FieldElement:
    """Reduce an integer polynomial (ascending coefficients) to canonical form."""
    return FieldElement(_reduce_coeffs(list(raw), _degree(spec)))


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def negate(a: FieldElement) -> FieldElement:
    return -a


def mul_by_beta(a: FieldElement) -> FieldElement:
    return a.times_beta()


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


# ---------------------------------------------------------------------------
# enclosures of beta

def _poly_at(m: int, x: Fraction) -> Fraction:
    # x^m - (x^(m-1) + ... + 1)
    acc = Fraction(0)
    p = Fraction(1)
    for _ in range(m):
        acc += p
        p *= x
    return p - acc


def _bisect(m: int, lo: Fraction, hi: Fraction, steps: int) -> tuple[Fraction, Fraction]:
    for _ in range(steps):
        mid = (lo + hi) / 2
        v = _poly_at(m, mid)
        if v < 0:
            lo = mid
        elif v > 0:
            hi = mid
        else:  # pragma: no cover - beta is irrational
            raise ArithmeticError(f"rational root {mid} of multinacci polynomial")
    return lo, hi


_cache_lock = threading.Lock()
_finest: dict[int, tuple[Fraction, Fraction]] = {}


def _best_enclosure(spec: FieldSpec) -> tuple[Fraction, Fraction]:
    with _cache_lock:
        cached = _finest.get(spec.m)
    if cached is not None and cached[1] - cached[0] < spec.width:
        return cached
    return spec.lo, spec.hi


def _remember(m: int, lo: Fraction, hi: Fraction) -> None:
    with _cache_lock:
        cur = _finest.get(m)
        if cur is None or hi - lo < cur[1] - cur[0]:
            _finest[m] = (lo, hi)


def refine_enclosure(spec: FieldSpec, width: Fraction | int | float | str) -> FieldSpec:
    """Return a spec whose enclosure of beta is at most ``width`` wide."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    lo, hi = _best_enclosure(spec)
    if hi - lo > width:
        # widths halve each step, so the step count is known in advance
        steps = 0
        w = hi - lo
        while w > width:
            w /= 2
            steps += 1
        lo, hi = _bisect(spec.m, lo, hi, steps)
        _remember(spec.m, lo, hi)
    if hi - lo >= spec.width:
        return spec
    return FieldSpec(spec.m, lo, hi)


def _start_enclosure(spec: FieldSpec) -> tuple[Fraction, Fraction]:
    lo, hi = _best_enclosure(spec)
    target = Fraction(1, 2**_START_BITS)
    if hi - lo > target:
        refined = refine_enclosure(FieldSpec(spec.m, lo, hi), target)
        lo, hi = refined.lo, refined.hi
    return lo, hi


class _PowerBounds:
    """Integer bounds for beta^i, scaled by a common power of the denominator.

    With lo = A/D and hi = B/D, value * D^(m-1) of sum c_i beta^i lies in
    [sum c_i * (A or B)^i * D^(m-1-i)] choosing A or B by the sign of c_i.
    """

    def __init__(self, m: int, lo: Fraction, hi: Fraction):
        d = lo.denominator * hi.denominator // _gcd(lo.denominator, hi.denominator)
        a = lo.numerator * (d // lo.denominator)
        b = hi.numerator * (d // hi.denominator)
        self.lo = lo
        self.hi = hi
        self.scale = d ** (m - 1)
        self.low = [a**i * d ** (m - 1 - i) for i in range(m)]
        self.high = [b**i * d ** (m - 1 - i) for i in range(m)]

    def bounds(self, coeffs: Sequence[int]) -> tuple[int, int]:
        lo = hi = 0
        for c, pl, ph in zip(coeffs, self.low, self.high):
            if c > 0:
                lo += c * pl
                hi += c * ph
            elif c < 0:
                lo += c * ph
                hi += c * pl
        return lo, hi


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def interval_eval(a: FieldElement, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact rational interval containing the value of ``a`` for beta in [lo, hi]."""
    pb = _PowerBounds(a.m, Fraction(lo), Fraction(hi))
    l, h = pb.bounds(a.coeffs)
    return Fraction(l, pb.scale), Fraction(h, pb.scale)


def sign(a: FieldElement, spec: FieldSpec) -> int:
    """Exact sign of ``a`` as a real number: -1, 0 or 1."""
    if a.m != spec.m:
        raise ValueError(f"field mismatch: element degree {a.m}, spec m={spec.m}")
    if a.is_zero():
        return 0
    lo, hi = _start_enclosure(spec)
    while True:
        l, h = _PowerBounds(spec.m, lo, hi).bounds(a.coeffs)
        if l > 0:
            return 1
        if h < 0:
            return -1
        lo, hi = _bisect(spec.m, lo, hi, _BISECT_CHUNK)
        _remember(spec.m, lo, hi)


def compare(a: FieldElement, b: FieldElement, spec: FieldSpec) -> int:
    if a.coeffs == b.coeffs:
        return 0
    return sign(a - b, spec)


def to_float(a: FieldElement, spec: FieldSpec) -> float:
    """Approximate value of ``a`` (midpoint of its interval evaluation)."""
    lo, hi = _start_enclosure(spec)
    l, h = interval_eval(a, lo, hi)
    return float((l + h) / 2)


class ExactComparator:
    """Three-way comparison of field elements with a cached interval fast path.

    Each element gets integer bounds once; only overlapping bounds fall back
    to the bisecting sign oracle.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        lo, hi = _start_enclosure(spec)
        self._pb = _PowerBounds(spec.m, lo, hi)
        self._cache: dict[tuple[int, ...], tuple[int, int]] = {}

    def _bounds(self, a: FieldElement) -> tuple[int, int]:
        b = self._cache.get(a.coeffs)
        if b is None:
            b = self._pb.bounds(a.coeffs)
            self._cache[a.coeffs] = b
        return b

    def __call__(self, a: FieldElement, b: FieldElement) -> int:
        if a.coeffs == b.coeffs:
            return 0
        la, ha = self._bounds(a)
        lb, hb = self._bounds(b)
        if ha < lb:
            return -1
        if hb < la:
            return 1
        return sign(a - b, self.spec)

    def sort(self, elems: Iterable[FieldElement]) -> list[FieldElement]:
        from functools import cmp_to_key

        return sorted(elems, key=cmp_to_key(self))

    def max(self, elems: Iterable[FieldElement]) -> FieldElement:
        it = iter(elems)
        best = next(it)
        for e in it:
            if self(e, best) > 0:
                best = e
        return best

    def min(self, elems: Iterable[FieldElement]) -> FieldElement:
        it = iter(elems)
        best = next(it)
        for e in it:
            if self(e, best) < 0:
                best = e
        return best
