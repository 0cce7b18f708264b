"""Cancellation witnesses and the odd-m checks.

||nu^(n)|| < 1 exactly when some polynomial with coefficients in {0, +-1}
and an odd number of nonzero coefficients vanishes at beta.  For odd m the
multinacci polynomial takes an even value at 1, so no such polynomial
exists and nu^(n) never loses mass; these routines check that at bounded
depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebraic import FieldElement, FieldSpec, field_spec, reduce
from .measure import (
    expand_brute_force,
    signed_bernoulli,
    unsigned_bernoulli,
    variation_measure,
    word_position,
)

__all__ = [
    "CancellationWitness",
    "search_witness",
    "brute_force_witness",
    "verify_no_decay",
    "verify_parity_argument",
    "oddm_report",
]


@dataclass(frozen=True)
class CancellationWitness:
    """eta_1..eta_n with sum eta_j beta^(n-j) = residual."""

    n: int
    eta: tuple[int, ...]
    residual: FieldElement

    @property
    def parity(self) -> int:
        return sum(abs(e) for e in self.eta) % 2

    @property
    def valid(self) -> bool:
        return self.residual.is_zero() and self.parity == 1

    def polynomial(self) -> list[int]:
        """Ascending coefficients of p(x) = sum eta_j x^(n-j)."""
        return list(reversed(self.eta))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "eta": list(self.eta),
            "poly_ascending": self.polynomial(),
            "p_at_1": sum(self.eta),
            "residual": list(self.residual.coeffs),
        }


def _eta_value(eta, spec) -> FieldElement:
    # eta_j multiplies x^(n-j): ascending coefficients are eta reversed
    return reduce(list(reversed(eta)), spec)


def _normalized(eta) -> bool:
    # p and -p are both witnesses; keep the one with leading +1, and
    # require nonzero ends so shorter witnesses are not repeated shifted
    return eta[0] == 1 and eta[-1] != 0


def brute_force_witness(m: int, n_max: int) -> CancellationWitness | None:
    """Exhaustive 3^n scan; oracle for :func:`search_witness`."""
    spec = field_spec(m)
    for n in range(1, n_max + 1):
        for eta in itertools.product((-1, 0, 1), repeat=n):
            if not _normalized(eta) or sum(abs(e) for e in eta) % 2 == 0:
                continue
            val = _eta_value(eta, spec)
            if val.is_zero():
                return CancellationWitness(n, eta, val)
    return None


def _powers(spec: FieldSpec, n: int) -> list[tuple[int, ...]]:
    out = []
    x = spec.one()
    for _ in range(n):
        out.append(x.coeffs)
        x = x.times_beta()
    return out


def _combine(etas, pows, m):
    # sum eta_i * pows[i], componentwise
    acc = [0] * m
    for e, p in zip(etas, pows):
        if e:
            for k in range(m):
                acc[k] += e * p[k]
    return tuple(acc)


def search_witness(m: int, n_max: int) -> CancellationWitness | None:
    """Lexicographically first witness of minimal length n <= n_max.

    Meet in the middle: the value splits into a head over eta_1..eta_h and a
    tail over the rest; tails are tabulated by their exact coefficient
    vector and parity, heads look up the negation.  Order is by length,
    then lexicographic in eta with -1 < 0 < 1.
    """
    spec = field_spec(m)
    for n in range(1, n_max + 1):
        pows = _powers(spec, n)  # pows[i] = beta^i
        h = (n + 1) // 2
        head_pows = [pows[n - j] for j in range(1, h + 1)]
        tail_pows = [pows[n - j] for j in range(h + 1, n + 1)]
        # first (lexicographically smallest) tail for each (value, parity)
        tails: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
        for tail in itertools.product((-1, 0, 1), repeat=n - h):
            if n - h and tail[-1] == 0:
                continue
            key = (_combine(tail, tail_pows, m), sum(map(abs, tail)) % 2)
            tails.setdefault(key, tail)
        for head in itertools.product((-1, 0, 1), repeat=h):
            if head[0] != 1:
                continue
            if n == h and head[-1] == 0:
                continue
            hv = _combine(head, head_pows, m)
            need = (1 - sum(map(abs, head)) % 2) % 2
            tail = tails.get((tuple(-c for c in hv), need))
            if tail is not None:
                eta = head + tail
                return CancellationWitness(n, eta, _eta_value(eta, spec))
    return None


@dataclass
class NoDecayReport:
    m: int
    n_max: int
    passed: bool
    total_variations: list[str] = field(default_factory=list)
    atom_counts: list[int] = field(default_factory=list)
    first_violation: str | None = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n_max": self.n_max,
            "passed": self.passed,
            "total_variations": self.total_variations,
            "atom_counts": self.atom_counts,
            "first_violation": self.first_violation,
        }


def verify_no_decay(m: int, n_max: int) -> NoDecayReport:
    """||nu^(n)|| = 1 and |nu^(n)| = mu^(n) atom for atom, n <= n_max."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"no-decay check needs odd m >= 3, got {m}")
    spec = field_spec(m)
    nus = signed_bernoulli(spec, n_max)
    mus = unsigned_bernoulli(spec, n_max)
    report = NoDecayReport(m, n_max, True)
    for n, (nu, mu) in enumerate(zip(nus, mus)):
        tv = nu.total_variation()
        report.total_variations.append(f"{tv.numerator}/{tv.denominator}")
        report.atom_counts.append(len(nu))
        if tv != 1:
            report.passed = False
            report.first_violation = f"||nu^({n})|| = {tv}"
            break
        if variation_measure(nu) != mu:
            report.passed = False
            report.first_violation = f"|nu^({n})| differs from mu^({n})"
            break
    return report


@dataclass
class ParityReport:
    m: int
    n_max: int
    passed: bool
    coincidences: list[int] = field(default_factory=list)
    first_violation: str | None = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n_max": self.n_max,
            "passed": self.passed,
            "coinciding_pairs_per_level": self.coincidences,
            "first_violation": self.first_violation,
        }


def verify_parity_argument(m: int, n_max: int) -> ParityReport:
    """Every pair of words with equal points differs in an even number of places.

    Differing-place parity is additive, so comparing each word with the first
    word at the same point covers all pairs.
    """
    if m % 2 == 0:
        raise ValueError(f"parity argument applies to odd m, got {m}")
    spec = field_spec(m)
    report = ParityReport(m, n_max, True)
    for n in range(1, n_max + 1):
        groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for word in itertools.product((-1, 1), repeat=n):
            groups.setdefault(word_position(word, spec).coeffs, []).append(word)
        pairs = 0
        for words in groups.values():
            k = len(words)
            pairs += k * (k - 1) // 2
            first = words[0]
            for w in words[1:]:
                diff = sum(1 for a, b in zip(first, w) if a != b)
                if diff % 2:
                    report.passed = False
                    report.first_violation = f"n={n}: {first} and {w} differ in {diff} places"
                    report.coincidences.append(pairs)
                    return report
        report.coincidences.append(pairs)
    return report


def oddm_report(m: int, n_max: int = 14, depth: int = 12) -> dict:
    """Witness search for any m plus, for odd m, the no-decay and parity checks."""
    witness = search_witness(m, n_max)
    out = {
        "schema_version": 1,
        "m": m,
        "n_max": n_max,
        "witness": witness.to_json() if witness else None,
    }
    if m % 2:
        nd = verify_no_decay(m, depth)
        par = verify_parity_argument(m, depth)
        out.update(
            no_decay_verified=nd.passed,
            max_n_checked=depth,
            no_decay=nd.to_json(),
            parity=par.to_json(),
            passed=witness is None and nd.passed and par.passed,
        )
    else:
        tv = expand_brute_force(field_spec(m), m + 1).total_variation()
        out.update(
            no_decay_verified=False,
            max_n_checked=m + 1,
            total_variation_at_m_plus_1=f"{tv.numerator}/{tv.denominator}",
            passed=witness is not None and witness.n == m + 1 and tv < 1,
        )
    return out
