"""Finite signed atomic measures with positions in Z[beta].

A level-n measure stores every atom position as x * beta^n, an element of
Z[beta], and every weight as an integer numerator over the common unit 2^-n.
The signed Bernoulli convolution nu^(n) and the unsigned mu^(n) are built by
the one-step convolution below; :func:`expand_brute_force` sums over all 2^n
sign words directly and serves as an independent oracle.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .algebraic import ExactComparator, FieldElement, FieldSpec, field_spec, reduce, to_float

__all__ = [
    "ScaledPoint",
    "SignedMeasure",
    "delta0",
    "signed_step",
    "unsigned_step",
    "signed_bernoulli",
    "unsigned_bernoulli",
    "total_variation",
    "support_positions",
    "variation_measure",
    "word_position",
    "expand_brute_force",
    "is_symmetric",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ScaledPoint:
    """The real number elem * beta^(-level)."""

    elem: FieldElement
    level: int

    def rescale(self, level: int) -> ScaledPoint:
        if level < self.level:
            raise ValueError("can only rescale to a deeper level")
        return ScaledPoint(self.elem.times_beta_pow(level - self.level), level)

    def compare(self, other: ScaledPoint, spec: FieldSpec) -> int:
        level = max(self.level, other.level)
        a, b = self.rescale(level), other.rescale(level)
        return ExactComparator(spec)(a.elem, b.elem)

    def value(self, spec: FieldSpec) -> float:
        beta = to_float(spec.beta(), spec)
        return to_float(self.elem, spec) / beta**self.level


@dataclass(frozen=True)
class SignedMeasure:
    """Atoms sorted strictly by position; weight of atom i is numerator / 2^level."""

    m: int
    level: int
    atoms: tuple[tuple[FieldElement, int], ...]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {pos.coeffs: i for i, (pos, _) in enumerate(self.atoms)}

    @property
    def positions(self) -> list[FieldElement]:
        return [p for p, _ in self.atoms]

    @property
    def numerators(self) -> list[int]:
        return [w for _, w in self.atoms]

    def __len__(self) -> int:
        return len(self.atoms)

    def weight_at(self, pos: FieldElement) -> int:
        i = self.index.get(pos.coeffs)
        return 0 if i is None else self.atoms[i][1]

    def total_variation(self) -> Fraction:
        return Fraction(sum(abs(w) for _, w in self.atoms), 2**self.level)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "m": self.m,
            "level": self.level,
            "atoms": [
                {"coeffs": list(p.coeffs), "numerator": w} for p, w in self.atoms
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> SignedMeasure:
        m = int(data["m"])
        atoms = []
        for a in data["atoms"]:
            coeffs = tuple(int(c) for c in a["coeffs"])
            if len(coeffs) != m:
                raise ValueError(f"atom has {len(coeffs)} coefficients, expected {m}")
            atoms.append((FieldElement(coeffs), int(a["numerator"])))
        return cls(m, int(data["level"]), tuple(atoms))


def _assemble(spec: FieldSpec, level: int, weights: Mapping[tuple[int, ...], int]) -> SignedMeasure:
    cmp = ExactComparator(spec)
    live = [FieldElement(k) for k, w in weights.items() if w != 0]
    ordered = cmp.sort(live)
    return SignedMeasure(spec.m, level, tuple((p, weights[p.coeffs]) for p in ordered))


def _check_spec(mu: SignedMeasure, spec: FieldSpec) -> None:
    if mu.m != spec.m:
        raise ValueError(f"field mismatch: measure has m={mu.m}, spec has m={spec.m}")


def delta0(spec: FieldSpec) -> SignedMeasure:
    return SignedMeasure(spec.m, 0, ((spec.zero(), 1),))


def _step(prev: SignedMeasure, spec: FieldSpec, flip: int) -> SignedMeasure:
    _check_spec(prev, spec)
    weights: dict[tuple[int, ...], int] = {}
    for pos, w in prev.atoms:
        # x +- beta^-n at level n is beta * (x beta^(n-1)) +- 1
        scaled = pos.times_beta()
        right = scaled.shift(1).coeffs
        left = scaled.shift(-1).coeffs
        weights[right] = weights.get(right, 0) + w
        weights[left] = weights.get(left, 0) + flip * w
    return _assemble(spec, prev.level + 1, weights)


def signed_step(prev: SignedMeasure, spec: FieldSpec) -> SignedMeasure:
    """Convolve with (delta_{beta^-n} - delta_{-beta^-n}) / 2."""
    return _step(prev, spec, -1)


def unsigned_step(prev: SignedMeasure, spec: FieldSpec) -> SignedMeasure:
    """Convolve with (delta_{beta^-n} + delta_{-beta^-n}) / 2."""
    return _step(prev, spec, 1)


def signed_bernoulli(spec: FieldSpec, n: int) -> list[SignedMeasure]:
    """nu^(0), ..., nu^(n)."""
    out = [delta0(spec)]
    for _ in range(n):
        out.append(signed_step(out[-1], spec))
    return out


def unsigned_bernoulli(spec: FieldSpec, n: int) -> list[SignedMeasure]:
    """mu^(0), ..., mu^(n)."""
    out = [delta0(spec)]
    for _ in range(n):
        out.append(unsigned_step(out[-1], spec))
    return out


def total_variation(mu: SignedMeasure) -> Fraction:
    return mu.total_variation()


def support_positions(mu: SignedMeasure) -> list[ScaledPoint]:
    return [ScaledPoint(p, mu.level) for p, _ in mu.atoms]


def variation_measure(mu: SignedMeasure) -> SignedMeasure:
    """|mu|: same atoms, absolute weights."""
    return SignedMeasure(mu.m, mu.level, tuple((p, abs(w)) for p, w in mu.atoms))


def word_position(word: Iterable[int], spec: FieldSpec | int) -> FieldElement:
    """x_eps * beta^n for the sign word eps of length n, by polynomial reduction."""
    word = tuple(word)
    n = len(word)
    # eps_j multiplies beta^(n-j)
    raw = [0] * max(n, 1)
    for j, e in enumerate(word, start=1):
        raw[n - j] = e
    return reduce(raw, spec)


def _expand_chunk(args) -> dict[tuple[int, ...], int]:
    m, n, prefix, signed = args
    acc: dict[tuple[int, ...], int] = {}
    for tail in itertools.product((-1, 1), repeat=n - len(prefix)):
        word = prefix + tail
        key = word_position(word, m).coeffs
        w = 1
        if signed:
            for e in word:
                w *= e
        acc[key] = acc.get(key, 0) + w
    return acc


def expand_brute_force(
    spec: FieldSpec, n: int, signed: bool = True, jobs: int = 1
) -> SignedMeasure:
    """Sum over all 2^n sign words with exact merging of coinciding positions.

    With ``jobs > 1`` the word space is split by prefix across processes;
    partial sums are merged by addition, so the result does not depend on
    the number of workers.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return delta0(spec)
    split = 0
    if jobs > 1:
        while 2**split < 4 * jobs and split < n:
            split += 1
    tasks = [(spec.m, n, prefix, signed) for prefix in itertools.product((-1, 1), repeat=split)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_expand_chunk, tasks))
    else:
        parts = [_expand_chunk(t) for t in tasks]
    total: dict[tuple[int, ...], int] = {}
    for part in parts:
        for k, w in part.items():
            total[k] = total.get(k, 0) + w
    return _assemble(spec, n, total)


def is_symmetric(mu: SignedMeasure, parity: int) -> bool:
    """True if the atom at -x carries parity * (weight at x) for every atom."""
    for pos, w in mu.atoms:
        if mu.weight_at(-pos) != parity * w:
            return False
    return True

