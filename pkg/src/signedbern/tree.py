"""The pruned sign tree and level-by-level structural checks.

Level n of the tree holds the sign words of length n whose point survives
cancellation in nu^(n), in lexicographic order with -1 < +1.  A word's
children are kept exactly when their point is an atom of nu^(n+1).  The
checks here compare that tree against the measure and look for violations
of the structural properties proved for even m (first pruning, order
isomorphism, leaflessness, diamond-shaped cancellation, separation).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebraic import ExactComparator, FieldElement, FieldSpec, reduce, sign
from .measure import SignedMeasure, signed_bernoulli

__all__ = [
    "Word",
    "PrunedLevel",
    "CheckReport",
    "DiamondReport",
    "word_str",
    "root_level",
    "grow",
    "build_tree",
    "check_first_pruning",
    "check_isomorphism",
    "check_leafless",
    "check_diamond",
    "check_separation",
    "first_collision_inequality",
    "tail_gap_inequality",
    "dump_lines",
    "to_dot",
]

Word = tuple[int, ...]


def word_str(word: Word) -> str:
    return "".join("+" if e > 0 else "-" for e in word) or "."


@dataclass(frozen=True)
class PrunedLevel:
    """Surviving words at one level.

    ``atom_index[i]`` points into the atoms of nu^(n); ``positions[i]`` is
    the same atom's position, kept to avoid a lookup when growing.
    """

    n: int
    survivors: tuple[Word, ...]
    parent_index: tuple[int, ...]
    atom_index: tuple[int, ...]
    positions: tuple[FieldElement, ...]

    def __len__(self) -> int:
        return len(self.survivors)


@dataclass
class CheckReport:
    name: str
    passed: bool
    level: int | None = None
    detail: str = ""
    first_violation: str | None = None
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "level": self.level,
            "detail": self.detail,
            "first_violation": self.first_violation,
            "data": self.data,
        }


@dataclass
class DiamondReport(CheckReport):
    b_n: int = 0
    pairs: list[tuple[Word, Word]] = field(default_factory=list)


def root_level(spec: FieldSpec) -> PrunedLevel:
    return PrunedLevel(0, ((),), (-1,), (0,), (spec.zero(),))


def grow(level: PrunedLevel, spec: FieldSpec, nu_next: SignedMeasure) -> PrunedLevel:
    """Keep each child of each survivor iff its point is an atom of ``nu_next``."""
    if nu_next.level != level.n + 1:
        raise ValueError(f"measure at level {nu_next.level}, expected {level.n + 1}")
    if nu_next.m != spec.m:
        raise ValueError(f"field mismatch: measure m={nu_next.m}, spec m={spec.m}")
    index = nu_next.index
    survivors, parents, atoms, positions = [], [], [], []
    for i, (word, pos) in enumerate(zip(level.survivors, level.positions)):
        scaled = pos.times_beta()
        for e in (-1, 1):
            child = scaled.shift(e)
            j = index.get(child.coeffs)
            if j is not None:
                survivors.append(word + (e,))
                parents.append(i)
                atoms.append(j)
                positions.append(child)
    return PrunedLevel(
        level.n + 1, tuple(survivors), tuple(parents), tuple(atoms), tuple(positions)
    )


def build_tree(
    spec: FieldSpec, depth: int, measures: Sequence[SignedMeasure] | None = None
) -> tuple[list[PrunedLevel], list[SignedMeasure]]:
    """Levels 0..depth of the pruned tree together with nu^(0..depth)."""
    if measures is None or len(measures) <= depth:
        measures = signed_bernoulli(spec, depth)
    levels = [root_level(spec)]
    for n in range(1, depth + 1):
        levels.append(grow(levels[-1], spec, measures[n]))
    return levels, list(measures[: depth + 1])


def _alternating(m: int, lead: int) -> Word:
    # (lead, -lead, ..., -lead), length m + 1
    return (lead,) + (-lead,) * m


def check_first_pruning(levels: Sequence[PrunedLevel], spec: FieldSpec) -> CheckReport:
    """All words survive up to level m; level m+1 loses exactly (-,+..+), (+,-..-)."""
    m = spec.m
    name = "first_pruning"
    if len(levels) < m + 2:
        return CheckReport(name, False, detail=f"need levels 0..{m + 1}")
    for n in range(m + 1):
        if len(levels[n]) != 2**n:
            return CheckReport(
                name, False, n, first_violation=f"|D_{n}*| = {len(levels[n])} != {2**n}"
            )
    full = {w for w in _all_words(m + 1)}
    missing = sorted(full - set(levels[m + 1].survivors))
    expected = sorted([_alternating(m, -1), _alternating(m, 1)])
    ok = missing == expected
    return CheckReport(
        name,
        ok,
        m + 1,
        detail=f"removed at level {m + 1}: {[word_str(w) for w in missing]}",
        first_violation=None if ok else f"expected {[word_str(w) for w in expected]}",
        data={"removed": [word_str(w) for w in missing]},
    )


def _all_words(n: int) -> list[Word]:
    import itertools

    return list(itertools.product((-1, 1), repeat=n))


def check_isomorphism(level: PrunedLevel, nu: SignedMeasure) -> CheckReport:
    """Survivors in lexicographic order map onto atoms in position order, bijectively."""
    name = "isomorphism"
    if level.n != nu.level:
        return CheckReport(name, False, level.n, first_violation="level mismatch")
    k = len(nu.atoms)
    seen: dict[int, int] = {}
    for idx in level.atom_index:
        seen[idx] = seen.get(idx, 0) + 1
    multiplicities = sorted({c for c in seen.values()})
    data = {"survivors": len(level), "atoms": k, "multiplicities": multiplicities}
    for i in range(1, len(level)):
        if level.survivors[i - 1] >= level.survivors[i]:
            return CheckReport(name, False, level.n, first_violation=(
                f"survivors not in lexicographic order at {i}"), data=data)
        if level.atom_index[i - 1] >= level.atom_index[i]:
            a, b = level.survivors[i - 1], level.survivors[i]
            return CheckReport(name, False, level.n, first_violation=(
                f"order broken: {word_str(a)} -> atom {level.atom_index[i - 1]}, "
                f"{word_str(b)} -> atom {level.atom_index[i]}"), data=data)
    if len(seen) != k:
        return CheckReport(name, False, level.n, first_violation=(
            f"{k - len(seen)} atoms have no surviving word"), data=data)
    return CheckReport(name, True, level.n, detail=f"{k} atoms", data=data)


def check_leafless(levels: Sequence[PrunedLevel]) -> CheckReport:
    """Every survivor below the last level has at least one surviving child."""
    name = "leafless"
    for lo, hi in zip(levels, levels[1:]):
        with_child = set(hi.parent_index)
        for i, w in enumerate(lo.survivors):
            if i not in with_child:
                return CheckReport(name, False, lo.n, first_violation=(
                    f"{word_str(w)} at level {lo.n} has no surviving child"))
    last = levels[-1].n if levels else None
    return CheckReport(name, True, last, detail=f"levels 0..{last}")


def _lost_children(lo: PrunedLevel, hi: PrunedLevel) -> set[tuple[int, int]]:
    kept = {(p, w[-1]) for p, w in zip(hi.parent_index, hi.survivors)}
    return {(i, e) for i in range(len(lo)) for e in (-1, 1)} - kept


def check_diamond(levels: Sequence[PrunedLevel], spec: FieldSpec, n: int) -> DiamondReport:
    """Account for every child lost between levels n and n+1.

    Canceling pairs are found by scanning the whole level for words a, b with
    x_{a+} = x_{b-}; the diamond shape and the count identity are checked
    afterwards, not assumed.
    """
    m = spec.m
    name = "diamond"
    if n + 1 >= len(levels):
        return DiamondReport(name, False, n, first_violation=f"level {n + 1} not built")
    lo, hi = levels[n], levels[n + 1]
    minus_at: dict[tuple[int, ...], list[int]] = {}
    for j, pos in enumerate(lo.positions):
        minus_at.setdefault(pos.times_beta().shift(-1).coeffs, []).append(j)
    pairs_idx = []
    for i, pos in enumerate(lo.positions):
        for j in minus_at.get(pos.times_beta().shift(1).coeffs, ()):
            pairs_idx.append((i, j))
    b_n = len(pairs_idx)
    words = lo.survivors
    pairs = [(words[i], words[j]) for i, j in pairs_idx]
    data: dict[str, Any] = {"b_n": b_n}

    def fail(msg: str) -> DiamondReport:
        return DiamondReport(name, False, n, first_violation=msg, data=data, b_n=b_n, pairs=pairs)

    lost = _lost_children(lo, hi)
    paired = {(i, 1) for i, _ in pairs_idx} | {(j, -1) for _, j in pairs_idx}
    if lost != paired:
        extra = sorted(lost - paired)
        if extra:
            i, e = extra[0]
            return fail(f"{word_str(words[i] + (e,))} lost without a canceling partner")
        i, e = sorted(paired - lost)[0]
        return fail(f"{word_str(words[i] + (e,))} collides but survives")
    parents = set()
    for i, e in lost:
        if (i, -e) in lost:
            return fail(f"{word_str(words[i])} loses both children")
        parents.add(i)

    if n < m:
        if b_n:
            return fail(f"cancellation at level {n} < m")
        return DiamondReport(name, True, n, detail="no cancellation below m", data=data, b_n=0)

    anc_level, split_level = levels[n - m], levels[n - m + 1]
    anc_set = set(anc_level.survivors)
    split = set(split_level.survivors)
    for a, b in pairs:
        stem = a[: n - m]
        if (
            b[: n - m] != stem
            or a[n - m:] != (-1,) + (1,) * (m - 1)
            or b[n - m:] != (1,) + (-1,) * (m - 1)
        ):
            return fail(f"pair {word_str(a)}+ / {word_str(b)}- is not a diamond")
        if stem not in anc_set or stem + (-1,) not in split or stem + (1,) not in split:
            return fail(f"diamond apex {word_str(stem)} lacks two surviving children")
    a_vals = [len(levels[k]) for k in range(len(levels))]
    expected = a_vals[n - m + 1] - a_vals[n - m]
    data.update(expected=expected, a_next=a_vals[n + 1], a_n=a_vals[n])
    if b_n != expected:
        return fail(f"b_{n} = {b_n} but a_{n - m + 1} - a_{n - m} = {expected}")
    if a_vals[n + 1] != 2 * a_vals[n] - 2 * b_n:
        return fail(f"a_{n + 1} != 2 a_{n} - 2 b_{n}")
    return DiamondReport(name, True, n, detail=f"b_{n} = {b_n}", data=data, b_n=b_n, pairs=pairs)


def check_separation(
    levels: Sequence[PrunedLevel],
    spec: FieldSpec,
    n: int,
    k: int,
    max_nodes: int = 20000,
    samples: int = 2000,
    seed: int = 0,
) -> CheckReport:
    """x_{a'+} <= x_{b'-} for a < b at level n and a', b' k levels below.

    Descendants of one level-n word form a contiguous block at level n+k, so
    checking each block's smallest minus-child against the largest plus-child
    of all earlier blocks covers every pair.  Above ``max_nodes`` survivors,
    ``samples`` random block pairs are checked instead.
    """
    name = "separation"
    strict = k >= spec.m
    if n < 1 or n + k >= len(levels):
        return CheckReport(name, False, n, first_violation=f"levels {n}..{n + k} not available")
    deep = levels[n + k]
    cmp = ExactComparator(spec)
    blocks: dict[Word, list[int]] = {}
    for i, w in enumerate(deep.survivors):
        blocks.setdefault(w[:n], []).append(i)
    order = [w for w in levels[n].survivors if w in blocks]
    plus_max = {}
    minus_min = {}
    for w in order:
        scaled = [deep.positions[i].times_beta() for i in blocks[w]]
        plus_max[w] = cmp.max(s.shift(1) for s in scaled)
        minus_min[w] = cmp.min(s.shift(-1) for s in scaled)
    data: dict[str, Any] = {"k": k, "strict": strict, "blocks": len(order)}

    def violates(a: Word, b: Word) -> bool:
        c = cmp(plus_max[a], minus_min[b])
        return c > 0 or (strict and c == 0)

    if len(deep) <= max_nodes:
        data["mode"] = "exhaustive"
        run: Word | None = None
        for w in order:
            if run is not None and violates(run, w):
                return CheckReport(name, False, n, first_violation=(
                    f"k={k}: descendants of {word_str(run)} reach past those of {word_str(w)}"),
                    data=data)
            if run is None or cmp(plus_max[w], plus_max[run]) > 0:
                run = w
    else:
        data["mode"] = "sampled"
        rng = random.Random(seed)
        for _ in range(samples):
            i, j = sorted(rng.sample(range(len(order)), 2))
            a, b = order[i], order[j]
            if violates(a, b):
                return CheckReport(name, False, n, first_violation=(
                    f"k={k}: {word_str(a)} vs {word_str(b)}"), data=data)
    return CheckReport(name, True, n, detail=f"k={k}, {data['mode']}", data=data)


def first_collision_inequality(spec: FieldSpec, n: int) -> bool:
    """rho - rho^2 - ... - rho^n >= rho^(n+1), checked after scaling by beta^(n+1)."""
    # beta^n - beta^(n-1) - ... - beta - 1
    raw = [-1] * n + [1]
    return sign(reduce(raw, spec), spec) >= 0


def tail_gap_inequality(spec: FieldSpec) -> bool:
    """sum_{j>=1} rho^j = 1/(beta - 1) < 2, via 2 beta - 3 > 0 and beta^m > 2."""
    two_beta_minus_3 = reduce([-3, 2], spec)
    beta_m_minus_2 = reduce([-2] + [0] * (spec.m - 1) + [1], spec)
    return sign(two_beta_minus_3, spec) > 0 and sign(beta_m_minus_2, spec) > 0


def dump_lines(levels: Sequence[PrunedLevel]) -> list[str]:
    return [f"{lvl.n} {word_str(w)}" for lvl in levels for w in lvl.survivors]


def to_dot(levels: Sequence[PrunedLevel]) -> str:
    out = ["digraph T {", "  node [shape=point];"]
    for lvl in levels:
        for w in lvl.survivors:
            out.append(f'  "{word_str(w)}" [label="{word_str(w)}"];')
            if w:
                out.append(f'  "{word_str(w[:-1])}" -> "{word_str(w)}";')
    out.append("}")
    return "\n".join(out) + "\n"
