"""The full structural verification run behind ``signedbern verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from . import algebraic as alg
from .asymptotics import (
    estimate_constant,
    generating_function_coeffs,
    recurrence,
    solve_all_roots,
    solve_real_root,
)
from .measure import expand_brute_force, is_symmetric, signed_bernoulli
from .tree import (
    CheckReport,
    build_tree,
    check_diamond,
    check_first_pruning,
    check_isomorphism,
    check_leafless,
    check_separation,
    first_collision_inequality,
    tail_gap_inequality,
)

SCHEMA_VERSION = 1


def default_depth(m: int) -> int:
    return 14 if m == 2 else 12


@dataclass
class VerifyReport:
    m: int
    depth: int
    brute_depth: int
    seed: int
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckReport]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "m": self.m,
            "depth": self.depth,
            "brute_depth": self.brute_depth,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _random_element(rng: random.Random, m: int, bound: int = 50) -> alg.FieldElement:
    return alg.FieldElement(tuple(rng.randint(-bound, bound) for _ in range(m)))


def _ring_axioms(spec: alg.FieldSpec, rng: random.Random, trials: int = 50) -> CheckReport:
    for t in range(trials):
        a, b, c = (_random_element(rng, spec.m) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * b != b * a or a * (b + c) != a * b + a * c:
            return CheckReport("ring_axioms", False, first_violation=f"trial {t}: {a}, {b}, {c}")
        if not a.is_zero():
            s = alg.sign(a, spec)
            if s != -alg.sign(-a, spec) or s != alg.sign(a.times_beta(), spec):
                return CheckReport("ring_axioms", False, first_violation=f"sign of {a}")
    return CheckReport("ring_axioms", True, detail=f"{trials} random triples")


def run_verify(
    m: int,
    depth: int | None = None,
    brute_depth: int | None = None,
    seed: int = 0,
    jobs: int = 1,
    sep_levels: int = 10,
    sep_k: int = 4,
    N_gf: int = 200,
    N_const: int = 80,
) -> VerifyReport:
    if m < 2 or m % 2:
        raise ValueError(f"verify needs even m >= 2, got {m}")
    depth = default_depth(m) if depth is None else depth
    brute_depth = min(depth, 12) if brute_depth is None else brute_depth
    if depth < m + 1:
        raise ValueError(f"depth must be at least m+1 = {m + 1}")
    rng = random.Random(seed)
    report = VerifyReport(m, depth, brute_depth, seed)
    add = report.checks.append

    spec = alg.field_spec(m)
    add(CheckReport("irreducible", alg.is_irreducible(m), detail=f"x^{m} - ... - 1 over Q"))
    add(_ring_axioms(spec, rng))
    bad = [n for n in range(1, m + 1) if not first_collision_inequality(spec, n)]
    add(CheckReport("first_collision_inequality", not bad, detail=f"n = 1..{m}",
                    first_violation=f"fails at n={bad[0]}" if bad else None))
    add(CheckReport("tail_gap_inequality", tail_gap_inequality(spec), detail="1/(beta-1) < 2"))

    nus = signed_bernoulli(spec, depth)
    for n in range(brute_depth + 1):
        bf = expand_brute_force(spec, n, jobs=jobs)
        if bf != nus[n]:
            add(CheckReport("brute_force_agreement", False, n,
                            first_violation=f"inductive and expanded nu^({n}) differ"))
            break
    else:
        add(CheckReport("brute_force_agreement", True, brute_depth, detail=f"n <= {brute_depth}"))

    sym_bad = [n for n, nu in enumerate(nus) if not is_symmetric(nu, (-1) ** n)]
    add(CheckReport("odd_symmetry", not sym_bad, depth,
                    first_violation=f"n={sym_bad[0]}" if sym_bad else None))
    tvs = [nu.total_variation() for nu in nus]
    mono_bad = [n for n in range(1, len(tvs)) if tvs[n] > tvs[n - 1]]
    add(CheckReport("monotone_total_variation", not mono_bad, depth,
                    first_violation=f"n={mono_bad[0]}" if mono_bad else None))
    unit_bad = [n for n, nu in enumerate(nus) if any(abs(w) != 1 for w in nu.numerators)]
    add(CheckReport("unit_numerators", not unit_bad, depth,
                    first_violation=f"n={unit_bad[0]}" if unit_bad else None))

    levels, _ = build_tree(spec, depth, nus)
    add(check_first_pruning(levels, spec))
    iso = [check_isomorphism(lvl, nu) for lvl, nu in zip(levels, nus)]
    first_bad = next((r for r in iso if not r.passed), None)
    add(first_bad or CheckReport("isomorphism", True, depth, detail=f"levels 0..{depth}"))
    add(check_leafless(levels))
    b_values = []
    for n in range(depth):
        r = check_diamond(levels, spec, n)
        b_values.append(r.b_n)
        if not r.passed:
            add(r)
            break
    else:
        add(CheckReport("diamond", True, depth - 1, detail=f"n = 0..{depth - 1}",
                        data={"b_n": b_values}))
    sep_fail = None
    for n in range(1, min(sep_levels, depth) + 1):
        for k in range(0, sep_k + 1):
            if n + k > depth:
                break
            r = check_separation(levels, spec, n, k, seed=seed)
            if not r.passed:
                sep_fail = r
                break
        if sep_fail:
            break
    add(sep_fail or CheckReport("separation", True, detail=f"levels 1..{min(sep_levels, depth)}, k <= {sep_k}"))

    table = recurrence(m, max(N_gf, N_const, depth))
    sizes = [len(lvl) for lvl in levels]
    scaled_tv = [tv * 2**n for n, tv in enumerate(tvs)]
    rec_ok = list(table.values[: depth + 1]) == sizes == scaled_tv
    add(CheckReport("recurrence_identity", rec_ok, depth,
                    detail="a_n = 2^n ||nu^(n)|| = |D_n*|",
                    first_violation=None if rec_ok else f"sizes {sizes}",
                    data={"a_n": sizes}))
    gf = generating_function_coeffs(m, N_gf)
    gf_ok = gf == list(table.values[: N_gf + 1])
    add(CheckReport("generating_function", gf_ok, N_gf, detail=f"N = {N_gf}"))

    if m <= 12:
        roots = solve_all_roots(m)
        ok = roots.dominant and roots.below_three_halves and max(roots.residuals) < 1e-10
        add(CheckReport("root_dominance", ok, detail=(
            f"max |z_j| = {max(roots.moduli):.12f}, lambda = {roots.lam.decimal(12)}")))
    lam = solve_real_root(m, 40)
    est = estimate_constant(table, lam, N_const)
    add(CheckReport("constant_bracket", est.converging, N_const,
                    detail=f"C in [{float(est.bracket[0]):.12f}, {float(est.bracket[1]):.12f}]"))
    return report
