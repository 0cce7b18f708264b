import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedbern.algebraic import FieldElement, field_spec
from signedbern.measure import (
    ScaledPoint,
    SignedMeasure,
    delta0,
    expand_brute_force,
    is_symmetric,
    signed_bernoulli,
    signed_step,
    support_positions,
    total_variation,
    unsigned_bernoulli,
    variation_measure,
    word_position,
)

from conftest import ORACLE_A, mp_expand


def test_first_levels(spec2, nus2):
    assert nus2[0] == delta0(spec2)
    nu1 = nus2[1]
    assert [(p.coeffs, w) for p, w in nu1.atoms] == [((-1, 0), -1), ((1, 0), 1)]
    assert nu1.total_variation() == 1
    # +-- and -++ cancel at m=2
    assert nus2[3].total_variation() == Fraction(6, 8)


@pytest.mark.parametrize("m", [2, 4])
def test_counts_match_oracle(m, nus2, nus4):
    nus = nus2 if m == 2 else nus4
    a = [int(nu.total_variation() * 2**n) for n, nu in enumerate(nus)]
    assert a == ORACLE_A[m]
    assert [len(nu) for nu in nus] == ORACLE_A[m]


@pytest.mark.parametrize("m,n", [(2, 9), (3, 7), (4, 8)])
def test_atoms_match_float_oracle(m, n):
    spec = field_spec(m)
    nu = signed_bernoulli(spec, n)[-1]
    oracle = mp_expand(m, n)
    assert len(nu) == len(oracle)
    assert sorted(nu.numerators) == sorted(oracle.values())
    # sorted positions give the same weight sequence as the oracle's sorted keys
    assert nu.numerators == [oracle[k] for k in sorted(oracle)]


def test_m3_level7_mass(spec3):
    nu = signed_bernoulli(spec3, 7)[-1]
    assert len(nu) == 96
    assert nu.total_variation() == 1


def test_unsigned_collisions(spec2, mus2):
    mu3 = mus2[3]
    assert len(mu3) == 7
    assert sorted(mu3.numerators) == [1, 1, 1, 1, 1, 1, 2]
    assert all(mu.total_variation() == 1 for mu in mus2)
    oracle = mp_expand(2, 8, signed=False)
    assert mus2[8].numerators == [oracle[k] for k in sorted(oracle)]


def test_brute_force_agrees_with_steps(spec2, nus2):
    for n in range(0, 15):
        assert expand_brute_force(spec2, n) == nus2[n]


def test_brute_force_jobs_independent(spec4, nus4):
    assert expand_brute_force(spec4, 10, jobs=3) == expand_brute_force(spec4, 10) == nus4[10]


def test_positions_strictly_sorted(spec4, nus4):
    pts = support_positions(nus4[9])
    assert all(a.compare(b, spec4) < 0 for a, b in zip(pts, pts[1:]))
    vals = [p.value(spec4) for p in pts]
    assert vals == sorted(vals)


def test_symmetry_and_monotonicity(nus2, nus4):
    for nus in (nus2, nus4):
        tvs = [total_variation(nu) for nu in nus]
        assert all(b <= a for a, b in zip(tvs, tvs[1:]))
        for n, nu in enumerate(nus):
            assert is_symmetric(nu, (-1) ** n)
            assert sum(nu.numerators) == (1 if n == 0 else 0)


def test_variation_measure(spec3):
    nus = signed_bernoulli(spec3, 8)
    mus = unsigned_bernoulli(spec3, 8)
    for nu, mu in zip(nus, mus):
        assert variation_measure(nu) == mu


def test_word_position():
    spec = field_spec(2)
    # +-  ->  beta - 1
    assert word_position((1, -1), spec).coeffs == (-1, 1)
    assert word_position((), spec).coeffs == (0, 0)
    assert word_position((1, 1, 1), spec).coeffs == (2, 2)  # beta^2 + beta + 1


def test_json_round_trip(nus4):
    nu = nus4[7]
    text = json.dumps(nu.to_json())
    assert SignedMeasure.from_json(json.loads(text)) == nu
    bad = nu.to_json()
    bad["atoms"][0]["coeffs"] = [1, 2]
    with pytest.raises(ValueError):
        SignedMeasure.from_json(bad)


def test_empty_measure():
    empty = SignedMeasure(2, 3, ())
    assert empty.total_variation() == 0
    assert len(empty) == 0
    assert signed_step(empty, field_spec(2)).atoms == ()


def test_field_mismatch(nus2):
    with pytest.raises(ValueError):
        signed_step(nus2[2], field_spec(3))


def test_scaled_point():
    spec = field_spec(2)
    p = ScaledPoint(FieldElement((1, 0)), 1)
    q = p.rescale(3)
    assert q.compare(p, spec) == 0
    with pytest.raises(ValueError):
        q.rescale(2)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=12))
def test_every_word_lands_on_support_or_cancels(word):
    spec = field_spec(2)
    n = len(word)
    mu = unsigned_bernoulli(spec, n)[-1]
    assert mu.weight_at(word_position(word, spec)) >= 1
