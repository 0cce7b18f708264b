from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy

from signedbern.asymptotics import (
    RealEnclosure,
    characteristic_poly,
    estimate_constant,
    fraction_to_decimal,
    generating_function_coeffs,
    recurrence,
    series_divide,
    solve_all_roots,
    solve_real_root,
)

from conftest import ORACLE_A


def test_recurrence_values():
    assert list(recurrence(2, 14).values) == ORACLE_A[2]
    assert list(recurrence(4, 12).values) == ORACLE_A[4]
    assert recurrence(6, 6).values == tuple(2**n for n in range(7))


@pytest.mark.parametrize("m", [1, 3, 5])
def test_recurrence_rejects_odd(m):
    with pytest.raises(ValueError):
        recurrence(m, 10)
    with pytest.raises(ValueError):
        solve_real_root(m)


def test_lambda_m2():
    lam = solve_real_root(2, 30)
    assert lam.width < Fraction(1, 10**30)
    # truncated, not rounded: lambda/2 = 0.7718445...
    assert int(lam.lo / 2 * 10**6) == int(lam.hi / 2 * 10**6) == 771844
    with mpmath.workdps(50):
        r = mpmath.findroot(lambda x: x**3 - 2 * x**2 + 2 * x - 2, 1.5)
        assert abs(float(r) - 1.5436890126920764) < 1e-15
        assert lam.lo <= Fraction(str(mpmath.nstr(r, 40))) + Fraction(1, 10**38)
        assert Fraction(str(mpmath.nstr(r, 40))) - Fraction(1, 10**38) <= lam.hi


def test_enclosures_nest():
    coarse = solve_real_root(4, 10)
    fine = solve_real_root(4, 40)
    assert fine.nested_in(coarse)
    assert coarse.contains(fine.mid)


def test_lambda_grows_with_m():
    lams = [solve_real_root(m, 20).mid for m in (2, 4, 6, 8, 10)]
    assert lams == sorted(lams)
    assert all(Fraction(2 * (m - 1), m + 1) < l < 2 for m, l in zip((2, 4, 6, 8, 10), lams))


@pytest.mark.parametrize("m,expected_mod", [(2, 1.1382), (4, 1.0756), (6, 1.0499), (8, 1.0371)])
def test_roots_against_numpy(m, expected_mod):
    rep = solve_all_roots(m)
    ref = np.roots(list(reversed(characteristic_poly(m))))
    lam = float(rep.lam)
    others = sorted(abs(z) for z in ref if abs(z - lam) > 1e-9)
    assert np.allclose(sorted(rep.moduli), others, atol=1e-10)
    assert abs(max(rep.moduli) - expected_mod) < 1e-4
    assert rep.dominant and rep.below_three_halves and rep.squarefree
    assert max(rep.residuals) < 1e-10
    assert abs(rep.real_root_float - lam) < 1e-12


def test_root_cap():
    with pytest.raises(ValueError):
        solve_all_roots(14)


def test_gf_against_sympy():
    z = sympy.Symbol("z")
    for m in (2, 4):
        F = (1 + 2 * z**m) / (1 - 2 * z + 2 * z**m - 2 * z ** (m + 1))
        s = sympy.series(F, z, 0, 31).removeO()
        ref = [int(s.coeff(z, n)) for n in range(31)]
        assert generating_function_coeffs(m, 30) == ref


@pytest.mark.parametrize("m", [2, 4, 6])
def test_gf_equals_recurrence(m):
    assert generating_function_coeffs(m, 200) == list(recurrence(m, 200).values)


def test_series_divide():
    # 1/(1-z) = 1 + z + z^2 + ...
    assert series_divide([1], [1, -1], 5) == [1] * 6
    # (1 - z)^2 / (1 - z) = 1 - z
    assert series_divide([1, -2, 1], [1, -1], 4) == [1, -1, 0, 0, 0]
    with pytest.raises(ValueError):
        series_divide([1], [2, 1], 3)


def test_annihilation():
    # a_n satisfies the characteristic polynomial as a shift operator
    m = 4
    a = recurrence(m, 60).values
    f = characteristic_poly(m)
    for n in range(m + 1, 60 - m - 1):
        # z^(m+1) - 2 z^m + 2 z - 2 applied to a_(n-m-1..n)
        assert sum(c * a[n - m - 1 + k] for k, c in enumerate(f)) == 0


def test_constant_bracket_m2():
    table = recurrence(2, 80)
    lam = solve_real_root(2, 40)
    e80 = estimate_constant(table, lam, 80)
    e40 = estimate_constant(table, lam, 40)
    assert e80.width < Fraction(1, 10**6)
    assert e40.contains(e80.estimate_exact)
    assert e80.converging
    assert abs(e80.C_estimate - 1.4736796892776) < 1e-10


def test_constant_stable_in_precision():
    table = recurrence(2, 80)
    a = estimate_constant(table, solve_real_root(2, 30), 80)
    b = estimate_constant(table, solve_real_root(2, 60), 80)
    assert abs(a.estimate_exact - b.estimate_exact) < Fraction(1, 10**15)
    assert a.bracket[0] <= b.bracket[0] and b.bracket[1] <= a.bracket[1]


def test_constant_needs_window():
    with pytest.raises(ValueError):
        estimate_constant(recurrence(4, 8), solve_real_root(4))


def test_real_enclosure_helpers():
    e = RealEnclosure(Fraction(1), Fraction(3))
    assert e.mid == 2 and float(e) == 2.0 and e.width == 2
    assert e.contains(1.5) and not e.contains(4)
    assert fraction_to_decimal(Fraction(1, 3), 5) == "0.33333"
