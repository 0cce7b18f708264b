import itertools
from fractions import Fraction

import mpmath
import pytest

from signedbern.algebraic import field_spec
from signedbern.measure import signed_bernoulli, unsigned_bernoulli

# a_n = 2^n ||nu^(n)||, from 60-digit mpmath positions grouped after rounding
# to 30 digits (independent of the Z[beta] engine)
ORACLE_A = {
    2: [1, 2, 4, 6, 8, 12, 20, 32, 48, 72, 112, 176, 272, 416, 640],
    4: [1, 2, 4, 8, 16, 30, 56, 104, 192, 356, 660, 1224, 2272],
}


def mp_beta(m, dps=60):
    with mpmath.workdps(dps):
        return mpmath.findroot(lambda x: x**m - sum(x**i for i in range(m)), 1.9)


def mp_fraction(x):
    """Exact rational value of an mpf."""
    man, exp = x.man, x.exp
    return Fraction(man) * Fraction(2) ** exp


def mp_expand(m, n, signed=True):
    """Float-free-of-Z[beta] oracle: {rounded position: integer weight}."""
    with mpmath.workdps(60):
        b = mp_beta(m)
        pts = {}
        for w in itertools.product((-1, 1), repeat=n):
            x = sum(e * b ** -(j + 1) for j, e in enumerate(w))
            s = 1
            if signed:
                for e in w:
                    s *= e
            key = int(mpmath.nint(x * 10**30))
            pts[key] = pts.get(key, 0) + s
    return {k: v for k, v in pts.items() if v}


@pytest.fixture(scope="session")
def spec2():
    return field_spec(2)


@pytest.fixture(scope="session")
def spec3():
    return field_spec(3)


@pytest.fixture(scope="session")
def spec4():
    return field_spec(4)


@pytest.fixture(scope="session")
def nus2(spec2):
    return signed_bernoulli(spec2, 14)


@pytest.fixture(scope="session")
def nus4(spec4):
    return signed_bernoulli(spec4, 12)


@pytest.fixture(scope="session")
def mus2(spec2):
    return unsigned_bernoulli(spec2, 8)
