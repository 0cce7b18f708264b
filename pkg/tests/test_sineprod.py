import math
from fractions import Fraction

import numpy as np
import pytest

from signedbern.algebraic import field_spec
from signedbern.measure import signed_bernoulli
from signedbern.sineprod import (
    BoundViolation,
    beta_float,
    default_xi_max,
    eval_sine_product,
    fourier_transform,
    golden_section_max,
    scan,
)


def test_beta_float():
    assert beta_float(2) == (1 + math.sqrt(5)) / 2
    assert abs(beta_float(3) - 1.839286755214161) < 1e-15


def test_product_factorizes():
    xi = np.linspace(0, 40, 101)
    b = beta_float(2)
    direct = np.prod([np.sin(2 * np.pi * xi / b**j) for j in range(1, 8)], axis=0)
    assert np.allclose(eval_sine_product(2, 7, xi), direct, atol=0, rtol=1e-12)
    assert np.allclose(eval_sine_product(2, 7, xi),
                       eval_sine_product(2, 4, xi) * np.prod(
                           [np.sin(2 * np.pi * xi / b**j) for j in range(5, 8)], axis=0))
    assert isinstance(eval_sine_product(2, 3, 1.25), float)
    with pytest.raises(ValueError):
        eval_sine_product(2, 0, 1.0)


@pytest.mark.parametrize("m,n", [(2, 8), (3, 7), (4, 9)])
def test_fourier_transform_modulus(m, n):
    nu = signed_bernoulli(field_spec(m), n)[-1]
    xi = np.linspace(0, 25, 301)
    ft = fourier_transform(nu, xi)
    F = eval_sine_product(m, n, xi)
    assert np.max(np.abs(np.abs(ft) - np.abs(F))) < 1e-9
    # nu-hat = (-i)^n F_n exactly
    assert np.max(np.abs(ft - (-1j) ** n * F)) < 1e-9


def test_first_level_reaches_one():
    r = scan(2, 1, samples=20001)
    assert abs(r.max_abs - 1) < 1e-12
    assert r.bound == 1


def test_m2_n10_bound():
    r = scan(2, 10)
    assert r.bound == Fraction(112, 1024)
    assert r.max_abs <= 0.109375
    assert abs(r.max_abs - 0.068444) < 1e-5
    assert r.to_json()["within_bound"]


def test_violation_raised():
    with pytest.raises(BoundViolation):
        scan(2, 4, samples=5000, bound=Fraction(1, 100))


def test_golden_section():
    x, v = golden_section_max(lambda t: -(t - 0.3) ** 2, 0, 1)
    assert abs(x - 0.3) < 1e-6 and v <= 0


def test_default_range():
    assert default_xi_max(2, 4) == pytest.approx(10 * beta_float(2) ** 4)
    assert default_xi_max(2, 40) == 1e4
    with pytest.raises(ValueError):
        scan(2, 3, samples=1)
