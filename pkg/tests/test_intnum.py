from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from tautring.intnum import double_factorial, kappa_psi_integral, psi_integral


def test_double_factorial():
    assert [double_factorial(m) for m in (-1, 0, 1, 5, 6)] == [1, 1, 1, 15, 48]


@pytest.mark.parametrize("g, exps, value", [
    (1, (0, 1, 2), Fraction(1, 12)),
    (1, (1,), Fraction(1, 24)),
    (2, (4,), Fraction(1, 1152)),
    (2, (2, 3), Fraction(29, 5760)),
    (2, (2, 2, 2), Fraction(7, 240)),
    (3, (7,), Fraction(1, 82944)),
])
def test_known_values(g, exps, value):
    assert psi_integral(g, exps) == value


def test_wrong_dimension_is_zero():
    assert psi_integral(1, (2, 1)) == 0
    assert psi_integral(0, (0, 0, 1)) == 0


def test_one_point_series():
    # <tau_{3g-2}>_g = 1/(24^g g!)
    for g in range(1, 6):
        assert psi_integral(g, (3 * g - 2,)) == Fraction(1, 24 ** g * factorial(g))


@st.composite
def exponents(draw, g_max=3, n_max=5, extra=0):
    """``(g, d)`` with ``sum(d) = dim M_{g,n} + extra``."""
    g = draw(st.integers(0, g_max))
    n = draw(st.integers(max(0, 3 - 2 * g), n_max))
    if 2 * g - 2 + n <= 0 or n == 0:
        n = max(n, 1, 3 - 2 * g)
    total = 3 * g - 3 + n + extra
    cuts = sorted(draw(st.lists(st.integers(0, total), min_size=n - 1, max_size=n - 1)))
    d = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    return g, draw(st.permutations(d))


@settings(max_examples=40, deadline=None)
@given(exponents(g_max=0, n_max=9))
def test_genus_zero_multinomial(data):
    _, d = data
    n = len(d)
    assert psi_integral(0, d) == Fraction(factorial(n - 3), prod(factorial(x) for x in d))


def test_genus_one_tau1_power():
    for n in range(1, 7):
        assert psi_integral(1, (1,) * n) == Fraction(factorial(n - 1), 24)


@settings(max_examples=80, deadline=None)
@given(exponents(extra=1))
def test_string_equation(data):
    g, d = data
    n = len(d)
    rhs = sum(psi_integral(g, d[:j] + [d[j] - 1] + d[j + 1:]) for j in range(n) if d[j] > 0)
    assert psi_integral(g, [0] + d) == rhs


@settings(max_examples=80, deadline=None)
@given(exponents())
def test_dilaton_equation(data):
    g, d = data
    assert psi_integral(g, [1] + d) == (2 * g - 2 + len(d)) * psi_integral(g, d)


def test_permutation_symmetry():
    assert psi_integral(2, (1, 2, 3, 0)) == psi_integral(2, (3, 0, 2, 1))


@pytest.mark.parametrize("g, n, kappa, psi, value", [
    (1, 1, (1,), (0,), Fraction(1, 24)),
    (0, 5, (2,), (0,) * 5, Fraction(1)),
    (0, 5, (1, 1), (0,) * 5, Fraction(5)),
    (2, 0, (3,), (), Fraction(1, 1152)),
    (2, 0, (1, 1, 1), (), Fraction(43, 2880)),
    (1, 1, (), (1,), Fraction(1, 24)),
])
def test_kappa_psi(g, n, kappa, psi, value):
    assert kappa_psi_integral(g, n, kappa, psi) == value


def test_top_kappa_genus_zero():
    # kappa_{n-3} on M_{0,n} is the pushforward of psi^{n-2} from M_{0,n+1}
    for n in range(3, 9):
        assert kappa_psi_integral(0, n, (n - 3,) if n > 3 else (), (0,) * n) == 1
