from fractions import Fraction
from math import factorial

import pytest

from tautring import evaluate, is_zero, kappaclass, lambdaclass, psiclass
from tautring.hodge import bernoulli, hodge_chern_character, lambda_from_ch


def test_bernoulli():
    assert [bernoulli(k) for k in (0, 2, 4, 6, 8)] == [1, Fraction(1, 6), Fraction(-1, 30),
                                                       Fraction(1, 42), Fraction(-1, 30)]


def test_lambda1_on_m11():
    assert evaluate(lambdaclass(1, 1, 1)) == Fraction(1, 24)


def test_lambda_zero_and_out_of_range():
    assert lambdaclass(0, 2, 1).equals(psiclass(1, 2, 1) ** 0)
    assert lambdaclass(3, 2, 0).simplify().is_empty()


def test_rank_bound_from_chern_character():
    # Newton's identities give lambda_{g+1} = 0 only modulo relations
    assert is_zero(lambda_from_ch(2, 1, 2))
    assert is_zero(lambda_from_ch(3, 2, 0))


def test_mumford_relation_genus_two():
    # c(E) c(E dual) = 1
    assert is_zero(lambdaclass(1, 2, 0) ** 2 - 2 * lambdaclass(2, 2, 0))


def test_even_chern_character_vanishes():
    ch = hodge_chern_character(2, 1, 4)
    assert ch[2].simplify().is_empty() and ch[4].simplify().is_empty()


@pytest.mark.parametrize("g, value", [(1, Fraction(1, 24)), (2, Fraction(7, 5760))])
def test_lambda_g_formula(g, value):
    # int psi^{2g-2} lambda_g = (2^{2g-1} - 1)|B_{2g}| / (2^{2g-1} (2g)!)
    n_psi = 2 * g - 2
    T = lambdaclass(g, g, 1) * psiclass(1, g, 1) ** n_psi
    b = abs(bernoulli(2 * g))
    assert evaluate(T) == value == Fraction(2 ** (2 * g - 1) - 1, 2 ** (2 * g - 1)) * b / factorial(2 * g)


def test_faber_top_intersections():
    assert evaluate(lambdaclass(1, 2, 0) ** 3) == Fraction(1, 2880)
    assert evaluate(lambdaclass(2, 2, 0) * lambdaclass(1, 2, 0)) == Fraction(1, 5760)
    l3 = lambdaclass(3, 3, 0) * lambdaclass(2, 3, 0) * lambdaclass(1, 3, 0)
    assert evaluate(l3) == Fraction(1, 1451520)


def test_mumford_on_smooth_locus():
    from tautring import to_basis
    assert to_basis(lambdaclass(1, 3, 0), moduli="sm") == (Fraction(1, 12),)
    assert to_basis(kappaclass(1, 3, 0), moduli="sm") == (1,)
