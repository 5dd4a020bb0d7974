import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from tautring import (
    DR_cycle, evaluate, fundclass, is_zero, lambdaclass, psiclass,
)
from tautring._weightsum_py import weighting_sums as py_sums
from tautring.dr import (
    InterpolationError, default_samples, enumerate_weightings, pixton_class_at_r,
    q_polynomials,
)
from tautring.graphs import StableGraph, enumerate_stable_graphs
from tautring.kernels import BACKEND, weighting_sums

z = sp.symbols("z")


def one_point_oracle(g, A):
    """[z^{2g}] prod_{i>1} S(a_i z) / S(z), S(z) = sinh(z/2)/(z/2)."""
    def S(x):
        return sp.sinh(x / 2) / (x / 2)
    expr = sp.Mul(*[S(a * z) for a in A[1:] if a]) / S(z)
    c = sp.series(expr, z, 0, 2 * g + 1).removeO().coeff(z, 2 * g)
    return Fraction(int(c.p), int(c.q))


def test_genus_zero_is_fundamental_class():
    assert DR_cycle(0, (1, -1, 0)).equals(fundclass(0, 3))
    assert DR_cycle(0, (3, 2, -1, -4)).equals(fundclass(0, 4))


def test_vector_must_sum_to_zero():
    with pytest.raises(ValueError):
        DR_cycle(1, (1, 1))


def test_trivial_vector_gives_lambda():
    # DR_g(0,...,0) = (-1)^g lambda_g
    assert is_zero(DR_cycle(1, (0, 0)) + lambdaclass(1, 1, 2))
    assert is_zero(DR_cycle(2, (0,)) - lambdaclass(2, 2, 1))


def test_above_genus_vanishes():
    assert is_zero(DR_cycle(1, (1, -1), d=2))


def test_psi_on_trivial_dr():
    assert evaluate(DR_cycle(1, (0, 0)) * psiclass(1, 1, 2)) == Fraction(-1, 24)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.lists(st.integers(-4, 4), min_size=1, max_size=2))
def test_one_point_psi_integral(g, head):
    A = tuple(head) + (-sum(head),)
    n = len(A)
    value = evaluate(DR_cycle(g, A) * psiclass(1, g, n) ** (2 * g - 3 + n))
    assert value == one_point_oracle(g, A)


def test_rpoly_constant_term():
    R = DR_cycle(1, (3, -3), rpoly=True)
    assert R.constant_term().simplify().equals(DR_cycle(1, (3, -3)).simplify())
    assert R.degree_in_r() == 2


@pytest.mark.parametrize("gn", [(1, 2), (2, 1), (1, 3), (2, 2)])
def test_weighting_counts(gn):
    rng = random.Random(sum(gn))
    for e in range(1, 4):
        for G in enumerate_stable_graphs(*gn, e):
            A = [rng.randint(-3, 3) for _ in range(gn[1] - 1)]
            A.append(-sum(A))
            for r in (2, 3, 5):
                assert len(enumerate_weightings(G, r, A)) == r ** G.h1


def test_weighting_balancing():
    G = StableGraph([0, 0], [[1, 3, 4, 5], [2, 6, 7, 8]], [(3, 6), (4, 7), (5, 8)])
    for w in enumerate_weightings(G, 4, (2, -2)):
        vals = w.values
        assert all((vals[h] + vals[hh]) % 4 == 0 for h, hh in G.edges)
        assert (2 + vals[3] + vals[4] + vals[5]) % 4 == 0


def test_interpolation_is_independent_of_samples():
    G = StableGraph([0, 0], [[1, 3, 4, 5], [2, 6, 7, 8]], [(3, 6), (4, 7), (5, 8)])
    A = (3, -3)
    patterns = [(1, 1, 1), (2, 1, 1), (1, 1, 2)]
    deg = 2 * max(sum(p) for p in patterns)
    first = q_polynomials(G, A, patterns)
    shifted = q_polynomials(G, A, patterns, [r + 7 for r in default_samples(A, deg)])
    spread = q_polynomials(G, A, patterns, [10 + 3 * i for i in range(deg + 2)])
    assert first == shifted == spread


def test_interpolation_rejects_small_r():
    # below the sum of |a_i| the sums are not yet polynomial
    G = StableGraph([0, 0], [[1, 3, 4], [2, 5, 6]], [(3, 5), (4, 6)])
    with pytest.raises(InterpolationError):
        q_polynomials(G, (5, -5), [(1, 0), (1, 1)], [3, 4, 5, 6, 7, 8])
    with pytest.raises(ValueError):
        q_polynomials(G, (5, -5), [(1, 1)], [6, 7, 8])
    assert q_polynomials(G, (5, -5), [(1, 1)], [6, 7, 8, 9, 10, 11])


def test_pixton_class_integer_weightings():
    T = pixton_class_at_r(1, (1, -1), 1, 7)
    assert T.g == 1 and T.n == 2


@st.composite
def random_kernel_input(draw):
    nverts = draw(st.integers(1, 4))
    edges = []
    for v in range(1, nverts):
        edges.append((draw(st.integers(0, v - 1)), v))
    for _ in range(draw(st.integers(0, 3))):
        edges.append((draw(st.integers(0, nverts - 1)), draw(st.integers(0, nverts - 1))))
    if not edges:
        edges.append((0, 0))
    res = [draw(st.integers(-5, 5)) for _ in range(nverts)]
    res[-1] -= sum(res)
    r = draw(st.integers(1, 9))
    patterns = draw(st.lists(st.lists(st.integers(0, 3), min_size=len(edges),
                                      max_size=len(edges)), min_size=1, max_size=3))
    eu = [a for a, _ in edges]
    ev = [b for _, b in edges]
    return nverts, eu, ev, res, r, patterns


@settings(max_examples=150, deadline=None)
@given(random_kernel_input())
def test_compiled_kernel_matches_python(data):
    assert weighting_sums(*data) == py_sums(*data)


def test_backend_reported():
    assert BACKEND in ("cython", "python")


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys
    env = dict(os.environ, TAUTRING_PURE="1")
    code = ("from tautring import kernels, DR_cycle, evaluate, psiclass;"
            "print(kernels.BACKEND, evaluate(DR_cycle(1, (0, 0)) * psiclass(1, 1, 2)))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["python", "-1/24"]
