"""Chern character and Chern classes of the Hodge bundle."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .decor import (
    TautClass,
    _check_stable,
    decorated_class,
    fundclass,
    kappaclass,
    psi_monomial,
)
from .graphs import automorphism_count, enumerate_stable_graphs, trivial_graph


def bernoulli(k: int) -> Fraction:
    from sympy import bernoulli as _b
    x = _b(k)
    return Fraction(int(x.p), int(x.q))


class ChernCharacter:
    """``ch_1 .. ch_maxdeg`` of the Hodge bundle on M̄_{g,n}."""

    def __init__(self, g, n, parts):
        self.g, self.n = g, n
        self.parts = parts   # parts[l] = ch_l, parts[0] unused

    def __getitem__(self, l: int) -> TautClass:
        if l == 0:
            return fundclass(self.g, self.n).scale(self.g)
        if l < len(self.parts):
            return self.parts[l]
        return TautClass(self.g, self.n)

    @property
    def maxdeg(self) -> int:
        return len(self.parts) - 1


@lru_cache(maxsize=None)
def _ch_odd(g: int, n: int, d: int) -> TautClass:
    """``ch_d`` for odd ``d`` via Mumford's formula."""
    l2 = d + 1
    coeff = bernoulli(l2) / factorial(l2)
    if d > 3 * g - 3 + n:
        return TautClass(g, n)
    triv = trivial_graph(g, n)
    T = kappaclass(d, g, n)
    for i in range(1, n + 1):
        T = T - decorated_class(triv, psi_monomial(1, {i: d}))
    triples = []
    for G in enumerate_stable_graphs(g, n, 1):
        h, hh = G.edges[0]
        w = Fraction(1, automorphism_count(G))
        for a in range(d):
            b = d - 1 - a
            psi = {}
            if a:
                psi[h] = a
            if b:
                psi[hh] = psi.get(hh, 0) + b
            mono = (((),) * G.num_verts, tuple(sorted(psi.items())))
            triples.append((G, mono, w * (-1) ** a))
    T = T + TautClass.from_triples(g, n, triples)
    return T.scale(coeff).simplify()


def hodge_chern_character(g: int, n: int, maxdeg: int) -> ChernCharacter:
    _check_stable(g, n)
    parts = [None]
    for l in range(1, maxdeg + 1):
        if l % 2 == 0:
            parts.append(TautClass(g, n))
        else:
            parts.append(_ch_odd(g, n, l))
    return ChernCharacter(g, n, parts)


@lru_cache(maxsize=None)
def _lambdas(g: int, n: int, d: int) -> tuple:
    """``(λ_0, ..., λ_d)`` via Newton's identities from ``p_i = i!·ch_i``."""
    ch = hodge_chern_character(g, n, d)
    lams = [fundclass(g, n)]
    top = 3 * g - 3 + n
    for k in range(1, d + 1):
        if k > g or k > top:
            lams.append(TautClass(g, n))
            continue
        acc = TautClass(g, n)
        for i in range(1, k + 1):
            if i % 2 == 0 or not lams[k - i].terms:
                continue
            p = ch[i].scale(factorial(i))
            term = p * lams[k - i]
            acc = acc + term.scale((-1) ** (i - 1))
        lams.append(acc.scale(Fraction(1, k)).simplify())
    return tuple(lams)


def lambdaclass(d: int, g: int, n: int) -> TautClass:
    """The Chern class ``λ_d`` of the Hodge bundle (zero for ``d > g``)."""
    _check_stable(g, n)
    if d < 0:
        raise ValueError("lambda index must be nonnegative")
    if d == 0:
        return fundclass(g, n)
    return _lambdas(g, n, d)[d]


def lambda_from_ch(d: int, g: int, n: int) -> TautClass:
    """``λ_d`` from the Chern character without the ``d > g`` shortcut."""
    ch = hodge_chern_character(g, n, d)
    lams = [fundclass(g, n)]
    for k in range(1, d + 1):
        acc = TautClass(g, n)
        for i in range(1, k + 1):
            if i % 2 == 0:
                continue
            acc = acc + (ch[i].scale(factorial(i)) * lams[k - i]).scale((-1) ** (i - 1))
        lams.append(acc.scale(Fraction(1, k)).simplify())
    return lams[d]


__all__ = ["ChernCharacter", "hodge_chern_character", "lambdaclass", "lambda_from_ch", "bernoulli"]

