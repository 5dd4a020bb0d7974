"""Double ramification cycles (k = 0) from Pixton's graph sum.

For a stable graph Γ and an edge-exponent vector ``m`` (``m_e >= 1``), the
r-dependence of Pixton's class sits entirely in

    Q_{Γ,m}(r) = r^{-h1(Γ)} Σ_w Π_e (w(h_e) w(h'_e))^{m_e},

summed over admissible weightings mod ``r``.  For ``r`` beyond the partial
sums of ``|a_i|`` this is a polynomial of degree at most ``2 Σ m_e``; we
sample it, interpolate, check one extra sample, and read off the constant
term.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .cache import frac_to_str
from .decor import TautClass, _check_stable, fundclass
from .graphs import StableGraph, automorphism_count, enumerate_stable_graphs
from .kernels import weighting_sums


class InterpolationError(RuntimeError):
    """The verification sample disagrees with the interpolating polynomial."""


class Weighting:
    """An admissible weighting of the half-edges of ``graph`` modulo ``r``."""

    __slots__ = ("graph", "r", "values")

    def __init__(self, graph, r, values):
        self.graph = graph
        self.r = r
        self.values = values

    def __repr__(self):
        return f"Weighting(r={self.r}, {self.values})"


def _check_vector(A, k=0):
    A = tuple(int(a) for a in A)
    if sum(A) != 0:
        raise ValueError(f"entries of A must sum to 0 (got {sum(A)})")
    return A


def _edge_data(G: StableGraph, A):
    """Vertex residues and oriented edge endpoints for the weighting kernel."""
    vof = G.vertex_of
    res = [0] * G.num_verts
    for i, a in enumerate(A, 1):
        res[vof[i]] -= a
    eu = [vof[h] for h, _ in G.edges]
    ev = [vof[hh] for _, hh in G.edges]
    return eu, ev, res


def enumerate_weightings(G: StableGraph, r: int, A):
    """All weightings of ``G`` mod ``r`` with legs carrying ``A`` (``r^h1`` of them)."""
    A = _check_vector(A)
    if r < 1:
        raise ValueError("r must be positive")
    from ._weightsum_py import spanning_tree
    eu, ev, res = _edge_data(G, A)
    order, parent_edge, free = spanning_tree(G.num_verts, eu, ev)
    out = []
    for values in itertools.product(range(r), repeat=len(free)):
        t = [0] * G.num_edges
        acc = [0] * G.num_verts
        for e, val in zip(free, values):
            t[e] = val
            acc[eu[e]] += val
            acc[ev[e]] -= val
        for x in reversed(order[1:]):
            e = parent_edge[x]
            need = res[x] - acc[x]
            if eu[e] == x:
                val = need % r
                acc[x] += val
                acc[ev[e]] -= val
            else:
                val = (-need) % r
                acc[x] -= val
                acc[eu[e]] += val
            t[e] = val
        w = {i: a % r for i, a in enumerate(A, 1)}
        for (h, hh), te in zip(G.edges, t):
            w[h] = te
            w[hh] = (-te) % r
        out.append(Weighting(G, r, w))
    return out


def _edge_vectors(nedges, budget):
    """Exponent vectors with every entry >= 1 and total at most ``budget``."""
    if nedges == 0:
        yield ()
        return
    for total in range(nedges, budget + 1):
        for combo in itertools.combinations_with_replacement(range(nedges), total - nedges):
            vec = [1] * nedges
            for i in combo:
                vec[i] += 1
            yield tuple(vec)


def _interpolate(xs, ys):
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # Lagrange basis polynomial for node i
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def default_samples(A, degree):
    r0 = max(2, sum(abs(a) for a in A) + 1)
    return [r0 + i for i in range(degree + 2)]


def _q_values(G, A, patterns, rs):
    """``Q_{G,m}(r)`` for every pattern ``m`` and every ``r`` in ``rs``."""
    eu, ev, res = _edge_data(G, A)
    h1 = G.h1
    out = []
    for r in rs:
        sums = weighting_sums(G.num_verts, eu, ev, res, r, patterns)
        out.append([Fraction(s, r ** h1) for s in sums])
    return out


def q_polynomials(G, A, patterns, samples=None):
    """Interpolated polynomials ``Q_{G,m}`` (one per pattern), verified by one extra sample."""
    A = tuple(A)
    maxdeg = 2 * max((sum(p) for p in patterns), default=0)
    rs = list(samples) if samples is not None else default_samples(A, maxdeg)
    if len(rs) < maxdeg + 2:
        raise ValueError(f"need at least {maxdeg + 2} samples")
    vals = _q_values(G, A, patterns, rs)
    polys = []
    for k, p in enumerate(patterns):
        ys = [row[k] for row in vals]
        poly = _interpolate(rs[:-1], ys[:-1])
        if _poly_eval(poly, rs[-1]) != ys[-1]:
            raise InterpolationError(f"Q for graph {G} and pattern {p} is not polynomial on {rs}")
        polys.append(poly)
    return polys


def _leg_monomials(A, k):
    """Degree-``k`` part of Π exp(a_i² ψ_i) as ``[(psi dict, coeff)]``."""
    n = len(A)
    out = []
    for combo in itertools.combinations_with_replacement(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        c = Fraction(1)
        for a, e in zip(A, exps):
            if e:
                c *= Fraction(a ** (2 * e), factorial(e))
        if c:
            out.append(({i + 1: e for i, e in enumerate(exps) if e}, c))
    return out


def _graph_terms(G: StableGraph, A, d: int, m):
    """ψ-polynomial multiplying ``Q_{G,m}`` (before the 1/|Aut| and sign factors)."""
    dims = G.vertex_dims
    vof = G.vertex_of
    # expand Π (ψ_h + ψ_h')^{m_e - 1}
    edge_polys = [({}, Fraction(1))]
    for (h, hh), me in zip(G.edges, m):
        k = me - 1
        new = []
        for i in range(k + 1):
            c = Fraction(factorial(k), factorial(i) * factorial(k - i))
            new.append(({h: i, hh: k - i}, c))
        edge_polys = _combine(edge_polys, new)
    rest = d - sum(m)
    out = {}
    for epsi, ec in edge_polys:
        for lpsi, lc in _leg_monomials(A, rest):
            psi = dict(epsi)
            for x, e in lpsi.items():
                psi[x] = psi.get(x, 0) + e
            degs = [0] * G.num_verts
            for x, e in psi.items():
                degs[vof[x]] += e
            if any(a > b for a, b in zip(degs, dims)):
                continue
            mono = (((),) * G.num_verts, tuple(sorted((x, e) for x, e in psi.items() if e)))
            out[mono] = out.get(mono, 0) + ec * lc
    return out


def _combine(polys, factor):
    out = []
    for p, pc in polys:
        for q, qc in factor:
            psi = dict(p)
            for x, e in q.items():
                if e:
                    psi[x] = psi.get(x, 0) + e
            out.append((psi, pc * qc))
    return out


class RPolyTautClass:
    """A tautological class whose coefficients are polynomials in ``r``.

    ``terms`` maps ``(graph, monomial)`` to a coefficient list, lowest degree first.
    """

    def __init__(self, g, n, terms):
        self.g, self.n = g, n
        self.terms = terms

    def at(self, r) -> TautClass:
        return TautClass.from_triples(self.g, self.n, (
            (G, m, _poly_eval(p, r)) for (G, m), p in self.terms.items()))

    def constant_term(self) -> TautClass:
        return self.at(0)

    def degree_in_r(self) -> int:
        return max((len(p) - 1 for p in self.terms.values()), default=0)

    def to_json(self) -> dict:
        from .decor import monomial_to_json
        out = []
        for (G, m), p in self.terms.items():
            md = monomial_to_json(m, 1)
            md["coeff"] = format_rpoly(p)
            out.append({"graph": G.to_json(), "monomials": [md]})
        return {"g": self.g, "n": self.n, "terms": out}

    def __str__(self):
        from .decor import format_monomial
        parts = []
        for (G, m), p in self.terms.items():
            body = format_monomial(m, 1)[2:]
            parts.append(f"Graph :      {G}\nPolynomial : ({format_rpoly(p)})*{body}")
        return "\n\n".join(parts) if parts else "0"


def format_rpoly(coeffs) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if i == 0:
            parts.append(frac_to_str(c))
        elif c:
            parts.append(f"{frac_to_str(c)}*r" + (f"^{i}" if i > 1 else ""))
    return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=256)
def _dr_terms(g: int, A: tuple, d: int):
    """``{(graph, monomial): polynomial in r}`` for Pixton's class of degree ``d``."""
    n = len(A)
    acc = {}
    for e in range(min(d, 3 * g - 3 + n) + 1):
        for G in enumerate_stable_graphs(g, n, e):
            patterns = list(_edge_vectors(e, d))
            if not patterns:
                continue
            polys = q_polynomials(G, A, patterns) if e else [[Fraction(1)]]
            aut = automorphism_count(G)
            for m, poly in zip(patterns, polys):
                if not any(poly):
                    continue
                sign = Fraction(1, aut)
                for me in m:
                    sign *= Fraction((-1) ** (me + 1), factorial(me))
                for mono, c in _graph_terms(G, A, d, m).items():
                    key = (G, mono)
                    scaled = [sign * c * x for x in poly]
                    old = acc.get(key)
                    if old is None:
                        acc[key] = scaled
                    else:
                        width = max(len(old), len(scaled))
                        old = old + [Fraction(0)] * (width - len(old))
                        for i, x in enumerate(scaled):
                            old[i] += x
                        acc[key] = old
    return {k: v for k, v in acc.items() if any(v)}


def DR_cycle(g: int, A, d=None, rpoly: bool = False):
    """The class ``2^{-d} P_g^{d}(A)``; equal to DR_g(A) when ``d = g``.

    With ``rpoly=True`` returns the class with polynomial coefficients in
    ``r`` (before setting ``r = 0``), still scaled by ``2^{-d}``.
    """
    A = _check_vector(A)
    n = len(A)
    _check_stable(g, n)
    if d is None:
        d = g
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d > 3 * g - 3 + n:
        empty = {}
        return RPolyTautClass(g, n, empty) if rpoly else TautClass(g, n)
    if d == 0:
        F = fundclass(g, n)
        if rpoly:
            return RPolyTautClass(g, n, {(G, m): [c] for G, m, c in F.triples()})
        return F
    terms = _dr_terms(g, A, d)
    scale = Fraction(1, 2 ** d)
    if rpoly:
        return RPolyTautClass(g, n, {k: [scale * x for x in p] for k, p in terms.items()})
    return TautClass.from_triples(g, n, ((G, m, scale * p[0]) for (G, m), p in terms.items()))


def pixton_class_at_r(g: int, A, d: int, r: int) -> TautClass:
    """Pixton's class of degree ``d`` at a specific modulus ``r`` (no 2^{-d} factor)."""
    A = _check_vector(A)
    n = len(A)
    _check_stable(g, n)
    if d == 0:
        return fundclass(g, n)
    triples = []
    for e in range(min(d, 3 * g - 3 + n) + 1):
        for G in enumerate_stable_graphs(g, n, e):
            patterns = list(_edge_vectors(e, d))
            if not patterns:
                continue
            vals = _q_values(G, A, patterns, [r])[0] if e else [Fraction(1)]
            aut = automorphism_count(G)
            for m, q in zip(patterns, vals):
                if not q:
                    continue
                sign = Fraction(1, aut)
                for me in m:
                    sign *= Fraction((-1) ** (me + 1), factorial(me))
                for mono, c in _graph_terms(G, A, d, m).items():
                    triples.append((G, mono, sign * c * q))
    return TautClass.from_triples(g, n, triples)


__all__ = ["Weighting", "enumerate_weightings", "pixton_class_at_r", "DR_cycle",
           "RPolyTautClass", "q_polynomials", "InterpolationError"]
