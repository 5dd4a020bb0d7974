"""Decorated strata [Γ, α] and tautological classes as formal sums.

A monomial in kappa and psi classes on a graph with vertices ``0..V-1`` is
stored as a hashable pair ``(kappa, psi)``:

* ``kappa`` has one entry per vertex, a partition (tuple sorted descending,
  parts >= 1) listing the kappa factors at that vertex;
* ``psi`` is a sorted tuple of ``(leg, exponent)`` with exponent >= 1.

kappa_0 is never stored; constructors turn it into the scalar ``2g-2+n``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import NamedTuple

from .cache import frac_to_str, str_to_frac
from .graphs import (
    GraphError,
    MarkingError,
    ModuliType,
    StableGraph,
    automorphisms,
    canonical_form,
    enumerate_stable_graphs,
    moduli_allows,
    trivial_graph,
)


class AmbientMismatchError(ValueError):
    """Two classes on different moduli spaces were combined."""


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

class KappaPsiMonomial(NamedTuple):
    """Readable view of one term of a decoration."""

    kappa: dict      # vertex -> {a: exponent}
    psi: dict        # leg -> exponent
    coeff: Fraction


def empty_monomial(nverts: int):
    return ((),) * nverts, ()


def monomial_degree(mono) -> int:
    kappa, psi = mono
    return sum(sum(p) for p in kappa) + sum(e for _, e in psi)


def monomial_vertex_degrees(graph: StableGraph, mono) -> list:
    kappa, psi = mono
    degs = [sum(p) for p in kappa]
    vof = graph.vertex_of
    for leg, e in psi:
        degs[vof[leg]] += e
    return degs


def monomial_mul(m1, m2):
    k1, p1 = m1
    k2, p2 = m2
    kappa = tuple(a if not b else (b if not a else tuple(sorted(a + b, reverse=True)))
                  for a, b in zip(k1, k2))
    if not p1:
        return kappa, p2
    if not p2:
        return kappa, p1
    d = dict(p1)
    for leg, e in p2:
        d[leg] = d.get(leg, 0) + e
    return kappa, tuple(sorted(d.items()))


def psi_monomial(nverts: int, psi: dict):
    return ((),) * nverts, tuple(sorted((int(k), int(v)) for k, v in psi.items() if v))


def kappa_monomial(nverts: int, v: int, parts):
    kappa = [()] * nverts
    kappa[v] = tuple(sorted((int(a) for a in parts), reverse=True))
    return tuple(kappa), ()


def relabel_monomial(mono, vmap, lmap):
    """Transport a monomial along vertex map ``vmap`` and label map ``lmap``."""
    kappa, psi = mono
    new = [()] * len(kappa)
    for v, p in enumerate(kappa):
        new[vmap[v]] = p
    return tuple(new), tuple(sorted((lmap[leg], e) for leg, e in psi))


def monomial_to_json(mono, coeff) -> dict:
    kappa, psi = mono
    return {
        "coeff": frac_to_str(coeff),
        "kappa": [[v, sorted([a, e] for a, e in Counter(p).items())]
                  for v, p in enumerate(kappa) if p],
        "psi": [[leg, e] for leg, e in psi],
    }


def monomial_from_json(data, nverts: int):
    kappa = [()] * nverts
    for v, parts in data.get("kappa", []):
        kappa[int(v)] = tuple(sorted((int(a) for a, e in parts for _ in range(int(e))),
                                     reverse=True))
    psi = tuple(sorted((int(l), int(e)) for l, e in data.get("psi", []) if int(e)))
    return (tuple(kappa), psi), str_to_frac(data["coeff"])


def _fmt_coeff(c, bare: bool) -> str:
    c = Fraction(c)
    s = frac_to_str(c)
    if bare or (c >= 0 and c.denominator == 1):
        return s
    return f"({s})"


def format_monomial(mono, coeff) -> str:
    kappa, psi = mono
    body = ""
    for v, p in enumerate(kappa):
        if p:
            body += "(" + "".join(f"kappa_{a}^{e} " for a, e in sorted(Counter(p).items())) + f")_{v} "
    for leg, e in psi:
        body += f"psi_{leg}^{e} "
    return _fmt_coeff(coeff, not body) + "*" + body


# ---------------------------------------------------------------------------
# decorated strata and classes
# ---------------------------------------------------------------------------

class DecoratedStratum:
    """A stable graph with a kappa-psi polynomial ``{monomial: coeff}``."""

    __slots__ = ("graph", "poly")

    def __init__(self, graph: StableGraph, poly=None):
        self.graph = graph
        if poly is None:
            poly = {empty_monomial(graph.num_verts): Fraction(1)}
        self.poly = poly

    def __repr__(self):
        return f"DecoratedStratum({self.graph!r}, {self.poly!r})"

    def __str__(self):
        body = "+".join(format_monomial(m, c) for m, c in self.poly.items())
        return f"Graph :      {self.graph}\nPolynomial : {body}"

    def degrees(self) -> set:
        e = self.graph.num_edges
        return {e + monomial_degree(m) for m in self.poly}

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(),
                "monomials": [monomial_to_json(m, c) for m, c in self.poly.items()]}

    @classmethod
    def from_json(cls, data) -> "DecoratedStratum":
        G = StableGraph.from_json(data["graph"])
        poly = {}
        for md in data["monomials"]:
            m, c = monomial_from_json(md, G.num_verts)
            poly[m] = poly.get(m, 0) + c
        return cls(G, poly)


class TautClass:
    """A formal rational combination of decorated strata on M̄_{g,n}.

    Arithmetic does not merge terms; call :meth:`simplify` for that.
    """

    __slots__ = ("g", "n", "terms")

    def __init__(self, g: int, n: int, terms=()):
        self.g = int(g)
        self.n = int(n)
        self.terms = tuple(terms)

    # -- construction helpers --------------------------------------------

    @classmethod
    def from_triples(cls, g, n, triples) -> "TautClass":
        """Build from ``(graph, monomial, coeff)``, grouping by identical graph."""
        groups = {}
        for G, m, c in triples:
            if not c:
                continue
            poly = groups.setdefault(G, {})
            poly[m] = poly.get(m, 0) + c
        terms = []
        for G, poly in groups.items():
            poly = {m: Fraction(c) for m, c in poly.items() if c}
            if poly:
                terms.append(DecoratedStratum(G, poly))
        return cls(g, n, terms)

    def triples(self):
        for t in self.terms:
            for m, c in t.poly.items():
                yield t.graph, m, c

    # -- arithmetic ---------------------------------------------------------

    def _check_ambient(self, other):
        if (self.g, self.n) != (other.g, other.n):
            raise AmbientMismatchError(
                f"classes live on ({self.g},{self.n}) and ({other.g},{other.n})")

    def __add__(self, other):
        if isinstance(other, TautClass):
            self._check_ambient(other)
            return TautClass(self.g, self.n, self.terms + other.terms)
        if other == 0:
            return self
        return self + other * fundclass(self.g, self.n)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TautClass":
        c = Fraction(c)
        if not c:
            return TautClass(self.g, self.n)
        return TautClass(self.g, self.n, [
            DecoratedStratum(t.graph, {m: c * x for m, x in t.poly.items()})
            for t in self.terms])

    def __mul__(self, other):
        if isinstance(other, TautClass):
            from .calculus import multiply
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = fundclass(self.g, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ----------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def is_empty(self) -> bool:
        return not any(c for t in self.terms for c in t.poly.values())

    def degrees(self) -> list:
        out = set()
        for G, m, c in self.triples():
            if c:
                out.add(G.num_edges + monomial_degree(m))
        return sorted(out)

    def degree_part(self, r: int) -> "TautClass":
        return TautClass.from_triples(self.g, self.n, (
            (G, m, c) for G, m, c in self.triples()
            if G.num_edges + monomial_degree(m) == r))

    def simplify(self) -> "TautClass":
        return simplify(self)

    def __str__(self):
        if not self.terms:
            return "0"
        return "\n\n".join(str(t) for t in self.terms)

    def __repr__(self):
        return f"<TautClass on ({self.g},{self.n}) with {len(self.terms)} terms>"

    def normal_form(self) -> dict:
        """``{(canonical graph, canonical monomial): coeff}`` with zeros dropped."""
        acc = {}
        for G, m, c in self.triples():
            key = normalize(G, m)
            acc[key] = acc.get(key, 0) + c
        return {k: v for k, v in acc.items() if v}

    def equals(self, other) -> bool:
        """Term-level equality after simplification (not a cohomology test)."""
        self._check_ambient(other)
        return self.normal_form() == other.normal_form()

    # -- delegated operations ---------------------------------------------

    def evaluate(self) -> Fraction:
        from .calculus import evaluate
        return evaluate(self)

    def forgetful_pushforward(self, markings) -> "TautClass":
        from .calculus import forgetful_pushforward
        return forgetful_pushforward(self, markings)

    def forgetful_pullback(self, markings) -> "TautClass":
        from .calculus import forgetful_pullback
        return forgetful_pullback(self, markings)

    def is_zero(self, moduli="st") -> bool:
        from .relations import is_zero
        return is_zero(self, moduli)

    def to_basis(self, r=None, moduli="st"):
        from .relations import to_basis
        return to_basis(self, r=r, moduli=moduli)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"g": self.g, "n": self.n, "terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, data) -> "TautClass":
        return cls(data["g"], data["n"], [DecoratedStratum.from_json(t) for t in data["terms"]])


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=200000)
def normalize(G: StableGraph, mono):
    """Canonical representative ``(C, monomial)`` of a decorated stratum."""
    cf = canonical_form(G)
    C = cf.graph
    m = relabel_monomial(mono, cf.vertex_map, cf.relabel)
    auts = automorphisms(C)
    if len(auts) > 1:
        m = min(relabel_monomial(m, vm, lm) for vm, lm in auts)
    return C, m


def simplify(T: TautClass) -> TautClass:
    """Merge terms whose decorated strata are isomorphic and drop zeros."""
    nf = T.normal_form()
    return TautClass.from_triples(T.g, T.n, ((C, m, c) for (C, m), c in nf.items()))


# ---------------------------------------------------------------------------
# named classes
# ---------------------------------------------------------------------------

def _check_stable(g, n):
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise GraphError(f"(g,n)=({g},{n}) is not stable")


def fundclass(g: int, n: int) -> TautClass:
    _check_stable(g, n)
    G = trivial_graph(g, n)
    return TautClass(g, n, [DecoratedStratum(G)])


def psiclass(i: int, g: int, n: int) -> TautClass:
    _check_stable(g, n)
    if not 1 <= i <= n:
        raise MarkingError(f"marking {i} out of range 1..{n}")
    G = trivial_graph(g, n)
    return TautClass(g, n, [DecoratedStratum(G, {psi_monomial(1, {i: 1}): Fraction(1)})])


def kappaclass(a: int, g: int, n: int) -> TautClass:
    _check_stable(g, n)
    if a < 0:
        raise ValueError("kappa index must be nonnegative")
    if a == 0:
        return fundclass(g, n).scale(2 * g - 2 + n)
    G = trivial_graph(g, n)
    return TautClass(g, n, [DecoratedStratum(G, {kappa_monomial(1, 0, (a,)): Fraction(1)})])


def sepbdiv(h: int, A, g: int, n: int) -> TautClass:
    """Undecorated separating divisor: genus ``h`` with markings ``A`` | the rest."""
    A = sorted(set(int(x) for x in A))
    if any(not 1 <= x <= n for x in A):
        raise MarkingError(f"markings {A} not within 1..{n}")
    if not 0 <= h <= g:
        raise GraphError(f"genus {h} not within 0..{g}")
    B = [x for x in range(1, n + 1) if x not in A]
    G = StableGraph([h, g - h], [A + [n + 1], B + [n + 2]], [(n + 1, n + 2)])
    return TautClass(g, n, [DecoratedStratum(G)])


def irrbdiv(g: int, n: int) -> TautClass:
    """Pushforward of the fundamental class along the self-gluing map (twice δ_irr)."""
    if g < 1:
        raise GraphError("irreducible boundary needs g >= 1")
    G = StableGraph([g - 1], [list(range(1, n + 3))], [(n + 1, n + 2)])
    return TautClass(g, n, [DecoratedStratum(G)])


def graph_to_class(G: StableGraph) -> TautClass:
    return TautClass(G.g, G.n, [DecoratedStratum(G)])


def decorated_class(G: StableGraph, mono, coeff=1) -> TautClass:
    return TautClass(G.g, G.n, [DecoratedStratum(G, {mono: Fraction(coeff)})])


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _partitions(k: int, maxpart=None) -> tuple:
    """Partitions of ``k`` as tuples sorted descending."""
    if maxpart is None:
        maxpart = k
    if k == 0:
        return ((),)
    out = []
    for first in range(min(k, maxpart), 0, -1):
        for rest in _partitions(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _compositions(total: int, slots: int):
    """Nonnegative integer vectors of length ``slots`` summing to ``total``."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(slots), total):
        vec = [0] * slots
        for i in combo:
            vec[i] += 1
        yield tuple(vec)


def _vertex_decorations(legs, d):
    """(partition, {leg: exp}) pairs of degree ``d`` at one vertex."""
    out = []
    for k in range(d, -1, -1):
        for p in _partitions(k):
            for vec in _compositions(d - k, len(legs)):
                out.append((p, tuple((l, e) for l, e in zip(legs, vec) if e)))
    return out


def graph_decorations(G: StableGraph, d: int) -> list:
    """All monomials of degree ``d`` on ``G`` respecting vertex dimensions."""
    dims = G.vertex_dims
    nv = G.num_verts
    per_vertex = [[_vertex_decorations(tuple(sorted(G.legs[v])), k) for k in range(dims[v] + 1)]
                  for v in range(nv)]
    out = []

    def rec(v, left, kappa, psi):
        if v == nv:
            if left == 0:
                out.append((tuple(kappa), tuple(sorted(psi))))
            return
        rest_cap = sum(dims[v + 1:])
        for k in range(min(left, dims[v]) + 1):
            if left - k > rest_cap:
                continue
            for p, ps in per_vertex[v][k]:
                rec(v + 1, left - k, kappa + [p], psi + list(ps))

    rec(0, d, [], [])
    return out


def _monomial_order_key(G, mono):
    kappa, psi = mono
    labels = sorted(x for lv in G.legs for x in lv)
    pd = dict(psi)
    return (kappa, tuple(pd.get(x, 0) for x in labels))


@lru_cache(maxsize=None)
def tautgen_list(g: int, n: int, r: int, moduli="st") -> tuple:
    """Generators of degree ``r`` as ``(graph, monomial)`` pairs in canonical order."""
    _check_stable(g, n)
    moduli = ModuliType.coerce(moduli)
    if r < 0 or r > 3 * g - 3 + n:
        return ()
    out = []
    for e in range(r + 1):
        for G in enumerate_stable_graphs(g, n, e):
            if not moduli_allows(G, moduli):
                continue
            monos = graph_decorations(G, r - e)
            monos.sort(key=lambda m: _monomial_order_key(G, m), reverse=True)
            seen = set()
            for m in monos:
                key = normalize(G, m)
                if key in seen:
                    continue
                seen.add(key)
                out.append((G, m))
    return tuple(out)


def tautgens(g: int, n: int, r: int, moduli="st") -> list:
    """Additive generators of the degree-``r`` part as single-term classes."""
    return [decorated_class(G, m) for G, m in tautgen_list(g, n, r, moduli)]


def list_tautgens(g: int, n: int, r: int, moduli="st") -> str:
    lines = []
    for i, (G, m) in enumerate(tautgen_list(g, n, r, moduli)):
        lines.append(f"[{i}] : Graph :      {G}")
        lines.append("Polynomial : " + format_monomial(m, 1))
    return "\n".join(lines)


def decorated_key(G: StableGraph, mono):
    """Hashable isomorphism-invariant key of ``[G, mono]``."""
    return normalize(G, mono)


def monomial_view(G: StableGraph, mono, coeff) -> KappaPsiMonomial:
    kappa, psi = mono
    return KappaPsiMonomial(
        {v: dict(Counter(p)) for v, p in enumerate(kappa) if p},
        dict(psi), Fraction(coeff))
