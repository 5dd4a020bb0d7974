"""Intersection numbers, products, boundary and forgetful maps.

Products and boundary pullbacks sum over generic structures: a graph Δ
obtained from the target graph A by degenerating each vertex ``v`` into a
stable graph Γ_v, together with an identification of a contraction of Δ
with the source graph B such that every edge of Δ comes from A or B.  Each
isomorphism class of such structures contributes once; we enumerate with
fixed representatives Γ_v and weight by ``1/prod |Aut(Γ_v)|``, which counts
orbits because the automorphism groups act freely.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .decor import (
    AmbientMismatchError,
    DecoratedStratum,
    TautClass,
    decorated_class,
    empty_monomial,
    monomial_degree,
    monomial_from_json,
    monomial_to_json,
    normalize,
)
from .graphs import (
    GraphError,
    MarkingError,
    StableGraph,
    automorphism_count,
    automorphisms,
    canonical_form,
    contract_edges,
    enumerate_stable_graphs,
    forget_marking,
)
from .intnum import kappa_psi_integral


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100000)
def _eval_stratum(G: StableGraph, mono) -> Fraction:
    kappa, psi = mono
    pd = dict(psi)
    result = Fraction(1)
    for v, (gv, lv) in enumerate(zip(G.genera, G.legs)):
        exps = tuple(pd.get(x, 0) for x in lv)
        if sum(kappa[v]) + sum(exps) != 3 * gv - 3 + len(lv):
            return Fraction(0)
        val = kappa_psi_integral(gv, len(lv), kappa[v], exps)
        if not val:
            return Fraction(0)
        result *= val
    return result


def evaluate(T: TautClass) -> Fraction:
    """Degree of the top-degree part of ``T``; other degrees are ignored."""
    top = 3 * T.g - 3 + T.n
    total = Fraction(0)
    for G, m, c in T.triples():
        if c and G.num_edges + monomial_degree(m) == top:
            total += c * _eval_stratum(G, m)
    return total


# ---------------------------------------------------------------------------
# monomial expansion
# ---------------------------------------------------------------------------

def _expand(dims, vertex_of, fixed, choices, coeff):
    """Multiply out a product of factors on a graph with vertex dims ``dims``.

    ``fixed`` is a list of atoms, ``choices`` a list of lists of
    ``(atom, coeff)`` alternatives.  An atom is ``("k", vertex, a)`` for
    kappa_a or ``("p", label, e)`` for psi^e.  Terms exceeding a vertex
    dimension are dropped.  Returns ``{monomial: coeff}``.
    """
    nv = len(dims)
    degs = [0] * nv
    kap = [[] for _ in range(nv)]
    psi = defaultdict(int)

    def apply(atom, sign):
        kind, x, a = atom
        v = x if kind == "k" else vertex_of[x]
        degs[v] += sign * a
        if kind == "k":
            if sign > 0:
                kap[v].append(a)
            else:
                kap[v].remove(a)
        else:
            psi[x] += sign * a
        return v

    for atom in fixed:
        v = apply(atom, 1)
        if degs[v] > dims[v]:
            return {}
    out = {}
    order = sorted(range(len(choices)), key=lambda i: len(choices[i]))
    choices = [choices[i] for i in order]

    def rec(i, c):
        if i == len(choices):
            mono = (tuple(tuple(sorted(k, reverse=True)) for k in kap),
                    tuple(sorted((l, e) for l, e in psi.items() if e)))
            out[mono] = out.get(mono, 0) + c
            return
        for atom, cc in choices[i]:
            v = apply(atom, 1)
            if degs[v] <= dims[v]:
                rec(i + 1, c * cc)
            apply(atom, -1)

    rec(0, Fraction(coeff))
    return {m: c for m, c in out.items() if c}


def _mono_atoms(mono):
    kappa, psi = mono
    atoms = [("k", v, a) for v, p in enumerate(kappa) for a in p]
    atoms.extend(("p", l, e) for l, e in psi)
    return atoms


# ---------------------------------------------------------------------------
# grafting and generic structures
# ---------------------------------------------------------------------------

def _graft(A: StableGraph, pieces):
    """Replace vertex ``v`` of ``A`` by ``pieces[v]`` (markings 1..n(v)).

    Returns ``(Δ, offsets, label_maps)``; ``label_maps[v]`` sends labels of
    ``pieces[v]`` to labels of Δ, marking ``j`` going to ``A.legs[v][j-1]``.
    """
    fresh = A.max_label() + 1
    genera, legs, edges = [], [], list(A.edges)
    offsets, maps = [], []
    for v, H in enumerate(pieces):
        lm = {j: l for j, l in enumerate(A.legs[v], 1)}
        for h in sorted(H.halfedges):
            lm[h] = fresh
            fresh += 1
        offsets.append(len(genera))
        genera.extend(H.genera)
        legs.extend(tuple(lm[x] for x in lv) for lv in H.legs)
        edges.extend((lm[a], lm[b]) for a, b in H.edges)
        maps.append(lm)
    return StableGraph._make(tuple(genera), tuple(legs), tuple(edges)), offsets, maps


class _Structure:
    __slots__ = ("delta", "pieces", "offsets", "maps", "excess", "dvmap", "dcf", "weight")

    def __init__(self, delta, pieces, offsets, maps, excess, dvmap, dcf, weight):
        self.delta = delta
        self.pieces = pieces
        self.offsets = offsets
        self.maps = maps
        self.excess = excess
        self.dvmap = dvmap
        self.dcf = dcf
        self.weight = weight


@lru_cache(maxsize=2048)
def _structures(A: StableGraph, m: int) -> dict:
    """Generic structures over ``A`` whose B-side has ``m`` edges, by key of B."""
    index = defaultdict(list)
    nv = A.num_verts
    ea = A.num_edges
    dims = A.vertex_dims
    for evec in itertools.product(*(range(min(m, d) + 1) for d in dims)):
        k = sum(evec)
        if k > m or m - k > ea:
            continue
        options = [enumerate_stable_graphs(A.genera[v], len(A.legs[v]), evec[v])
                   for v in range(nv)]
        for pieces in itertools.product(*options):
            weight = Fraction(1)
            for H in pieces:
                weight /= automorphism_count(H)
            delta, offsets, maps = _graft(A, pieces)
            for kept in itertools.combinations(A.edges, m - k):
                kept_set = set(kept)
                contracted = [e for e in A.edges if e not in kept_set]
                D, dvmap = contract_edges(delta, contracted)
                cf = canonical_form(D)
                index[cf.key].append(_Structure(
                    delta, pieces, offsets, maps, tuple(kept), dvmap, cf, weight))
    return dict(index)


def _inverse_list(pos):
    inv = [0] * len(pos)
    for i, p in enumerate(pos):
        inv[p] = i
    return inv


def _pullback_terms(A: StableGraph, B: StableGraph, mono_b, extra=None):
    """Yield ``(structure, {Δ-monomial: coeff})`` for ξ_A^*[B, mono_b].

    ``extra(structure)`` may return additional atoms/choices to multiply in.
    """
    entries = _structures(A, B.num_edges).get(canonical_form(B).key)
    if not entries:
        return
    cfb = canonical_form(B)
    auts = automorphisms(cfb.graph)
    relb = cfb.relabel
    vmb = cfb.vertex_map
    kappa_b, psi_b = mono_b
    for st in entries:
        delta = st.delta
        dims = delta.vertex_dims
        vof = delta.vertex_of
        inv_reld = {c: l for l, c in st.dcf.relabel.items()}
        inv_vmd = _inverse_list(st.dcf.vertex_map)
        pre = defaultdict(list)
        for x, u in enumerate(st.dvmap):
            pre[u].append(x)
        base_fixed, base_choices = [], []
        for h, hh in st.excess:
            base_choices.append([(("p", h, 1), -1), (("p", hh, 1), -1)])
        if extra is not None:
            f2, c2 = extra(st)
            base_fixed.extend(f2)
            base_choices.extend(c2)
        for vm, lm in auts:
            inv_lm = {b: a for a, b in lm.items()}
            inv_vm = _inverse_list(vm)
            fixed = list(base_fixed)
            choices = list(base_choices)
            for w, parts in enumerate(kappa_b):
                if not parts:
                    continue
                u = inv_vmd[inv_vm[vmb[w]]]
                xs = pre[u]
                for a in parts:
                    if len(xs) == 1:
                        fixed.append(("k", xs[0], a))
                    else:
                        choices.append([(("k", x, a), 1) for x in xs])
            for lb, e in psi_b:
                fixed.append(("p", inv_reld[inv_lm[relb[lb]]], e))
            poly = _expand(dims, vof, fixed, choices, st.weight)
            if poly:
                yield st, poly


def _pullback_along_contraction_atoms(A, mono_a, st):
    """Atoms of ``c^* mono_a`` for the contraction Δ -> A of structure ``st``."""
    kappa, psi = mono_a
    fixed, choices = [], []
    for v, parts in enumerate(kappa):
        if not parts:
            continue
        xs = list(range(st.offsets[v], st.offsets[v] + st.pieces[v].num_verts))
        for a in parts:
            if len(xs) == 1:
                fixed.append(("k", xs[0], a))
            else:
                choices.append([(("k", x, a), 1) for x in xs])
    fixed.extend(("p", l, e) for l, e in psi)
    return fixed, choices


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def _multiply_strata(GA, ma, GB, mb):
    """``[GA, ma] * [GB, mb]`` as ``(graph, monomial, coeff)`` triples."""
    if GA.num_edges == 0:
        # pullback of a trivial-graph class to B is local
        fixed = []
        choices = []
        xs = list(range(GB.num_verts))
        for a in ma[0][0]:
            if len(xs) == 1:
                fixed.append(("k", 0, a))
            else:
                choices.append([(("k", x, a), 1) for x in xs])
        fixed.extend(("p", l, e) for l, e in ma[1])
        fixed.extend(_mono_atoms(mb))
        for m, c in _expand(GB.vertex_dims, GB.vertex_of, fixed, choices, 1).items():
            yield GB, m, c
        return
    extra = lambda st: _pullback_along_contraction_atoms(GA, ma, st)
    for st, poly in _pullback_terms(GA, GB, mb, extra):
        for m, c in poly.items():
            yield st.delta, m, c


def multiply(T1: TautClass, T2: TautClass) -> TautClass:
    """Intersection product; terms are not merged."""
    if (T1.g, T1.n) != (T2.g, T2.n):
        raise AmbientMismatchError(
            f"classes live on ({T1.g},{T1.n}) and ({T2.g},{T2.n})")
    top = 3 * T1.g - 3 + T1.n
    out = []
    for G1, m1, c1 in T1.triples():
        d1 = G1.num_edges + monomial_degree(m1)
        for G2, m2, c2 in T2.triples():
            if d1 + G2.num_edges + monomial_degree(m2) > top:
                continue
            if G1.num_edges <= G2.num_edges:
                it = _multiply_strata(G1, m1, G2, m2)
            else:
                it = _multiply_strata(G2, m2, G1, m1)
            c = c1 * c2
            out.extend((G, m, c * x) for G, m, x in it)
    return TautClass.from_triples(T1.g, T1.n, out)


# ---------------------------------------------------------------------------
# product classes on M̄_Γ
# ---------------------------------------------------------------------------

class ProdTautClass:
    """A class on ``prod_v M̄_{g(v), n(v)}`` for a stable graph Γ.

    ``terms`` holds pure tensors ``(coeff, ((H_0, m_0), (H_1, m_1), ...))``
    of decorated strata, factor ``v`` having markings ``1..n(v)`` in the
    order of ``graph.legs[v]``.
    """

    __slots__ = ("graph", "terms")

    def __init__(self, graph: StableGraph, terms=()):
        self.graph = graph
        self.terms = tuple(terms)

    def spaces(self):
        return [(gv, len(lv)) for gv, lv in zip(self.graph.genera, self.graph.legs)]

    def __add__(self, other):
        if not isinstance(other, ProdTautClass) or other.graph != self.graph:
            raise AmbientMismatchError("product classes on different graphs")
        return ProdTautClass(self.graph, self.terms + other.terms)

    def scale(self, c):
        c = Fraction(c)
        return ProdTautClass(self.graph, [(c * x, f) for x, f in self.terms])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def factors(self):
        """Terms as ``(coeff, [TautClass per vertex])``."""
        out = []
        for c, fs in self.terms:
            classes = [decorated_class(H, m) for H, m in fs]
            out.append((c, classes))
        return out

    def simplify(self) -> "ProdTautClass":
        acc = {}
        for c, fs in self.terms:
            key = tuple(normalize(H, m) for H, m in fs)
            acc[key] = acc.get(key, 0) + c
        return ProdTautClass(self.graph, [(c, k) for k, c in acc.items() if c])

    def pushforward(self) -> TautClass:
        """Push forward along the gluing map of the graph."""
        out = []
        for c, fs in self.terms:
            delta, offsets, maps = _graft(self.graph, [H for H, _ in fs])
            kappa = []
            psi = []
            for (H, (k, p)), lm in zip(fs, maps):
                kappa.extend(k)
                psi.extend((lm[l], e) for l, e in p)
            out.append((delta, (tuple(kappa), tuple(sorted(psi))), c))
        return TautClass.from_triples(self.graph.g, self.graph.n, out)

    def totensor_basis(self, r: int, moduli="st", vecout=False):
        """Coefficients in tensor products of per-factor bases (two vertices).

        Returns the list of block matrices for degree splits ``(r1, r-r1)``
        with ``r1`` ascending, or the concatenated row-major vector.
        """
        from .relations import generating_indices, to_basis
        if self.graph.num_verts != 2:
            raise GraphError("tensor basis output needs a two-vertex graph")
        (g0, n0), (g1, n1) = self.spaces()
        blocks = []
        for r1 in range(r + 1):
            r2 = r - r1
            if r1 > 3 * g0 - 3 + n0 or r2 > 3 * g1 - 3 + n1:
                continue
            b0 = len(generating_indices(g0, n0, r1, moduli))
            b1 = len(generating_indices(g1, n1, r2, moduli))
            mat = [[Fraction(0)] * b1 for _ in range(b0)]
            for c, ((H0, m0), (H1, m1)) in self.terms:
                if (H0.num_edges + monomial_degree(m0) != r1
                        or H1.num_edges + monomial_degree(m1) != r2):
                    continue
                v0 = to_basis(decorated_class(H0, m0), r=r1, moduli=moduli)
                if not any(v0):
                    continue
                v1 = to_basis(decorated_class(H1, m1), r=r2, moduli=moduli)
                for i, x in enumerate(v0):
                    if x:
                        for j, y in enumerate(v1):
                            if y:
                                mat[i][j] += c * x * y
            blocks.append(mat)
        if vecout:
            return [x for mat in blocks for row in mat for x in row]
        return blocks

    def to_json(self) -> dict:
        from .cache import frac_to_str
        return {"graph": self.graph.to_json(),
                "terms": [{"coeff": frac_to_str(c),
                           "factors": [{"graph": H.to_json(),
                                        "monomials": [monomial_to_json(m, 1)]}
                                       for H, m in fs]}
                          for c, fs in self.terms]}

    @classmethod
    def from_json(cls, data) -> "ProdTautClass":
        from .cache import str_to_frac
        G = StableGraph.from_json(data["graph"])
        terms = []
        for t in data["terms"]:
            fs = []
            c = str_to_frac(t["coeff"])
            for f in t["factors"]:
                H = StableGraph.from_json(f["graph"])
                (m, cc), = [monomial_from_json(md, H.num_verts) for md in f["monomials"]]
                c *= cc
                fs.append((H, m))
            terms.append((c, tuple(fs)))
        return cls(G, terms)

    def __str__(self):
        parts = []
        for c, fs in self.terms:
            parts.append(f"coefficient {c}:\n" + "\n".join(
                str(DecoratedStratum(H, {m: Fraction(1)})) for H, m in fs))
        return "\n\n".join(parts) if parts else "0"


def boundary_pullback(A: StableGraph, T: TautClass) -> ProdTautClass:
    """ξ_A^* T as a class on the product of vertex moduli spaces of ``A``."""
    if (A.g, A.n) != (T.g, T.n):
        raise AmbientMismatchError(f"graph on ({A.g},{A.n}) but class on ({T.g},{T.n})")
    terms = []
    for B, mb, cb in T.triples():
        for st, poly in _pullback_terms(A, B, mb):
            piece_of = []
            for v, H in enumerate(st.pieces):
                piece_of.extend([v] * H.num_verts)
            inv_maps = [{d: l for l, d in lm.items()} for lm in st.maps]
            vof = st.delta.vertex_of
            for (kappa, psi), c in poly.items():
                fk = [[] for _ in st.pieces]
                fp = [[] for _ in st.pieces]
                for x, p in enumerate(kappa):
                    fk[piece_of[x]].append(p)
                for l, e in psi:
                    v = piece_of[vof[l]]
                    fp[v].append((inv_maps[v][l], e))
                fs = tuple((H, (tuple(fk[v]), tuple(sorted(fp[v]))))
                           for v, H in enumerate(st.pieces))
                terms.append((cb * c, fs))
    return ProdTautClass(A, terms)


def boundary_pushforward(A: StableGraph, factors=None) -> TautClass:
    """ξ_{A*} of the product of ``factors`` (one class per vertex of ``A``)."""
    if factors is None:
        factors = [None] * A.num_verts
    if len(factors) != A.num_verts:
        raise ValueError(f"expected {A.num_verts} factors, got {len(factors)}")
    per_vertex = []
    for v, F in enumerate(factors):
        gv, nv = A.genera[v], len(A.legs[v])
        if F is None:
            from .graphs import trivial_graph
            per_vertex.append([(trivial_graph(gv, nv), empty_monomial(1), Fraction(1))])
            continue
        if (F.g, F.n) != (gv, nv):
            raise AmbientMismatchError(
                f"factor {v} lives on ({F.g},{F.n}), vertex needs ({gv},{nv})")
        per_vertex.append(list(F.triples()))
    terms = []
    for combo in itertools.product(*per_vertex):
        c = Fraction(1)
        for _, _, x in combo:
            c *= x
        if c:
            terms.append((c, tuple((H, m) for H, m, _ in combo)))
    return ProdTautClass(A, terms).pushforward()


# ---------------------------------------------------------------------------
# forgetful maps
# ---------------------------------------------------------------------------

def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(range(len(items)), r)


def _forget_one(G: StableGraph, mono, m: int):
    """π_*[G, mono] for π forgetting marking ``m``; yields triples."""
    kappa, psi = mono
    vof = G.vertex_of
    v = vof[m]
    gv = G.genera[v]
    nv_after = len(G.legs[v]) - 1
    pd = dict(psi)
    c = pd.pop(m, 0)
    G2, reloc = forget_marking(G, m)
    if 2 * gv - 2 + nv_after <= 0:
        # the vertex is contracted; decorations there must be trivial
        if c or kappa[v] or any(vof[l] == v for l in pd):
            return
        k2 = kappa[:v] + kappa[v + 1:]
        p2 = tuple(sorted((reloc[l], e) for l, e in pd.items()))
        yield G2, (k2, p2), Fraction(1)
        return
    parts = kappa[v]
    results = defaultdict(Fraction)
    for T in _subsets(parts):
        s = c + sum(parts[i] for i in T)
        rest = [parts[i] for i in range(len(parts)) if i not in T]
        if s == 0:
            # only psi_j = π^*psi_j + D_j corrections survive
            for j, b in pd.items():
                if vof[j] != v:
                    continue
                q = dict(pd)
                if b == 1:
                    del q[j]
                else:
                    q[j] = b - 1
                results[(tuple(rest), tuple(sorted(q.items())))] += 1
            continue
        scalar = Fraction(1)
        newk = list(rest)
        if s == 1:
            scalar = Fraction(2 * gv - 2 + nv_after)
        else:
            newk.append(s - 1)
        key = (tuple(sorted(newk, reverse=True)), tuple(sorted(pd.items())))
        results[key] += scalar
    for (kv, p), coeff in results.items():
        if not coeff:
            continue
        k2 = kappa[:v] + (kv,) + kappa[v + 1:]
        p2 = tuple(sorted((reloc[l], e) for l, e in p))
        yield G2, (k2, p2), coeff


def forgetful_pushforward(T: TautClass, markings) -> TautClass:
    """Push forward along the map forgetting ``markings``; the rest renumber."""
    markings = sorted(set(int(x) for x in markings), reverse=True)
    g, n = T.g, T.n
    for m in markings:
        if not 1 <= m <= n:
            raise MarkingError(f"marking {m} out of range 1..{n}")
    if 2 * g - 2 + n - len(markings) <= 0:
        raise GraphError("cannot forget markings below stability")
    cur = T
    for m in markings:
        out = []
        for G, mono, c in cur.triples():
            out.extend((G2, m2, c * x) for G2, m2, x in _forget_one(G, mono, m))
        n -= 1
        cur = TautClass.from_triples(g, n, out)
    return cur


def _pullback_one(G: StableGraph, mono, m: int):
    """π^*[G, mono] for the map adding marking ``m = n+1``; yields triples."""
    kappa, psi = mono
    if m in G.vertex_of:
        # free the label m for the new marking
        new = G.max_label() + 1
        ren = lambda x: new if x == m else x
        G = StableGraph._make(G.genera, tuple(tuple(ren(x) for x in lv) for lv in G.legs),
                              tuple((ren(a), ren(b)) for a, b in G.edges))
        psi = tuple(sorted((ren(l), e) for l, e in psi))
    top = max(G.max_label(), m)
    h1, h2 = top + 1, top + 2
    pd = dict(psi)
    for v in range(G.num_verts):
        legs_v = G.legs[v] + (m,)
        Gv = StableGraph._make(G.genera, G.legs[:v] + (legs_v,) + G.legs[v + 1:], G.edges)
        parts = kappa[v]
        for T in _subsets(parts):
            extra = sum(parts[i] for i in T)
            rest = tuple(parts[i] for i in range(len(parts)) if i not in T)
            q = dict(pd)
            if extra:
                q[m] = extra
            k2 = kappa[:v] + (rest,) + kappa[v + 1:]
            yield Gv, (k2, tuple(sorted(q.items()))), Fraction((-1) ** len(T))
        for j in G.legs[v]:
            b = pd.get(j, 0)
            if b == 0:
                continue
            legs_new = tuple(h1 if x == j else x for x in G.legs[v])
            Gb = StableGraph._make(
                G.genera + (0,),
                G.legs[:v] + (legs_new,) + G.legs[v + 1:] + ((h2, m, j),),
                G.edges + ((h1, h2),))
            q = dict(pd)
            del q[j]
            if b > 1:
                q[h1] = b - 1
            yield Gb, (kappa + ((),), tuple(sorted(q.items()))), Fraction(-1)


def forgetful_pullback(T: TautClass, markings) -> TautClass:
    """Pull back along the map forgetting the new ``markings`` (``n+1, ...``)."""
    markings = sorted(int(x) for x in markings)
    g, n = T.g, T.n
    if markings != list(range(n + 1, n + 1 + len(markings))):
        raise MarkingError(f"new markings must be {n + 1}..{n + len(markings)}")
    cur = T
    for m in markings:
        out = []
        for G, mono, c in cur.triples():
            out.extend((G2, m2, c * x) for G2, m2, x in _pullback_one(G, mono, m))
        cur = TautClass.from_triples(g, m, out)
    return cur


__all__ = [
    "evaluate", "multiply", "ProdTautClass", "boundary_pullback", "boundary_pushforward",
    "forgetful_pushforward", "forgetful_pullback",
]
