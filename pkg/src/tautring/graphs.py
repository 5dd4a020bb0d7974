"""Stable graphs of moduli spaces of stable curves.

A stable graph is stored as three lists, exactly as it is printed::

    [1, 1] [[2], [3]] [(2, 3)]

``genera[v]`` is the genus of vertex ``v``, ``legs[v]`` lists the labels
(markings or half-edges) at ``v`` and ``edges`` pairs up half-edges.  The
markings are the labels ``1..n`` that are not part of an edge.

Besides validation this module provides canonical forms, isomorphism
enumeration, enumeration of all stable graphs of a given type, edge
contraction and the stabilization needed when a marking is forgotten.
"""
from __future__ import annotations

import enum
import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache


class GraphError(ValueError):
    """Base class for invalid stable graph data."""


class NegativeGenusError(GraphError):
    pass


class DuplicateLabelError(GraphError):
    pass


class DanglingEdgeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class UnstableVertexError(GraphError):
    pass


class MarkingError(GraphError):
    pass


class ModuliType(str, enum.Enum):
    """Open subsets of the moduli space, ordered sm < rt < ct < tl < st."""

    st = "st"
    tl = "tl"
    ct = "ct"
    rt = "rt"
    sm = "sm"

    @classmethod
    def coerce(cls, value) -> "ModuliType":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown moduli type {value!r}") from None


def _check(genera, legs, edges, markings=True) -> None:
    if len(genera) != len(legs):
        raise GraphError("genera and legs have different lengths")
    if not genera:
        raise GraphError("a stable graph needs at least one vertex")
    for v, gv in enumerate(genera):
        if gv < 0:
            raise NegativeGenusError(f"vertex {v} has negative genus {gv}")
    vertex_of = {}
    for v, lv in enumerate(legs):
        for label in lv:
            if label <= 0:
                raise GraphError(f"label {label} is not a positive integer")
            if label in vertex_of:
                raise DuplicateLabelError(f"label {label} occurs twice")
            vertex_of[label] = v
    used = set()
    for e in edges:
        if len(e) != 2:
            raise DanglingEdgeError(f"edge {e!r} does not have two half-edges")
        h, hh = e
        if h == hh:
            raise DanglingEdgeError(f"edge {e!r} joins a half-edge to itself")
        for x in (h, hh):
            if x not in vertex_of:
                raise DanglingEdgeError(f"half-edge {x} of edge {e!r} is not a leg of any vertex")
            if x in used:
                raise DanglingEdgeError(f"half-edge {x} occurs in two edges")
            used.add(x)
    # connectivity
    parent = list(range(len(genera)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, hh in edges:
        a, b = find(vertex_of[h]), find(vertex_of[hh])
        if a != b:
            parent[a] = b
    if len({find(v) for v in range(len(genera))}) > 1:
        raise DisconnectedGraphError("graph is not connected")
    for v, gv in enumerate(genera):
        if 2 * gv - 2 + len(legs[v]) <= 0:
            raise UnstableVertexError(
                f"vertex {v} is unstable: 2*{gv}-2+{len(legs[v])} <= 0")
    marks = sorted(set(vertex_of) - used)
    if markings and marks != list(range(1, len(marks) + 1)):
        raise MarkingError(f"markings {marks} are not 1..{len(marks)}")


class StableGraph:
    """Immutable stable graph ``(genera, legs, edges)``.

    Equality and hashing are structural (same lists), not up to isomorphism;
    use :func:`is_isomorphic` or :func:`canonical_form` for the latter.
    """

    __slots__ = ("genera", "legs", "edges", "_hash", "_memo")

    def __init__(self, genera, legs, edges=()):
        genera = tuple(int(x) for x in genera)
        legs = tuple(tuple(int(x) for x in lv) for lv in legs)
        edges = tuple((int(e[0]), int(e[1])) for e in edges)
        _check(genera, legs, edges)
        self._set(genera, legs, edges)

    def _set(self, genera, legs, edges):
        object.__setattr__(self, "genera", genera)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_hash", hash((genera, legs, edges)))
        object.__setattr__(self, "_memo", {})

    @classmethod
    def _make(cls, genera, legs, edges) -> "StableGraph":
        """Build without validation; inputs must already be tuples."""
        G = object.__new__(cls)
        G._set(genera, legs, edges)
        return G

    def __setattr__(self, name, value):
        raise AttributeError("StableGraph is immutable")

    def __reduce__(self):
        return (_rebuild_graph, (self.genera, self.legs, self.edges))

    def __eq__(self, other):
        if not isinstance(other, StableGraph):
            return NotImplemented
        return (self._hash == other._hash and self.genera == other.genera
                and self.legs == other.legs and self.edges == other.edges)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"StableGraph({list(self.genera)}, {[list(x) for x in self.legs]}, {list(self.edges)})"

    def __str__(self):
        return f"{list(self.genera)} {[list(x) for x in self.legs]} {list(self.edges)}"

    # -- basic invariants -------------------------------------------------

    def _get(self, key, fn):
        memo = self._memo
        try:
            return memo[key]
        except KeyError:
            val = memo[key] = fn()
            return val

    @property
    def num_verts(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def h1(self) -> int:
        return len(self.edges) - len(self.genera) + 1

    @property
    def g(self) -> int:
        return sum(self.genera) + self.h1

    @property
    def vertex_of(self) -> dict:
        """Mapping label -> vertex index."""
        return self._get("vertex_of", lambda: {
            label: v for v, lv in enumerate(self.legs) for label in lv})

    @property
    def halfedges(self) -> frozenset:
        return self._get("halfedges", lambda: frozenset(
            x for e in self.edges for x in e))

    @property
    def markings(self) -> tuple:
        return self._get("markings", lambda: tuple(sorted(
            x for lv in self.legs for x in lv if x not in self.halfedges)))

    @property
    def n(self) -> int:
        return len(self.markings)

    @property
    def partner(self) -> dict:
        def build():
            d = {}
            for h, hh in self.edges:
                d[h] = hh
                d[hh] = h
            return d
        return self._get("partner", build)

    def valence(self, v: int) -> int:
        return len(self.legs[v])

    def vertex_dim(self, v: int) -> int:
        return 3 * self.genera[v] - 3 + len(self.legs[v])

    @property
    def vertex_dims(self) -> tuple:
        return self._get("dims", lambda: tuple(
            3 * gv - 3 + len(lv) for gv, lv in zip(self.genera, self.legs)))

    def max_label(self) -> int:
        return max((x for lv in self.legs for x in lv), default=0)

    def sort_key(self):
        """Enumeration order: edges, vertex invariant multiset, canonical key."""
        def build():
            inv = sorted(
                (gv, sum(1 for x in lv if x not in self.halfedges), len(lv))
                for gv, lv in zip(self.genera, self.legs))
            return (len(self.edges), tuple(inv), canonical_form(self).key)
        return self._get("sort_key", build)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"genera": list(self.genera),
                "legs": [list(lv) for lv in self.legs],
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "StableGraph":
        return cls(data["genera"], data["legs"], [tuple(e) for e in data["edges"]])


def _rebuild_graph(genera, legs, edges):
    return StableGraph._make(genera, legs, edges)


def validate(G) -> None:
    """Raise a :class:`GraphError` subclass unless ``G`` is a valid stable graph.

    ``G`` may be a :class:`StableGraph` or a ``(genera, legs, edges)`` triple.
    """
    if isinstance(G, StableGraph):
        _check(G.genera, G.legs, G.edges)
    else:
        genera, legs, edges = G
        _check(tuple(genera), tuple(tuple(x) for x in legs), tuple(tuple(e) for e in edges))


def trivial_graph(g: int, n: int) -> StableGraph:
    return StableGraph([g], [list(range(1, n + 1))], [])


# ---------------------------------------------------------------------------
# colour refinement, canonical forms, isomorphisms
# ---------------------------------------------------------------------------

def _adjacency(G, hcol):
    """adj[v] = list of (u, colour of half-edge at v, colour of half-edge at u)."""
    vof = G.vertex_of
    adj = [[] for _ in G.genera]
    for h, hh in G.edges:
        a, b = vof[h], vof[hh]
        ch, chh = hcol.get(h, 0), hcol.get(hh, 0)
        adj[a].append((b, ch, chh))
        adj[b].append((a, chh, ch))
    return adj


def _initial_colours(G, vcol, hcol):
    he = G.halfedges
    out = []
    for v, (gv, lv) in enumerate(zip(G.genera, G.legs)):
        marks = tuple(sorted((x, hcol.get(x, 0)) for x in lv if x not in he))
        out.append((gv, vcol[v] if vcol is not None else (), marks, len(lv)))
    return out


def _refine(colours, adj):
    """Equitable refinement; colours are comparable values, result is ranks."""
    ranks = {c: i for i, c in enumerate(sorted(set(colours)))}
    cur = [ranks[c] for c in colours]
    ncls = len(ranks)
    while True:
        sigs = [(cur[v], tuple(sorted((cur[u], a, b) for u, a, b in adj[v])))
                for v in range(len(cur))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncls:
            return new
        cur, ncls = new, len(ranks)


def _encode(G, order, vcol, hcol):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    vof = G.vertex_of
    verts = tuple((G.genera[v], vcol[v] if vcol is not None else ()) for v in order)
    marks = tuple((pos[vof[m]], hcol.get(m, 0)) for m in G.markings)
    codes = []
    for h, hh in G.edges:
        a = (pos[vof[h]], hcol.get(h, 0))
        b = (pos[vof[hh]], hcol.get(hh, 0))
        codes.append((a, b) if a <= b else (b, a))
    codes.sort()
    return (verts, marks, tuple(codes))


def _leaves(colours, adj):
    colours = _refine(colours, adj)
    nv = len(colours)
    if len(set(colours)) == nv:
        order = sorted(range(nv), key=colours.__getitem__)
        yield order
        return
    counts = defaultdict(list)
    for v, c in enumerate(colours):
        counts[c].append(v)
    target = min(c for c, vs in counts.items() if len(vs) > 1)
    for v in counts[target]:
        indiv = [2 * c + (1 if (c == target and u != v) else 0)
                 for u, c in enumerate(colours)]
        yield from _leaves(indiv, adj)


@dataclass(frozen=True)
class GraphCanonicalForm:
    """Canonical labelling of a (possibly decorated) stable graph.

    ``key`` is a byte string equal for two graphs iff they are isomorphic
    (markings fixed); ``relabel`` sends labels of the input to labels of
    ``graph`` and ``vertex_map`` does the same for vertices.
    """

    key: bytes
    relabel: dict
    vertex_map: tuple
    graph: StableGraph
    tkey: tuple


def _canonical(G, vcol=None, hcol=None):
    hcol = hcol or {}
    adj = _adjacency(G, hcol)
    best = None
    for order in _leaves(_initial_colours(G, vcol, hcol), adj):
        code = _encode(G, order, vcol, hcol)
        if best is None or code < best[0]:
            best = (code, order)
    code, order = best
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    n = G.n
    vof = G.vertex_of
    relabel = {m: m for m in G.markings}
    oriented = []
    for h, hh in G.edges:
        a = (pos[vof[h]], hcol.get(h, 0))
        b = (pos[vof[hh]], hcol.get(hh, 0))
        oriented.append(((a, b), h, hh) if a <= b else ((b, a), hh, h))
    oriented.sort(key=lambda t: t[0])
    new_edges = []
    base = n + 1 + len(oriented)
    for i, (_, h, hh) in enumerate(oriented):
        x, y = base + 2 * i, base + 1 + 2 * i
        relabel[h], relabel[hh] = x, y
        new_edges.append((x, y))
    new_legs = [None] * len(order)
    for v in range(len(order)):
        new_legs[pos[v]] = tuple(sorted(relabel[x] for x in G.legs[v]))
    new_genera = tuple(G.genera[v] for v in order)
    C = StableGraph._make(new_genera, tuple(new_legs), tuple(new_edges))
    return GraphCanonicalForm(repr(code).encode(), relabel, tuple(pos), C, code)


def canonical_form(G: StableGraph) -> GraphCanonicalForm:
    """Canonical form of an undecorated stable graph (cached on ``G``)."""
    return G._get("canonical", lambda: _canonical(G))


def decorated_canonical_form(G, vcol, hcol) -> GraphCanonicalForm:
    """Canonical form where vertices carry colours ``vcol`` and labels ``hcol``."""
    return _canonical(G, vcol, hcol)


def isomorphisms(G1, G2, hcol1=None, hcol2=None):
    """Iterate over marking-preserving isomorphisms ``G1 -> G2``.

    Yields ``(vmap, lmap)`` with ``vmap[v]`` the image vertex and ``lmap`` a
    dict on labels.  Optional half-edge colourings must be preserved.
    """
    hcol1 = hcol1 or {}
    hcol2 = hcol2 or {}
    if (G1.num_verts != G2.num_verts or G1.num_edges != G2.num_edges
            or G1.markings != G2.markings):
        return
    n1 = G1.num_verts
    # joint refinement on the disjoint union
    adj1 = _adjacency(G1, hcol1)
    adj2 = [[(u + n1, a, b) for u, a, b in row] for row in _adjacency(G2, hcol2)]
    cols = _refine(_initial_colours(G1, None, hcol1) + _initial_colours(G2, None, hcol2),
                   adj1 + adj2)
    c1, c2 = cols[:n1], cols[n1:]
    if sorted(c1) != sorted(c2):
        return
    # edge multiplicities between vertex pairs, keyed with colours
    def pair_table(G, hcol):
        vof = G.vertex_of
        tab = defaultdict(list)
        for h, hh in G.edges:
            a, b = vof[h], vof[hh]
            if a > b:
                a, b, h, hh = b, a, hh, h
            tab[(a, b)].append((h, hh))
        return tab

    tab1, tab2 = pair_table(G1, hcol1), pair_table(G2, hcol2)

    def sig(tab, hcol, a, b):
        es = tab.get((a, b) if a <= b else (b, a), ())
        if a <= b:
            out = [(hcol.get(h, 0), hcol.get(hh, 0)) for h, hh in es]
        else:
            out = [(hcol.get(hh, 0), hcol.get(h, 0)) for h, hh in es]
        if a == b:
            out = [tuple(sorted(p)) for p in out]
        return sorted(out)

    order = sorted(range(n1), key=lambda v: (sum(1 for x in c1 if x == c1[v]), v))
    vmap = [-1] * n1
    used = [False] * n1

    def extend(i):
        if i == n1:
            yield list(vmap)
            return
        v = order[i]
        for w in range(n1):
            if used[w] or c2[w] != c1[v]:
                continue
            ok = sig(tab1, hcol1, v, v) == sig(tab2, hcol2, w, w)
            if ok:
                for j in range(i):
                    u = order[j]
                    if sig(tab1, hcol1, v, u) != sig(tab2, hcol2, w, vmap[u]):
                        ok = False
                        break
            if not ok:
                continue
            vmap[v] = w
            used[w] = True
            yield from extend(i + 1)
            used[w] = False
            vmap[v] = -1

    vof2 = G2.vertex_of
    for vm in extend(0):
        if any(vm[G1.vertex_of[m]] != vof2[m] for m in G1.markings):
            continue
        choices = []
        for (a, b), es in tab1.items():
            ia, ib = vm[a], vm[b]
            if ia <= ib:
                targets = tab2.get((ia, ib), [])
            else:
                targets = [(hh, h) for h, hh in tab2.get((ib, ia), [])]
            loop = a == b
            opts = []
            for perm in itertools.permutations(range(len(targets))):
                partial = [[]]
                for (h, hh), k in zip(es, perm):
                    x, y = targets[k]
                    ways = []
                    if hcol1.get(h, 0) == hcol2.get(x, 0) and hcol1.get(hh, 0) == hcol2.get(y, 0):
                        ways.append(((h, x), (hh, y)))
                    if loop and hcol1.get(h, 0) == hcol2.get(y, 0) and hcol1.get(hh, 0) == hcol2.get(x, 0):
                        ways.append(((h, y), (hh, x)))
                    partial = [p + list(w) for p in partial for w in ways]
                    if not partial:
                        break
                opts.extend(partial)
            if not opts:
                break
            choices.append(opts)
        else:
            base = {m: m for m in G1.markings}
            for combo in itertools.product(*choices):
                lm = dict(base)
                for part in combo:
                    lm.update(part)
                yield vm, lm


def automorphisms(G: StableGraph) -> list:
    """All automorphisms of ``G`` as ``(vmap, lmap)`` pairs (cached)."""
    return G._get("auts", lambda: list(isomorphisms(G, G)))


def automorphism_count(G: StableGraph) -> int:
    return len(automorphisms(G))


def is_isomorphic(G1: StableGraph, G2: StableGraph) -> bool:
    if (G1.g, G1.n) != (G2.g, G2.n):
        raise GraphError(f"graphs live on different spaces ({G1.g},{G1.n}) and ({G2.g},{G2.n})")
    return canonical_form(G1).key == canonical_form(G2).key


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _degenerations(G):
    """All graphs obtained from ``G`` by inserting one new edge at a vertex."""
    h, hh = G.max_label() + 1, G.max_label() + 2
    for v, (gv, lv) in enumerate(zip(G.genera, G.legs)):
        others_g = G.genera[:v] + G.genera[v + 1:]
        others_l = G.legs[:v] + G.legs[v + 1:]
        if gv >= 1:
            yield StableGraph._make(
                (gv - 1,) + others_g, (lv + (h, hh),) + others_l, G.edges + ((h, hh),))
        nl = len(lv)
        for mask in range(1 << nl):
            part1 = tuple(lv[i] for i in range(nl) if mask >> i & 1)
            part2 = tuple(lv[i] for i in range(nl) if not mask >> i & 1)
            for g1 in range(gv + 1):
                g2 = gv - g1
                if 2 * g1 - 2 + len(part1) + 1 <= 0 or 2 * g2 - 2 + len(part2) + 1 <= 0:
                    continue
                yield StableGraph._make(
                    (g1, g2) + others_g, (part1 + (h,), part2 + (hh,)) + others_l,
                    G.edges + ((h, hh),))


@lru_cache(maxsize=None)
def _graphs_by_edges(g, n, e):
    if e == 0:
        return (canonical_form(trivial_graph(g, n)).graph,)
    seen = {}
    for G in _graphs_by_edges(g, n, e - 1):
        for D in _degenerations(G):
            cf = canonical_form(D)
            if cf.tkey not in seen:
                seen[cf.tkey] = cf.graph
    return tuple(sorted(seen.values(), key=StableGraph.sort_key))


def enumerate_stable_graphs(g: int, n: int, e: int) -> tuple:
    """One representative per isomorphism class of stable graphs with ``e`` edges.

    Representatives are canonically labelled (half-edges numbered from
    ``n+e+1``) and sorted by number of edges, the multiset of
    (genus, #markings, valence) per vertex, then canonical key.
    """
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise GraphError(f"(g,n)=({g},{n}) is not stable")
    if e < 0 or e > 3 * g - 3 + n:
        return ()
    return _graphs_by_edges(g, n, e)


def list_strata(g: int, n: int, e: int) -> tuple:
    return enumerate_stable_graphs(g, n, e)


# ---------------------------------------------------------------------------
# contraction and stabilization
# ---------------------------------------------------------------------------

def contract_edges(G: StableGraph, edges) -> tuple:
    """Contract the given edges; returns ``(graph, vertex_map)``.

    Vertices of the result are ordered by their smallest preimage.
    """
    edges = {tuple(sorted(e)) for e in edges}
    vof = G.vertex_of
    parent = list(range(G.num_verts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ncontracted = defaultdict(int)
    for h, hh in G.edges:
        if tuple(sorted((h, hh))) in edges:
            a, b = find(vof[h]), find(vof[hh])
            if a != b:
                parent[max(a, b)] = min(a, b)
    removed = {x for e in edges for x in e}
    for h, hh in G.edges:
        if tuple(sorted((h, hh))) in edges:
            ncontracted[find(vof[h])] += 1
    roots = sorted({find(v) for v in range(G.num_verts)})
    newidx = {r: i for i, r in enumerate(roots)}
    vmap = tuple(newidx[find(v)] for v in range(G.num_verts))
    genera = [0] * len(roots)
    nverts = [0] * len(roots)
    legs = [[] for _ in roots]
    for v in range(G.num_verts):
        i = vmap[v]
        genera[i] += G.genera[v]
        nverts[i] += 1
        legs[i].extend(x for x in G.legs[v] if x not in removed)
    for r, i in newidx.items():
        genera[i] += ncontracted[r] - nverts[i] + 1
    new_edges = tuple(e for e in G.edges if tuple(sorted(e)) not in edges)
    return (StableGraph._make(tuple(genera), tuple(tuple(x) for x in legs), new_edges), vmap)


def contract_edge(G: StableGraph, e) -> StableGraph:
    """Contract a single edge ``e = (h, h')`` of ``G``."""
    e = tuple(e)
    if tuple(sorted(e)) not in {tuple(sorted(x)) for x in G.edges}:
        raise GraphError(f"{e!r} is not an edge of {G}")
    return contract_edges(G, [e])[0]


def stabilize(genera, legs, edges) -> tuple:
    """Contract genus-0 vertices of valence at most two.

    Returns ``(StableGraph, relocation)`` where ``relocation`` sends each
    surviving label to the label that now carries it (a half-edge whose
    partner sat on a contracted bivalent vertex with a marking is replaced
    by that marking).  Raises :class:`UnstableVertexError` if no stable
    graph remains.
    """
    genera = list(genera)
    legs = [list(lv) for lv in legs]
    edges = [tuple(e) for e in edges]
    alive = [True] * len(genera)
    reloc = {x: x for lv in legs for x in lv}
    changed = True
    while changed:
        changed = False
        partner = {}
        for h, hh in edges:
            partner[h], partner[hh] = hh, h
        for v in range(len(genera)):
            if not alive[v] or genera[v] > 0 or len(legs[v]) > 2:
                continue
            lv = legs[v]
            if any(partner.get(x) in lv for x in lv) or sum(alive) == 1:
                raise UnstableVertexError("no stable graph remains after stabilization")
            hs = [x for x in lv if x in partner]
            marks = [x for x in lv if x not in partner]
            for x in lv:
                reloc.pop(x, None)
            if len(lv) == 2 and len(hs) == 2:
                a, b = partner[hs[0]], partner[hs[1]]
                edges = [e for e in edges if hs[0] not in e and hs[1] not in e]
                edges.append((a, b))
            elif len(lv) == 2 and len(hs) == 1:
                m, h = marks[0], hs[0]
                hp = partner[h]
                edges = [e for e in edges if h not in e]
                for w in range(len(genera)):
                    if alive[w] and hp in legs[w]:
                        legs[w] = [m if x == hp else x for x in legs[w]]
                for k, val in reloc.items():
                    if val == hp:
                        reloc[k] = m
                reloc[m] = m
            elif len(lv) == 1 and len(hs) == 1:
                h = hs[0]
                hp = partner[h]
                edges = [e for e in edges if h not in e]
                for w in range(len(genera)):
                    if alive[w] and hp in legs[w]:
                        legs[w] = [x for x in legs[w] if x != hp]
                for k, val in list(reloc.items()):
                    if val == hp:
                        del reloc[k]
            else:
                raise UnstableVertexError("no stable graph remains after stabilization")
            alive[v] = False
            legs[v] = []
            changed = True
            break
    idx = [v for v in range(len(genera)) if alive[v]]
    genera = tuple(genera[v] for v in idx)
    legs = tuple(tuple(legs[v]) for v in idx)
    edges = tuple(edges)
    _check(genera, legs, edges, markings=False)
    G = StableGraph._make(genera, legs, edges)
    survivors = {x for lv in G.legs for x in lv}
    return G, {k: v for k, v in reloc.items() if v in survivors}


def forget_marking(G: StableGraph, m: int) -> tuple:
    """Delete marking ``m``, stabilize and renumber markings above ``m``.

    Returns ``(graph, relocation)`` with ``relocation`` mapping old labels
    to new ones.
    """
    if m not in G.markings:
        raise MarkingError(f"{m} is not a marking of {G}")
    legs = [[x for x in lv if x != m] for lv in G.legs]
    S, reloc = stabilize(G.genera, legs, G.edges)
    n = G.n

    def shift(x):
        return x - 1 if (m < x <= n) else x

    legs2 = tuple(tuple(shift(x) for x in lv) for lv in S.legs)
    edges2 = tuple((shift(a), shift(b)) for a, b in S.edges)
    out = StableGraph._make(S.genera, legs2, edges2)
    return out, {k: shift(v) for k, v in reloc.items()}


def moduli_allows(G: StableGraph, moduli) -> bool:
    moduli = ModuliType.coerce(moduli)
    if moduli is ModuliType.st:
        return True
    if moduli is ModuliType.sm:
        return G.num_edges == 0
    if moduli is ModuliType.rt:
        return G.g in G.genera
    vof = G.vertex_of
    nonloop = sum(1 for h, hh in G.edges if vof[h] != vof[hh])
    if moduli is ModuliType.ct:
        return G.num_edges == G.num_verts - 1
    return nonloop == G.num_verts - 1   # tl
