"""Bases and relations from the intersection pairing.

A class is declared zero on a moduli type when its pairing vector against
all generators of complementary degree lies in the span of the pairing
vectors of generators whose graphs the moduli type excludes.  Nonzero
verdicts are always correct; zero verdicts are exact whenever the pairing
detects all tautological relations in that degree (true for all small
(g,n) used here, not in general).
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .cache import CACHE, load_cache as _load, save_cache as _save
from .calculus import _multiply_strata, _eval_stratum
from .decor import TautClass, monomial_degree, normalize, tautgen_list
from .graphs import ModuliType, moduli_allows
from .linalg import RowSpace

_THREADS = 1


def set_threads(n: int) -> None:
    """Cap the number of worker processes used to build pairing tables."""
    global _THREADS
    _THREADS = max(1, int(n))


def gen_id(G, mono) -> str:
    kappa, psi = mono
    return json.dumps([list(G.genera), [list(x) for x in G.legs], [list(e) for e in G.edges],
                       [list(p) for p in kappa], [list(p) for p in psi]],
                      separators=(",", ":"))


def _pair(a, b) -> Fraction:
    (G1, m1), (G2, m2) = a, b
    if G1.num_edges > G2.num_edges:
        (G1, m1), (G2, m2) = (G2, m2), (G1, m1)
    total = Fraction(0)
    for G, m, c in _multiply_strata(G1, m1, G2, m2):
        total += c * _eval_stratum(G, m)
    return total


def _row_job(args):
    g, n, r, i = args
    gens = tautgen_list(g, n, r)
    cogens = tautgen_list(g, n, 3 * g - 3 + n - r)
    return [_pair(gens[i], h) for h in cogens]


class PairingTable:
    """Matrix ``M[i][j] = ∫ gen_i · cogen_j`` for degree ``r`` on M̄_{g,n}."""

    def __init__(self, g, n, r, gens, cogens, matrix):
        self.g, self.n, self.r = g, n, r
        self.gens = gens
        self.cogens = cogens
        self.matrix = matrix
        self._index = None
        self._pivots = {}

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {normalize(G, m): i for i, (G, m) in enumerate(self.gens)}
        return self._index

    def row_of(self, vec: dict) -> dict:
        """Pairing vector of ``Σ vec[i]·gen_i``."""
        out = {}
        for i, c in vec.items():
            for j, x in enumerate(self.matrix[i]):
                if x:
                    out[j] = out.get(j, 0) + c * x
        return {j: x for j, x in out.items() if x}

    def pivots(self, moduli):
        """``(excluded-only RowSpace, full RowSpace, basis)`` for a moduli type."""
        moduli = ModuliType.coerce(moduli)
        if moduli in self._pivots:
            return self._pivots[moduli]
        allowed = [moduli_allows(G, moduli) for G, _ in self.gens]
        excl = RowSpace()
        full = RowSpace()
        for i, ok in enumerate(allowed):
            if not ok:
                excl.add(self.matrix[i], ("x", i))
                full.add(self.matrix[i], ("x", i))
        basis = []
        k = 0
        for i, ok in enumerate(allowed):
            if not ok:
                continue
            if full.add(self.matrix[i], ("b", k)):
                basis.append(k)
            k += 1
        self._pivots[moduli] = (excl, full, basis)
        return self._pivots[moduli]


def _compute_table(g, n, r):
    top = 3 * g - 3 + n
    gens = tautgen_list(g, n, r)
    cogens = tautgen_list(g, n, top - r)
    if r > top - r:
        # reuse the transposed table of the complementary degree
        other = pairing_matrix(g, n, top - r)
        return tuple(tuple(other.matrix[j][i] for j in range(len(cogens)))
                     for i in range(len(gens)))
    if _THREADS > 1 and len(gens) > 1:
        with ProcessPoolExecutor(max_workers=_THREADS) as ex:
            rows = list(ex.map(_row_job, [(g, n, r, i) for i in range(len(gens))]))
        return tuple(tuple(row) for row in rows)
    return tuple(tuple(_pair(a, b) for b in cogens) for a in gens)


_TABLES = {}


def pairing_matrix(g: int, n: int, r: int) -> PairingTable:
    """Pairing table of degree ``r`` generators against degree ``3g-3+n-r``."""
    key = (g, n, r)
    table = _TABLES.get(key)
    if table is not None:
        return table
    top = 3 * g - 3 + n
    if not 0 <= r <= top:
        raise ValueError(f"degree {r} outside 0..{top}")
    gens = tautgen_list(g, n, r)
    cogens = tautgen_list(g, n, top - r)
    gids = tuple(gen_id(*x) for x in gens)
    cids = tuple(gen_id(*x) for x in cogens)
    stored = CACHE.pairings.get(key)
    if stored is not None and tuple(stored["gens"]) == gids and tuple(stored["cogens"]) == cids:
        matrix = tuple(tuple(Fraction(x) for x in row) for row in stored["matrix"])
        CACHE.stats["pairing_hits"] += 1
    else:
        matrix = _compute_table(g, n, r)
        with CACHE.lock:
            CACHE.pairings[key] = {"gens": gids, "cogens": cids, "matrix": matrix}
            CACHE.stats["pairing_computed"] += 1
    table = PairingTable(g, n, r, gens, cogens, matrix)
    _TABLES[key] = table
    return table


def clear_tables() -> None:
    _TABLES.clear()


def generating_indices(g: int, n: int, r: int, moduli="st") -> list:
    """Indices into ``tautgens(g, n, r, moduli)`` of a basis of the degree-``r`` part."""
    return list(pairing_matrix(g, n, r).pivots(moduli)[2])


def _vector(table: PairingTable, T: TautClass, r: int) -> dict:
    vec = {}
    index = table.index
    for (C, m), c in T.degree_part(r).normal_form().items():
        i = index.get((C, m))
        if i is None:
            # only decorations exceeding a vertex dimension are missing
            dims = C.vertex_dims
            kappa, psi = m
            degs = [sum(p) for p in kappa]
            for l, e in psi:
                degs[C.vertex_of[l]] += e
            if all(d <= dim for d, dim in zip(degs, dims)):
                raise RuntimeError(f"decorated stratum {C} {m} not among generators")
            continue
        vec[i] = vec.get(i, 0) + c
    return vec


def _single_degree(T: TautClass, r):
    if r is not None:
        return r
    degs = T.degrees()
    if len(degs) > 1:
        raise ValueError(f"class is inhomogeneous (degrees {degs}); pass r")
    if not degs:
        raise ValueError("class is empty; pass r")
    return degs[0]


def to_basis(T: TautClass, r=None, moduli="st") -> tuple:
    """Coordinates of ``T`` (degree ``r``) in the basis of :func:`generating_indices`."""
    r = _single_degree(T, r)
    table = pairing_matrix(T.g, T.n, r)
    _, full, basis = table.pivots(moduli)
    row = table.row_of(_vector(table, T, r))
    res, comb = full.reduce(row)
    if res:
        raise RuntimeError("pairing vector outside the span of all generators")
    return tuple(Fraction(comb.get(("b", k), 0)) for k in basis)


def is_zero(T: TautClass, moduli="st") -> bool:
    """Zero test modulo the pairing kernel and classes supported off ``moduli``."""
    S = T.simplify()
    if S.is_empty():
        return True
    top = 3 * T.g - 3 + T.n
    for r in S.degrees():
        if r > top:
            continue
        table = pairing_matrix(T.g, T.n, r)
        excl = table.pivots(moduli)[0]
        row = table.row_of(_vector(table, S, r))
        if not excl.contains(row):
            return False
    return True


def tautvect_to_basis(g, n, r, vec, moduli="st") -> tuple:
    """Convert a coefficient vector over ``tautgens(g,n,r,moduli)`` to basis coordinates."""
    gens = tautgen_list(g, n, r, moduli)
    if len(vec) != len(gens):
        raise ValueError(f"expected {len(gens)} coefficients")
    T = TautClass.from_triples(g, n, ((G, m, Fraction(c)) for (G, m), c in zip(gens, vec)))
    return to_basis(T, r=r, moduli=moduli)


def save_cache(path) -> None:
    _save(path)


def load_cache(path) -> None:
    _load(path)
    _TABLES.clear()


def cache_path_from_env():
    return os.environ.get("TAUTRING_CACHE") or None


__all__ = ["PairingTable", "pairing_matrix", "generating_indices", "to_basis", "is_zero",
           "tautvect_to_basis", "save_cache", "load_cache", "set_threads"]

