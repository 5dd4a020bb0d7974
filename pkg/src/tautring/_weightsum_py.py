"""Pure-Python weighting sums (reference implementation and fallback)."""
from __future__ import annotations

import itertools


def spanning_tree(nverts, edges_u, edges_v):
    """BFS spanning tree rooted at 0.

    Returns ``(order, parent_edge, free_edges)`` where ``order`` lists the
    vertices in BFS order and ``parent_edge[x]`` is the tree edge joining
    ``x`` to its parent (``-1`` for the root).
    """
    adj = [[] for _ in range(nverts)]
    for e, (u, v) in enumerate(zip(edges_u, edges_v)):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    parent_edge = [-1] * nverts
    seen = [False] * nverts
    seen[0] = True
    order = [0]
    tree = set()
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y, e in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent_edge[y] = e
                tree.add(e)
                order.append(y)
    if len(order) != nverts:
        raise ValueError("graph is disconnected")
    free = [e for e in range(len(edges_u)) if e not in tree]
    return order, parent_edge, free


def weighting_sums(nverts, edges_u, edges_v, vertex_residues, r, patterns):
    """``S_p = Σ_w Π_e (t_e·((r - t_e) mod r))^{p_e}`` over all weightings mod ``r``.

    Edge ``e`` carries ``t_e`` on its ``edges_u`` end and ``-t_e`` on its
    ``edges_v`` end; at vertex ``x`` the half-edge values must sum to
    ``vertex_residues[x]`` mod ``r``.
    """
    nedges = len(edges_u)
    order, parent_edge, free = spanning_tree(nverts, edges_u, edges_v)
    patterns = [tuple(p) for p in patterns]
    sums = [0] * len(patterns)
    t = [0] * nedges
    for values in itertools.product(range(r), repeat=len(free)):
        acc = [0] * nverts
        for e, val in zip(free, values):
            t[e] = val
            acc[edges_u[e]] += val
            acc[edges_v[e]] -= val
        for x in reversed(order[1:]):
            e = parent_edge[x]
            need = vertex_residues[x] - acc[x]
            if edges_u[e] == x:
                val = need % r
                acc[x] += val
                acc[edges_v[e]] -= val
            else:
                val = (-need) % r
                acc[x] -= val
                acc[edges_u[e]] += val
            t[e] = val
        xs = [te * ((r - te) % r) for te in t]
        for k, p in enumerate(patterns):
            prod = 1
            for xe, pe in zip(xs, p):
                if pe:
                    prod *= xe ** pe
                    if not prod:
                        break
            sums[k] += prod
    return sums
