# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled weighting sums; same contract as ``_weightsum_py.weighting_sums``."""

from libc.stdlib cimport malloc, free as cfree
from libc.stdint cimport int64_t

from ._weightsum_py import spanning_tree, weighting_sums as _py_weighting_sums


cdef inline int64_t _mod(int64_t a, int64_t r) nogil:
    cdef int64_t m = a % r
    return m + r if m < 0 else m


def weighting_sums(int nverts, edges_u, edges_v, vertex_residues, int r, patterns):
    cdef int nedges = len(edges_u)
    cdef int npat = len(patterns)
    cdef int maxdeg = 0, s, i, j, k, x, e
    for p in patterns:
        s = sum(p)
        if s > maxdeg:
            maxdeg = s
    order, parent_edge, free_list = spanning_tree(nverts, edges_u, edges_v)
    cdef int nfree = len(free_list)
    # (r^2/4)^maxdeg * r^nfree must fit comfortably in 63 bits
    bound = (r * r // 4 + 1) ** maxdeg * r ** nfree
    if bound >= 2 ** 62 or nedges == 0:
        return _py_weighting_sums(nverts, edges_u, edges_v, vertex_residues, r, patterns)

    cdef int *eu = <int *> malloc(nedges * sizeof(int))
    cdef int *ev = <int *> malloc(nedges * sizeof(int))
    cdef int *pe = <int *> malloc(nverts * sizeof(int))
    cdef int *ordr = <int *> malloc(nverts * sizeof(int))
    cdef int *fr = <int *> malloc((nfree + 1) * sizeof(int))
    cdef int *pat = <int *> malloc((npat * nedges + 1) * sizeof(int))
    cdef int64_t *res = <int64_t *> malloc(nverts * sizeof(int64_t))
    cdef int64_t *acc = <int64_t *> malloc(nverts * sizeof(int64_t))
    cdef int64_t *t = <int64_t *> malloc(nedges * sizeof(int64_t))
    cdef int64_t *xs = <int64_t *> malloc(nedges * sizeof(int64_t))
    cdef int64_t *sums = <int64_t *> malloc((npat + 1) * sizeof(int64_t))
    cdef int *cnt = <int *> malloc((nfree + 1) * sizeof(int))
    cdef int64_t need, val, prod, q
    cdef int done
    try:
        for e in range(nedges):
            eu[e] = edges_u[e]
            ev[e] = edges_v[e]
        for x in range(nverts):
            pe[x] = parent_edge[x]
            ordr[x] = order[x]
            res[x] = vertex_residues[x]
        for i in range(nfree):
            fr[i] = free_list[i]
            cnt[i] = 0
        for k in range(npat):
            sums[k] = 0
            for e in range(nedges):
                pat[k * nedges + e] = patterns[k][e]
        with nogil:
            done = 0
            while not done:
                for x in range(nverts):
                    acc[x] = 0
                for i in range(nfree):
                    e = fr[i]
                    t[e] = cnt[i]
                    acc[eu[e]] += cnt[i]
                    acc[ev[e]] -= cnt[i]
                for j in range(nverts - 1, 0, -1):
                    x = ordr[j]
                    e = pe[x]
                    need = res[x] - acc[x]
                    if eu[e] == x:
                        val = _mod(need, r)
                        acc[x] += val
                        acc[ev[e]] -= val
                    else:
                        val = _mod(-need, r)
                        acc[x] -= val
                        acc[eu[e]] += val
                    t[e] = val
                for e in range(nedges):
                    xs[e] = t[e] * _mod(r - t[e], r)
                for k in range(npat):
                    prod = 1
                    for e in range(nedges):
                        q = pat[k * nedges + e]
                        while q > 0:
                            prod *= xs[e]
                            q -= 1
                        if prod == 0:
                            break
                    sums[k] += prod
                # advance the odometer over free edges
                i = 0
                while True:
                    if i == nfree:
                        done = 1
                        break
                    cnt[i] += 1
                    if cnt[i] < r:
                        break
                    cnt[i] = 0
                    i += 1
        return [sums[k] for k in range(npat)]
    finally:
        cfree(eu); cfree(ev); cfree(pe); cfree(ordr); cfree(fr); cfree(pat)
        cfree(res); cfree(acc); cfree(t); cfree(xs); cfree(sums); cfree(cnt)
