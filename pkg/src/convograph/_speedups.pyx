# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled breadth-first search kernels over CSR adjacency.

distances_from runs one BFS; sweep_sources runs one BFS per listed source
and folds the distances into (finite ordered pair count, distance sum,
maximum distance). Both release the GIL, so independent source chunks can
run on real threads.
"""

import numpy as np

cimport cython
cimport numpy as cnp

BACKEND = "c"


cdef void _bfs(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
               Py_ssize_t source, cnp.int32_t[::1] dist,
               cnp.int32_t[::1] queue) noexcept nogil:
    cdef Py_ssize_t head = 0, tail = 0, v, u
    cdef cnp.int64_t p
    cdef cnp.int32_t dv
    dist[source] = 0
    queue[tail] = <cnp.int32_t> source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if dist[u] < 0:
                dist[u] = dv
                queue[tail] = <cnp.int32_t> u
                tail += 1


def distances_from(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                   Py_ssize_t source):
    """Single-source BFS distances as int64, -1 marking unreachable nodes."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    with nogil:
        _bfs(indptr, indices, source, dist, queue)
    return dist_arr.astype(np.int64)


def sweep_sources(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices,
                  const cnp.int32_t[::1] sources):
    """Aggregate BFS results over the given sources.

    Returns (finite_pairs, distance_sum, max_distance) counting ordered
    pairs (s, v) with v reachable from s and v != s. All accumulation is
    integer, so chunked or threaded sweeps combine deterministically.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t k = sources.shape[0]
    dist_arr = np.empty(n, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef long long finite = 0, dsum = 0
    cdef cnp.int32_t dmax = 0, dv
    cdef Py_ssize_t si, i
    with nogil:
        for si in range(k):
            for i in range(n):
                dist[i] = -1
            _bfs(indptr, indices, sources[si], dist, queue)
            for i in range(n):
                dv = dist[i]
                if dv > 0:
                    finite += 1
                    dsum += dv
                    if dv > dmax:
                        dmax = dv
    return int(finite), int(dsum), int(dmax)
