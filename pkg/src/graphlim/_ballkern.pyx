# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled BFS kernels. Pure-Python twin: graphlim._ballkern_py.

Outputs must stay bit-identical with the fallback; the parity tests compare
them element-wise.
"""

import numpy as np

IS_COMPILED = True


cdef class BallKernel:
    """Per-graph workspace for repeated bounded-radius BFS sweeps."""

    cdef const long long[::1] indptr
    cdef const int[::1] indices
    cdef long long[::1] seen
    cdef int[::1] local
    cdef int[::1] queue
    cdef int[::1] depth
    cdef long long gen
    cdef Py_ssize_t n

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.n = self.indptr.shape[0] - 1
        self.seen = np.zeros(self.n, dtype=np.int64)
        self.local = np.zeros(self.n, dtype=np.int32)
        self.queue = np.zeros(self.n, dtype=np.int32)
        self.depth = np.zeros(self.n, dtype=np.int32)
        self.gen = 0

    def ball(self, int root, int r):
        cdef long long gen
        cdef Py_ssize_t head, size, j
        cdef int u, w, du, lu, lw, esize
        self.gen += 1
        gen = self.gen

        self.queue[0] = root
        self.depth[0] = 0
        self.seen[root] = gen
        self.local[root] = 0
        head = 0
        size = 1
        while head < size:
            u = self.queue[head]
            du = self.depth[head]
            head += 1
            if du == r:
                continue
            for j in range(self.indptr[u], self.indptr[u + 1]):
                w = self.indices[j]
                if self.seen[w] != gen:
                    self.seen[w] = gen
                    self.local[w] = <int> size
                    self.queue[size] = w
                    self.depth[size] = du + 1
                    size += 1

        verts = np.array(self.queue[:size], dtype=np.int32)
        dist = np.array(self.depth[:size], dtype=np.int32)

        # induced edges; upper bound: sum of ball-vertex degrees / 2
        cdef long long cap = 0
        for lu in range(size):
            u = self.queue[lu]
            cap += self.indptr[u + 1] - self.indptr[u]
        eu_arr = np.empty(cap // 2 + 1, dtype=np.int32)
        ev_arr = np.empty(cap // 2 + 1, dtype=np.int32)
        cdef int[::1] eu = eu_arr
        cdef int[::1] ev = ev_arr
        esize = 0
        for lu in range(size):
            u = self.queue[lu]
            for j in range(self.indptr[u], self.indptr[u + 1]):
                w = self.indices[j]
                if self.seen[w] == gen:
                    lw = self.local[w]
                    if lw > lu:
                        eu[esize] = lu
                        ev[esize] = lw
                        esize += 1
        return verts, dist, eu_arr[:esize].copy(), ev_arr[:esize].copy()

    def reach_pairs(self, int cap):
        cdef long long gen
        cdef Py_ssize_t head, size, j, out, capacity
        cdef int s, u, w, du
        capacity = 4 * self.n + 16
        us_arr = np.empty(capacity, dtype=np.int32)
        vs_arr = np.empty(capacity, dtype=np.int32)
        cdef int[::1] us = us_arr
        cdef int[::1] vs = vs_arr
        out = 0
        for s in range(self.n):
            self.gen += 1
            gen = self.gen
            self.seen[s] = gen
            self.queue[0] = s
            self.depth[0] = 0
            head = 0
            size = 1
            while head < size:
                u = self.queue[head]
                du = self.depth[head]
                head += 1
                if u > s:
                    if out == capacity:
                        capacity = capacity * 2
                        us_arr = np.concatenate([us_arr, np.empty(capacity - out, dtype=np.int32)])
                        vs_arr = np.concatenate([vs_arr, np.empty(capacity - out, dtype=np.int32)])
                        us = us_arr
                        vs = vs_arr
                    us[out] = s
                    vs[out] = u
                    out += 1
                if du == cap:
                    continue
                for j in range(self.indptr[u], self.indptr[u + 1]):
                    w = self.indices[j]
                    if self.seen[w] != gen:
                        self.seen[w] = gen
                        self.queue[size] = w
                        self.depth[size] = du + 1
                        size += 1
        return us_arr[:out].copy(), vs_arr[:out].copy()


def greedy_color(indptr, indices, order):
    """Greedy proper vertex coloring: smallest color unused on neighbors."""
    indptr_arr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices_arr = np.ascontiguousarray(indices, dtype=np.int32)
    order_arr = np.ascontiguousarray(order, dtype=np.int32)
    cdef const long long[::1] ip = indptr_arr
    cdef const int[::1] idx = indices_arr
    cdef const int[::1] ordv = order_arr
    cdef Py_ssize_t n = ip.shape[0] - 1
    colors_arr = np.full(n, -1, dtype=np.int32)
    used_arr = np.full(n + 1, -1, dtype=np.int64)
    cdef int[::1] colors = colors_arr
    cdef long long[::1] used = used_arr
    cdef Py_ssize_t i, j
    cdef int v, w, c, cw
    for i in range(ordv.shape[0]):
        v = ordv[i]
        for j in range(ip[v], ip[v + 1]):
            w = idx[j]
            cw = colors[w]
            if cw >= 0:
                used[cw] = v
        c = 0
        while used[c] == v:
            c += 1
        colors[v] = c
    return colors_arr
