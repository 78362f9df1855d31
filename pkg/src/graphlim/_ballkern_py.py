"""Pure-Python BFS kernels. Mirrors the compiled module in graphlim._ballkern.

Both backends must produce bit-identical outputs; the parity test suite holds
them to that. Keep the loop structure in sync when editing either one.
"""

from __future__ import annotations

import numpy as np

IS_COMPILED = False


class BallKernel:
    """Per-graph workspace for repeated bounded-radius BFS sweeps.

    Reuses stamp arrays across calls so extracting a ball costs O(ball), not
    O(n). Instances are not safe for concurrent use; graphs hand out one per
    thread if needed.
    """

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        n = len(self.indptr) - 1
        self._seen = [0] * n
        self._local = [0] * n
        self._gen = 0

    def ball(self, root: int, r: int):
        """BFS ball of radius r around root.

        Returns (verts, dist, eu, ev): global vertex ids in BFS discovery
        order (neighbor ties broken by ascending id), per-local distances,
        and induced edges as local endpoint pairs with eu < ev.
        """
        indptr = self.indptr
        indices = self.indices
        seen = self._seen
        local = self._local
        self._gen += 1
        gen = self._gen

        verts = [root]
        dist = [0]
        seen[root] = gen
        local[root] = 0
        head = 0
        while head < len(verts):
            u = verts[head]
            du = dist[head]
            head += 1
            if du == r:
                continue
            for w in indices[indptr[u]:indptr[u + 1]]:
                w = int(w)
                if seen[w] != gen:
                    seen[w] = gen
                    local[w] = len(verts)
                    verts.append(w)
                    dist.append(du + 1)

        eu = []
        ev = []
        for lu in range(len(verts)):
            u = verts[lu]
            for w in indices[indptr[u]:indptr[u + 1]]:
                w = int(w)
                if seen[w] == gen:
                    lw = local[w]
                    if lw > lu:
                        eu.append(lu)
                        ev.append(lw)
        return (
            np.array(verts, dtype=np.int32),
            np.array(dist, dtype=np.int32),
            np.array(eu, dtype=np.int32),
            np.array(ev, dtype=np.int32),
        )

    def reach_pairs(self, cap: int):
        """All unordered pairs (u, v), u < v, with 1 <= d(u, v) <= cap."""
        indptr = self.indptr
        indices = self.indices
        seen = self._seen
        n = len(indptr) - 1
        us = []
        vs = []
        queue = [0] * n
        depth = [0] * n
        for s in range(n):
            self._gen += 1
            gen = self._gen
            seen[s] = gen
            queue[0] = s
            depth[0] = 0
            head = 0
            size = 1
            while head < size:
                u = queue[head]
                du = depth[head]
                head += 1
                if u > s:
                    us.append(s)
                    vs.append(u)
                if du == cap:
                    continue
                for w in indices[indptr[u]:indptr[u + 1]]:
                    w = int(w)
                    if seen[w] != gen:
                        seen[w] = gen
                        queue[size] = w
                        depth[size] = du + 1
                        size += 1
        return np.array(us, dtype=np.int32), np.array(vs, dtype=np.int32)


def greedy_color(indptr, indices, order):
    """Greedy proper vertex coloring: smallest color unused on neighbors."""
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int32)
    n = len(indptr) - 1
    colors = np.full(n, -1, dtype=np.int32)
    used = [-1] * (n + 1)
    for v in order:
        v = int(v)
        for w in indices[indptr[v]:indptr[v + 1]]:
            cw = colors[w]
            if cw >= 0:
                used[cw] = v
        c = 0
        while used[c] == v:
            c += 1
        colors[v] = c
    return colors
