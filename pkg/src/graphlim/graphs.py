"""Bounded-degree simple graphs: ingestion, BFS balls, power graphs.

All operations here are pure functions of immutable inputs and are safe to
call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class RootedBall:
    """Induced subgraph on all vertices within distance `radius` of a root.

    Local vertex ids are BFS discovery order from the root (neighbor ties
    broken by ascending id), so the root is always local id 0 and `dist` is
    nondecreasing. `edges` are local pairs (u, v) with u < v, sorted
    lexicographically. `verts` maps local ids back to the source graph and is
    None for balls not extracted from a graph.
    """

    d: int
    radius: int
    dist: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    verts: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return len(self.dist)

    @property
    def root(self) -> int:
        return 0

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.k)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def degree_of(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


class Graph:
    """Simple undirected graph with a declared degree bound d.

    Vertices are 0..n-1; adjacency is CSR with neighbor lists sorted
    ascending. Instances are immutable once constructed.
    """

    def __init__(self, n: int, indptr, indices, d: int):
        self.n = int(n)
        self.d = int(d)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self._kernel = None
        self._edges = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges,
        d: int | None = None,
        allow_disconnected: bool = False,
    ) -> "Graph":
        """Build and validate a graph from an iterable of (u, v) pairs."""
        if n < 1:
            raise ValidationError("graph must have at least one vertex")
        if isinstance(edges, np.ndarray):
            e = edges.astype(np.int64).reshape(-1, 2)
        else:
            e = np.array([(int(u), int(v)) for u, v in edges], dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            bad = e[(e.min(axis=1) < 0) | (e.max(axis=1) >= n)][0]
            raise ValidationError(f"edge ({bad[0]},{bad[1]}) out of range for n={n}")
        if np.any(e[:, 0] == e[:, 1]):
            bad = int(e[e[:, 0] == e[:, 1]][0][0])
            raise ValidationError(f"self-loop at vertex {bad}")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
        if np.any(dup):
            i = int(np.flatnonzero(dup)[0])
            raise ValidationError(f"duplicate edge ({lo[i]},{hi[i]})")
        deg = np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)
        maxdeg = int(deg.max()) if n else 0
        if d is None:
            d = max(1, maxdeg)
        if d < 1:
            raise ValidationError(f"degree bound must be positive, got {d}")
        if maxdeg > d:
            bad = int(np.argmax(deg))
            raise ValidationError(
                f"vertex {bad} has degree {maxdeg}, exceeding declared bound {d}"
            )
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        g = cls(n, indptr, indices, d)
        if not allow_disconnected and not g.is_connected():
            raise ValidationError(
                "graph is disconnected (pass allow_disconnected=True to admit it)"
            )
        return g

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def m(self) -> int:
        return int(len(self.indices) // 2)

    def edge_list(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        if self._edges is None:
            src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
            keep = self.indices > src
            e = np.column_stack([src[keep], self.indices[keep].astype(np.int64)])
            e.setflags(write=False)
            self._edges = e
        return self._edges

    def kernel(self, backend: str | None = None):
        if backend is not None:
            return kernels.get_backend(backend).BallKernel(self.indptr, self.indices)
        if self._kernel is None:
            self._kernel = kernels.get_backend().BallKernel(self.indptr, self.indices)
        return self._kernel

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        verts, _, _, _ = self.kernel().ball(0, self.n)
        return len(verts) == self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, d={self.d})"


def load_graph(
    path: str | Path,
    d: int | None = None,
    allow_disconnected: bool = False,
) -> Graph:
    """Read the edge-list format: header `n m [d]`, then m lines `u v`.

    `#` starts a comment; blank lines are skipped. When the header carries no
    degree bound and `d` is not given, the maximum observed degree is used
    (at least 1, so edgeless graphs still get a valid palette).
    """
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ParseError(f"{path}: empty graph file")
    headno, header = lines[0]
    parts = header.split()
    if len(parts) not in (2, 3):
        raise ParseError(f"{path}:{headno}: header must be 'n m [d]', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
        header_d = int(parts[2]) if len(parts) == 3 else None
    except ValueError as exc:
        raise ParseError(f"{path}:{headno}: non-integer header field") from exc
    if len(lines) - 1 != m:
        raise ParseError(
            f"{path}: header declares {m} edges but file has {len(lines) - 1} edge lines"
        )
    edges = []
    for lineno, body in lines[1:]:
        fields = body.split()
        if len(fields) != 2:
            raise ParseError(f"{path}:{lineno}: edge line must be 'u v', got {body!r}")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-integer vertex id") from exc
    if d is None:
        d = header_d
    try:
        return Graph.from_edges(n, edges, d=d, allow_disconnected=allow_disconnected)
    except (ParseError, ValidationError) as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def extract_ball(g: Graph, v: int, r: int) -> RootedBall:
    """The rooted ball B_r(v): induced subgraph on {u : d(v, u) <= r}.

    Deterministic: local ids are BFS discovery order with ascending-id
    tie-breaking, so identical inputs always yield identical structures.
    """
    if not 0 <= v < g.n:
        raise ValidationError(f"vertex {v} out of range for n={g.n}")
    if r < 0:
        raise ValidationError(f"radius must be >= 0, got {r}")
    verts, dist, eu, ev = g.kernel().ball(v, r)
    order = np.lexsort((ev, eu))
    edges = tuple((int(eu[i]), int(ev[i])) for i in order)
    return RootedBall(
        d=g.d,
        radius=r,
        dist=tuple(int(x) for x in dist),
        edges=edges,
        verts=tuple(int(x) for x in verts),
    )


def power_graph(g: Graph, i: int) -> Graph:
    """Graph on the same vertices with u ~ v iff 1 <= d(u, v) <= i."""
    if i < 1:
        raise ValidationError(f"power exponent must be >= 1, got {i}")
    us, vs = g.kernel().reach_pairs(i)
    deg = np.bincount(us, minlength=g.n) + np.bincount(vs, minlength=g.n)
    maxdeg = int(deg.max())
    return Graph.from_edges(
        g.n,
        np.column_stack([us, vs]),
        d=max(1, maxdeg),
        allow_disconnected=True,
    )
