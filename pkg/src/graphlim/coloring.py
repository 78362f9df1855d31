"""Proper (d+1)-edge-colorings and distance-i vertex colorings.

The edge palette is always {0..d}, even when fewer colors would do, because
the chain involutions are indexed by every palette element. Vertex palettes
are fixed at |Q_i| = (d+1)^i + 1 across a whole graph sequence so colored
types stay comparable between graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .canonical import TypedBall
from .errors import ValidationError
from .graphs import Graph, extract_ball, power_graph


def edge_color(g: Graph) -> np.ndarray:
    """Proper edge coloring with at most d+1 colors (fan/Kempe recoloring).

    Deterministic: edges are processed in ascending (u, v) order, fans extend
    through the smallest admissible neighbor, and the smallest free color is
    always chosen.
    """
    edges = g.edge_list()
    m = len(edges)
    palette = g.d + 1
    color = [-1] * m
    # per-vertex map color -> edge id, for O(1) free/next lookups
    vcol: list[dict[int, int]] = [{} for _ in range(g.n)]
    inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(edges):
        inc[u].append((int(v), eid))
        inc[v].append((int(u), eid))

    def free(v: int) -> int:
        used = vcol[v]
        for c in range(palette):
            if c not in used:
                return c
        raise ValidationError(f"no free color at vertex {v}")  # degree > d

    def assign(eid: int, c: int) -> None:
        u, v = edges[eid]
        old = color[eid]
        if old >= 0:
            del vcol[u][old]
            del vcol[v][old]
        color[eid] = c
        if c >= 0:
            vcol[u][c] = eid
            vcol[v][c] = eid

    def other_end(eid: int, v: int) -> int:
        u, w = edges[eid]
        return int(w) if u == v else int(u)

    def invert_path(start: int, c: int, dcol: int) -> None:
        # walk the alternating c/d path from start, then swap the two colors
        chain = []
        cur = start
        want = dcol
        while want in vcol[cur]:
            eid = vcol[cur][want]
            chain.append(eid)
            cur = other_end(eid, cur)
            want = c if want == dcol else dcol
        # uncolor the whole chain before swapping, same reason as the fan shift
        swapped = [dcol if color[eid] == c else c for eid in chain]
        for eid in chain:
            assign(eid, -1)
        for eid, nc in zip(chain, swapped):
            assign(eid, nc)

    def is_fan(x: int, fan: list[tuple[int, int]]) -> bool:
        for j in range(1, len(fan)):
            cj = color[fan[j][1]]
            if cj < 0 or cj in vcol[fan[j - 1][0]]:
                return False
        return True

    for eid0 in range(m):
        x = int(edges[eid0][0])
        f = int(edges[eid0][1])
        fan = [(f, eid0)]
        in_fan = {f}
        while True:
            tail = fan[-1][0]
            ext = None
            for w, eid in inc[x]:
                c = color[eid]
                if c >= 0 and w not in in_fan and c not in vcol[tail]:
                    ext = (w, eid)
                    break
            if ext is None:
                break
            fan.append(ext)
            in_fan.add(ext[0])
        c = free(x)
        dcol = free(fan[-1][0])
        if c != dcol:
            invert_path(x, c, dcol)
        w_idx = None
        for i in range(len(fan)):
            if dcol not in vcol[fan[i][0]] and is_fan(x, fan[: i + 1]):
                w_idx = i
                break
        if w_idx is None:
            raise ValidationError("edge-coloring invariant broke; this is a bug")
        # uncolor before shifting so the per-vertex maps never double-book
        olds = [color[fan[j][1]] for j in range(w_idx + 1)]
        for j in range(w_idx + 1):
            assign(fan[j][1], -1)
        for j in range(w_idx):
            assign(fan[j][1], olds[j + 1])
        assign(fan[w_idx][1], dcol)

    out = np.array(color, dtype=np.int32)
    if m and (out.min() < 0 or out.max() > g.d):
        raise ValidationError("edge coloring left the palette; this is a bug")
    return out


def distance_color(g: Graph, i: int, order=None) -> np.ndarray:
    """Vertex coloring where vertices at distance <= i get distinct colors.

    Greedy smallest-free-color on the i-th power graph, in ascending vertex
    order unless an explicit order is given.
    """
    if i < 1:
        raise ValidationError(f"distance-coloring radius must be >= 1, got {i}")
    power = power_graph(g, i)
    if order is None:
        order = np.arange(g.n, dtype=np.int32)
    backend = kernels.get_backend()
    return backend.greedy_color(power.indptr, power.indices, order)


@dataclass(frozen=True)
class ColoringBundle:
    """A proper edge coloring plus distance-i vertex colorings for i = 1..R."""

    d: int
    R: int
    n: int
    edge_colors: np.ndarray
    vertex_colors: tuple[np.ndarray, ...]
    palette_sizes: tuple[int, ...]
    seed: int | None = None
    _lookup: dict = field(default_factory=dict, repr=False, compare=False)

    def ensure_lookup(self, edges) -> None:
        if not self._lookup:
            for eid, (a, b) in enumerate(edges):
                self._lookup[(int(a), int(b))] = int(self.edge_colors[eid])

    def edge_color_of(self, u: int, v: int, edges=None) -> int:
        if not self._lookup:
            if edges is None:
                raise ValidationError("edge lookup not initialised yet")
            self.ensure_lookup(edges)
        key = (u, v) if u < v else (v, u)
        return self._lookup[key]

    def vertex_tuple(self, v: int, r: int) -> tuple[int, ...]:
        if r > self.R:
            raise ValidationError(f"bundle depth {self.R} < requested radius {r}")
        return tuple(int(self.vertex_colors[i][v]) for i in range(r))

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "depth": self.R,
            "n": self.n,
            "seed": self.seed,
            "palette_sizes": list(self.palette_sizes),
            "edge_colors": [int(c) for c in self.edge_colors],
            "vertex_colors": [[int(c) for c in level] for level in self.vertex_colors],
        }


def build_bundle(g: Graph, R: int, seed: int | None = None) -> ColoringBundle:
    """Assemble and validate the full coloring bundle for depth R.

    With a seed, the greedy vertex orders are shuffled (one generator drives
    all levels); the default is the ascending order, bit-for-bit reproducible.
    Validation failures here mean bugs, not data conditions, so they raise.
    """
    if R < 1:
        raise ValidationError(f"bundle depth must be >= 1, got {R}")
    ecol = edge_color(g)
    _check_edge_proper(g, ecol)
    rng = random.Random(seed) if seed is not None else None
    levels = []
    backend = kernels.get_backend()
    for i in range(1, R + 1):
        power = power_graph(g, i)
        order = np.arange(g.n, dtype=np.int32)
        if rng is not None:
            perm = list(range(g.n))
            rng.shuffle(perm)
            order = np.array(perm, dtype=np.int32)
        colors = backend.greedy_color(power.indptr, power.indices, order)
        _check_power_proper(power, colors, i)
        cap = (g.d + 1) ** i + 1
        if int(colors.max()) >= cap:
            raise ValidationError(
                f"distance-{i} coloring used {int(colors.max()) + 1} colors, "
                f"palette holds {cap}; this is a bug"
            )
        colors.setflags(write=False)
        levels.append(colors)
    ecol.setflags(write=False)
    bundle = ColoringBundle(
        d=g.d,
        R=R,
        n=g.n,
        edge_colors=ecol,
        vertex_colors=tuple(levels),
        palette_sizes=tuple((g.d + 1) ** i + 1 for i in range(1, R + 1)),
        seed=seed,
    )
    bundle.ensure_lookup(g.edge_list())
    return bundle


def _check_edge_proper(g: Graph, ecol: np.ndarray) -> None:
    at_vertex: list[set[int]] = [set() for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edge_list()):
        c = int(ecol[eid])
        if not 0 <= c <= g.d:
            raise ValidationError(f"edge color {c} outside palette 0..{g.d}")
        for x in (int(u), int(v)):
            if c in at_vertex[x]:
                raise ValidationError(
                    f"edge coloring not proper: color {c} repeats at vertex {x}"
                )
            at_vertex[x].add(c)


def _check_power_proper(power: Graph, colors: np.ndarray, i: int) -> None:
    src = np.repeat(np.arange(power.n, dtype=np.int64), np.diff(power.indptr))
    if np.any(colors[src] == colors[power.indices]):
        raise ValidationError(f"distance-{i} coloring assigns equal colors at distance <= {i}")


def typed_ball(g: Graph, bundle: ColoringBundle, v: int, r: int) -> TypedBall:
    """The colored r-ball around v: structure from the graph, colors from the
    bundle, tuples truncated to r components."""
    if bundle.R < r:
        raise ValidationError(f"bundle depth {bundle.R} < requested radius {r}")
    if bundle.n != g.n or bundle.d != g.d:
        raise ValidationError("bundle was built for a different graph")
    ball = extract_ball(g, v, r)
    assert ball.verts is not None
    tuples = tuple(bundle.vertex_tuple(gv, r) for gv in ball.verts)
    ecolors = tuple(
        bundle.edge_color_of(ball.verts[u], ball.verts[v2], edges=g.edge_list())
        for u, v2 in ball.edges
    )
    return TypedBall(ball=ball, vertex_tuples=tuples, edge_colors=ecolors)
