"""Canonical codes for rooted balls, uncolored and colored.

Equality of codes is exactly rooted isomorphism (colored isomorphism when
colors are present). The canonical form is found by exhaustive search over
the BFS orderings of the ball that start at the root: each ordering emits a
per-vertex record stream (distance, degree, color tuple, back-edges with
their colors), the lexicographically least stream wins, and its labeling is
serialized into the code bytes. Records are compared incrementally, so
branches that can no longer achieve the minimum are cut at the first
divergent vertex; distance, degree and color data in the records is what
makes the pruning effective. Refinement only ever prunes, the decision is
always the full search.

Byte layout (all big-endian): version, flags, d, radius, vertex count u16,
edge count u32, distance-layer sizes u16 each, edges as sorted local pairs
of u16, then for colored codes the per-edge colors u8 and the per-vertex
color tuples u32. Codes render as lowercase hex in reports; the leading
version byte lets stored reports detect layout changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .graphs import RootedBall

CODE_VERSION = 1

_SENT = 1 << 30


@dataclass(frozen=True)
class TypedBall:
    """A concrete ball together with its edge colors and vertex color tuples.

    `vertex_tuples[v]` has one component per radius level, `edge_colors` is
    parallel to `ball.edges`.
    """

    ball: RootedBall
    vertex_tuples: tuple[tuple[int, ...], ...]
    edge_colors: tuple[int, ...]

    @property
    def radius(self) -> int:
        return self.ball.radius


@dataclass(frozen=True)
class BallClass:
    """Canonical code of an uncolored rooted ball (an element of U^{r,d})."""

    code: bytes
    radius: int
    d: int

    @property
    def hex(self) -> str:
        return self.code.hex()


@dataclass(frozen=True)
class ColoredType:
    """Canonical code of a colored rooted ball (an element of V^{r,d}).

    Carries one concrete representative so later stages can act on the type
    without going back to a source graph; the representative never takes part
    in equality or hashing, and every derived result is independent of which
    representative was stored.
    """

    code: bytes
    radius: int
    d: int
    rep: TypedBall = field(compare=False, repr=False)

    @property
    def hex(self) -> str:
        return self.code.hex()


def _min_labeling(k, adj, dist, vtuples, ecolor, d):
    """Search all BFS orderings from the root; return the winning labeling.

    Returns `order` with order[label] = ball-local vertex. At each label slot
    only candidates whose current record ties the slot minimum are branched
    on, which is lossless: any other choice is lexicographically beaten at
    this very slot.
    """
    tlen = len(vtuples[0]) if vtuples is not None else 0
    item_len = 3 + tlen + 2 * (d + 1)
    label = [-1] * k
    label[0] = 0
    order = [0]
    rec: list[int] = []
    best: dict = {"rec": None, "order": None}

    def item_of(w):
        it = [dist[w], len(adj[w])]
        if vtuples is not None:
            it.extend(vtuples[w])
        back = []
        for x in adj[w]:
            lx = label[x]
            if lx >= 0:
                c = ecolor[(w, x) if w < x else (x, w)] if ecolor is not None else 0
                back.append((lx, c))
        back.sort()
        it.append(len(back))
        for lx, c in back:
            it.append(lx)
            it.append(c)
        it.extend([_SENT] * (2 * (d + 1 - len(back))))
        return it

    def advance(qi, strict):
        while qi < len(order):
            u = order[qi]
            pending = [w for w in adj[u] if label[w] < 0]
            if pending:
                burst(qi, pending, strict)
                return
            qi += 1
        if len(order) != k:
            raise ValidationError("ball is not connected from its root")
        if best["rec"] is None or rec < best["rec"]:
            best["rec"] = list(rec)
            best["order"] = list(order)

    def burst(qi, pending, strict):
        items = [(item_of(w), w) for w in pending]
        m = min(it for it, _ in items)
        if not strict and best["rec"] is not None:
            base = len(order) * item_len
            b = best["rec"][base:base + item_len]
            if m > b:
                return
            if m < b:
                strict = True
        for it, w in items:
            if it != m:
                continue
            label[w] = len(order)
            order.append(w)
            rec.extend(m)
            rest = [p for p in pending if p is not w]
            if rest:
                burst(qi, rest, strict)
            else:
                advance(qi + 1, strict)
            del rec[len(rec) - item_len:]
            order.pop()
            label[w] = -1

    rec.extend(item_of(0))
    advance(0, False)
    return best["order"]


def _pack16(out: bytearray, value: int) -> None:
    out += value.to_bytes(2, "big")


def _serialize(ball: RootedBall, order, vtuples, ecolors) -> bytes:
    colored = vtuples is not None
    k = ball.k
    r = ball.radius
    if k > 0xFFFF:
        raise ValidationError(f"ball too large to encode ({k} vertices)")
    if r > 0xFF or ball.d > 0xFF:
        raise ValidationError("radius and degree bound must fit one byte")
    label = [0] * k
    for pos, v in enumerate(order):
        label[v] = pos
    out = bytearray()
    out.append(CODE_VERSION)
    out.append(1 if colored else 0)
    out.append(ball.d)
    out.append(r)
    _pack16(out, k)
    out += len(ball.edges).to_bytes(4, "big")
    layers = [0] * (r + 1)
    for t in ball.dist:
        layers[t] += 1
    for c in layers:
        _pack16(out, c)
    relabeled = []
    for idx, (u, v) in enumerate(ball.edges):
        lu, lv = label[u], label[v]
        if lu > lv:
            lu, lv = lv, lu
        relabeled.append((lu, lv, idx))
    relabeled.sort()
    for lu, lv, _ in relabeled:
        _pack16(out, lu)
        _pack16(out, lv)
    if colored:
        for _, _, idx in relabeled:
            out.append(ecolors[idx])
        for pos in range(k):
            for comp in vtuples[order[pos]]:
                out += comp.to_bytes(4, "big")
    return bytes(out)


def _validate_colors(tb: TypedBall) -> None:
    ball = tb.ball
    r = ball.radius
    d = ball.d
    if len(tb.vertex_tuples) != ball.k:
        raise ValidationError("one color tuple per ball vertex required")
    palettes = [(d + 1) ** i + 1 for i in range(1, r + 1)]
    for v, tup in enumerate(tb.vertex_tuples):
        if len(tup) != r:
            raise ValidationError(
                f"vertex {v}: color tuple has {len(tup)} components, radius is {r}"
            )
        for i, comp in enumerate(tup):
            if not 0 <= comp < palettes[i]:
                raise ValidationError(
                    f"vertex {v}: level-{i + 1} color {comp} outside palette "
                    f"of size {palettes[i]}"
                )
    if len(tb.edge_colors) != len(ball.edges):
        raise ValidationError("one edge color per ball edge required")
    at_vertex: dict[int, set[int]] = {}
    for (u, v), c in zip(ball.edges, tb.edge_colors):
        if not 0 <= c <= d:
            raise ValidationError(f"edge color {c} outside palette 0..{d}")
        for x in (u, v):
            used = at_vertex.setdefault(x, set())
            if c in used:
                raise ValidationError(
                    f"edge coloring not proper on ball: color {c} repeats at vertex {x}"
                )
            used.add(c)


def ball_class(ball: RootedBall) -> BallClass:
    """Canonical code of an uncolored rooted ball."""
    order = _min_labeling(ball.k, ball.adjacency(), ball.dist, None, None, ball.d)
    return BallClass(code=_serialize(ball, order, None, None), radius=ball.radius, d=ball.d)


def colored_type(tb: TypedBall) -> ColoredType:
    """Canonical code of a colored rooted ball; validates palettes first."""
    _validate_colors(tb)
    ball = tb.ball
    ecolor = {e: c for e, c in zip(ball.edges, tb.edge_colors)}
    order = _min_labeling(
        ball.k, ball.adjacency(), ball.dist, tb.vertex_tuples, ecolor, ball.d
    )
    code = _serialize(ball, order, tb.vertex_tuples, tb.edge_colors)
    return ColoredType(code=code, radius=ball.radius, d=ball.d, rep=tb)


def canonical_code(ball: RootedBall, vertex_tuples=None, edge_colors=None):
    """Dispatch to ball_class or colored_type depending on color arguments."""
    if vertex_tuples is None and edge_colors is None:
        return ball_class(ball)
    if vertex_tuples is None or edge_colors is None:
        raise ValidationError("colored codes need both vertex tuples and edge colors")
    tb = TypedBall(
        ball=ball,
        vertex_tuples=tuple(tuple(t) for t in vertex_tuples),
        edge_colors=tuple(edge_colors),
    )
    return colored_type(tb)


def sub_ball(tb: TypedBall, start: int, radius: int) -> TypedBall:
    """The typed `radius`-ball around `start` inside a larger typed ball.

    Color tuples are truncated to `radius` components. Only valid when the
    sub-ball's structure is complete inside the host, i.e. when
    dist(root, start) + radius <= host radius.
    """
    ball = tb.ball
    if not 0 <= start < ball.k:
        raise ValidationError(f"start vertex {start} outside ball of size {ball.k}")
    if radius < 0:
        raise ValidationError(f"radius must be >= 0, got {radius}")
    if ball.dist[start] + radius > ball.radius:
        raise ValidationError(
            f"radius-{radius} sub-ball around a vertex at distance "
            f"{ball.dist[start]} is incomplete inside a radius-{ball.radius} ball"
        )
    if start == 0:
        # distances are nondecreasing in local id, so the sub-ball is a prefix
        kq = 0
        for t in ball.dist:
            if t <= radius:
                kq += 1
        pairs = [(e, c) for e, c in zip(ball.edges, tb.edge_colors) if e[1] < kq]
        return TypedBall(
            ball=RootedBall(
                d=ball.d,
                radius=radius,
                dist=ball.dist[:kq],
                edges=tuple(e for e, _ in pairs),
                verts=ball.verts[:kq] if ball.verts is not None else None,
            ),
            vertex_tuples=tuple(t[:radius] for t in tb.vertex_tuples[:kq]),
            edge_colors=tuple(c for _, c in pairs),
        )
    adj = ball.adjacency()
    local = {start: 0}
    verts = [start]
    dist = [0]
    head = 0
    while head < len(verts):
        u = verts[head]
        du = dist[head]
        head += 1
        if du == radius:
            continue
        for w in adj[u]:
            if w not in local:
                local[w] = len(verts)
                verts.append(w)
                dist.append(du + 1)
    ecolor = {e: c for e, c in zip(ball.edges, tb.edge_colors)}
    edges = []
    colors = []
    for u, v in ball.edges:
        if u in local and v in local:
            lu, lv = local[u], local[v]
            if lu > lv:
                lu, lv = lv, lu
            edges.append((lu, lv))
            colors.append(ecolor[(u, v)])
    packed = sorted(zip(edges, colors))
    return TypedBall(
        ball=RootedBall(
            d=ball.d,
            radius=radius,
            dist=tuple(dist),
            edges=tuple(e for e, _ in packed),
            verts=(
                tuple(ball.verts[v] for v in verts) if ball.verts is not None else None
            ),
        ),
        vertex_tuples=tuple(tb.vertex_tuples[v][:radius] for v in verts),
        edge_colors=tuple(c for _, c in packed),
    )


def restrict(t: ColoredType) -> ColoredType:
    """The colored type one radius lower: the (r-1)-ball around the root with
    color tuples truncated to r-1 components. Independent of the stored
    representative."""
    if t.radius < 1:
        raise ValidationError("cannot restrict a radius-0 type")
    return colored_type(sub_ball(t.rep, 0, t.radius - 1))


def underlying_class(t: ColoredType) -> BallClass:
    """Erase all colors: the plain rooted-ball class beneath a colored type."""
    return ball_class(t.rep.ball)
