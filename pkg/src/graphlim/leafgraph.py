"""Rebuild the r-ball around a chain from involution words and verify it.

Words over the edge palette act on a chain by iterated involutions and on a
representative ball by walking colored edges. Quotienting words by the
chain-side kernel (images equal through depth 2r) recovers a rooted graph;
the check that this matches the vertex-side kernel, and that the result is
rooted-isomorphic to the chain's own radius-r class, is the executable form
of the reconstruction argument.
"""

from __future__ import annotations

import random

from .canonical import TypedBall, ball_class
from .chains import Chain, apply_involution, root_step, vertex_chain
from .coloring import ColoringBundle
from .errors import ValidationError, VerificationError
from .graphs import Graph, RootedBall, extract_ball


def _step_table(tb: TypedBall) -> dict:
    step: dict = {}
    for eid, (u, v) in enumerate(tb.ball.edges):
        c = tb.edge_colors[eid]
        step[(int(u), c)] = int(v)
        step[(int(v), c)] = int(u)
    return step


def apply_word_in_ball(tb: TypedBall, word) -> int:
    """Walk from the root, crossing the lettered edge at each step if present.

    Every visited vertex must stay interior so its incident edges are fully
    known, hence words must be shorter than the ball radius.
    """
    word = tuple(word)
    if word and len(word) >= tb.radius:
        raise ValidationError(
            f"word of length {len(word)} too long for a radius-{tb.radius} ball"
        )
    for a in word:
        if not 0 <= a <= tb.ball.d:
            raise ValidationError(f"letter {a} outside palette 0..{tb.ball.d}")
    step = _step_table(tb)
    cur = 0
    for a in word:
        cur = step.get((cur, a), cur)
    return cur


def reconstruct_leafball(x: Chain, r: int):
    """Rebuild the radius-r ball around a chain from its involution action.

    Returns the reconstructed rooted ball and the map from its local vertex
    ids to depth-2r image chains. The chain must have depth at least 3r: a
    length-s word leaves its image known to depth 3r - s, and depth 2r is
    what separates images of distinct ball vertices.
    """
    if r < 0:
        raise ValidationError(f"radius must be >= 0, got {r}")
    if r == 0:
        ball = RootedBall(d=x.d, radius=0, dist=(0,), edges=())
        return ball, {0: x}
    if x.depth < 3 * r:
        raise ValidationError(f"chain depth {x.depth} < 3r = {3 * r}")
    host = x.types[2 * r - 1].rep
    step = _step_table(host)
    dd = x.d

    # breadth-first words, skipping letters whose edge is absent: stationary
    # steps change neither the ball vertex nor the chain
    images = {(): (0, x)}
    order = [()]
    frontier = [()]
    for _ in range(r):
        grown = []
        for w in frontier:
            vert, ch = images[w]
            for a in range(dd + 1):
                tgt = step.get((vert, a))
                moves = root_step(ch.types[-1].rep, a) != 0
                if (tgt is not None) != moves:
                    raise VerificationError(
                        f"ball and chain disagree on letter {a} after word {list(w)}"
                    )
                if tgt is None:
                    continue
                w2 = w + (a,)
                images[w2] = (tgt, apply_involution(a, ch))
                order.append(w2)
                grown.append(w2)
        frontier = grown

    # kernel equality, both directions, over every pair of words
    items = [(w, images[w][0], images[w][1].truncate(2 * r)) for w in order]
    for i in range(len(items)):
        wi, vi, ci = items[i]
        for j in range(i + 1, len(items)):
            wj, vj, cj = items[j]
            if vi == vj and ci != cj:
                raise VerificationError(
                    f"words {list(wi)} and {list(wj)} reach the same ball vertex "
                    f"but their image chains differ through depth {2 * r}"
                )
            if vi != vj and ci == cj:
                raise VerificationError(
                    f"words {list(wi)} and {list(wj)} reach distinct ball vertices "
                    f"but their image chains agree through depth {2 * r}"
                )

    # quotient: one class per reached ball vertex, ids in first-reached order
    cls_of: dict = {}
    class_chain: dict = {}
    for w in order:
        vert, ch = images[w]
        if vert not in cls_of:
            cls_of[vert] = len(cls_of)
            class_chain[cls_of[vert]] = ch
    in_ball = sum(1 for dist in host.ball.dist if dist <= r)
    if len(cls_of) != in_ball:
        raise VerificationError(
            f"reached {len(cls_of)} ball vertices, expected {in_ball}"
        )

    # adjacency: a moving step between two classes; the involution image must
    # match the target class chain as deeply as both are known
    edges_set = set()
    for vert, cu in cls_of.items():
        base = class_chain[cu]
        for a in range(dd + 1):
            tgt = step.get((vert, a))
            moves = root_step(base.types[-1].rep, a) != 0
            if (tgt is not None) != moves:
                raise VerificationError(
                    f"ball and chain disagree on letter {a} at a class vertex"
                )
            if tgt is None or tgt not in cls_of:
                continue
            cv = cls_of[tgt]
            image = apply_involution(a, base)
            k = min(image.depth, class_chain[cv].depth, 2 * r)
            if image.truncate(k) != class_chain[cv].truncate(k):
                raise VerificationError(
                    f"involution {a} from a class vertex does not land on the "
                    f"adjacent class chain (compared through depth {k})"
                )
            edges_set.add((min(cu, cv), max(cu, cv)))

    g2 = Graph.from_edges(len(cls_of), sorted(edges_set), d=dd)
    ball2 = extract_ball(g2, 0, r)
    if ball2.k != len(cls_of):
        raise VerificationError("reconstructed ball does not span every class")
    phi = {
        local: class_chain[int(cid)].truncate(2 * r)
        for local, cid in enumerate(ball2.verts)
    }
    return ball2, phi


def verify_reconstruction(g: Graph, bundle: ColoringBundle, r: int, sample: int,
                          seed: int = 0) -> dict:
    """Reconstruct leafballs at sampled vertices and compare against truth.

    Per vertex: the depth-3r chain is built, the ball is reconstructed from
    involution words alone, and the result must be rooted-isomorphic to the
    vertex's actual r-ball with an injective, neighbor-complete chain map.
    """
    if r < 0:
        raise ValidationError(f"radius must be >= 0, got {r}")
    depth = max(3 * r, 1)
    if bundle.R < depth:
        raise ValidationError(f"bundle depth {bundle.R} < required chain depth {depth}")
    if sample < 1:
        raise ValidationError("sample count must be >= 1")
    rng = random.Random(seed)
    if sample >= g.n:
        verts = list(range(g.n))
    else:
        verts = sorted(rng.sample(range(g.n), sample))

    rows = []
    all_ok = True
    for v in verts:
        chain = vertex_chain(g, bundle, v, depth)
        row: dict = {"vertex": v}
        try:
            ball2, phi = reconstruct_leafball(chain, r)
        except VerificationError as exc:
            row.update({"ok": False, "kernel_ok": False, "error": str(exc)})
            rows.append(row)
            all_ok = False
            continue
        true_ball = extract_ball(g, v, r)
        iso = ball_class(ball2) == ball_class(true_ball)
        injective = len(set(phi.values())) == len(phi)
        # interior classes must expose every chain-side neighbor as an edge
        neighbors_ok = True
        for u in range(ball2.k):
            if ball2.dist[u] >= r:
                continue
            root_degree = sum(1 for e in phi[u].types[0].rep.ball.edges if 0 in e)
            if ball2.degree_of(u) != root_degree:
                neighbors_ok = False
        ok = iso and injective and neighbors_ok
        row.update({
            "ok": ok,
            "kernel_ok": True,
            "isomorphic": iso,
            "phi_injective": injective,
            "neighbors_complete": neighbors_ok,
            "classes": ball2.k,
        })
        rows.append(row)
        all_ok = all_ok and ok
    return {
        "check": "leafball-reconstruction",
        "r": r,
        "n": g.n,
        "seed": seed,
        "sample": len(verts),
        "vertices": rows,
        "ok": all_ok,
    }
