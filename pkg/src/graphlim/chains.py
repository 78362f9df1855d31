"""Finite-depth chain space: coherent type sequences, the type trie with its
cylinder measure, root-moving involutions, and the measure-invariance check.

A chain is a sequence of colored types A_1, ..., A_R where each A_{r-1} is the
restriction of A_r. The trie holds every chain prefix observed in a graph with
its exact empirical measure; involutions act on chains by moving the root
across a colored edge, losing one level of depth per application.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .canonical import ColoredType, TypedBall, colored_type, restrict, sub_ball
from .coloring import ColoringBundle, typed_ball
from .errors import ValidationError, VerificationError
from .graphs import Graph, RootedBall


@dataclass(frozen=True)
class Chain:
    """Coherent sequence of colored types at radii 1..depth."""

    types: tuple

    def __post_init__(self):
        if not self.types:
            raise ValidationError("chain must contain at least one type")
        for i, t in enumerate(self.types):
            if t.radius != i + 1:
                raise ValidationError(
                    f"chain level {i + 1} has radius {t.radius}, expected {i + 1}"
                )
            if t.d != self.types[0].d:
                raise ValidationError("chain levels disagree on degree bound")
        for i in range(len(self.types) - 1, 0, -1):
            if restrict(self.types[i]) != self.types[i - 1]:
                raise ValidationError(f"chain level {i} is not the restriction of level {i + 1}")

    @property
    def depth(self) -> int:
        return len(self.types)

    @property
    def d(self) -> int:
        return self.types[0].d

    def truncate(self, depth: int) -> "Chain":
        if not 1 <= depth <= self.depth:
            raise ValidationError(f"cannot truncate depth-{self.depth} chain to {depth}")
        if depth == self.depth:
            return self
        return Chain(self.types[:depth])

    def to_json_dict(self) -> dict:
        return {"depth": self.depth, "codes": [t.hex for t in self.types]}


@dataclass
class TrieNode:
    t: ColoredType
    count: int
    measure: Fraction
    parent: bytes | None
    children: list


class TypeTrie:
    """Depth-R trie of observed colored types with exact cylinder measures."""

    def __init__(self, depth: int, d: int, n: int, nodes: dict, source: str = "",
                 mode: str = "single"):
        if depth < 1:
            raise ValidationError(f"trie depth must be >= 1, got {depth}")
        if mode not in ("single", "cesaro"):
            raise ValidationError(f"unknown trie mode {mode!r}")
        self.depth = depth
        self.d = d
        self.n = n
        self.nodes = nodes
        self.source = source
        self.mode = mode

    def node(self, code: bytes) -> TrieNode:
        try:
            return self.nodes[code]
        except KeyError:
            raise ValidationError("code not present in trie") from None

    def level(self, r: int) -> list:
        if not 1 <= r <= self.depth:
            raise ValidationError(f"level {r} outside 1..{self.depth}")
        out = [nd for nd in self.nodes.values() if nd.t.radius == r]
        out.sort(key=lambda nd: nd.t.code)
        return out

    def validate(self, reps: bool = False) -> None:
        """Check parent links, positivity, total mass, and additivity."""
        for code, nd in self.nodes.items():
            if nd.t.code != code:
                raise ValidationError("trie key does not match its node code")
            if not 1 <= nd.t.radius <= self.depth:
                raise ValidationError("trie node radius outside 1..depth")
            if nd.measure <= 0:
                raise ValidationError("trie holds a node with nonpositive measure")
            if nd.count < 1:
                raise ValidationError("trie holds a node with zero count")
            if self.mode == "single" and nd.measure != Fraction(nd.count, self.n):
                raise ValidationError("node measure differs from count/n")
            if nd.t.radius == 1:
                if nd.parent is not None:
                    raise ValidationError("level-1 node with a parent link")
            else:
                if nd.parent is None or nd.parent not in self.nodes:
                    raise ValidationError("missing parent node")
                if restrict(nd.t).code != nd.parent:
                    raise ValidationError("parent is not the restriction of its child")
                if code not in self.nodes[nd.parent].children:
                    raise ValidationError("child missing from parent's child list")
            for child in nd.children:
                if child not in self.nodes or self.nodes[child].parent != code:
                    raise ValidationError("dangling child link")
            if reps and colored_type(nd.t.rep).code != code:
                raise ValidationError("stored code does not match its representative")
        total = sum((nd.measure for nd in self.level(1)), Fraction(0))
        if total != 1:
            raise ValidationError(f"level-1 measures sum to {total}, not 1")
        for nd in self.nodes.values():
            if nd.t.radius < self.depth:
                child_mass = sum((self.nodes[c].measure for c in nd.children), Fraction(0))
                if child_mass != nd.measure:
                    raise ValidationError(
                        f"additivity violated at a level-{nd.t.radius} node: "
                        f"{nd.measure} != sum of children {child_mass}"
                    )

    def to_json_dict(self) -> dict:
        items = sorted(self.nodes.values(), key=lambda nd: (nd.t.radius, nd.t.code))
        out_nodes = []
        for nd in items:
            rep = nd.t.rep
            out_nodes.append({
                "code": nd.t.hex,
                "radius": nd.t.radius,
                "parent": nd.parent.hex() if nd.parent is not None else None,
                "count": nd.count,
                "measure": str(nd.measure),
                "rep": {
                    "dist": list(rep.ball.dist),
                    "edges": [[int(u), int(v)] for u, v in rep.ball.edges],
                    "edge_colors": list(rep.edge_colors),
                    "tuples": [list(t) for t in rep.vertex_tuples],
                },
            })
        return {
            "kind": "type-trie",
            "depth": self.depth,
            "d": self.d,
            "n": self.n,
            "mode": self.mode,
            "source": self.source,
            "nodes": out_nodes,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "TypeTrie":
        if doc.get("kind") != "type-trie":
            raise ValidationError("document is not a serialized type trie")
        depth = int(doc["depth"])
        d = int(doc["d"])
        nodes: dict = {}
        for nd in doc["nodes"]:
            radius = int(nd["radius"])
            rep_doc = nd["rep"]
            ball = RootedBall(
                d=d,
                radius=radius,
                dist=tuple(int(x) for x in rep_doc["dist"]),
                edges=tuple((int(u), int(v)) for u, v in rep_doc["edges"]),
            )
            tb = TypedBall(
                ball=ball,
                vertex_tuples=tuple(tuple(int(c) for c in t) for t in rep_doc["tuples"]),
                edge_colors=tuple(int(c) for c in rep_doc["edge_colors"]),
            )
            t = colored_type(tb)
            if t.code != bytes.fromhex(nd["code"]):
                raise ValidationError("stored code does not match its representative")
            parent = bytes.fromhex(nd["parent"]) if nd["parent"] is not None else None
            nodes[t.code] = TrieNode(
                t=t,
                count=int(nd["count"]),
                measure=Fraction(nd["measure"]),
                parent=parent,
                children=[],
            )
        for code, nd in nodes.items():
            if nd.parent is not None:
                if nd.parent not in nodes:
                    raise ValidationError("missing parent node")
                nodes[nd.parent].children.append(code)
        for nd in nodes.values():
            nd.children.sort()
        trie = cls(depth=depth, d=d, n=int(doc["n"]), nodes=nodes,
                   source=str(doc.get("source", "")), mode=str(doc.get("mode", "single")))
        trie.validate()
        return trie


def build_trie(g: Graph, bundle: ColoringBundle, R: int) -> TypeTrie:
    """Trie of all colored types of g up to radius R with empirical measures."""
    if R < 1:
        raise ValidationError(f"trie depth must be >= 1, got {R}")
    if bundle.R < R:
        raise ValidationError(f"bundle depth {bundle.R} < trie depth {R}")
    nodes: dict = {}
    cache: dict = {}
    for v in range(g.n):
        top = typed_ball(g, bundle, v, R)
        parent = None
        for r in range(1, R + 1):
            tb = top if r == R else sub_ball(top, 0, r)
            t = cache.get(tb)
            if t is None:
                t = colored_type(tb)
                cache[tb] = t
            nd = nodes.get(t.code)
            if nd is None:
                nd = TrieNode(t=t, count=0, measure=Fraction(0), parent=parent, children=[])
                nodes[t.code] = nd
                if parent is not None:
                    nodes[parent].children.append(t.code)
            nd.count += 1
            parent = t.code
    for nd in nodes.values():
        nd.measure = Fraction(nd.count, g.n)
        nd.children.sort()
    trie = TypeTrie(depth=R, d=g.d, n=g.n, nodes=nodes, source=f"graph(n={g.n})")
    trie.validate()
    return trie


def merge_tries(tries) -> TypeTrie:
    """Equal-weight average of same-depth tries (Cesaro estimation mode)."""
    if not tries:
        raise ValidationError("nothing to merge")
    depth = tries[0].depth
    d = tries[0].d
    for t in tries:
        if t.depth != depth or t.d != d:
            raise ValidationError("tries must share depth and degree bound to merge")
    k = len(tries)
    nodes: dict = {}
    for t in tries:
        for code, nd in t.nodes.items():
            out = nodes.get(code)
            if out is None:
                out = TrieNode(t=nd.t, count=0, measure=Fraction(0), parent=nd.parent,
                               children=[])
                nodes[code] = out
            out.count += nd.count
            out.measure += Fraction(nd.measure, k)
    for code, nd in nodes.items():
        if nd.parent is not None:
            nodes[nd.parent].children.append(code)
    for nd in nodes.values():
        nd.children.sort()
    merged = TypeTrie(depth=depth, d=d, n=sum(t.n for t in tries), nodes=nodes,
                      source=f"cesaro({k} graphs)", mode="cesaro")
    merged.validate()
    return merged


def vertex_chain(g: Graph, bundle: ColoringBundle, v: int, R: int) -> Chain:
    """The chain realized by vertex v: its colored types at radii 1..R."""
    if R < 1:
        raise ValidationError(f"chain depth must be >= 1, got {R}")
    if bundle.R < R:
        raise ValidationError(f"bundle depth {bundle.R} < chain depth {R}")
    top = typed_ball(g, bundle, v, R)
    types = [colored_type(top)]
    for r in range(R - 1, 0, -1):
        types.append(colored_type(sub_ball(top, 0, r)))
    types.reverse()
    return Chain(tuple(types))


def root_step(tb: TypedBall, a: int) -> int:
    """Local id of the root's neighbor across its a-colored edge, 0 if absent."""
    for eid, (u, v) in enumerate(tb.ball.edges):
        if u > 0:
            break
        if tb.edge_colors[eid] == a:
            return int(v)
    return 0


def apply_involution(a: int, x: Chain) -> Chain:
    """Move the chain's root across its a-colored edge.

    Chains with no a-colored edge at the root are fixed points and keep their
    depth. Otherwise the image is one level shallower: level j of the image is
    the j-ball around the a-neighbor inside the top representative.
    """
    d = x.d
    if not 0 <= a <= d:
        raise ValidationError(f"edge color {a} outside palette 0..{d}")
    top = x.types[-1].rep
    p = root_step(top, a)
    if p == 0:
        return x
    if x.depth < 2:
        raise ValidationError(
            "depth-1 chain with an a-colored root edge has no image at positive depth"
        )
    types = tuple(colored_type(sub_ball(top, p, j)) for j in range(1, x.depth))
    return Chain(types)


def _color_neighbor_table(g: Graph, bundle: ColoringBundle) -> np.ndarray:
    # nbr[a][v] = the vertex across v's a-colored edge, -1 when absent
    nbr = np.full((g.d + 1, g.n), -1, dtype=np.int64)
    edges = g.edge_list()
    if len(edges):
        ec = bundle.edge_colors
        nbr[ec, edges[:, 0]] = edges[:, 1]
        nbr[ec, edges[:, 1]] = edges[:, 0]
    return nbr


def verify_invariance(trie: TypeTrie, g: Graph, bundle: ColoringBundle,
                      a: int | None = None, r: int = 1) -> dict:
    """Check the exact counting identity behind measure invariance.

    For each radius-r type A and color a, the vertices whose (r+1)-type lies
    in the fiber over (A, a) are counted: a vertex x belongs iff it has no
    a-colored edge and its own r-type is A, or its a-neighbor's r-type is A.
    The identity tau(A) = sum of tau over the fiber must hold exactly.
    """
    if r < 0:
        raise ValidationError(f"radius must be >= 0, got {r}")
    if trie.depth < r + 1:
        raise ValidationError(f"trie depth {trie.depth} < r+1 = {r + 1}")
    if bundle.R < r + 1:
        raise ValidationError(f"bundle depth {bundle.R} < r+1 = {r + 1}")
    if a is not None and not 0 <= a <= g.d:
        raise ValidationError(f"edge color {a} outside palette 0..{g.d}")
    colors = list(range(g.d + 1)) if a is None else [a]

    n = g.n
    cache: dict = {}
    code_r = [b""] * n
    code_r1 = [b""] * n
    for v in range(n):
        top = typed_ball(g, bundle, v, r + 1)
        t1 = cache.get(top)
        if t1 is None:
            t1 = colored_type(top)
            cache[top] = t1
        sub = sub_ball(top, 0, r)
        t0 = cache.get(sub)
        if t0 is None:
            t0 = colored_type(sub)
            cache[sub] = t0
        code_r1[v] = t1.code
        code_r[v] = t0.code
    tau_r = Counter(code_r)
    tau_r1 = Counter(code_r1)

    # the trie must agree with the direct per-vertex tallies
    trie_consistent = True
    if trie.n != n:
        trie_consistent = False
    else:
        for level, tau in ((r, tau_r), (r + 1, tau_r1)):
            if level < 1:
                continue
            observed = {nd.t.code: nd.count for nd in trie.level(level)}
            if observed != dict(tau):
                trie_consistent = False

    nbr = _color_neighbor_table(g, bundle)
    per_color = []
    all_ok = trie_consistent
    for aa in colors:
        fibers: dict = {code: set() for code in tau_r}
        owner: dict = {}
        for v in range(n):
            y = int(nbr[aa][v])
            target = code_r[v] if y < 0 else code_r[y]
            fibers[target].add(code_r1[v])
            prev = owner.setdefault(code_r1[v], target)
            if prev != target:
                raise VerificationError(
                    "a single (r+1)-type was assigned to two fibers; this is a bug"
                )
        # recompute each fiber assignment from stored representatives
        rep_ok = True
        for nd in trie.level(r + 1):
            p = root_step(nd.t.rep, aa)
            derived = colored_type(sub_ball(nd.t.rep, p, r)).code if r >= 1 else None
            if r >= 1 and nd.t.code in owner and owner[nd.t.code] != derived:
                rep_ok = False
        rows = []
        color_ok = rep_ok
        for code in sorted(tau_r):
            fiber = sorted(fibers[code])
            fiber_tau = sum(tau_r1[b] for b in fiber)
            ok = fiber_tau == tau_r[code]
            color_ok = color_ok and ok
            rows.append({
                "type": code.hex(),
                "tau": tau_r[code],
                "fiber": [b.hex() for b in fiber],
                "fiber_tau": fiber_tau,
                "ok": ok,
            })
        per_color.append({"a": aa, "ok": color_ok, "representatives_ok": rep_ok,
                          "types": rows})
        all_ok = all_ok and color_ok
    return {
        "check": "measure-invariance",
        "r": r,
        "n": n,
        "colors": colors,
        "trie_consistent": trie_consistent,
        "per_color": per_color,
        "ok": all_ok,
    }


def sample_chain(trie: TypeTrie, seed: int) -> Chain:
    """Draw a depth-R chain, each level chosen with its conditional measure."""
    if not trie.nodes:
        raise ValidationError("cannot sample from an empty trie")
    rng = random.Random(seed)
    types = []
    candidates = trie.level(1)
    total = sum((nd.measure for nd in candidates), Fraction(0))
    while True:
        u = rng.random()
        cum = Fraction(0)
        chosen = candidates[-1]
        for nd in candidates:
            cum += nd.measure
            if u < cum / total:
                chosen = nd
                break
        types.append(chosen.t)
        if chosen.t.radius == trie.depth:
            break
        candidates = [trie.nodes[c] for c in chosen.children]
        total = chosen.measure
    return Chain(tuple(types))
