"""Deterministic test-family generators: cycles, paths, tori, random regular."""

from __future__ import annotations

import random

from .errors import ValidationError
from .graphs import Graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValidationError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], d=2)


def path(n: int) -> Graph:
    if n < 1:
        raise ValidationError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], d=2 if n >= 2 else 1)


def torus_grid(rows: int, cols: int) -> Graph:
    """4-regular wraparound grid; rows, cols >= 3 keeps it simple."""
    if rows < 3 or cols < 3:
        raise ValidationError("torus needs rows, cols >= 3")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            edges.append((v, i * cols + (j + 1) % cols))
            edges.append((v, ((i + 1) % rows) * cols + j))
    return Graph.from_edges(rows * cols, edges, d=4)


def random_regular(n: int, deg: int, seed: int) -> Graph:
    """Connected random `deg`-regular graph via the pairing model.

    Pairings with loops or parallel edges are rejected and redrawn, as are
    disconnected outcomes, so the result is deterministic in `seed`.
    """
    if n * deg % 2 != 0:
        raise ValidationError("n * deg must be even")
    if not 0 < deg < n:
        raise ValidationError("need 0 < deg < n")
    rng = random.Random(seed)
    while True:
        stubs = [v for v in range(n) for _ in range(deg)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in edges:
                ok = False
                break
            edges.add(key)
        if not ok:
            continue
        g = Graph.from_edges(n, sorted(edges), d=deg, allow_disconnected=True)
        if g.is_connected():
            return g
