"""Independent oracles shared by the test suite.

Everything here is deliberately naive (dict adjacency, plain BFS,
backtracking search) and shares no code with the package, so agreement
between the two is meaningful evidence rather than a tautology.
"""

from collections import deque
from pathlib import Path


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs_distances(adj, src):
    """Hop distances from src over a dict-of-sets adjacency."""
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(n, edges):
    adj = adjacency(n, edges)
    return {v: bfs_distances(adj, v) for v in range(n)}


def ball_vertex_set(n, edges, v, r):
    adj = adjacency(n, edges)
    dist = bfs_distances(adj, v)
    return {u for u, dv in dist.items() if dv <= r}


def _extend(mapping, v, w, adj_a, adj_b):
    """Can v -> w extend mapping while preserving adjacency both ways?"""
    for u, mu in mapping.items():
        if (u in adj_a[v]) != (mu in adj_b[w]):
            return False
    return True


def rooted_isomorphic(ball_a, ball_b):
    """Backtracking search for a root-fixing isomorphism of rooted balls."""
    if ball_a.k != ball_b.k or len(ball_a.edges) != len(ball_b.edges):
        return False
    if ball_a.dist[0] != 0 or ball_b.dist[0] != 0:
        return False
    k = ball_a.k
    adj_a = adjacency(k, ball_a.edges)
    adj_b = adjacency(k, ball_b.edges)
    deg_a = [len(adj_a[v]) for v in range(k)]
    deg_b = [len(adj_b[v]) for v in range(k)]
    if sorted(ball_a.dist) != sorted(ball_b.dist):
        return False

    def search(mapping, used):
        if len(mapping) == k:
            return True
        v = len(mapping)
        for w in range(k):
            if w in used:
                continue
            if deg_a[v] != deg_b[w] or ball_a.dist[v] != ball_b.dist[w]:
                continue
            if not _extend(mapping, v, w, adj_a, adj_b):
                continue
            mapping[v] = w
            used.add(w)
            if search(mapping, used):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return search({0: 0}, {0})


def rooted_colored_isomorphic(ta, tb):
    """Root-fixing isomorphism that must also carry colors and tuples."""
    ball_a, ball_b = ta.ball, tb.ball
    if ball_a.k != ball_b.k or len(ball_a.edges) != len(ball_b.edges):
        return False
    k = ball_a.k
    adj_a = adjacency(k, ball_a.edges)
    adj_b = adjacency(k, ball_b.edges)
    col_a = dict(zip(ball_a.edges, ta.edge_colors))
    col_b = dict(zip(ball_b.edges, tb.edge_colors))

    def edge_color(col, u, v):
        return col.get((u, v) if u < v else (v, u))

    def search(mapping, used):
        if len(mapping) == k:
            return True
        v = len(mapping)
        for w in range(k):
            if w in used:
                continue
            if ball_a.dist[v] != ball_b.dist[w]:
                continue
            if ta.vertex_tuples[v] != tb.vertex_tuples[w]:
                continue
            ok = True
            for u, mu in mapping.items():
                in_a = u in adj_a[v]
                in_b = mu in adj_b[w]
                if in_a != in_b:
                    ok = False
                    break
                if in_a and edge_color(col_a, u, v) != edge_color(col_b, mu, w):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if search(mapping, used):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return search({0: 0}, {0})


def is_proper_edge_coloring(n, edges, colors):
    """No two edges sharing a vertex carry the same color; no -1 remains."""
    seen = {v: set() for v in range(n)}
    for (u, v), c in zip(edges, colors):
        if c < 0:
            return False
        if c in seen[u] or c in seen[v]:
            return False
        seen[u].add(c)
        seen[v].add(c)
    return True


def distinct_within_distance(n, edges, vert_colors, i):
    """Vertices at hop distance 1..i must receive distinct colors."""
    table = all_pairs_distances(n, edges)
    for v in range(n):
        for u, dv in table[v].items():
            if u != v and dv <= i and vert_colors[u] == vert_colors[v]:
                return False
    return True


def bfs_relabel(ball, rng, vertex_tuples=None, edge_colors=None):
    """Relabel a rooted ball by a BFS with randomized neighbor order.

    Produces another valid labeling (root 0, nondecreasing dist) of the same
    structure, which a canonical code must map to the same bytes. Color data,
    when given, is carried along consistently.
    """
    from graphlim.graphs import RootedBall

    adj = ball.adjacency()
    perm = {0: 0}
    order = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        nbrs = [w for w in adj[u] if w not in perm]
        rng.shuffle(nbrs)
        for w in nbrs:
            perm[w] = len(order)
            order.append(w)
            queue.append(w)
    new_dist = tuple(ball.dist[old] for old in order)
    colmap = dict(zip(ball.edges, edge_colors or ()))
    new_edges = []
    for u, v in ball.edges:
        a, b = perm[u], perm[v]
        key = (a, b) if a < b else (b, a)
        new_edges.append((key, colmap.get((u, v))))
    new_edges.sort(key=lambda t: t[0])
    out_ball = RootedBall(
        d=ball.d,
        radius=ball.radius,
        dist=new_dist,
        edges=tuple(e for e, _ in new_edges),
    )
    if vertex_tuples is None:
        return out_ball, None, None
    new_tuples = tuple(vertex_tuples[old] for old in order)
    new_colors = tuple(c for _, c in new_edges)
    return out_ball, new_tuples, new_colors


def write_edge_list(path, n, edges, d=None):
    header = f"{n} {len(edges)}" + (f" {d}" if d is not None else "")
    lines = [header] + [f"{u} {v}" for u, v in edges]
    Path(path).write_text("\n".join(lines) + "\n")
    return Path(path)


def relabel_graph(n, edges, perm):
    """Apply vertex permutation perm (old id -> new id) to an edge list."""
    return [(perm[u], perm[v]) for u, v in edges]
