import numpy as np
import pytest

from graphlim.errors import ParseError, ValidationError
from graphlim.generators import cycle, path, random_regular, torus_grid
from graphlim.graphs import Graph, extract_ball, load_graph, power_graph

from helpers import all_pairs_distances, ball_vertex_set, write_edge_list


def test_load_path_graph_without_declared_bound(tmp_path):
    p = write_edge_list(tmp_path / "p3.el", 3, [(0, 1), (1, 2)])
    g = load_graph(p)
    assert g.n == 3
    assert g.m == 2
    assert g.d == 2  # defaults to the maximum observed degree


def test_load_honors_declared_bound_and_comments(tmp_path):
    text = "# a triangle\n3 3 3\n0 1\n1 2   # last edge below\n\n0 2\n"
    p = tmp_path / "tri.el"
    p.write_text(text)
    g = load_graph(p)
    assert g.n == 3
    assert g.m == 3
    assert g.d == 3


def test_load_rejects_degree_bound_violation(tmp_path):
    p = write_edge_list(tmp_path / "p3.el", 3, [(0, 1), (1, 2)], d=1)
    with pytest.raises(ValidationError):
        load_graph(p)


def test_load_rejects_self_loop_and_duplicate(tmp_path):
    p = write_edge_list(tmp_path / "loop.el", 2, [(1, 1)])
    with pytest.raises(ValidationError):
        load_graph(p)
    p2 = write_edge_list(tmp_path / "dup.el", 2, [(0, 1), (1, 0)])
    with pytest.raises(ValidationError):
        load_graph(p2)


def test_load_rejects_malformed_files(tmp_path):
    cases = [
        "not a header\n",
        "3 2\n0 1\n",  # declared two edges, gave one
        "3 1\n0 1\n1 2\n",  # declared one edge, gave two
        "3 1\n0 x\n",
        "2 1 2 9\n0 1\n",
        "",
    ]
    for i, text in enumerate(cases):
        p = tmp_path / f"bad{i}.el"
        p.write_text(text)
        with pytest.raises(ParseError):
            load_graph(p)
    with pytest.raises(ParseError):
        load_graph(tmp_path / "missing.el")


def test_load_rejects_out_of_range_vertex(tmp_path):
    p = write_edge_list(tmp_path / "oob.el", 2, [(0, 5)])
    with pytest.raises(ValidationError):
        load_graph(p)


def test_disconnected_rejected_unless_allowed(tmp_path):
    p = write_edge_list(tmp_path / "two.el", 4, [(0, 1), (2, 3)])
    with pytest.raises(ValidationError):
        load_graph(p)
    g = load_graph(p, allow_disconnected=True)
    assert g.n == 4


def test_edgeless_graph_gets_positive_bound():
    g = Graph.from_edges(1, [])
    assert g.d == 1
    assert g.m == 0


def test_edge_list_is_sorted_and_roundtrips():
    g = Graph.from_edges(4, [(2, 3), (1, 0), (3, 1)], d=3)
    el = g.edge_list()
    assert el.tolist() == [[0, 1], [1, 3], [2, 3]]
    g2 = Graph.from_edges(g.n, [tuple(e) for e in el], d=g.d)
    assert np.array_equal(g2.edge_list(), el)


def test_degrees_consistent_with_edges():
    g = torus_grid(4, 5)
    assert g.d == 4
    assert all(int(g.degree(v)) == 4 for v in range(g.n))


def test_extract_ball_cycle_radius_one():
    g = cycle(10)
    b = extract_ball(g, 0, 1)
    assert b.k == 3
    assert b.dist == (0, 1, 1)
    assert b.edges == ((0, 1), (0, 2))
    assert b.verts == (0, 1, 9)  # BFS order with ascending-id ties


def test_extract_ball_radius_zero():
    g = path(7)
    b = extract_ball(g, 3, 0)
    assert b.k == 1
    assert b.dist == (0,)
    assert b.edges == ()


def test_extract_ball_path_endpoint():
    g = path(10)
    b = extract_ball(g, 0, 2)
    assert b.dist == (0, 1, 2)
    assert b.edges == ((0, 1), (1, 2))


def test_extract_ball_is_deterministic():
    g = random_regular(40, 3, seed=5)
    assert extract_ball(g, 7, 2) == extract_ball(g, 7, 2)


@pytest.mark.parametrize(
    "g",
    [cycle(17), path(23), torus_grid(4, 5), random_regular(30, 3, seed=1)],
    ids=["c17", "p23", "torus45", "rand3reg"],
)
def test_extract_ball_matches_bfs_oracle(g):
    edges = [tuple(e) for e in g.edge_list()]
    table = all_pairs_distances(g.n, edges)
    for v in range(0, g.n, 3):
        for r in range(4):
            b = extract_ball(g, v, r)
            want = ball_vertex_set(g.n, edges, v, r)
            assert set(b.verts) == want
            for local, glob in enumerate(b.verts):
                assert b.dist[local] == table[v][glob]
            induced = {
                (min(x, y), max(x, y))
                for x, y in edges
                if x in want and y in want
            }
            back = {
                (min(b.verts[x], b.verts[y]), max(b.verts[x], b.verts[y]))
                for x, y in b.edges
            }
            assert back == induced


def test_extract_ball_validates_arguments():
    g = cycle(5)
    with pytest.raises(ValidationError):
        extract_ball(g, 5, 1)
    with pytest.raises(ValidationError):
        extract_ball(g, 0, -1)


def test_power_graph_cycle_squared_is_complete():
    g = cycle(5)
    g2 = power_graph(g, 2)
    assert g2.m == 10  # K_5
    assert g2.d >= 4


def test_power_graph_path():
    g = path(4)
    g2 = power_graph(g, 2)
    got = {tuple(e) for e in g2.edge_list()}
    assert got == {(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)}


def test_power_graph_i1_is_identity_on_edges():
    g = torus_grid(3, 4)
    g1 = power_graph(g, 1)
    assert np.array_equal(g1.edge_list(), g.edge_list())


@pytest.mark.parametrize("i", [2, 3])
def test_power_graph_matches_distance_oracle(i):
    g = random_regular(24, 3, seed=3)
    edges = [tuple(e) for e in g.edge_list()]
    table = all_pairs_distances(g.n, edges)
    want = {
        (u, v)
        for u in range(g.n)
        for v, dv in table[u].items()
        if u < v and dv <= i
    }
    got = {tuple(e) for e in power_graph(g, i).edge_list()}
    assert got == want


def test_generators_shapes():
    assert cycle(8).m == 8
    assert path(9).m == 8
    t = torus_grid(3, 3)
    assert t.n == 9 and t.m == 18
    g = random_regular(20, 3, seed=0)
    assert all(int(g.degree(v)) == 3 for v in range(g.n))


def test_random_regular_is_seed_deterministic():
    a = random_regular(26, 3, seed=11)
    b = random_regular(26, 3, seed=11)
    assert np.array_equal(a.edge_list(), b.edge_list())
    c = random_regular(26, 3, seed=12)
    assert not np.array_equal(a.edge_list(), c.edge_list())


def test_generator_argument_validation():
    with pytest.raises(ValidationError):
        cycle(2)
    with pytest.raises(ValidationError):
        path(0)
    with pytest.raises(ValidationError):
        torus_grid(2, 5)
    with pytest.raises(ValidationError):
        random_regular(5, 3, seed=0)  # odd n * degree
