import random

import pytest

from homdom.errors import MalformedInput, NotChordal
from homdom.graphs import (
    Graph,
    bits_of,
    clique_tree,
    complete,
    cycle,
    disjoint_union,
    expand_components,
    from_edges,
    is_chordal,
    is_series_parallel,
    mask_of,
    maximal_cliques,
    parse_graph,
    parse_graph_spec,
    path,
    serialize_graph,
    star,
)
from conftest import brute_force_chordal, brute_force_k4_minor, random_graph


def test_path_basics():
    p0 = path(0)
    assert p0.n == 1 and p0.edge_count == 0
    p1 = path(1)
    assert p1.n == 2 and p1.edges() == [(0, 1)]
    p3 = path(3)
    assert p3.n == 4 and p3.edges() == [(0, 1), (1, 2), (2, 3)]


def test_disjoint_union_counts():
    u = disjoint_union([(path(0), 2), (path(5), 3)])
    assert u.n == 20 and u.edge_count == 15
    assert u.component_spec is not None

    g = path(4)
    assert disjoint_union([(g, 1)]).adj == g.adj

    two_edges = disjoint_union([(path(1), 2)])
    assert two_edges.n == 4 and two_edges.edges() == [(0, 1), (2, 3)]


def test_expand_components_groups_equal_parts():
    u = disjoint_union([(path(0), 2), (path(3), 1), (path(0), 1)])
    comps = dict((g.n, m) for g, m in expand_components(u))
    assert comps == {1: 3, 4: 1}
    # plain graph without a spec decomposes by connectivity
    g = from_edges(5, [(0, 1), (3, 4)])
    comps = expand_components(g)
    assert sorted(m for _, m in comps) == [1, 2]


def test_maximal_cliques_examples():
    assert maximal_cliques(path(3)) == [0b0011, 0b0110, 0b1100]
    assert maximal_cliques(path(0)) == [0b1]
    assert maximal_cliques(complete(3)) == [0b111]


def test_maximal_cliques_random_invariants():
    rng = random.Random(20240811)
    for _ in range(200):
        n = rng.randint(1, 8)
        G = random_graph(n, rng)
        cliques = maximal_cliques(G)
        covered = 0
        for c in cliques:
            verts = bits_of(c)
            for i, u in enumerate(verts):
                for v in verts[i + 1 :]:
                    assert G.has_edge(u, v)
                    covered |= mask_of([u]) | mask_of([v])
        for a in cliques:
            for b in cliques:
                assert a == b or (a & b) not in (a, b)  # non-nested
        for u, v in G.edges():
            assert any((c >> u & 1) and (c >> v & 1) for c in cliques)


def test_is_chordal_examples():
    assert is_chordal(disjoint_union([(path(2), 2), (path(0), 1)]))[0]
    assert not is_chordal(cycle(4))[0]
    assert is_chordal(complete(4))[0]


def test_is_chordal_vs_brute_force_exhaustive_n5():
    from homdom.checks import labeled_graphs

    for n in range(1, 6):
        for G in labeled_graphs(n):
            assert is_chordal(G)[0] == brute_force_chordal(G)


def test_is_chordal_vs_brute_force_sampled_n7():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(4, 7)
        G = random_graph(n, rng)
        assert is_chordal(G)[0] == brute_force_chordal(G)


def test_peo_is_returned_and_valid():
    ok, elim = is_chordal(path(3))
    assert ok and sorted(elim) == [0, 1, 2, 3]


def _check_running_intersection(G, tree):
    # cliques containing any fixed vertex must form a connected subforest
    adj = {i: set() for i in range(len(tree.cliques))}
    for a, b in tree.edges:
        adj[a].add(b)
        adj[b].add(a)
    for v in range(G.n):
        holds = [i for i, c in enumerate(tree.cliques) if c >> v & 1]
        if not holds:
            continue
        seen = {holds[0]}
        frontier = [holds[0]]
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt in holds and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        assert seen == set(holds), f"vertex {v} spans a disconnected clique set"


def test_clique_tree_examples():
    t = clique_tree(path(3))
    assert t.cliques == (0b0011, 0b0110, 0b1100)
    assert sorted(t.separators) == [0b0010, 0b0100]

    t0 = clique_tree(path(0))
    assert t0.cliques == (1,) and t0.edges == ()

    u = disjoint_union([(path(0), 2), (path(3), 1)])
    tu = clique_tree(u)
    assert len(tu.cliques) == 5
    assert len(tu.edges) == 2  # forest: only inside the P3 component
    seps = sorted(tu.separators)
    assert seps == [mask_of([3]), mask_of([4])]


def test_clique_tree_rejects_nonchordal():
    with pytest.raises(NotChordal):
        clique_tree(cycle(5))


def test_clique_tree_running_intersection_random():
    rng = random.Random(99)
    found = 0
    while found < 60:
        n = rng.randint(1, 8)
        G = random_graph(n, rng)
        if not is_chordal(G)[0]:
            continue
        found += 1
        _check_running_intersection(G, clique_tree(G))


def test_is_series_parallel_examples():
    assert is_series_parallel(path(5))
    assert not is_series_parallel(complete(4))
    assert is_series_parallel(cycle(4))
    assert is_series_parallel(disjoint_union([(path(0), 3), (cycle(3), 2)]))


def test_is_series_parallel_vs_brute_force():
    rng = random.Random(46)
    for _ in range(150):
        n = rng.randint(1, 6)
        G = random_graph(n, rng)
        assert is_series_parallel(G) == (not brute_force_k4_minor(G))


def test_parse_serialize_examples():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.adj == path(2).adj
    assert parse_graph("1 0\n").n == 1
    with pytest.raises(MalformedInput):
        parse_graph("2 1\n0 0\n")  # self-loop


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n",
        "3 2\n0 1\n",  # missing edge line
        "3 1\n1 0\n",  # unordered endpoints
        "3 1\n0 3\n",  # vertex out of range
        "3 2\n0 1\n0 1\n",  # duplicate edge
        "3 1\n0 1",  # missing trailing newline
        "3 1\n0  1\n",  # double space
        "3 1\n01 2\n",  # leading zero
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(MalformedInput):
        parse_graph(text)


def test_round_trip_random():
    rng = random.Random(123)
    for _ in range(1000):
        n = rng.randint(0, 12)
        G = random_graph(n, rng)
        assert parse_graph(serialize_graph(G)) == G


def test_graph_spec_language():
    assert parse_graph_spec("path:4") == path(4)
    assert parse_graph_spec("cycle:5") == cycle(5)
    u = parse_graph_spec("union:2*path:0+3*path:5")
    assert u == disjoint_union([(path(0), 2), (path(5), 3)])
    for bad in ("", "path:", "path:x", "union:", "union:2*cycle:3", "blob"):
        with pytest.raises(MalformedInput):
            parse_graph_spec(bad)


def test_graph_validation():
    with pytest.raises(MalformedInput):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(MalformedInput):
        Graph(1, (0b1,))  # loop
    with pytest.raises(MalformedInput):
        from_edges(2, [(0, 2)])


def test_star_and_regularity_helpers():
    s = star(3)
    assert s.n == 4 and s.degree(0) == 3
    assert complete(4).is_regular()
    assert not s.is_regular()
