from collections import Counter
from fractions import Fraction

import pytest

from dsubmod.bounds import lower_bound_clique
from dsubmod.dag import (BoundCertificate, Coloring, InfoDag, chromatic_number, clique_number,
                         format_graph, greedy_topological_coloring, in_neighbors, max_clique,
                         new_dag, parse_graph, read_graph, write_graph)
from dsubmod.errors import InvalidGraphError, InvalidInputError, SizeGuardError
from dsubmod.graphgen import (gap_vertices, gen_bipartite_gap, gen_complete_dag, gen_empty,
                              gen_er_dag)


def test_complete_dag_order_and_neighbours():
    g = gen_complete_dag(4)
    assert g.topo_order == (0, 1, 2, 3)
    assert in_neighbors(g, 3) == (0, 1, 2)
    assert g.out_neighbors(0) == (1, 2, 3)
    assert g.depths() == (0, 1, 2, 3)


def test_lexicographically_smallest_order():
    g = new_dag(4, [(3, 0), (2, 1)])
    assert g.topo_order == (2, 1, 3, 0)


def test_invalid_graphs():
    with pytest.raises(InvalidGraphError):
        InfoDag(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(InvalidGraphError):
        InfoDag(2, [(1, 1)])
    with pytest.raises(InvalidGraphError):
        InfoDag(2, [(0, 1), (0, 1)])
    with pytest.raises(InvalidInputError):
        InfoDag(2, [(0, 2)])
    with pytest.raises(InvalidInputError):
        InfoDag(0)
    with pytest.raises(InvalidGraphError):
        InfoDag(2, [(0, 1)], order=[1, 0])


def test_gap_in_neighbours():
    m = 4
    g = gen_bipartite_gap(m)
    u, w = gap_vertices(m)
    assert set(g.in_neighbors(w[3])) == set(u)
    assert set(g.in_neighbors(u[2])) == {w[0], w[1]}
    assert g.in_neighbors(u[0]) == ()


def test_clique_examples():
    assert clique_number(gen_empty(5))[0] == 1
    assert clique_number(gen_complete_dag(6))[0] == 6
    g = InfoDag(4, [(0, 1), (1, 2), (2, 3)])
    assert clique_number(g)[0] == 2


def test_complete_five_plus_isolated():
    g = InfoDag(8, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    omega, cert = clique_number(g)
    assert omega == 5 and cert.verify(g)
    # 1/(8 - 5 + 2); the published example only claims the weaker "> 1/6"
    assert lower_bound_clique(g) == Fraction(1, 5)
    assert lower_bound_clique(g) > Fraction(1, 6)


def test_complete_minus_edge():
    n = 6
    g = InfoDag(n, sorted(gen_complete_dag(n).edges - {(0, n - 1)}))
    assert clique_number(g)[0] == n - 1
    assert chromatic_number(g)[0] == n - 1


def test_chromatic_examples():
    assert chromatic_number(gen_empty(4))[0] == 1
    assert chromatic_number(gen_complete_dag(5))[0] == 5
    odd_cycle = InfoDag(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    chi, col = chromatic_number(odd_cycle)
    assert chi == 3 and col.is_proper(odd_cycle)
    assert chromatic_number(gen_bipartite_gap(5))[0] == 2


def test_mycielski_graph_needs_four_colours():
    # Grötzsch graph: triangle-free, chromatic number 4
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
             (0, 6), (0, 9), (1, 5), (1, 7), (2, 6), (2, 8), (3, 7), (3, 9), (4, 5), (4, 8),
             (5, 10), (6, 10), (7, 10), (8, 10), (9, 10)]
    g = InfoDag(11, edges)
    assert clique_number(g)[0] == 2
    assert chromatic_number(g)[0] == 4


def test_solver_guards():
    with pytest.raises(SizeGuardError):
        clique_number(gen_empty(5), guard=4)
    with pytest.raises(SizeGuardError):
        chromatic_number(gen_empty(5), guard=4)


def test_max_clique_raw_masks():
    adj = [0b0110, 0b0101, 0b0011, 0b0000]
    assert sorted(max_clique(adj)) == [0, 1, 2]


def test_greedy_topological_coloring_examples():
    col, k = greedy_topological_coloring(gen_empty(3))
    assert col.colors == (1, 1, 1) and k == 1
    col, k = greedy_topological_coloring(gen_complete_dag(4))
    assert col.colors == (1, 2, 3, 4) and k == 4
    m = 4
    col, k = greedy_topological_coloring(gen_bipartite_gap(m))
    u, w = gap_vertices(m)
    assert [col[v] for v in u] == [1, 2, 3, 4]
    assert [col[v] for v in w] == [1, 2, 3, 5]
    assert k == m + 1


def test_greedy_coloring_is_linear():
    g = gen_er_dag(500, 0.8, 11)
    assert g.n_edges > 90_000
    counter = Counter()
    col, _ = greedy_topological_coloring(g, counter)
    assert col.is_proper(g)
    assert counter["edge_visits"] == g.n_edges
    assert counter["edge_visits"] + counter["scan_steps"] <= 2 * (g.n + g.n_edges)


def test_certificates():
    g = InfoDag(3, [(0, 1)])
    assert BoundCertificate("clique", (0, 1)).verify(g)
    assert not BoundCertificate("clique", (0, 2)).verify(g)
    assert not BoundCertificate("coloring", Coloring((1, 1, 1))).verify(g)
    with pytest.raises(InvalidInputError):
        BoundCertificate("nope", None).verify(g)
    with pytest.raises(InvalidInputError):
        Coloring((0, 1))


def test_graph_file_round_trip(tmp_path):
    g = gen_er_dag(12, 0.4, 5)
    path = tmp_path / "g.txt"
    write_graph(g, path)
    assert read_graph(path) == g
    assert parse_graph("# header\n3\n0 1  # edge\n\n1 2\n") == InfoDag(3, [(0, 1), (1, 2)])
    assert format_graph(InfoDag(2, [(0, 1)])) == "2\n0 1\n"


@pytest.mark.parametrize("text", ["", "x\n", "3\n0 1 2\n", "2 3\n"])
def test_parse_graph_malformed(text):
    with pytest.raises(InvalidInputError):
        parse_graph(text)


def test_writer_follows_topological_order():
    g = InfoDag(3, [(2, 0), (2, 1), (0, 1)])
    assert format_graph(g) == "3\n2 0\n2 1\n0 1\n"
