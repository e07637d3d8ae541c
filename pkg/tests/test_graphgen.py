import pytest

from dsubmod.dag import greedy_topological_coloring
from dsubmod.errors import InvalidInputError
from dsubmod.graphgen import (gen_ba_dag, gen_bipartite_gap, gen_disconnected_cliques,
                              gen_er_dag, gen_interconnected_cliques, gen_ws_dag, ring_lattice)
from dsubmod.rng import derive_seed, make_rng


def test_seed_derivation_is_stable():
    assert derive_seed(0, "a", 1) == derive_seed(0, "a", 1)
    assert derive_seed(0, "a", 1) != derive_seed(0, "a", 2)
    assert make_rng(5, "x").random() == make_rng(5, "x").random()


def test_er_extremes():
    assert gen_er_dag(6, 0.0, 1).n_edges == 0
    g = gen_er_dag(6, 1.0, 1)
    assert g.n_edges == 15 and g.is_complete()


def test_er_deterministic_and_seed_sensitive():
    assert gen_er_dag(15, 0.5, 3) == gen_er_dag(15, 0.5, 3)
    assert gen_er_dag(15, 0.5, 3).topo_order == gen_er_dag(15, 0.5, 3).topo_order
    assert gen_er_dag(15, 0.5, 3) != gen_er_dag(15, 0.5, 4)


@pytest.mark.parametrize("args", [(5, -0.1), (5, 1.5), (0, 0.5)])
def test_er_invalid(args):
    with pytest.raises(InvalidInputError):
        gen_er_dag(*args, seed=0)


def test_ba_small_sizes():
    assert gen_ba_dag(5, 0).is_complete()
    # the sixth vertex must attach to all five core vertices
    assert gen_ba_dag(6, 0).is_complete()
    g = gen_ba_dag(12, 0)
    assert g.n_edges == 10 + 5 * 7
    assert g == gen_ba_dag(12, 0)
    with pytest.raises(InvalidInputError):
        gen_ba_dag(4, 0)


def test_ws_full_lattice_is_complete():
    g = gen_ws_dag(25, 12, 0.25, 0)
    assert g.is_complete()


def test_ws_ring_without_rewiring():
    g = gen_ws_dag(25, 1, 0.0, 0)
    pairs = {frozenset(e) for e in g.edges}
    assert pairs == {frozenset(e) for e in ring_lattice(25, 1)}
    assert greedy_topological_coloring(g)[1] <= 3


@pytest.mark.parametrize("k", [1, 3, 6])
def test_ws_keeps_edge_count(k):
    assert gen_ws_dag(20, k, 0.5, 7).n_edges == 20 * k


def test_ws_invalid():
    with pytest.raises(InvalidInputError):
        gen_ws_dag(25, 13, 0.2, 0)
    with pytest.raises(InvalidInputError):
        gen_ws_dag(25, 2, 1.2, 0)


def test_interconnected_cliques_edges():
    g, part = gen_interconnected_cliques([2, 2])
    assert g.sorted_edges() == [(0, 1), (1, 2), (1, 3), (2, 3)]
    assert part.kappa == 2
    assert gen_disconnected_cliques([2, 2]).sorted_edges() == [(0, 1), (2, 3)]


@pytest.mark.parametrize("m", range(1, 9))
def test_gap_edge_count(m):
    g = gen_bipartite_gap(m)
    assert g.n == 2 * m
    assert g.n_edges == m * (m - 1) + 1


def test_gap_invalid():
    with pytest.raises(InvalidInputError):
        gen_bipartite_gap(0)
