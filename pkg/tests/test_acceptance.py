"""Acceptance gate: twelve criteria, each at its stated tolerance and time limit.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import filecmp
import time
from fractions import Fraction

import pytest

from dsubmod.bounds import bound_report, lower_bound_clique, upper_bound_alg1, upper_bound_chromatic
from dsubmod.core import brute_force_opt
from dsubmod.experiments import ExperimentConfig, desk_config, run_correlation_experiment, run_ws_sweep
from dsubmod.graphgen import gen_bipartite_gap, gen_complete_dag, gen_ws_dag
from dsubmod.greedy import run_sequential
from dsubmod.verify import (complete_minus_edge, suite_coloring, suite_clique_bound, suite_prefix,
                            suite_adversarial, suite_reduction, suite_synchronous, suite_telescoping,
                            suite_half_bound, suite_cliques, half_bound_instances)

# master seed for the desk-scale correlation run; frozen before looking at results
DESK_SEED = 0


def _clean(result):
    assert result.checked > 0
    assert result.violations == [], result.violations[:5]


@pytest.mark.acceptance(1, "gap family: greedy colouring bound = 1/2 + 1/(2m), chromatic = 2/(2m)")
def test_criterion_01_gap_family():
    start = time.perf_counter()
    for m in range(1, 9):
        g = gen_bipartite_gap(m)
        assert upper_bound_alg1(g) == Fraction(1, 2) + Fraction(1, 2 * m)
        assert upper_bound_chromatic(g) == Fraction(2, 2 * m)
    assert upper_bound_alg1(gen_bipartite_gap(4)) == Fraction(5, 8)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "complete DAG: greedy >= optimum / 2 on 200 instances")
def test_criterion_02_half_bound():
    instances = half_bound_instances(200)
    assert len(instances) == 200
    assert all(i.n_agents <= 6 and max(map(len, i.strategy_sets)) <= 3 for i in instances)
    for inst in instances[:20]:
        sol = run_sequential(inst, gen_complete_dag(inst.n_agents))
        assert isinstance(sol.value, int) and isinstance(brute_force_opt(inst)[1], int)
    res = suite_half_bound(200)
    assert res.checked == 200
    _clean(res)
    assert res.elapsed < 30.0


@pytest.mark.acceptance(3, "prefix inequality for every k on the same 200 instances")
def test_criterion_03_prefix():
    res = suite_prefix(200)
    assert res.checked == sum(i.n_agents for i in half_bound_instances(200))
    _clean(res)


@pytest.mark.acceptance(4, "clique lower bound on 100 ER-DAGs, n = 8")
def test_criterion_04_clique_bound():
    assert lower_bound_clique(complete_minus_edge(8)) == Fraction(1, 3)
    res = suite_clique_bound(100, n=8, probabilities=(0.2, 0.5, 0.8))
    assert res.checked == 110
    _clean(res)


@pytest.mark.acceptance(5, "interconnected cliques: 2k f(x) >= f(x*) + sum f(x*_m)")
def test_criterion_05_cliques():
    res = suite_cliques(20)
    # (3 + 9 + 27) block vectors, 20 instances, linked and unlinked
    assert res.checked == 39 * 20 * 2
    _clean(res)


@pytest.mark.acceptance(6, "adversarial instance realises value chi with optimum n")
def test_criterion_06_adversarial():
    res = suite_adversarial(20, max_n=10)
    assert res.checked == 20
    _clean(res)


@pytest.mark.acceptance(7, "synchronous updates after n rounds = sequential greedy")
def test_criterion_07_synchronous():
    res = suite_synchronous(50)
    assert res.checked == 50
    _clean(res)


@pytest.mark.acceptance(8, "greedy value unchanged by the disjoint reduction")
def test_criterion_08_reduction():
    res = suite_reduction(50)
    assert res.checked == 50
    _clean(res)


@pytest.mark.acceptance(9, "omega <= chi <= greedy colours, certificates, degree conditions")
def test_criterion_09_coloring():
    res = suite_coloring(100, max_n=20)
    assert res.checked == 100
    _clean(res)


@pytest.mark.acceptance(10, "desk-scale correlation: rho >= 0.7, byte-identical rerun, < 60 s")
def test_criterion_10_correlation(tmp_path):
    config = desk_config(master_seed=DESK_SEED)
    assert (config.agents, config.disks_per_agent, config.disk_radius,
            config.grid_resolution, config.n_graphs) == (20, 3, 0.1, 100, 50)
    start = time.perf_counter()
    first = run_correlation_experiment(config)
    assert time.perf_counter() - start < 60.0
    start = time.perf_counter()
    second = run_correlation_experiment(config)
    assert time.perf_counter() - start < 60.0
    a = first.write(tmp_path / "a")
    b = second.write(tmp_path / "b")
    for pa, pb in zip(a, b):
        assert filecmp.cmp(pa, pb, shallow=False)
    rho = first.summary[0]["spearman_rho"]
    print(f"desk-scale spearman rho = {rho:.4f}")
    assert rho >= 0.7


@pytest.mark.acceptance(11, "small world n=25: K=12 gives (1/2, 1, 1), ratio below K=11")
def test_criterion_11_ws_endpoint():
    for seed in range(5):
        rep = bound_report(gen_ws_dag(25, 12, 0.25, seed))
        assert rep.lower_clique == Fraction(1, 2)
        assert rep.upper_chromatic == 1 and rep.upper_alg1 == 1
    res = run_ws_sweep(ExperimentConfig(experiment="ws-sweep", sweep=(11, 12)))
    k11, k12 = res.summary
    assert (k11["K"], k12["K"]) == (11, 12)
    assert k12["lower_clique_mean"] == 0.5
    assert k12["upper_chi_mean"] == 1.0 and k12["upper_alg1_mean"] == 1.0
    assert k11["complete_trials"] == k12["complete_trials"] == 20
    assert k12["ratio_chi_mean"] < k11["ratio_chi_mean"]
    assert k12["ratio_alg1_mean"] < k11["ratio_alg1_mean"]


@pytest.mark.acceptance(12, "telescoping sum = value on 100 (oracle, ordering) pairs")
def test_criterion_12_telescoping():
    res = suite_telescoping(100, tol=1e-12)
    assert res.checked == 100
    _clean(res)
