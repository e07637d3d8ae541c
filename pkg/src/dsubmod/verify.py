"""Randomised invariant suites that check the proved inequalities against brute force.

Every suite is seeded and returns a :class:`SuiteResult` listing each
violation it found. They back the ``verify`` CLI command and the acceptance
tests.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .bounds import (check_prop2, lower_bound_clique, interconnected_sides, upper_bound_alg1,
                     upper_bound_chromatic)
from .core import Instance, SubmodularOracle, brute_force_opt, evaluate, leq, telescoping_value
from .dag import BoundCertificate, InfoDag, chromatic_number, clique_number, greedy_topological_coloring
from .errors import InvalidInputError
from .graphgen import (gen_ba_dag, gen_bipartite_gap, gen_complete_dag, gen_er_dag,
                       gen_interconnected_cliques, gen_ws_dag)
from .greedy import TieBreak, approximation_ratio, prefer, run_sequential, run_synchronous
from .objectives import (CoverageGrid, make_adversarial, make_coverage, make_universal,
                         random_disks, random_weighted_coverage, reduce_to_disjoint)
from .rng import make_rng


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.violations

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; first: {self.violations[0]}" if self.violations else ""
        return (f"[{status}] {self.name}: {self.checked} checks, "
                f"{len(self.violations)} violations, {self.elapsed:.2f}s{extra}")


def _timed(fn: Callable[..., SuiteResult]) -> Callable[..., SuiteResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def random_instance(rng: random.Random, n_agents: int, max_strategies: int = 3) -> Instance:
    return random_weighted_coverage(rng, n_agents, max_strategies=max_strategies,
                                    universe=10, max_weight=5, density=0.3)


def half_bound_instances(count: int = 200, seed: int = 1, max_agents: int = 6) -> list[Instance]:
    out = []
    for idx in range(count):
        rng = make_rng(seed, "half-bound", idx)
        out.append(random_instance(rng, rng.randint(1, max_agents)))
    return out


def random_intersecting_instance(rng: random.Random, n_agents: int) -> Instance:
    """Shared ground ``e1..em`` with overlapping strategy sets.

    Half the time the objective counts distinct elements; otherwise it is a
    weighted coverage defined on the shared elements.
    """
    m = rng.randint(n_agents, n_agents + 3)
    ground = [f"e{j}" for j in range(1, m + 1)]
    sets = [rng.sample(ground, rng.randint(1, min(3, m))) for _ in range(n_agents)]
    if rng.random() < 0.5:
        oracle = SubmodularOracle(ground, len, name="distinct")
    else:
        weights = [rng.randint(1, 5) for _ in range(8)]
        masks = {e: sum(1 << j for j in range(8) if rng.random() < 0.35) for e in ground}

        def fn(s):
            covered = 0
            for e in s:
                covered |= masks[e]
            return sum(w for j, w in enumerate(weights) if covered >> j & 1)

        oracle = SubmodularOracle(ground, fn, name="shared-coverage")
    return Instance(oracle, tuple(sets))


def _float_oracle(rng: random.Random, size: int) -> SubmodularOracle:
    """Concave-of-modular objective with float values."""
    ground = [f"x{j}" for j in range(size)]
    w = {e: rng.uniform(0.1, 2.0) for e in ground}
    return SubmodularOracle(ground, lambda s: math.sqrt(sum(w[e] for e in s)), name="sqrt-modular")


@_timed
def suite_telescoping(trials: int = 100, seed: int = 12, tol: float = 1e-12) -> SuiteResult:
    """Sum of marginals along any ordering equals the value of the set."""
    res = SuiteResult("telescoping identity")
    for idx in range(trials):
        rng = make_rng(seed, "telescoping", idx)
        kind = idx % 5
        if kind == 0:
            oracle = random_instance(rng, rng.randint(2, 6)).oracle
        elif kind == 1:
            oracle = make_coverage(random_disks(rng, 4, 2, 0.2), CoverageGrid(40)).oracle
        elif kind == 2:
            g = gen_er_dag(rng.randint(2, 7), rng.random(), rng.getrandbits(32))
            oracle = make_adversarial(g, chromatic_number(g)[1]).oracle
        elif kind == 3:
            oracle = make_universal(rng.randint(1, 4), rng.randint(4, 8)).oracle
        else:
            oracle = _float_oracle(rng, rng.randint(2, 8))
        elems = list(oracle.ground)
        seq = [rng.choice(elems) for _ in range(rng.randint(0, len(elems) + 2))]
        a, b = telescoping_value(oracle, seq), evaluate(oracle, seq)
        res.checked += 1
        if not abs(a - b) <= tol:
            res.violations.append(f"trial {idx} ({oracle.name}): sum {a} != value {b}")
    return res


@_timed
def suite_half_bound(trials: int = 200, seed: int = 1) -> SuiteResult:
    """Complete DAG: greedy >= optimum / 2."""
    res = SuiteResult("complete-DAG half bound")
    for idx, inst in enumerate(half_bound_instances(trials, seed)):
        sol = run_sequential(inst, gen_complete_dag(inst.n_agents))
        _, opt = brute_force_opt(inst)
        res.checked += 1
        if not 2 * sol.value >= opt:
            res.violations.append(f"instance {idx}: 2*{sol.value} < {opt}")
    return res


@_timed
def suite_prefix(trials: int = 200, seed: int = 1) -> SuiteResult:
    """Complete DAG prefix inequality f(x_1..x_k) >= f(x*_1..x*_k) - f(x_1..x_{k-1})."""
    res = SuiteResult("prefix inequality")
    for idx, inst in enumerate(half_bound_instances(trials, seed)):
        sol = run_sequential(inst, gen_complete_dag(inst.n_agents))
        opt, _ = brute_force_opt(inst)
        f = inst.oracle.value
        for k in range(1, inst.n_agents + 1):
            lhs = f(sol.assignment[:k])
            rhs = f(opt[:k]) - f(sol.assignment[:k - 1])
            res.checked += 1
            if not lhs >= rhs:
                res.violations.append(f"instance {idx}, k={k}: {lhs} < {rhs}")
    return res


def complete_minus_edge(n: int) -> InfoDag:
    return InfoDag(n, sorted(gen_complete_dag(n).edges - {(0, n - 1)}))


@_timed
def suite_clique_bound(graphs: int = 100, seed: int = 4, n: int = 8,
                     probabilities=(0.2, 0.5, 0.8)) -> SuiteResult:
    """Any DAG: greedy / optimum >= 1 / (n - ω + 2)."""
    res = SuiteResult("clique lower bound")
    cases = []
    for idx in range(graphs):
        p = probabilities[idx % len(probabilities)]
        cases.append((f"er p={p} #{idx}", gen_er_dag(n, p, make_rng(seed, "clique-bound-graph", idx).getrandbits(64))))
    special = complete_minus_edge(n)
    if lower_bound_clique(special) != Fraction(1, 3):
        res.violations.append(f"complete minus one edge: bound {lower_bound_clique(special)} != 1/3")
    cases += [(f"complete-minus-edge #{j}", special) for j in range(10)]
    for idx, (label, g) in enumerate(cases):
        rng = make_rng(seed, "clique-bound-instance", idx)
        inst = random_instance(rng, n)
        sol = run_sequential(inst, g)
        ratio = approximation_ratio(sol, inst)
        bound = lower_bound_clique(g)
        res.checked += 1
        if not ratio >= bound:
            res.violations.append(f"{label}: ratio {ratio} < {bound}")
    return res


def block_vectors(max_blocks: int = 3, max_size: int = 3):
    for kappa in range(1, max_blocks + 1):
        yield from itertools.product(range(1, max_size + 1), repeat=kappa)


@_timed
def suite_cliques(per_vector: int = 20, seed: int = 5) -> SuiteResult:
    """Interconnected cliques: 2κ f(x) >= f(x*) + Σ f(x*_{m_i}); without links 2κ f(x) >= f(x*)."""
    res = SuiteResult("interconnected cliques")
    for sizes in block_vectors():
        _, part = gen_interconnected_cliques(sizes)
        for j in range(per_vector):
            rng = make_rng(seed, "cliques", sizes, j)
            inst = random_instance(rng, part.n)
            for linked in (True, False):
                lhs, rhs = interconnected_sides(inst, part, linked=linked)
                res.checked += 1
                if not leq(rhs, lhs):
                    res.violations.append(f"blocks {sizes} #{j} linked={linked}: {lhs} < {rhs}")
    return res


def _prefers_a(x) -> bool:
    return x[0] == "a"


@_timed
def suite_adversarial(graphs: int = 20, seed: int = 6, max_n: int = 10) -> SuiteResult:
    """Adversarial instance from an optimal colouring: greedy can end at χ, optimum is n."""
    res = SuiteResult("chromatic upper bound realised")
    for idx in range(graphs):
        rng = make_rng(seed, "adversarial", idx)
        n = rng.randint(2, max_n)
        g = gen_er_dag(n, rng.random(), rng.getrandbits(64))
        chi, coloring = chromatic_number(g)
        inst = make_adversarial(g, coloring)
        sol = run_sequential(inst, g, prefer(_prefers_a))
        _, opt = brute_force_opt(inst)
        res.checked += 1
        if sol.value != chi or opt != n or approximation_ratio(sol, inst, opt) != upper_bound_chromatic(g):
            res.violations.append(f"graph {idx}: greedy {sol.value} (chi {chi}), optimum {opt} (n {n})")
    return res


@_timed
def suite_synchronous(pairs: int = 50, seed: int = 7, max_n: int = 7) -> SuiteResult:
    """Synchronous updates after n rounds reproduce the sequential assignment."""
    res = SuiteResult("synchronous = sequential")
    for idx in range(pairs):
        rng = make_rng(seed, "synchronous", idx)
        n = rng.randint(1, max_n)
        g = gen_er_dag(n, rng.random(), rng.getrandbits(64))
        inst = random_instance(rng, n)
        seq = run_sequential(inst, g, TieBreak.lowest())
        rounds = run_synchronous(inst, g, TieBreak.lowest(), rounds=n)
        res.checked += 1
        if rounds[-1].assignment != seq.assignment:
            res.violations.append(f"pair {idx}: {rounds[-1].assignment} != {seq.assignment}")
            continue
        depth = g.depths()
        for t, sol in enumerate(rounds, 1):
            for v in range(n):
                if depth[v] <= t and sol.assignment[v] != seq.assignment[v]:
                    res.violations.append(f"pair {idx}: agent {v} (depth {depth[v]}) not fixed at round {t}")
    return res


@_timed
def suite_reduction(instances: int = 50, seed: int = 8, max_n: int = 6) -> SuiteResult:
    """Greedy on an intersecting instance and on its disjoint copy agree."""
    res = SuiteResult("disjoint reduction")
    for idx in range(instances):
        rng = make_rng(seed, "reduction", idx)
        n = rng.randint(1, max_n)
        inst = random_intersecting_instance(rng, n)
        g = gen_er_dag(n, rng.random(), rng.getrandbits(64))
        red = reduce_to_disjoint(inst)
        a = run_sequential(inst, g)
        b = run_sequential(red.reduced_instance, g)
        res.checked += 1
        lifted = tuple(red.back_map[x] for x in b.assignment)
        if a.value != b.value or lifted != a.assignment:
            res.violations.append(f"instance {idx}: {a.value} vs reduced {b.value}")
        elif brute_force_opt(inst)[1] != brute_force_opt(red.reduced_instance)[1]:
            res.violations.append(f"instance {idx}: optimum changed under reduction")
    return res


def _random_graph(rng: random.Random, max_n: int):
    n = rng.randint(1, max_n)
    family = rng.choice(["er", "er", "ba", "ws", "cliques"])
    if family == "ba" and n >= 5:
        return gen_ba_dag(n, rng.getrandbits(64))
    if family == "ws" and n >= 3:
        return gen_ws_dag(n, rng.randint(1, (n - 1) // 2), rng.random(), rng.getrandbits(64))
    if family == "cliques":
        sizes, left = [], n
        while left:
            b = rng.randint(1, left)
            sizes.append(b)
            left -= b
        return gen_interconnected_cliques(sizes)[0]
    return gen_er_dag(n, rng.random(), rng.getrandbits(64))


@_timed
def suite_coloring(graphs: int = 100, seed: int = 9, max_n: int = 20) -> SuiteResult:
    """ω <= χ <= greedy colours <= n, certificates verify, degree conditions hold."""
    res = SuiteResult("colouring and clique sanity")
    for idx in range(graphs):
        g = _random_graph(make_rng(seed, "coloring", idx), max_n)
        omega, clique = clique_number(g)
        chi, coloring = chromatic_number(g)
        greedy, k = greedy_topological_coloring(g)
        res.checked += 1
        problems = []
        if not omega <= chi <= k <= g.n:
            problems.append(f"order broken: ω={omega} χ={chi} greedy={k} n={g.n}")
        if len(clique.witness) != omega or not clique.verify(g):
            problems.append("clique witness invalid")
        if coloring.num_colors != chi or not BoundCertificate("coloring", coloring).verify(g):
            problems.append("optimal colouring invalid")
        if not BoundCertificate("greedy-coloring", greedy).verify(g):
            problems.append("greedy colouring invalid")
        kk = g.n * upper_bound_alg1(g)
        if kk.denominator != 1 or not check_prop2(g, int(kk)).all:
            problems.append(f"degree conditions fail for k={kk}")
        res.violations += [f"graph {idx}: {p}" for p in problems]
    return res


@_timed
def suite_gap(max_m: int = 8) -> SuiteResult:
    """Bipartite gap family: the greedy colouring gives 1/2 + 1/(2m), the chromatic bound 2/(2m)."""
    res = SuiteResult("bipartite gap family")
    for m in range(1, max_m + 1):
        g = gen_bipartite_gap(m)
        alg1, chi = upper_bound_alg1(g), upper_bound_chromatic(g)
        res.checked += 1
        if alg1 != Fraction(1, 2) + Fraction(1, 2 * m) or chi != Fraction(2, 2 * m):
            res.violations.append(f"m={m}: alg1 {alg1}, chromatic {chi}")
    return res


@_timed
def suite_universal(graphs: int = 50, seed: int = 10, max_n: int = 8) -> SuiteResult:
    """Greedy on the distinct-elements objective realises exactly the greedy colouring bound."""
    res = SuiteResult("universal function = greedy colouring bound")
    for idx in range(graphs):
        g = _random_graph(make_rng(seed, "universal", idx), max_n)
        inst = make_universal(g.n, g.n)
        ratio = approximation_ratio(run_sequential(inst, g), inst, optimum=g.n)
        res.checked += 1
        if ratio != upper_bound_alg1(g) or not upper_bound_chromatic(g) <= ratio:
            res.violations.append(f"graph {idx}: ratio {ratio} vs alg1 {upper_bound_alg1(g)}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "telescoping": suite_telescoping,
    "half-bound": suite_half_bound,
    "prefix": suite_prefix,
    "clique-bound": suite_clique_bound,
    "cliques": suite_cliques,
    "adversarial": suite_adversarial,
    "synchronous": suite_synchronous,
    "reduction": suite_reduction,
    "coloring": suite_coloring,
    "gap": suite_gap,
    "universal": suite_universal,
}


def run_suites(names=None) -> list[SuiteResult]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise InvalidInputError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    return [SUITES[n]() for n in names]
