"""Sequential and synchronous local greedy over an information DAG."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Callable, Sequence

from .core import Assignment, Instance, brute_force_opt, close, tolerance
from .dag import InfoDag
from .errors import InvalidInputError
from .rng import make_rng

Chooser = Callable[[int, tuple], object]


@dataclass(frozen=True)
class TieBreak:
    """How an agent picks among equally good strategies.

    ``argmax`` sets are always passed sorted by ground index. The seeded policy
    draws from a stream keyed by ``(seed, agent)``, so the pick does not depend
    on the order in which agents are processed.
    """

    policy: str = "lowest-index"
    seed: int = 0
    chooser: Chooser | None = None

    POLICIES = ("lowest-index", "highest-index", "seeded-random", "adversarial-oracle")

    def __post_init__(self):
        if self.policy not in self.POLICIES:
            raise InvalidInputError(f"unknown tie-break policy {self.policy!r}")
        if self.policy == "adversarial-oracle" and self.chooser is None:
            raise InvalidInputError("adversarial-oracle tie-break needs a chooser")

    @classmethod
    def lowest(cls) -> "TieBreak":
        return cls("lowest-index")

    @classmethod
    def highest(cls) -> "TieBreak":
        return cls("highest-index")

    @classmethod
    def seeded(cls, seed: int) -> "TieBreak":
        return cls("seeded-random", seed=seed)

    @classmethod
    def adversarial(cls, chooser: Chooser) -> "TieBreak":
        return cls("adversarial-oracle", chooser=chooser)

    @property
    def deterministic(self) -> bool:
        return self.policy != "adversarial-oracle"

    def choose(self, agent: int, argmax: tuple, round_: int = 0):
        if self.policy == "lowest-index":
            return argmax[0]
        if self.policy == "highest-index":
            return argmax[-1]
        if self.policy == "seeded-random":
            return make_rng(self.seed, "tiebreak", agent).choice(argmax)
        x = self.chooser(agent, argmax)
        if x not in argmax:
            raise InvalidInputError(f"tie-break chose {x!r} outside the argmax set of agent {agent}")
        return x


def prefer(predicate: Callable[[object], bool]) -> TieBreak:
    """Adversarial tie-break picking the lowest-index maximiser satisfying ``predicate``."""
    def chooser(agent, argmax):
        for x in argmax:
            if predicate(x):
                return x
        return argmax[0]
    return TieBreak.adversarial(chooser)


@dataclass(frozen=True)
class TraceStep:
    agent: int
    observed: frozenset
    argmax: tuple
    chosen: object
    local_marginal: Real
    global_marginal: Real


@dataclass(frozen=True)
class Solution:
    assignment: Assignment
    trace: tuple[TraceStep, ...]
    value: Real

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["agent", "chosen", "local_marginal", "global_marginal", "argmax_size"])
        for s in sorted(self.trace, key=lambda s: s.agent):
            w.writerow([s.agent, _fmt_element(s.chosen), _fmt_number(s.local_marginal),
                        _fmt_number(s.global_marginal), len(s.argmax)])
        return buf.getvalue()


def _fmt_element(x) -> str:
    if isinstance(x, tuple):
        return ":".join(str(p) for p in x)
    return str(x)


def _fmt_number(v) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return repr(float(v))
    if isinstance(v, Fraction):
        return str(v.numerator)
    return repr(v) if isinstance(v, float) else str(v)


def _best_response(instance: Instance, agent: int, observed: frozenset,
                   tiebreak: TieBreak, round_: int = 0):
    oracle = instance.oracle
    base = oracle.value(observed)
    gains = [(x, oracle.value(observed | {x}) - base) for x in instance.strategy_sets[agent]]
    best = max(g for _, g in gains)
    tol = tolerance(best, *(g for _, g in gains))
    argmax = tuple(x for x, g in gains if best - g <= tol)
    chosen = tiebreak.choose(agent, argmax, round_)
    return chosen, dict(gains)[chosen], argmax


def _check_sizes(instance: Instance, graph: InfoDag) -> None:
    if graph.n != instance.n_agents:
        raise InvalidInputError(
            f"graph has {graph.n} vertices but the instance has {instance.n_agents} agents")


def _assemble(instance: Instance, graph: InfoDag, choices: list,
              steps: dict[int, tuple]) -> Solution:
    oracle = instance.oracle
    prefix: set = set()
    trace = []
    for i in graph.topo_order:
        x = choices[i]
        observed, argmax, local = steps[i]
        glob = oracle.marginal(x, prefix)
        prefix.add(x)
        trace.append(TraceStep(i, observed, argmax, x, local, glob))
    return Solution(tuple(choices), tuple(trace), oracle.value(choices))


def run_sequential(instance: Instance, graph: InfoDag,
                   tiebreak: TieBreak | None = None) -> Solution:
    """Agents choose in topological order, each maximising its marginal gain
    against the choices of its in-neighbours only."""
    _check_sizes(instance, graph)
    tiebreak = tiebreak or TieBreak.lowest()
    choices: list = [None] * graph.n
    steps = {}
    for i in graph.topo_order:
        observed = frozenset(choices[j] for j in graph.in_neighbors(i))
        x, local, argmax = _best_response(instance, i, observed, tiebreak)
        choices[i] = x
        steps[i] = (observed, argmax, local)
    return _assemble(instance, graph, choices, steps)


def run_synchronous(instance: Instance, graph: InfoDag, tiebreak: TieBreak | None = None,
                    rounds: int | None = None) -> list[Solution]:
    """All agents update together; round ``t`` responds to the round ``t-1`` choices.

    Round 0 (not returned) is every agent's best response to an empty
    observation. Returns one :class:`Solution` per round ``1..rounds``
    (default ``n``). An agent at depth ``d`` is fixed from round ``d`` on.
    """
    _check_sizes(instance, graph)
    rounds = graph.n if rounds is None else rounds
    if rounds < 1:
        raise InvalidInputError(f"rounds must be >= 1, got {rounds}")
    tiebreak = tiebreak or TieBreak.lowest()
    empty: frozenset = frozenset()
    current = [_best_response(instance, i, empty, tiebreak, 0)[0] for i in range(graph.n)]
    out = []
    for t in range(1, rounds + 1):
        nxt: list = [None] * graph.n
        steps = {}
        for i in range(graph.n):
            observed = frozenset(current[j] for j in graph.in_neighbors(i))
            x, local, argmax = _best_response(instance, i, observed, tiebreak, t)
            nxt[i] = x
            steps[i] = (observed, argmax, local)
        out.append(_assemble(instance, graph, nxt, steps))
        current = nxt
    return out


def approximation_ratio(solution: Solution, instance: Instance, optimum: Real | None = None) -> Real:
    """``value / optimum``; 1 when the optimum is 0."""
    if optimum is None:
        optimum = brute_force_opt(instance)[1]
    if close(optimum, 0):
        return 1
    if isinstance(optimum, (int, Fraction)) and isinstance(solution.value, (int, Fraction)):
        return Fraction(solution.value) / Fraction(optimum)
    return solution.value / optimum


def value_of_prefix(instance: Instance, assignment: Sequence, agents: Sequence[int]) -> Real:
    """Value of the choices made by ``agents`` in ``assignment``."""
    return instance.oracle.value(assignment[i] for i in agents)
