"""Concrete submodular objectives and the reduction to disjoint strategy sets."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import Instance, SubmodularOracle
from .dag import Coloring, InfoDag
from .errors import InvalidInputError


@dataclass(frozen=True)
class Disk:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy)):
            raise InvalidInputError(f"disk centre must be finite, got ({self.cx}, {self.cy})")
        if not (math.isfinite(self.r) and self.r > 0):
            raise InvalidInputError(f"disk radius must be positive, got {self.r}")


@dataclass(frozen=True)
class CoverageGrid:
    """``g × g`` sample points at the cell centres of the unit square."""

    resolution: int = 100

    def __post_init__(self):
        if not isinstance(self.resolution, int) or self.resolution < 1:
            raise InvalidInputError(f"grid resolution must be a positive integer, got {self.resolution!r}")

    @property
    def n_points(self) -> int:
        return self.resolution ** 2

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        g = self.resolution
        c = (np.arange(g) + 0.5) / g
        xs, ys = np.meshgrid(c, c, indexing="ij")
        return xs.ravel(), ys.ravel()


def disk_mask(disk: Disk, grid: CoverageGrid) -> int:
    """Bitmask of grid points within ``disk`` (boundary inclusive)."""
    xs, ys = grid.points()
    inside = (xs - disk.cx) ** 2 + (ys - disk.cy) ** 2 <= disk.r ** 2
    return int.from_bytes(np.packbits(inside, bitorder="little").tobytes(), "little")


def _union_oracle(ground: list, masks: dict, score, name: str) -> SubmodularOracle:
    def fn(s: frozenset):
        covered = 0
        for e in s:
            covered |= masks[e]
        return score(covered)
    return SubmodularOracle(ground, fn, name=name)


def make_coverage(disk_sets: Sequence[Sequence[Disk]],
                  grid: CoverageGrid | None = None) -> Instance:
    """Disk-coverage instance: value is the fraction of grid points covered.

    Ground elements are ``(agent, k)`` for the ``k``-th disk of ``agent``. Values
    are exact :class:`~fractions.Fraction` counts over ``g²``.
    """
    grid = grid or CoverageGrid()
    ground, masks, sets = [], {}, []
    for i, disks in enumerate(disk_sets):
        if not disks:
            raise InvalidInputError(f"agent {i} has no disks")
        own = []
        for k, d in enumerate(disks):
            e = (i, k)
            ground.append(e)
            masks[e] = disk_mask(d, grid)
            own.append(e)
        sets.append(own)
    total = grid.n_points
    oracle = _union_oracle(ground, masks, lambda m: Fraction(m.bit_count(), total), "coverage")
    oracle.disks = {(i, k): d for i, ds in enumerate(disk_sets) for k, d in enumerate(ds)}
    return Instance(oracle, tuple(sets))


def make_weighted_coverage(covers: Sequence[Sequence[Sequence[int]]],
                           weights: Sequence[int]) -> Instance:
    """Integer weighted-coverage instance.

    ``covers[i][k]`` lists the universe items covered by agent ``i``'s ``k``-th
    strategy; the value of a set is the total weight of items covered.
    """
    weights = [int(w) for w in weights]
    if any(w < 0 for w in weights):
        raise InvalidInputError("coverage weights must be nonnegative")
    u = len(weights)
    ground, masks, sets = [], {}, []
    for i, strategies in enumerate(covers):
        own = []
        for k, items in enumerate(strategies):
            m = 0
            for it in items:
                if not 0 <= it < u:
                    raise InvalidInputError(f"item {it} outside universe of size {u}")
                m |= 1 << it
            e = (i, k)
            ground.append(e)
            masks[e] = m
            own.append(e)
        sets.append(own)
    if u <= 16:
        table = [0] * (1 << u)
        for m in range(1, 1 << u):
            low = (m & -m).bit_length() - 1
            table[m] = table[m & (m - 1)] + weights[low]
        score = table.__getitem__
    else:
        def score(m: int) -> int:
            return sum(weights[i] for i in range(u) if m >> i & 1)
    oracle = _union_oracle(ground, masks, score, "weighted-coverage")
    return Instance(oracle, tuple(sets))


def random_weighted_coverage(rng: random.Random, n_agents: int, max_strategies: int = 3,
                             universe: int = 10, max_weight: int = 5,
                             density: float = 0.3) -> Instance:
    """Random weighted-coverage instance with ``1..max_strategies`` strategies per agent."""
    weights = [rng.randint(1, max_weight) for _ in range(universe)]
    covers = []
    for _ in range(n_agents):
        strategies = []
        for _ in range(rng.randint(1, max_strategies)):
            items = [j for j in range(universe) if rng.random() < density]
            strategies.append(items)
        covers.append(strategies)
    return make_weighted_coverage(covers, weights)


def random_disks(rng: random.Random, n_agents: int, per_agent: int,
                 radius: float) -> list[list[Disk]]:
    """Disk centres uniform in the unit square, all of the same radius."""
    return [[Disk(rng.random(), rng.random(), radius) for _ in range(per_agent)]
            for _ in range(n_agents)]


def make_adversarial(graph: InfoDag, coloring: Coloring) -> Instance:
    """Colouring-based worst case: ``X_i = {a_i, b_i}``.

    Every ``b`` element is worth 1; the ``a`` elements are worth 1 per distinct
    colour among their agents, i.e. ``f(S) = #b + #colours{c(i) : a_i in S}``.
    On matroid-feasible sets this is the telescoped marginal definition, where
    ``a_i`` adds nothing once some ``a_j`` of the same colour is present.
    """
    if len(coloring) != graph.n or not coloring.is_proper(graph):
        raise InvalidInputError("coloring is not a proper colouring of the graph")
    colors = coloring.colors
    ground, sets = [], []
    for i in range(graph.n):
        ground += [("a", i), ("b", i)]
        sets.append([("a", i), ("b", i)])

    def fn(s: frozenset) -> int:
        bs = 0
        seen = set()
        for kind, i in s:
            if kind == "b":
                bs += 1
            else:
                seen.add(colors[i])
        return bs + len(seen)

    oracle = SubmodularOracle(ground, fn, name="adversarial")
    oracle.coloring = coloring
    return Instance(oracle, tuple(sets))


def universal_element(j: int) -> str:
    return f"e{j}"


def make_universal(n_agents: int, m: int | None = None) -> Instance:
    """Every agent picks from ``e1..em``; the value is the number of distinct picks."""
    m = n_agents if m is None else m
    if n_agents < 1:
        raise InvalidInputError("need at least one agent")
    if m < n_agents:
        raise InvalidInputError(f"universal function needs m >= n_agents, got m={m} < {n_agents}")
    ground = [universal_element(j) for j in range(1, m + 1)]
    oracle = SubmodularOracle(ground, len, name="universal")
    return Instance(oracle, tuple([ground] * n_agents))


@dataclass(frozen=True)
class DisjointReduction:
    """Disjoint copy of an instance with ``back_map`` from copies to originals."""

    reduced_instance: Instance
    back_map: dict

    def lift(self, elements) -> frozenset:
        return frozenset(self.back_map[e] for e in elements)


def reduce_to_disjoint(instance: Instance) -> DisjointReduction:
    """Give each agent private copies ``(i, x)`` of its strategies; ``f'(A) = f(g(A))``.

    A disjoint instance is returned unchanged with the identity map.
    """
    if instance.disjoint:
        return DisjointReduction(instance, {e: e for e in instance.oracle.ground})
    base = instance.oracle
    back = {}
    ground, sets = [], []
    for i, xs in enumerate(instance.strategy_sets):
        own = []
        for x in xs:
            e = (i, x)
            back[e] = x
            ground.append(e)
            own.append(e)
        sets.append(own)

    def fn(s: frozenset):
        return base.value(back[e] for e in s)

    oracle = SubmodularOracle(ground, fn, name=f"{base.name}∘g")
    return DisjointReduction(Instance(oracle, tuple(sets)), back)


def read_disks(path: str | Path) -> list[list[Disk]]:
    """Read ``n k`` then ``n·k`` lines of ``cx cy r``, agent-major."""
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n, k = (int(t) for t in lines[0].split())
        rows = [tuple(float(t) for t in ln.split()) for ln in lines[1:]]
    except (IndexError, ValueError):
        raise InvalidInputError(f"{path}: malformed disk file") from None
    if n < 1 or k < 1:
        raise InvalidInputError(f"{path}: need n >= 1 and k >= 1, got {n} {k}")
    if len(rows) != n * k or any(len(r) != 3 for r in rows):
        raise InvalidInputError(f"{path}: expected {n * k} rows of 'cx cy r'")
    disks = [Disk(*r) for r in rows]
    return [disks[i * k:(i + 1) * k] for i in range(n)]


def write_disks(disk_sets: Sequence[Sequence[Disk]], path: str | Path) -> None:
    k = len(disk_sets[0])
    if any(len(ds) != k for ds in disk_sets):
        raise InvalidInputError("disk file format needs the same number of disks per agent")
    out = [f"{len(disk_sets)} {k}"]
    for ds in disk_sets:
        out.extend(f"{d.cx!r} {d.cy!r} {d.r!r}" for d in ds)
    Path(path).write_text("\n".join(out) + "\n")
