"""Closed-form performance bounds of the local greedy on an information DAG.

Lower bounds hold for every monotone normalised submodular objective on the
graph; upper bounds are attained by one specific objective. They bound
different things and are not ordered against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Instance, brute_force_opt, leq
from .dag import (BoundCertificate, InfoDag, chromatic_number, clique_number,
                  greedy_topological_coloring)
from .errors import InvalidInputError
from .greedy import TieBreak, run_sequential


@dataclass(frozen=True)
class CliquePartition:
    """Agents split into consecutive complete blocks.

    ``order`` lists the vertices block by block (identity by default). The last
    vertex of every block except the final one is a broadcaster: every vertex
    of the next block sees it, and that is the only cross-block edge.
    """

    block_sizes: tuple[int, ...]
    order: tuple[int, ...]

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], order: Sequence[int] | None = None) -> "CliquePartition":
        sizes = tuple(int(b) for b in sizes)
        if not sizes or any(b < 1 for b in sizes):
            raise InvalidInputError(f"block sizes must be positive, got {list(sizes)}")
        n = sum(sizes)
        order = tuple(range(n)) if order is None else tuple(order)
        if sorted(order) != list(range(n)):
            raise InvalidInputError("partition order must be a permutation of the vertices")
        return cls(sizes, order)

    @property
    def kappa(self) -> int:
        return len(self.block_sizes)

    @property
    def n(self) -> int:
        return len(self.order)

    def blocks(self) -> list[tuple[int, ...]]:
        out, start = [], 0
        for b in self.block_sizes:
            out.append(self.order[start:start + b])
            start += b
        return out

    @property
    def cut_points(self) -> tuple[int, ...]:
        """Broadcasting vertices ``m_1, …, m_{κ-1}``."""
        return tuple(block[-1] for block in self.blocks()[:-1])

    def to_dag(self, linked: bool = True) -> InfoDag:
        """The topology itself; ``linked=False`` drops the cross-block edges."""
        edges = []
        prev = None
        for block in self.blocks():
            edges += [(u, v) for i, u in enumerate(block) for v in block[i + 1:]]
            if linked and prev is not None:
                edges += [(prev, v) for v in block]
            prev = block[-1]
        return InfoDag(self.n, edges, self.order)


def detect_interconnected_cliques(g: InfoDag) -> CliquePartition | None:
    """Match ``g`` against the interconnected-cliques topology.

    Such a DAG has a Hamiltonian path, so its topological order is unique and
    the blocks can be read off by scanning it: a vertex either extends the
    current block (its in-neighbours are the block so far plus the block's
    broadcaster) or starts a new one (its only in-neighbour is its predecessor).
    Blocks are extended greedily, giving the fewest blocks.
    """
    order = g.topo_order
    pos = {v: k for k, v in enumerate(order)}
    sizes = []
    start, bridge = 0, None
    for p, v in enumerate(order):
        seen = {pos[u] for u in g.in_neighbors(v)}
        if p == 0:
            if seen:
                return None
            continue
        expect = set(range(start, p))
        if bridge is not None:
            expect.add(bridge)
        if seen == expect:
            continue
        if seen == {p - 1}:
            sizes.append(p - start)
            bridge, start = p - 1, p
            continue
        return None
    sizes.append(g.n - start)
    return CliquePartition.from_sizes(sizes, order)


def lower_bound_clique(g: InfoDag) -> Fraction:
    """``1 / (n - ω + 2)``."""
    omega, _ = clique_number(g)
    return Fraction(1, g.n - omega + 2)


def lower_bound_special(g: InfoDag) -> tuple[str, Fraction] | None:
    """Sharper constant for the empty graph, the complete DAG and interconnected cliques."""
    if g.is_empty():
        return "empty", Fraction(1, g.n)
    if g.is_complete():
        return "complete", Fraction(1, 2)
    part = detect_interconnected_cliques(g)
    if part is not None and part.kappa >= 2:
        return "cliques", Fraction(1, 2 * part.kappa)
    return None


def upper_bound_chromatic(g: InfoDag) -> Fraction:
    chi, _ = chromatic_number(g)
    return Fraction(chi, g.n)


def upper_bound_alg1(g: InfoDag) -> Fraction:
    """Largest colour of the topological greedy colouring over ``n``."""
    _, k = greedy_topological_coloring(g)
    return Fraction(k, g.n)


@dataclass(frozen=True)
class DegreeCheck:
    """Degree conditions forced by a universal-function greedy value of ``k``."""

    k: int
    max_in_degree: bool
    degree_profile: bool
    edge_count: bool

    @property
    def all(self) -> bool:
        return self.max_in_degree and self.degree_profile and self.edge_count


def check_prop2(g: InfoDag, k: int | None = None) -> DegreeCheck:
    """(i) some in-degree >= k-1; (ii) for each l in 1..k at least l vertices of
    in-degree >= k-l; (iii) at least k(k-1)/2 edges."""
    if k is None:
        k = greedy_topological_coloring(g)[1]
    degs = sorted((len(g.in_neighbors(v)) for v in range(g.n)), reverse=True)
    first = bool(degs) and degs[0] >= k - 1
    profile = all(len(degs) >= l and degs[l - 1] >= k - l for l in range(1, k + 1))
    edges = g.n_edges >= k * (k - 1) // 2
    return DegreeCheck(k, first, profile, edges)


@dataclass(frozen=True)
class BoundReport:
    n: int
    n_edges: int
    omega: int
    chi: int
    greedy_colors: int
    lower_clique: Fraction
    lower_special: tuple[str, Fraction] | None
    upper_chromatic: Fraction
    upper_alg1: Fraction
    clique: BoundCertificate
    coloring: BoundCertificate
    greedy_coloring: BoundCertificate

    @property
    def best_lower(self) -> Fraction:
        if self.lower_special is None:
            return self.lower_clique
        return max(self.lower_clique, self.lower_special[1])

    def verify(self, g: InfoDag) -> bool:
        return all(c.verify(g) for c in (self.clique, self.coloring, self.greedy_coloring))

    CSV_COLUMNS = ("n", "edges", "omega", "chi", "greedy_colors", "lower_clique",
                   "lower_special", "upper_chi", "upper_alg1")

    def csv_row(self) -> list:
        special = "" if self.lower_special is None else repr(float(self.lower_special[1]))
        return [self.n, self.n_edges, self.omega, self.chi, self.greedy_colors,
                repr(float(self.lower_clique)), special,
                repr(float(self.upper_chromatic)), repr(float(self.upper_alg1))]

    def format(self) -> str:
        def frac(x: Fraction) -> str:
            return f"{x}  ({float(x):.4f})"
        special = ("-" if self.lower_special is None
                   else f"{self.lower_special[0]}: {frac(self.lower_special[1])}")
        rows = [
            ("vertices", str(self.n)),
            ("edges", str(self.n_edges)),
            ("clique number", f"{self.omega}  clique {list(self.clique.witness)}"),
            ("chromatic number", str(self.chi)),
            ("greedy colours", str(self.greedy_colors)),
            ("lower (clique)", frac(self.lower_clique)),
            ("lower (special)", special),
            ("upper (chromatic)", frac(self.upper_chromatic)),
            ("upper (greedy colouring)", frac(self.upper_alg1)),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def bound_report(g: InfoDag) -> BoundReport:
    omega, clique_cert = clique_number(g)
    chi, coloring = chromatic_number(g)
    greedy, k = greedy_topological_coloring(g)
    return BoundReport(
        n=g.n, n_edges=g.n_edges, omega=omega, chi=chi, greedy_colors=k,
        lower_clique=Fraction(1, g.n - omega + 2),
        lower_special=lower_bound_special(g),
        upper_chromatic=Fraction(chi, g.n),
        upper_alg1=Fraction(k, g.n),
        clique=clique_cert,
        coloring=BoundCertificate("coloring", coloring),
        greedy_coloring=BoundCertificate("greedy-coloring", greedy),
    )


def interconnected_sides(instance: Instance, partition: CliquePartition, linked: bool = True,
                   tiebreak: TieBreak | None = None):
    """Both sides of the interconnected-cliques inequality.

    Returns ``(2κ·f(greedy), f(x*) + Σ f(x*_{m_i}))``; without the cross-block
    links the bonus sum is dropped.
    """
    if instance.n_agents != partition.n:
        raise InvalidInputError("partition size does not match the number of agents")
    g = partition.to_dag(linked)
    sol = run_sequential(instance, g, tiebreak)
    opt_assign, opt = brute_force_opt(instance)
    rhs = opt
    if linked:
        for m in partition.cut_points:
            rhs += instance.oracle.value([opt_assign[m]])
    return 2 * partition.kappa * sol.value, rhs


def verify_theorem2(instance: Instance, partition: CliquePartition, linked: bool = True,
                    tiebreak: TieBreak | None = None) -> bool:
    lhs, rhs = interconnected_sides(instance, partition, linked, tiebreak)
    return leq(rhs, lhs)
