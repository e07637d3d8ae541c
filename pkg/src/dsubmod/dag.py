"""Directed acyclic information graphs and the colouring/clique machinery on them.

Vertices are ``0..n-1``. An edge ``(j, i)`` means agent ``i`` sees agent ``j``'s
choice before choosing. Cliques and colourings always refer to the underlying
undirected graph; in a DAG every pairwise-adjacent set is a complete sub-DAG.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidGraphError, InvalidInputError, SizeGuardError

CLIQUE_GUARD = 64
CHROMATIC_GUARD = 40
NODE_BUDGET = 5_000_000


class InfoDag:
    """Immutable DAG with a stored topological order.

    Construction rejects self-loops, duplicate edges, out-of-range vertices and
    cycles. If ``order`` is given it must be a valid topological order and is
    kept; otherwise the lexicographically smallest one is computed.
    """

    __slots__ = ("n", "edges", "topo_order", "_in", "_out", "_adj", "_pos")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 order: Sequence[int] | None = None):
        if not isinstance(n, int) or n < 1:
            raise InvalidInputError(f"vertex count must be a positive integer, got {n!r}")
        edge_list = [(int(u), int(v)) for u, v in edges]
        seen = set()
        ins = [[] for _ in range(n)]
        outs = [[] for _ in range(n)]
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise InvalidGraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            ins[v].append(u)
            outs[u].append(v)
        self.n = n
        self.edges = frozenset(seen)
        self._in = tuple(tuple(sorted(x)) for x in ins)
        self._out = tuple(tuple(sorted(x)) for x in outs)
        adj = [0] * n
        for u, v in seen:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)
        if order is None:
            order = self._kahn()
        else:
            order = tuple(int(v) for v in order)
            if sorted(order) != list(range(n)):
                raise InvalidInputError("topological order must be a permutation of the vertices")
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        for u, v in seen:
            if pos[u] >= pos[v]:
                raise InvalidGraphError(f"edge ({u}, {v}) goes backwards in the given order")
        self.topo_order = tuple(order)
        self._pos = tuple(pos)

    def _kahn(self) -> tuple[int, ...]:
        indeg = [len(x) for x in self._in]
        heap = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in self._out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        if len(order) != self.n:
            stuck = sorted(v for v in range(self.n) if indeg[v] > 0)
            raise InvalidGraphError(f"graph has a cycle through vertices {stuck[:10]}")
        return tuple(order)

    def __repr__(self) -> str:
        return f"InfoDag(n={self.n}, edges={len(self.edges)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, InfoDag) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._in[v]

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._out[v]

    def in_degree(self, v: int) -> int:
        return len(self.in_neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def adjacency_masks(self) -> tuple[int, ...]:
        """Undirected adjacency as one bitmask per vertex."""
        return self._adj

    def position(self, v: int) -> int:
        return self._pos[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges ordered by the position of their endpoints in ``topo_order``."""
        return sorted(self.edges, key=lambda e: (self._pos[e[0]], self._pos[e[1]]))

    def is_empty(self) -> bool:
        return not self.edges

    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def depths(self) -> tuple[int, ...]:
        """Length of the longest path ending at each vertex (sources have depth 0)."""
        depth = [0] * self.n
        for v in self.topo_order:
            for u in self._in[v]:
                depth[v] = max(depth[v], depth[u] + 1)
        return tuple(depth)

    def with_order(self, order: Sequence[int]) -> "InfoDag":
        return InfoDag(self.n, self.edges, order)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidInputError(f"vertex {v} out of range for n={self.n}")


def new_dag(n: int, edges: Iterable[tuple[int, int]] = (),
            order: Sequence[int] | None = None) -> InfoDag:
    return InfoDag(n, edges, order)


def in_neighbors(g: InfoDag, v: int) -> tuple[int, ...]:
    return g.in_neighbors(v)


@dataclass(frozen=True)
class Coloring:
    """Colour per vertex, colours numbered from 1."""

    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if any(c < 1 for c in self.colors):
            raise InvalidInputError("colours are numbered from 1")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return {c: tuple(vs) for c, vs in sorted(out.items())}

    def is_proper(self, g: InfoDag) -> bool:
        if len(self.colors) != g.n:
            return False
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)


@dataclass(frozen=True)
class BoundCertificate:
    """Witness for a clique number or colouring claim."""

    kind: str  # "clique" | "coloring" | "greedy-coloring"
    witness: object

    def verify(self, g: InfoDag) -> bool:
        if self.kind == "clique":
            vs = list(self.witness)
            if len(set(vs)) != len(vs) or not all(0 <= v < g.n for v in vs):
                return False
            return all(g.adjacent(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])
        if self.kind in ("coloring", "greedy-coloring"):
            return isinstance(self.witness, Coloring) and self.witness.is_proper(g)
        raise InvalidInputError(f"unknown certificate kind {self.kind!r}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _color_sort(p: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of the vertex set ``p``; vertices come out by colour."""
    order, bounds = [], []
    uncolored = p
    k = 0
    while uncolored:
        k += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            order.append(v)
            bounds.append(k)
            uncolored &= ~(1 << v)
            avail &= ~(1 << v) & ~adj[v]
    return order, bounds


def max_clique(adj: Sequence[int], node_budget: int = NODE_BUDGET) -> list[int]:
    """Exact maximum clique by branch and bound with colouring bounds."""
    best: list[int] = []
    nodes = 0

    def expand(r: list[int], p: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise SizeGuardError(f"clique search exceeded node budget {node_budget}")
        order, bounds = _color_sort(p, adj)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(r) + b <= len(best):
                return
            q = p & adj[v]
            if q:
                expand(r + [v], q)
            elif len(r) + 1 > len(best):
                best = r + [v]
            p &= ~(1 << v)

    n = len(adj)
    if n:
        expand([], (1 << n) - 1)
    return sorted(best)


def clique_number(g: InfoDag, guard: int = CLIQUE_GUARD,
                  node_budget: int = NODE_BUDGET) -> tuple[int, BoundCertificate]:
    if g.n > guard:
        raise SizeGuardError(f"clique number for n={g.n} exceeds guard {guard}")
    clique = max_clique(g.adjacency_masks(), node_budget)
    return len(clique), BoundCertificate("clique", tuple(clique))


def _dsatur_greedy(adj: Sequence[int], n: int) -> list[int]:
    colors = [-1] * n
    class_masks: list[int] = []
    uncolored = (1 << n) - 1
    while uncolored:
        v = max(_bits(uncolored), key=lambda u: (
            sum(1 for m in class_masks if adj[u] & m), (adj[u] & uncolored).bit_count(), -u))
        for c, m in enumerate(class_masks):
            if not adj[v] & m:
                break
        else:
            c = len(class_masks)
            class_masks.append(0)
        colors[v] = c
        class_masks[c] |= 1 << v
        uncolored &= ~(1 << v)
    return colors


def chromatic_number(g: InfoDag, guard: int = CHROMATIC_GUARD,
                     node_budget: int = NODE_BUDGET) -> tuple[int, Coloring]:
    """Exact chromatic number by DSATUR branch and bound.

    The maximum clique gives the lower bound and is pre-coloured; a greedy
    DSATUR colouring gives the starting upper bound.
    """
    if g.n > guard:
        raise SizeGuardError(f"chromatic number for n={g.n} exceeds guard {guard}")
    n = g.n
    adj = g.adjacency_masks()
    clique = max_clique(adj, node_budget)
    lb = len(clique)
    best = _dsatur_greedy(adj, n)
    best_k = max(best) + 1
    if best_k > lb:
        colors = [-1] * n
        class_masks = [0] * n
        uncolored = (1 << n) - 1
        for c, v in enumerate(clique):
            colors[v] = c
            class_masks[c] |= 1 << v
            uncolored &= ~(1 << v)
        nodes = 0

        def search(uncolored: int, k_used: int) -> bool:
            # returns True once a colouring with lb colours is found
            nonlocal best, best_k, nodes
            nodes += 1
            if nodes > node_budget:
                raise SizeGuardError(f"colouring search exceeded node budget {node_budget}")
            if not uncolored:
                best, best_k = list(colors), k_used
                return best_k == lb
            v, v_sat = -1, -1
            v_deg = -1
            for u in _bits(uncolored):
                sat = 0
                for c in range(k_used):
                    if adj[u] & class_masks[c]:
                        sat += 1
                deg = (adj[u] & uncolored).bit_count()
                if sat > v_sat or (sat == v_sat and deg > v_deg):
                    v, v_sat, v_deg = u, sat, deg
            if v_sat == k_used and k_used + 1 >= best_k:
                return False
            bit = 1 << v
            rest = uncolored & ~bit
            for c in range(k_used):
                if not adj[v] & class_masks[c]:
                    colors[v] = c
                    class_masks[c] |= bit
                    done = search(rest, k_used)
                    class_masks[c] &= ~bit
                    colors[v] = -1
                    if done:
                        return True
            if k_used + 1 < best_k:
                colors[v] = k_used
                class_masks[k_used] |= bit
                done = search(rest, k_used + 1)
                class_masks[k_used] &= ~bit
                colors[v] = -1
                if done:
                    return True
            return False

        search(uncolored, lb)
    return best_k, Coloring(tuple(c + 1 for c in best))


def greedy_topological_coloring(g: InfoDag, counter: Counter | None = None
                                ) -> tuple[Coloring, int]:
    """Give each vertex, in topological order, the smallest colour absent from its in-neighbours.

    Linear time: per vertex one pass over the in-neighbours fills a boolean
    array of length ``|N(v)| + 1`` and a second pass finds its first gap.
    ``counter`` (if given) accumulates ``edge_visits`` and ``scan_steps``.
    """
    value = [0] * g.n
    edge_visits = 0
    scan_steps = 0
    for v in g.topo_order:
        nbrs = g._in[v]
        taken = [False] * (len(nbrs) + 1)
        for u in nbrs:
            edge_visits += 1
            c = value[u]
            if c <= len(nbrs):
                taken[c - 1] = True
        k = 0
        while taken[k]:
            scan_steps += 1
            k += 1
        scan_steps += 1
        value[v] = k + 1
    if counter is not None:
        counter["edge_visits"] += edge_visits
        counter["scan_steps"] += scan_steps
    coloring = Coloring(tuple(value))
    return coloring, coloring.max_color


def format_graph(g: InfoDag) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> InfoDag:
    """Parse ``n`` on the first line then one ``u v`` edge per line; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise InvalidInputError("graph file is empty")
    lineno, head = rows[0]
    try:
        if len(head) != 1:
            raise ValueError
        n = int(head[0])
        edges = []
        for lineno, parts in rows[1:]:
            if len(parts) != 2:
                raise ValueError
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError:
        raise InvalidInputError(f"graph file line {lineno}: malformed") from None
    return InfoDag(n, edges)


def read_graph(path: str | Path) -> InfoDag:
    return parse_graph(Path(path).read_text())


def write_graph(g: InfoDag, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
