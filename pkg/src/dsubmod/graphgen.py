"""Seeded generators for the graph families used in the analysis and experiments.

Random families are turned into DAGs the same way: draw a uniformly random
vertex order and drop every edge that points to an earlier vertex. The drawn
order is kept as the DAG's topological order.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .bounds import CliquePartition
from .dag import InfoDag
from .errors import InvalidInputError
from .rng import make_rng, random_order

BA_CORE = 5
BA_ATTACH = 5


def _dagify_undirected(n: int, pairs: Iterable[tuple[int, int]], rng: random.Random) -> InfoDag:
    order = random_order(rng, n)
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    edges = sorted((u, v) if pos[u] < pos[v] else (v, u) for u, v in pairs)
    return InfoDag(n, edges, order)


def gen_complete_dag(n: int) -> InfoDag:
    return InfoDag(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_empty(n: int) -> InfoDag:
    return InfoDag(n, [])


def gen_chain(n: int) -> InfoDag:
    return InfoDag(n, [(i, i + 1) for i in range(n - 1)])


def gen_er_dag(n: int, p: float, seed: int) -> InfoDag:
    """Directed Erdős–Rényi graph (each ordered pair kept with probability ``p``), then DAG-ified.

    The vertex order is drawn first, then one uniform draw per ordered pair in
    row-major order.
    """
    if not 0 <= p <= 1:
        raise InvalidInputError(f"edge probability must lie in [0, 1], got {p}")
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}")
    rng = make_rng(seed, "er", n)
    order = random_order(rng, n)
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p and pos[u] < pos[v]:
                edges.append((u, v))
    return InfoDag(n, edges, order)


def gen_ba_dag(n: int, seed: int, core: int = BA_CORE, attach: int = BA_ATTACH) -> InfoDag:
    """Preferential attachment grown from a complete graph on ``core`` vertices.

    Each new vertex links to ``attach`` distinct existing vertices, drawn one at
    a time without replacement with probability proportional to current degree.
    """
    if n < core:
        raise InvalidInputError(f"preferential attachment needs n >= {core}, got {n}")
    if not 1 <= attach <= core:
        raise InvalidInputError(f"attach must be in 1..{core}, got {attach}")
    rng = make_rng(seed, "ba", n)
    pairs = [(i, j) for i in range(core) for j in range(i + 1, core)]
    degree = [core - 1] * core
    for v in range(core, n):
        candidates = list(range(v))
        weights = [degree[u] for u in candidates]
        targets = []
        for _ in range(attach):
            total = sum(weights)
            r = rng.random() * total
            acc = 0
            pick = len(candidates) - 1
            for k, w in enumerate(weights):
                acc += w
                if r < acc:
                    pick = k
                    break
            targets.append(candidates.pop(pick))
            weights.pop(pick)
        for u in targets:
            pairs.append((u, v))
            degree[u] += 1
        degree.append(attach)
    return _dagify_undirected(n, pairs, rng)


def ring_lattice(n: int, k: int) -> list[tuple[int, int]]:
    return [(i, (i + j) % n) for i in range(n) for j in range(1, k + 1)]


def gen_ws_dag(n: int, k: int, beta: float, seed: int) -> InfoDag:
    """Watts–Strogatz small world: ring lattice with ``k`` neighbours per side, then rewiring.

    Lattice edges are scanned in canonical order ``(i, i+1), …, (i, i+k)``; with
    probability ``beta`` the far endpoint moves to a uniformly chosen vertex that
    is neither ``i`` nor already adjacent to ``i``. When no such vertex exists
    the edge stays put. The edge count stays ``n·k``.
    """
    if not 1 <= k <= (n - 1) // 2:
        raise InvalidInputError(f"need 1 <= K <= {(n - 1) // 2} for n={n}, got K={k}")
    if not 0 <= beta <= 1:
        raise InvalidInputError(f"rewiring probability must lie in [0, 1], got {beta}")
    rng = make_rng(seed, "ws", n, k)
    lattice = ring_lattice(n, k)
    nbrs = [set() for _ in range(n)]
    for u, v in lattice:
        nbrs[u].add(v)
        nbrs[v].add(u)
    edges = {frozenset(e) for e in lattice}
    for u, v in lattice:
        if rng.random() >= beta:
            continue
        options = [w for w in range(n) if w != u and w not in nbrs[u]]
        if not options:
            continue
        w = options[int(rng.random() * len(options))]
        edges.discard(frozenset((u, v)))
        nbrs[u].discard(v)
        nbrs[v].discard(u)
        edges.add(frozenset((u, w)))
        nbrs[u].add(w)
        nbrs[w].add(u)
    pairs = sorted(tuple(sorted(e)) for e in edges)
    return _dagify_undirected(n, pairs, rng)


def gen_interconnected_cliques(block_sizes: Sequence[int]) -> tuple[InfoDag, CliquePartition]:
    """Consecutive complete blocks; the last vertex of each block feeds every vertex of the next."""
    partition = CliquePartition.from_sizes(block_sizes)
    return partition.to_dag(), partition


def gen_disconnected_cliques(block_sizes: Sequence[int]) -> InfoDag:
    """The same blocks with no edges between them."""
    return CliquePartition.from_sizes(block_sizes).to_dag(linked=False)


def gap_vertices(m: int) -> tuple[list[int], list[int]]:
    """Vertex ids of ``u_1..u_m`` and ``w_1..w_m`` in the bipartite gap graph."""
    return [2 * i for i in range(m)], [2 * i + 1 for i in range(m)]


def gen_bipartite_gap(m: int) -> InfoDag:
    """Two-colourable graph on ``2m`` vertices whose topological greedy colouring uses ``m+1`` colours.

    Edges ``(u_i, w_j)`` and ``(w_i, u_j)`` for ``i < j`` plus ``(u_m, w_m)``;
    topological order ``u_1, w_1, …, u_m, w_m``.
    """
    if m < 1:
        raise InvalidInputError(f"gap graph needs m >= 1, got {m}")
    u, w = gap_vertices(m)
    edges = [(u[i], w[j]) for i in range(m) for j in range(i + 1, m)]
    edges += [(w[i], u[j]) for i in range(m) for j in range(i + 1, m)]
    edges.append((u[m - 1], w[m - 1]))
    order = [v for pair in zip(u, w) for v in pair]
    return InfoDag(2 * m, edges, order)


FAMILIES = ("er", "ba", "ws", "cliques", "gap", "complete", "empty")
