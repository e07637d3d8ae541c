"""Set-function oracles, strategy-set instances and exhaustive reference checks.

Values returned by an oracle may be ``int``, :class:`fractions.Fraction` or
``float``. Integer and rational values are compared exactly; as soon as a float
is involved comparisons use an absolute tolerance of :data:`TOL`.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InvalidInputError, SizeGuardError

TOL = 1e-9

SUBMODULAR_GUARD = 14
BRUTE_FORCE_GUARD = 10**6
CACHE_LIMIT = 200_000

Element = Hashable
Assignment = tuple


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def tolerance(*values) -> float:
    """0 when every value is exact, else :data:`TOL`."""
    return 0 if all(is_exact(v) for v in values) else TOL


def leq(a, b) -> bool:
    return a <= b + tolerance(a, b)


def close(a, b) -> bool:
    return abs(a - b) <= tolerance(a, b)


class GroundSet:
    """Ordered collection of unique element identifiers.

    The position of an element is its index for every tie-breaking rule in the
    package, so the order is fixed at construction.
    """

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[Element]):
        self.elements = tuple(elements)
        self._index = {}
        for i, e in enumerate(self.elements):
            if e in self._index:
                raise InvalidInputError(f"duplicate ground element {e!r}")
            self._index[e] = i

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self._index

    def __repr__(self) -> str:
        return f"GroundSet({len(self)} elements)"

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except (KeyError, TypeError):
            raise InvalidInputError(f"unknown element {e!r}") from None

    def sort(self, elements: Iterable[Element]) -> tuple:
        return tuple(sorted(set(elements), key=self.index))


class SubmodularOracle:
    """Black-box set function over a :class:`GroundSet`.

    ``fn`` receives a ``frozenset`` of (already validated) elements and must be
    deterministic. Results are memoised in a bounded cache; ``queries`` counts
    calls to :meth:`value` including cache hits, ``evaluations`` counts calls
    that reached ``fn``.
    """

    def __init__(self, ground: GroundSet | Iterable[Element],
                 fn: Callable[[frozenset], Real], *, name: str = "oracle",
                 cache: bool = True):
        self.ground = ground if isinstance(ground, GroundSet) else GroundSet(ground)
        self._fn = fn
        self.name = name
        self._cache: dict[frozenset, Real] | None = {} if cache else None
        self._lock = threading.Lock()
        self.queries = 0
        self.evaluations = 0

    def __repr__(self) -> str:
        return f"SubmodularOracle({self.name!r}, |E|={len(self.ground)})"

    def _check(self, elements: Iterable[Element]) -> frozenset:
        s = frozenset(elements)
        for e in s:
            if e not in self.ground:
                raise InvalidInputError(f"unknown element {e!r} for {self.name}")
        return s

    def value(self, elements: Iterable[Element] = (), *, memo: bool = True) -> Real:
        s = self._check(elements)
        with self._lock:
            self.queries += 1
            if memo and self._cache is not None and s in self._cache:
                return self._cache[s]
        v = self._fn(s)
        with self._lock:
            self.evaluations += 1
            if memo and self._cache is not None and len(self._cache) < CACHE_LIMIT:
                self._cache[s] = v
        return v

    __call__ = value

    def marginal(self, x: Element, base: Iterable[Element] = ()) -> Real:
        s = self._check(base)
        if x not in self.ground:
            raise InvalidInputError(f"unknown element {x!r} for {self.name}")
        if x in s:
            return 0
        return self.value(s | {x}) - self.value(s)

    def reset_counters(self) -> None:
        with self._lock:
            self.queries = 0
            self.evaluations = 0


@dataclass(frozen=True)
class Instance:
    """``n`` agents, each with a nonempty strategy set drawn from the oracle's ground set.

    Strategy sets are stored sorted by ground index. ``disjoint`` is derived:
    true when the sets are pairwise disjoint and cover the ground set.
    """

    oracle: SubmodularOracle
    strategy_sets: tuple
    disjoint: bool = field(init=False)

    def __post_init__(self):
        ground = self.oracle.ground
        sets = []
        for i, xs in enumerate(self.strategy_sets):
            xs = list(xs)
            if not xs:
                raise InvalidInputError(f"agent {i} has an empty strategy set")
            for x in xs:
                ground.index(x)
            if len(set(xs)) != len(xs):
                raise InvalidInputError(f"agent {i} has repeated strategies")
            sets.append(ground.sort(xs))
        object.__setattr__(self, "strategy_sets", tuple(sets))
        seen = set()
        disjoint = True
        for xs in sets:
            if seen.intersection(xs):
                disjoint = False
            seen.update(xs)
        object.__setattr__(self, "disjoint", disjoint and len(seen) == len(ground))

    @property
    def n_agents(self) -> int:
        return len(self.strategy_sets)

    def check_assignment(self, choices: Sequence[Element]) -> Assignment:
        choices = tuple(choices)
        if len(choices) != self.n_agents:
            raise InvalidInputError(
                f"assignment has {len(choices)} choices for {self.n_agents} agents")
        for i, (x, xs) in enumerate(zip(choices, self.strategy_sets)):
            if x not in xs:
                raise InvalidInputError(f"agent {i} cannot choose {x!r}")
        return choices

    def search_space(self) -> int:
        return math.prod(len(xs) for xs in self.strategy_sets)


def evaluate(oracle: SubmodularOracle, chosen: Iterable[Element]) -> Real:
    """Value of the set of unique elements in ``chosen`` (an assignment or a set)."""
    return oracle.value(chosen)


def marginal(oracle: SubmodularOracle, x: Element, base: Iterable[Element]) -> Real:
    return oracle.marginal(x, base)


def telescoping_value(oracle: SubmodularOracle, sequence: Sequence[Element]) -> Real:
    """Sum of marginal rewards of ``sequence`` taken in order."""
    total = 0
    prefix: set = set()
    for x in sequence:
        total += oracle.marginal(x, prefix)
        prefix.add(x)
    return total


@dataclass(frozen=True)
class PropertyCheck:
    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _all_values(oracle: SubmodularOracle, guard: int) -> tuple[list, list]:
    n = len(oracle.ground)
    if n > guard:
        raise SizeGuardError(
            f"exhaustive check over {n} elements exceeds guard {guard}")
    elems = oracle.ground.elements
    values = []
    for mask in range(1 << n):
        values.append(oracle.value(e for i, e in enumerate(elems) if mask >> i & 1))
    return list(elems), values


def _as_set(elems: list, mask: int) -> frozenset:
    return frozenset(e for i, e in enumerate(elems) if mask >> i & 1)


def check_submodular(oracle: SubmodularOracle, guard: int = SUBMODULAR_GUARD) -> PropertyCheck:
    """Exhaustive diminishing-returns check.

    Uses the pairwise form ``f(S+i) + f(S+j) >= f(S+i+j) + f(S)``, which is
    equivalent to the ``A ⊆ B`` definition. A violation is reported as the
    triple ``(A, B, x)`` with ``Δ(x|A) < Δ(x|B)``.
    """
    elems, f = _all_values(oracle, guard)
    n = len(elems)
    for s in range(1 << n):
        free = [i for i in range(n) if not s >> i & 1]
        for a, i in enumerate(free):
            for j in free[a + 1:]:
                lhs = f[s | 1 << i] + f[s | 1 << j]
                rhs = f[s | 1 << i | 1 << j] + f[s]
                if not leq(rhs, lhs):
                    witness = (_as_set(elems, s), _as_set(elems, s | 1 << i), elems[j])
                    return PropertyCheck(False, witness)
    return PropertyCheck(True)


def check_monotone(oracle: SubmodularOracle, guard: int = SUBMODULAR_GUARD) -> PropertyCheck:
    """Exhaustive check that adding any element never decreases the value.

    A violation is reported as ``(A, B)`` with ``A ⊂ B`` and ``f(B) < f(A)``.
    """
    elems, f = _all_values(oracle, guard)
    n = len(elems)
    for s in range(1 << n):
        for i in range(n):
            if not s >> i & 1 and not leq(f[s], f[s | 1 << i]):
                return PropertyCheck(False, (_as_set(elems, s), _as_set(elems, s | 1 << i)))
    return PropertyCheck(True)


def check_normalized(oracle: SubmodularOracle) -> PropertyCheck:
    v = oracle.value(())
    return PropertyCheck(close(v, 0), None if close(v, 0) else (frozenset(), v))


def brute_force_opt(instance: Instance, guard: int = BRUTE_FORCE_GUARD) -> tuple[Assignment, Real]:
    """Exact maximiser over all assignments.

    Assignments are enumerated in lexicographic order of ground indices and only
    a strictly better value replaces the incumbent, so the first optimum in that
    order is returned.
    """
    size = instance.search_space()
    if size > guard:
        raise SizeGuardError(f"brute force over {size} assignments exceeds guard {guard}")
    oracle = instance.oracle
    best = None
    best_value = None
    for choices in itertools.product(*instance.strategy_sets):
        v = oracle.value(choices, memo=False)
        if best is None or v > best_value + tolerance(v, best_value):
            best, best_value = choices, v
    return best, best_value
