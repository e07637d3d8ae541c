import itertools
import math
import random
from fractions import Fraction

import pytest

from dsubmod.core import check_monotone, check_normalized, check_submodular, telescoping_value
from dsubmod.dag import Coloring, InfoDag, chromatic_number
from dsubmod.errors import InvalidInputError
from dsubmod.graphgen import gen_er_dag
from dsubmod.objectives import (CoverageGrid, Disk, make_adversarial, make_coverage,
                                make_universal, make_weighted_coverage, random_disks,
                                read_disks, reduce_to_disjoint, write_disks)
from dsubmod.verify import random_intersecting_instance

# Grid-point counts frozen from a plain double loop over cell centres.
COUNT_R007_CENTRE_G100 = 156
COUNT_R01_QUARTER_G100 = 316


def test_disk_covering_the_square():
    inst = make_coverage([[Disk(0.5, 0.5, 1.0)]], CoverageGrid(20))
    assert inst.oracle.value([(0, 0)]) == 1


def test_small_disk_matches_point_count():
    inst = make_coverage([[Disk(0.5, 0.5, 0.07)]], CoverageGrid(100))
    v = inst.oracle.value([(0, 0)])
    assert v == Fraction(COUNT_R007_CENTRE_G100, 10_000)
    assert abs(float(v) - math.pi * 0.07 ** 2) < 0.1 * math.pi * 0.07 ** 2


def test_disjoint_disks_add_up():
    disks = [[Disk(0.25, 0.25, 0.1)], [Disk(0.75, 0.75, 0.1)]]
    f = make_coverage(disks, CoverageGrid(100)).oracle
    assert f.value([(0, 0)]) == Fraction(COUNT_R01_QUARTER_G100, 10_000)
    assert f.value([(0, 0), (1, 0)]) == Fraction(2 * COUNT_R01_QUARTER_G100, 10_000)


def test_overlapping_disks_are_submodular():
    rng = random.Random(2)
    inst = make_coverage(random_disks(rng, 3, 3, 0.2), CoverageGrid(30))
    assert check_submodular(inst.oracle) and check_monotone(inst.oracle)
    assert check_normalized(inst.oracle)


def test_invalid_disks_and_grid():
    with pytest.raises(InvalidInputError):
        Disk(0.5, 0.5, 0.0)
    with pytest.raises(InvalidInputError):
        Disk(float("nan"), 0.5, 0.1)
    with pytest.raises(InvalidInputError):
        CoverageGrid(0)
    with pytest.raises(InvalidInputError):
        make_coverage([[]])


def test_weighted_coverage_value():
    inst = make_weighted_coverage([[[0, 1]], [[1, 2], [3]]], [1, 2, 3, 4])
    f = inst.oracle
    assert f.value([(0, 0), (1, 0)]) == 6
    assert f.value([(0, 0), (1, 1)]) == 7
    with pytest.raises(InvalidInputError):
        make_weighted_coverage([[[5]]], [1])


def test_weighted_coverage_large_universe_path():
    inst = make_weighted_coverage([[[0, 20]], [[20, 21]]], list(range(1, 23)))
    assert inst.oracle.value([(0, 0), (1, 0)]) == 1 + 21 + 22


def adversarial_by_definition(colors, s):
    """Telescoped marginal definition along the agent index order: b_i gives 1;
    a_i gives 1 unless some earlier-chosen a_j shares its colour."""
    total, seen = 0, set()
    for kind, i in sorted(s, key=lambda e: (e[1], e[0])):
        if kind == "b":
            total += 1
        elif colors[i] not in seen:
            total += 1
            seen.add(colors[i])
    return total


@pytest.mark.parametrize("seed", range(5))
def test_adversarial_closed_form_matches_definition(seed):
    g = gen_er_dag(6, 0.5, seed)
    chi, col = chromatic_number(g)
    inst = make_adversarial(g, col)
    f = inst.oracle
    for pick in itertools.product(*inst.strategy_sets):
        assert f.value(pick) == adversarial_by_definition(col.colors, pick)
        order = list(pick)
        random.Random(seed).shuffle(order)
        assert telescoping_value(f, order) == f.value(pick)
    assert check_monotone(f) and check_submodular(f) and check_normalized(f)
    assert f.value([("a", i) for i in range(6)]) == chi
    assert f.value([("b", i) for i in range(6)]) == 6


def test_adversarial_rejects_improper_coloring():
    g = InfoDag(2, [(0, 1)])
    with pytest.raises(InvalidInputError):
        make_adversarial(g, Coloring((1, 1)))


def test_universal_function():
    inst = make_universal(3)
    f = inst.oracle
    assert f.value(["e1", "e1", "e2"]) == 2
    assert f.value([]) == 0
    assert inst.strategy_sets[0] == ("e1", "e2", "e3")
    assert len(make_universal(2, 5).oracle.ground) == 5
    with pytest.raises(InvalidInputError):
        make_universal(3, 2)


def test_reduction_values():
    inst = make_universal(2)
    red = reduce_to_disjoint(inst)
    f2 = red.reduced_instance.oracle
    assert red.reduced_instance.disjoint
    assert f2.value([(0, "e1"), (1, "e1")]) == 1
    assert f2.value([(0, "e1"), (1, "e2")]) == 2
    assert red.lift([(0, "e1"), (1, "e1")]) == frozenset({"e1"})


def test_reduction_identity_on_disjoint():
    inst = make_weighted_coverage([[[0]], [[1]]], [1, 1])
    red = reduce_to_disjoint(inst)
    assert red.reduced_instance is inst
    assert red.back_map == {(0, 0): (0, 0), (1, 0): (1, 0)}


@pytest.mark.parametrize("seed", range(5))
def test_reduction_preserves_submodularity(seed):
    inst = random_intersecting_instance(random.Random(seed), 3)
    f2 = reduce_to_disjoint(inst).reduced_instance.oracle
    elems = f2.ground.elements
    subsets = [frozenset(c) for r in range(len(elems) + 1) for c in itertools.combinations(elems, r)]
    rng = random.Random(seed)
    for _ in range(200):
        a, b = rng.choice(subsets), rng.choice(subsets)
        assert f2(a) + f2(b) >= f2(a | b) + f2(a & b)


def test_disk_file_round_trip(tmp_path):
    disks = random_disks(random.Random(1), 3, 2, 0.07)
    path = tmp_path / "disks.txt"
    write_disks(disks, path)
    assert read_disks(path) == disks


def test_disk_file_malformed(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 1\n0.1 0.1 0.1\n")
    with pytest.raises(InvalidInputError):
        read_disks(path)
