import random

import pytest

from tileforge import fixtures
from tileforge.reduct.ir import torus_points
from tileforge.solver import enumerate_solutions
from tileforge.tiling import Torus, verify


@pytest.mark.parametrize("name,count", [("domino", 1), ("two-dominoes", 2), ("cell", 1), ("rigid", 1),
                                        ("rigid:5,6:2,3", 1)])
def test_get_tilesets(name, count):
    tiles = fixtures.get(name)
    assert len(tiles) == count and all(len(F) > 0 for F in tiles)


def test_get_unknown():
    with pytest.raises(KeyError):
        fixtures.get("nope")


def test_unsat_fixture_has_no_torus_solution():
    system = fixtures.get("unsat")
    for p in range(2, 13, 2):
        assert enumerate_solutions(system, Torus((p,))) == []


def test_random_swap_instances():
    rng = random.Random(11)
    for _ in range(10):
        system, A0, A1, W = fixtures.random_swap_instance(rng)
        assert A0 != A1
        assert verify(system, [A0], W).ok and verify(system, [A1], W).ok
        # the two sets agree left of the replaced block
        assert {a for a in A0 if a[0] < 0} == {a for a in A1 if a[0] < 0}


def test_minimal_linear_instance_satisfies_equations():
    ls, f, moduli = fixtures.minimal_linear_instance()
    h = ls.shifts[0]
    for n in torus_points(moduli):
        n2 = tuple((a + b) % m for a, b, m in zip(n, h, moduli))
        assert f[(1, 0, n2)] == -f[(0, 0, n)]
