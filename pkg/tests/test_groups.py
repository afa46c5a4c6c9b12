import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tileforge.groups import (
    CostExceeded,
    DimensionMismatch,
    ExplicitGroup,
    FiniteSet,
    OverlapError,
    PeriodMismatch,
    PeriodicSet,
    direct_sum,
    fiber_set,
    restrict_to_torus,
    uplus,
)
from tileforge.reduct.rigid import rigid_tile

Z = ExplicitGroup(1)
Z2 = ExplicitGroup(2)
Z5 = ExplicitGroup(0, (5,))
ZxZ2 = ExplicitGroup(1, (2,))


def test_add_examples():
    assert Z2.add((1, 2), (3, 4)) == (4, 6)
    assert Z5.add((3,), (4,)) == (2,)
    assert ZxZ2.add((1, 1), (-1, 1)) == (0, 0)


def test_add_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Z2.add((1,), (1, 2))


mixed = ExplicitGroup(1, (3, 4))
elems = st.tuples(st.integers(-50, 50), st.integers(0, 2), st.integers(0, 3))


@given(elems, elems, elems)
def test_group_laws(a, b, c):
    G = mixed
    assert G.add(G.add(a, b), c) == G.add(a, G.add(b, c))
    assert G.add(a, b) == G.add(b, a)
    assert G.add(a, G.zero) == a
    assert G.add(a, G.neg(a)) == G.zero


def test_direct_sum_empty_operand():
    assert len(direct_sum(FiniteSet.of(Z, []), FiniteSet.of(Z, [(0,)]))) == 0


def test_direct_sum_overlap_witness():
    F = FiniteSet.of(Z, [(0,), (1,)])
    with pytest.raises(OverlapError) as e:
        direct_sum(F, F)
    assert e.value.witness == (1,)


def test_direct_sum_torus_square():
    T = ExplicitGroup(0, (4, 4))
    A = FiniteSet.of(T, [(0, 0), (2, 0), (0, 2), (2, 2)])
    F = FiniteSet.of(T, [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert direct_sum(A, F).as_set() == frozenset(T.elements())


small = st.frozensets(st.integers(-6, 6), max_size=5)


@settings(max_examples=200)
@given(small, small, small)
def test_direct_sum_distributes_over_disjoint_union(A, B, F):
    B = B - A
    to = lambda s: FiniteSet.of(Z, [(x,) for x in s])
    try:
        left = direct_sum(to(A | B), to(F))
        parts = (direct_sum(to(A), to(F)), direct_sum(to(B), to(F)))
    except OverlapError:
        return
    try:
        right = uplus(Z, *parts)
    except OverlapError:
        pytest.fail("left side defined but right side overlaps")
    assert left.as_set() == right.as_set()


def test_periodic_membership():
    E = PeriodicSet.lattice_coset(Z, 2, [(0,)])
    assert (4,) in E
    assert (3,) not in E
    G = ExplicitGroup(2, (3,))
    E0 = PeriodicSet.cylinder(G, [(1,)])
    assert (7, -2, 1) in E0 and (7, -2, 0) not in E0


def test_periodic_membership_dimension():
    with pytest.raises(DimensionMismatch):
        PeriodicSet.full(Z2).contains((1,))


def test_restrict_examples():
    E = PeriodicSet.lattice_coset(Z, 2, [(0,)])
    assert restrict_to_torus(E, (4,)).as_set() == {(0,), (2,)}
    assert len(restrict_to_torus(PeriodicSet.full(Z2), (3, 3))) == 9
    assert len(restrict_to_torus(PeriodicSet.full(Z2), (10, 10))) == 100


def test_restrict_period_mismatch():
    E = PeriodicSet.lattice_coset(Z, 2, [(0,)])
    with pytest.raises(PeriodMismatch):
        restrict_to_torus(E, (3,))


@given(st.integers(1, 3), st.integers(1, 3), st.frozensets(st.tuples(st.integers(0, 5), st.integers(0, 1)), max_size=6))
def test_restrict_size(r, k, reps):
    G = ExplicitGroup(1, (2,))
    reps = {(a % r, b) for a, b in reps}
    E = PeriodicSet.lattice_coset(G, r, reps)
    assert len(restrict_to_torus(E, (r * k,))) == len(reps) * k


def test_restrict_cost_bound():
    S = fiber_set(ExplicitGroup(0, (8,) * 8), (1,) + (0,) * 7, 8, [0])
    with pytest.raises(CostExceeded):
        restrict_to_torus(S, (), bound=1000)


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.integers(2, 6), st.sets(st.integers(0, 5), max_size=3))
def test_structured_membership_matches_enumeration(coeffs, N, targets):
    G = ExplicitGroup(0, (N, N, N))
    targets = {t % N for t in targets}
    S = fiber_set(G, coeffs, N, targets)
    brute = {g for g in itertools.product(range(N), repeat=3)
             if sum(c * x for c, x in zip(coeffs, g)) % N in targets}
    assert {g for g in G.elements() if g in S} == brute
    assert restrict_to_torus(S, ()).as_set() == brute


def test_rigid_tile_size():
    assert len(rigid_tile((5, 5), (2, 2))) == 25
    assert rigid_tile((5,), (2,)).as_set() == {(1,), (2,), (3,), (4,), (5,)}
