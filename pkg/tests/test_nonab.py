import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tileforge import fixtures
from tileforge import nonab as nb
from tileforge.groups import ExplicitGroup, FiniteSet, PeriodicSet
from tileforge.tiling import TilingSystem, Torus, verify

perms = st.permutations(range(16)).map(lambda p: nb.Perm16(tuple(p)))
cells = st.tuples(st.integers(0, 3), st.integers(0, 3))


def test_not_a_permutation():
    with pytest.raises(nb.NotAPermutation):
        nb.Perm16((0,) * 16)
    with pytest.raises(nb.NotAPermutation):
        nb.Perm16(tuple(range(15)))


def test_pi_identity():
    assert nb.ZERO.pi() == (0, 0)


@given(perms, perms, perms)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + nb.ZERO == a == nb.ZERO + a
    assert a + (-a) == nb.ZERO
    assert a - b == a + (-b)


@given(perms, perms)
def test_pi_translate(a, b):
    assert (a + b).pi() == (-b)(a.pi())


@given(perms, cells)
def test_pi_regular(a, h):
    p = a.pi()
    assert (a + nb.tau(h)).pi() == ((p[0] + h[0]) % 4, (p[1] + h[1]) % 4)


def test_rho_and_tau():
    assert nb.RHO + nb.RHO == nb.ZERO
    assert nb.tau((1, 2))((3, 3)) == (2, 1)
    assert nb.tau((1, 1)) + nb.tau((2, 3)) == nb.tau((3, 0))


def test_cycles_generate_sixteen():
    rng = random.Random(5)
    for _ in range(20):
        s = nb.random_cycle(rng)
        assert s.is_cycle()
        grp = nb.cyclic_group(s)
        assert len(set(grp)) == 16
        assert s * 16 == nb.ZERO
    assert not nb.ZERO.is_cycle()


def test_stabilizers_closed():
    rng = random.Random(6)
    phis = [nb.random_stabilizer(rng) for _ in range(10)]
    for p in phis:
        assert p.is_stabilizer() and all(p(c) == c for c in nb.CUBE)
    for p, q in zip(phis, phis[1:]):
        assert (p + q).is_stabilizer() and (-p).is_stabilizer()
    assert not nb.tau((1, 0)).is_stabilizer()


# --- fiber ranking --------------------------------------------------------------

@settings(max_examples=200)
@given(st.integers(1, math.factorial(15)), st.sampled_from(nb.CUBE + [(0, 0), (2, 1)]))
def test_rank_round_trip(k, y):
    a = nb.unrank_in_fiber(k, y)
    assert a.pi() == y
    assert nb.rank_in_fiber(a, y) == k


def test_rank_extremes():
    y = (1, 3)
    p = nb.cell(y)
    rest_lo = list(range(1, 16))
    lo = nb.Perm16(tuple(rest_lo[:p]) + (0,) + tuple(rest_lo[p:]))
    rest_hi = rest_lo[::-1]
    hi = nb.Perm16(tuple(rest_hi[:p]) + (0,) + tuple(rest_hi[p:]))
    assert nb.rank_in_fiber(lo, y) == 1
    assert nb.rank_in_fiber(hi, y) == math.factorial(15)


def test_rank_errors():
    with pytest.raises(nb.NotInFiber):
        nb.rank_in_fiber(nb.ZERO, (1, 1))
    with pytest.raises(nb.NotInFiber):
        nb.unrank_in_fiber(0, (1, 1))


def test_fibers_disjoint():
    rng = random.Random(2)
    for _ in range(100):
        a = nb.random_perm(rng)
        assert sum(a.images[nb.cell(y)] == 0 for y in nb.CUBE) <= 1


# --- the encoding of one cube point ----------------------------------------------

@pytest.mark.parametrize("y", nb.CUBE)
def test_lemma_oracle_shapes(y):
    L = nb.lemma_oracles(y)
    assert nb.tau(y) in L["A"]
    assert nb.ZERO not in L["A"]
    assert len(L["F_tau"].elements) == 4
    sigma = nb.random_cycle(random.Random(0))
    assert len(set(L["F_cycle"](sigma).elements)) == 16


def test_not_in_cube():
    with pytest.raises(nb.NotInCube):
        nb.lemma_oracles((0, 0))


@pytest.mark.parametrize("y", nb.CUBE)
def test_lemma_sampled(y):
    rng = random.Random(hash(y) & 0xFFFF)
    L = nb.lemma_oracles(y)
    G = nb.PermGroup()
    assert nb.sampled_cover_check(L["A"], L["F_tau"], L["B"], G, 500, seed=1).ok
    F = L["F_cycle"](nb.random_cycle(rng), nb.random_stabilizer(rng))
    assert nb.sampled_cover_check(L["A"], F, L["S16"], G, 500, seed=2).ok
    # sampling through A hits the target every time
    st_ = nb.sampled_cover_check(L["A"], L["F_tau"], L["B"], G, 300, seed=3, mix=1.0)
    assert st_.ok and st_.in_target == 300


def test_corollary_sampled():
    C = nb.corollary_oracles((3, 1))
    P = nb.PairGroup()
    assert nb.sampled_cover_check(C["A"], C["F_tau"], C["E_tau"], P, 500, seed=4, mix=0.3).ok
    F = C["F_cycle"](nb.random_cycle(random.Random(9)))
    assert nb.sampled_cover_check(C["A"], F, C["ALL"], P, 300, seed=5).ok


def test_defect_detected():
    extra = nb.unrank_in_fiber(1, (1, 3))
    A = nb.fiber_oracle((1, 1), [extra])
    L = nb.lemma_oracles((1, 1))
    st_ = nb.sampled_cover_check(A, L["F_tau"], L["B"], nb.PermGroup(), 10_000, seed=0, mix=0.5,
                                 stop_at_first=True)
    assert st_.violations >= 1 and st_.witnesses


def test_cover_stats_json():
    d = nb.CoverStats("x", 3, 1, 0).to_dict()
    assert d == {"family": "x", "samples": 3, "in_target": 1, "violations": 0, "witnesses": []}


# --- soundness on abelian miniatures -----------------------------------------------

class Cyclic:
    def __init__(self, n):
        self.n = n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return -a % self.n

    def random(self, rng):
        return rng.randrange(self.n)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 11), min_size=1, max_size=6), st.sets(st.integers(0, 11), min_size=1, max_size=4))
def test_sampled_agrees_with_verify(A, F):
    n = 12
    G = ExplicitGroup(0, (n,))
    system = TilingSystem.single(G, [FiniteSet.of(G, [(f,) for f in F])], PeriodicSet.full(G))
    exact = verify(system, [FiniteSet.of(G, [(a,) for a in A])], Torus(())).ok
    oa = nb.OracleSet("A", lambda x: x in A, sorted(A))
    of = nb.OracleSet("F", lambda x: x in F, sorted(F))
    oe = nb.OracleSet("E", lambda x: True)
    sampled = nb.sampled_cover_check(oa, of, oe, Cyclic(n), 400, seed=0)
    assert sampled.ok == exact


# --- linear encoding ------------------------------------------------------------

def test_k_decomposition():
    for y in nb.CUBE:
        for y2 in nb.CUBE:
            assert nb.k_decomposition(y, y2) == (y2[1] % 4 == (-y[0]) % 4)


def test_linear_encoding_minimal():
    ls, f, moduli = fixtures.minimal_linear_instance()
    res = nb.linear_encoding_forward(ls, f, moduli, samples=200, seed=1)
    kinds = {k[0] for k in res}
    assert kinds == {"linear", "sign", "shift", "cube-tau", "cube-cycle"}
    for key, st_ in res.items():
        assert st_.ok, (key, st_.witnesses)


def test_linear_encoding_pointwise_shift():
    ls, f, moduli = fixtures.minimal_linear_instance()
    enc = nb.LinearEncoding(ls, f, moduli)
    h = ls.shifts[0]
    for n in [(0, 0), (1, 0)]:
        for t in (0, 1):
            n2 = ((n[0] + h[0]) % moduli[0], (n[1] + h[1]) % moduli[1])
            assert nb.k_decomposition(enc.Y_4(n, t)[0], enc.Y_4(n2, t)[0])


def test_linear_encoding_precondition():
    ls, f, moduli = fixtures.minimal_linear_instance()
    bad = dict(f)
    bad[(1, 0, (1, 0))] = 1
    with pytest.raises(nb.PreconditionFailed):
        nb.LinearEncoding(ls, bad, moduli)
