import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tileforge import fixtures
from tileforge.groups import ExplicitGroup, FiniteSet, NotFinite, PeriodicSet
from tileforge.tiling import (
    AgreementViolation,
    NoRepeatFound,
    PrereqViolation,
    RegionIncompatible,
    TilingSystem,
    Torus,
    Window,
    Window1D,
    fiber_swap,
    fourier,
    inverse_fourier,
    newman_periodize,
    swap_dichotomy_check,
    verify,
)

Z = ExplicitGroup(1)
Z2 = ExplicitGroup(2)
ZxZ2 = ExplicitGroup(1, (2,))
SQUARE = FiniteSet.of(Z2, [(0, 0), (1, 0), (0, 1), (1, 1)])


def one_tile(G, F, E=None):
    return TilingSystem.single(G, [F], E if E is not None else PeriodicSet.full(G))


def test_square_lattice_tiles_torus():
    A = PeriodicSet.lattice_coset(Z2, 2, [(0, 0)])
    assert verify(one_tile(Z2, SQUARE), [A], Torus((4, 4))).ok


def test_empty_target_empty_set():
    system = one_tile(Z, FiniteSet.of(Z, [(0,)]), PeriodicSet.empty(Z))
    assert verify(system, [FiniteSet.of(Z, [])], Torus((3,))).ok


def test_staircase_on_window():
    # horizontal strips of height 2, strip m shifted by a(m)
    a = {m: (m * m) % 2 for m in range(-3, 6)}
    A = FiniteSet.of(Z2, [(2 * i + a[m], 2 * m) for i in range(-3, 6) for m in range(-3, 6)])
    rep = verify(one_tile(Z2, SQUARE), [A], Window((-2, -2), (8, 8)))
    assert rep.ok and rep.checked == 9 * 9


def test_verify_reports_failure():
    A = FiniteSet.of(Z2, [(0, 0)])
    rep = verify(one_tile(Z2, SQUARE), [A], Torus((4, 4)))
    assert not rep.ok and rep.failures


def test_verify_region_dimension():
    with pytest.raises(RegionIncompatible):
        verify(one_tile(Z2, SQUARE), [FiniteSet.of(Z2, [])], Torus((4,)))


@settings(max_examples=30)
@given(st.integers(-5, 5), st.integers(-5, 5))
def test_verify_translation_equivariant(h1, h2):
    system = fixtures.tileset_system(fixtures.domino())
    A = FiniteSet.of(Z2, [(2 * i + (j % 2), j) for i in range(-4, 5) for j in range(-6, 7)])
    W = Window((-5, -4), (5, 4))
    base = verify(system, [A], W)
    moved = verify(system, [A.translate((h1, h2))], Window((-5 + h1, -4 + h2), (5 + h1, 4 + h2)))
    assert base.ok and moved.ok and base.checked == moved.checked


# --- Newman periodization -----------------------------------------------------

def test_newman_domino_line():
    system = one_tile(Z, FiniteSet.of(Z, [(0,), (1,)]))
    A = FiniteSet.of(Z, [(n,) for n in range(-10, 11) if n % 2 == 0])
    sets, D = newman_periodize(system, [A], Window1D(-10, 10), L=1, r=1)
    assert D == 2
    assert verify(system, sets, Torus((D,))).ok


def test_newman_gapped_tile():
    system = one_tile(Z, FiniteSet.of(Z, [(0,), (2,)]))
    A = FiniteSet.of(Z, [(n,) for n in range(-16, 17) if n % 4 in (0, 1)])
    sets, D = newman_periodize(system, [A], Window1D(-16, 16), L=2, r=1)
    assert D == 4
    assert sets[0].restrict_to_torus((4,)).as_set() == {(0,), (1,)}


@pytest.mark.parametrize("period", [2, 3, 6])
def test_newman_period_bound(period):
    # tile {0,1,...,period-1} can only be tiled by a coset of period*Z
    F = FiniteSet.of(Z, [(i,) for i in range(period)])
    system = one_tile(Z, F)
    A = FiniteSet.of(Z, [(n,) for n in range(-30, 31) if n % period == 1])
    _, D = newman_periodize(system, [A], Window1D(-30, 30), L=period - 1, r=1)
    assert D <= period


def test_newman_no_repeat():
    system = one_tile(Z, FiniteSet.of(Z, [(0,), (1,), (2,)]))
    A = FiniteSet.of(Z, [(n,) for n in range(-3, 4) if n % 3 == 0])
    with pytest.raises(NoRepeatFound):
        newman_periodize(system, [A], Window1D(-3, 3), L=2, r=1)


# --- fiber swapping -----------------------------------------------------------

def graph(fn, lo, hi):
    return FiniteSet.of(ZxZ2, [(n, fn(n)) for n in range(lo, hi + 1)])


def test_swap_full_fiber_tile():
    F = FiniteSet.of(ZxZ2, [(0, 0), (0, 1)])
    system = one_tile(ZxZ2, F)
    A0 = graph(lambda n: 0, -8, 8)
    A1 = graph(lambda n: 0 if n < 0 else (n * 7) % 2, -8, 8)
    rng = random.Random(1)
    W = Window1D(-8, 8)
    for _ in range(20):
        omega = {n: rng.randint(0, 1) for n in range(-8, 9)}
        assert verify(system, [fiber_swap(A0, A1, omega, W, n0=1)], W).ok


def test_swap_trivial_omega():
    A0 = graph(lambda n: n % 2, -4, 4)
    A1 = graph(lambda n: 0, -4, 4)
    assert fiber_swap(A0, A1, {}, Window1D(-4, 4)) == A0


def test_swap_agreement_violation():
    A0 = graph(lambda n: 0, -4, 4)
    A1 = graph(lambda n: 1, -4, 4)
    with pytest.raises(AgreementViolation):
        fiber_swap(A0, A1, {}, Window1D(-4, 4), n0=1)


def test_swap_counterexample_fails():
    F, mk = fixtures.swap_counterexample()
    system = one_tile(ZxZ2, F)
    A0, A1 = mk(-6, 6, 0), mk(-6, 6, 1)
    W = Window1D(-6, 6)
    assert verify(system, [A0], W).ok and verify(system, [A1], W).ok
    mixed = fiber_swap(A0, A1, lambda n: int(n >= 0), W)
    assert not verify(system, [mixed], W).ok


# --- Fourier ------------------------------------------------------------------

Z4 = ExplicitGroup(0, (4,))


def test_fourier_examples():
    delta = fourier({(0,): 1}, Z4)
    assert all(abs(v - 1) < 1e-12 for v in delta.values())
    ones = fourier(lambda x: 1, Z4)
    assert abs(ones[(0,)] - 4) < 1e-12 and all(abs(ones[(k,)]) < 1e-12 for k in (1, 2, 3))
    ind = fourier({(0,): 1, (2,): 1}, Z4)
    assert [round(abs(ind[(k,)]), 9) for k in range(4)] == [2, 0, 2, 0]


def test_fourier_needs_finite_group():
    with pytest.raises(NotFinite):
        fourier({}, Z)


G0s = [ExplicitGroup(0, m) for m in [(2,), (3,), (4,), (2, 2), (2, 3), (3, 4)]]


@settings(max_examples=60)
@given(st.sampled_from(G0s), st.data())
def test_fourier_against_numpy(G, data):
    vals = data.draw(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                              min_size=G.order, max_size=G.order))
    f = dict(zip(G.elements(), vals))
    fh = fourier(f, G)
    arr = np.array(vals).reshape(G.moduli)
    ref = np.fft.fftn(arr)
    for xi in G.elements():
        assert abs(fh[xi] - ref[xi]) < 1e-9
    back = inverse_fourier(fh, G)
    assert all(abs(back[x] - f[x]) < 1e-9 for x in G.elements())
    # Parseval
    lhs = sum(abs(v) ** 2 for v in vals)
    rhs = sum(abs(v) ** 2 for v in fh.values()) / G.order
    assert abs(lhs - rhs) < 1e-9 * max(1.0, lhs)


def test_dichotomy_full_fiber_example():
    F = FiniteSet.of(ZxZ2, [(0, 0), (0, 1)])
    A0 = graph(lambda n: 0, -6, 6)
    A1 = graph(lambda n: int(n in (1, 3)), -6, 6)
    rep = swap_dichotomy_check(A0, A1, F, Window1D(-6, 6))
    assert rep.ok and rep.max_residual < 1e-9
    # both slices of F are full fibers, so the F-side holds at the odd character
    assert rep.sides[(1,)] in ("F", "both")


def test_dichotomy_vacuous():
    F = FiniteSet.of(ZxZ2, [(0, 0), (0, 1)])
    A = graph(lambda n: 0, -3, 3)
    rep = swap_dichotomy_check(A, A, F, Window1D(-3, 3))
    assert rep.ok and rep.max_residual == 0


def test_dichotomy_prerequisite():
    F = FiniteSet.of(ZxZ2, [(0, 0), (0, 1)])
    A0 = graph(lambda n: 0, -3, 3)
    A1 = FiniteSet.of(ZxZ2, list(A0) + [(0, 1)])
    with pytest.raises(PrereqViolation):
        swap_dichotomy_check(A0, A1, F, Window1D(-3, 3))
