"""Small named instances used by the tests and reachable from the CLI as ``fixture:NAME``."""

from __future__ import annotations

from .groups import ExplicitGroup, FiniteSet, PeriodicSet
from .reduct.rigid import rigid_tile
from .tiling import TilingSystem

Z = ExplicitGroup(1)
Z2 = ExplicitGroup(2)


def domino() -> list[FiniteSet]:
    return [FiniteSet.of(Z2, [(0, 0), (1, 0)])]


def two_dominoes() -> list[FiniteSet]:
    return [FiniteSet.of(Z2, [(0, 0), (1, 0)]), FiniteSet.of(Z2, [(0, 0), (0, 1)])]


def single_cell() -> list[FiniteSet]:
    return [FiniteSet.of(Z2, [(0, 0)])]


def tileset_system(tiles) -> TilingSystem:
    """``A_1 (+) F_1 u+ ... = Z^k``."""
    G = tiles[0].group
    return TilingSystem.single(G, list(tiles), PeriodicSet.full(G))


def unsat_system() -> TilingSystem:
    """``A (+) {0,1,2} = Z`` together with ``A (+) {0} = 2Z``: no solution at all."""
    return TilingSystem((
        TilingSystem.single(Z, [FiniteSet.of(Z, [(0,), (1,), (2,)])], PeriodicSet.full(Z)).equations[0],
        TilingSystem.single(Z, [FiniteSet.of(Z, [(0,)])], PeriodicSet.lattice_coset(Z, 2, [(0,)])).equations[0],
    ))


def rigid_system(N=(5, 5), n=(2, 2)) -> TilingSystem:
    return tileset_system([rigid_tile(N, n)])


def get(name: str):
    """``domino``, ``two-dominoes``, ``cell``, ``unsat`` or ``rigid[:N1,N2[:n1,n2]]``.

    Tile sets come back as lists of tiles, the others as tiling systems.
    """
    head, *rest = name.split(":")
    if head == "domino":
        return domino()
    if head == "two-dominoes":
        return two_dominoes()
    if head == "cell":
        return single_cell()
    if head == "unsat":
        return unsat_system()
    if head == "rigid":
        N = tuple(int(x) for x in rest[0].split(",")) if rest else (5, 5)
        n = tuple(int(x) for x in rest[1].split(",")) if len(rest) > 1 else (2,) * len(N)
        return [rigid_tile(N, n)]
    raise KeyError(f"unknown fixture {name!r}")


def swap_counterexample():
    """``F = {(0,0), (1,1)}`` in ``Z x Z_2`` with the constant fibers 0 and 1."""
    G = ExplicitGroup(1, (2,))
    F = FiniteSet.of(G, [(0, 0), (1, 1)])
    return F, (lambda lo, hi, j: FiniteSet.of(G, [(n, j) for n in range(lo, hi + 1)]))


def random_swap_instance(rng, tries: int = 200):
    """``(system, A0, A1, window)`` for one tile in ``Z x Z_m``.

    ``A0`` is periodic; ``A1`` replaces one period block by another torus
    solution that agrees with it on the first ``R`` fibers (``R`` = layer span
    of the tile), so the two differ on finitely many fibers only.
    """
    from .solver import CapExceeded, enumerate_solutions
    from .tiling import Torus, Window

    for _ in range(tries):
        m = rng.choice([2, 3, 4])
        R = rng.choice([0, 1])
        G = ExplicitGroup(1, (m,))
        cells = [(l, x) for l in range(R + 1) for x in range(m)]
        size = rng.choice([d for d in range(1, len(cells) + 1) if (m * (R + 1)) % d == 0 or d <= m])
        F = FiniteSet.of(G, rng.sample(cells, size))
        if not any(g[0] == R for g in F) or not any(g[0] == 0 for g in F):
            continue
        system = TilingSystem.single(G, [F], PeriodicSet.full(G))
        P = rng.choice([R + 2, R + 3])
        try:
            sols = enumerate_solutions(system, Torus((P,)), cap=64)
        except CapExceeded as e:
            sols = e.partial
        pairs = [(S[0], T[0]) for S in sols for T in sols if S[0] != T[0]
                 and all((i, x) in T[0] for (i, x) in S[0] if i < R)
                 and all((i, x) in S[0] for (i, x) in T[0] if i < R)]
        if not pairs:
            continue
        S, T = rng.choice(pairs)
        lo, hi = -2 * P, 3 * P - 1
        A0 = FiniteSet.of(G, [(n, x) for n in range(lo, hi + 1) for (i, x) in S if n % P == i])
        A1 = FiniteSet.of(G, [(n, x) for n in range(lo, hi + 1)
                              for (i, x) in (T if 0 <= n < P else S) if n % P == i])
        return system, A0, A1, Window((lo,), (hi,))
    raise RuntimeError("no swap instance found")


def minimal_linear_instance():
    """``D = D0 = 1`` with one all-zero row per side and ``f_2(n + (1,0)) = -f_1(n)``.

    Returns ``(system, f, moduli)`` with ``f_1 = 1`` and ``f_2 = -1`` on the torus ``(2, 1)``.
    """
    from .reduct.ir import LinearBooleanSystem, torus_points

    ls = LinearBooleanSystem(1, 1, (((0,),), ((0,),)), ((1, 0),))
    moduli = (2, 1)
    f = {}
    for n in torus_points(moduli):
        f[(0, 0, n)] = 1
        f[(1, 0, n)] = -1
    return ls, f, moduli
