"""Combining a system of tiling equations into one equation by stacking layers."""

from __future__ import annotations

import math
from typing import Sequence

from ..groups import ExplicitGroup, FiniteSet, PeriodicSet, restrict_to_torus
from ..tiling import TilingEquation, TilingSystem
from .ir import BadStackHeight, EmptyTile, NotConfined, Reduction


def _check(system: TilingSystem, N: int) -> None:
    if N <= system.M:
        raise BadStackHeight(f"stack height N={N} must exceed the number of equations M={system.M}")
    for m, eq in enumerate(system.equations):
        for j, F in enumerate(eq.tiles):
            if not F:
                raise EmptyTile(f"tile {j} of equation {m} is empty")


def combine(system: TilingSystem, N: int | None = None) -> Reduction:
    """One equation over ``Z^d x G0 x Z_N`` equivalent to the whole system.

    Targets must be cylinders ``Z^d x E0^(m)``.  Layer ``m`` (1-based) of the
    new tiles and target carries equation ``m``.
    """
    N = system.M + 1 if N is None else N
    _check(system, N)
    G = system.group
    big = ExplicitGroup(G.free_rank, G.moduli + (N,))
    E0s = []
    for m, eq in enumerate(system.equations):
        if not eq.target.is_cylinder():
            raise ValueError(f"target of equation {m} is not of the form Z^d x E0")
        E0s.append(eq.target.finite_slice())
    tiles = []
    for j in range(system.J):
        tiles.append(FiniteSet.of(big, (f + (m + 1,) for m, eq in enumerate(system.equations) for f in eq.tiles[j])))
    E0 = [e + (m + 1,) for m, E in enumerate(E0s) for e in E]
    target = PeriodicSet.cylinder(big, E0)
    stacked = TilingSystem((TilingEquation(big, tiles, target),))

    def lift(assign: Sequence[FiniteSet], moduli=None) -> list[FiniteSet]:
        out = []
        for A in assign:
            space = ExplicitGroup(A.group.free_rank, A.group.moduli + (N,))
            out.append(FiniteSet.of(space, (a + (0,) for a in A)))
        return out

    def project(assign: Sequence[FiniteSet], moduli=None) -> list[FiniteSet]:
        out = []
        for A in assign:
            if any(a[-1] for a in A):
                raise NotConfined("stacked solution has points off layer 0")
            space = ExplicitGroup(A.group.free_rank, A.group.moduli[:-1])
            out.append(FiniteSet.of(space, (a[:-1] for a in A)))
        return out

    return Reduction("combine", system, stacked, lift, project, {"N": N})


def combine_zd(system: TilingSystem, N: int | None = None) -> Reduction:
    """One equation over ``Z^(d+1)``: layer ``m`` sits at heights ``NZ + m``.

    Solutions are handled on tori; the lift of a torus solution on moduli
    ``p`` lives on the torus ``p + (N,)``.
    """
    N = system.M + 1 if N is None else N
    _check(system, N)
    G = system.group
    if not G.is_finite and G.moduli:
        raise ValueError("combine_zd works over Z^d")
    d = G.free_rank
    big = ExplicitGroup(d + 1)
    periods = [1] * d
    for eq in system.equations:
        periods = [math.lcm(a, b) for a, b in zip(periods, eq.target.periods)]
    periods = tuple(periods)
    reps = []
    for m, eq in enumerate(system.equations):
        lifted = _refine(eq.target, periods)
        reps.extend(r + (m + 1,) for r in lifted)
    quot = big.torus(periods + (N,))
    target = PeriodicSet(big, periods + (N,), FiniteSet.of(quot, reps))
    tiles = [FiniteSet.of(big, (f + (m + 1,) for m, eq in enumerate(system.equations) for f in eq.tiles[j]))
             for j in range(system.J)]
    stacked = TilingSystem((TilingEquation(big, tiles, target),))

    def lift(assign: Sequence[FiniteSet], moduli=None) -> list[FiniteSet]:
        out = []
        for A in assign:
            space = ExplicitGroup(0, A.group.moduli + (N,))
            out.append(FiniteSet.of(space, (a + (0,) for a in A)))
        return out

    def project(assign: Sequence[FiniteSet], moduli=None) -> list[FiniteSet]:
        out = []
        for A in assign:
            if any(a[-1] % N for a in A):
                raise NotConfined("stacked solution has points off NZ")
            layer = [a[:-1] for a in A if a[-1] == 0]
            out.append(FiniteSet.of(ExplicitGroup(0, A.group.moduli[:-1]), layer))
        return out

    return Reduction("combine_zd", system, stacked, lift, project, {"N": N},
                     target_torus=lambda moduli: tuple(moduli) + (N,))


def _refine(E: PeriodicSet, periods) -> list:
    """Representatives of ``E`` modulo the finer lattice given by ``periods``."""
    return list(restrict_to_torus(E, periods))
