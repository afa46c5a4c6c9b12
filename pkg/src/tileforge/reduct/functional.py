"""Functional equations as tiling equations: solutions are graphs ``{(n, 0, f(n))}``."""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from ..groups import DEFAULT_COST_BOUND, CostExceeded, ExplicitGroup, FiniteSet, PeriodicSet, uplus
from ..tiling import TilingEquation, TilingSystem
from .ir import BadStackHeight, FunctionalSystem, NotAGraph, NotConfined, Reduction, to_finite
from .rigid import rigid_tile

MAX_PERMUTATION_J = 4


def _permutations(J: int):
    if J > MAX_PERMUTATION_J:
        raise ValueError(f"J={J} would need {math.factorial(J)} permutation equations")
    return list(itertools.permutations(range(J)))


def tile_cost(fs: FunctionalSystem, marker_size: int) -> int:
    """Total number of tile cells the emitted system would contain."""
    total = 0
    for eq in fs.equations:
        for j in range(fs.J):
            total += len(eq.H[j]) * _size(eq.F[j]) + marker_size
    return total + len(_permutations(fs.J)) * fs.J * marker_size


def _size(S) -> int:
    from ..groups import set_size

    return set_size(S)


def functional_to_tilings(fs: FunctionalSystem, N: int | None = None, marker_per_shift: bool = False,
                          bound: int = DEFAULT_COST_BOUND) -> Reduction:
    """Tiling system over ``domain x Z_N x G0`` equivalent to ``fs``.

    Tile ``j`` of equation ``m`` is ``(-H_j x {0} x F_j) u+ ({0} x {j} x G0)``: the
    layer-``j`` marker is attached once.  With ``marker_per_shift`` the marker
    is attached at every ``-h`` instead, which covers layer ``j`` ``|H_j|``
    times and is only correct when ``|H_j| = 1``.
    """
    J = fs.J
    N = J + 1 if N is None else N
    if N <= J:
        raise BadStackHeight(f"N={N} must exceed J={J}")
    dom, G0 = fs.domain, fs.codomain
    r = dom.free_rank
    T = ExplicitGroup(r, dom.moduli + (N,) + G0.moduli)
    cost = tile_cost(fs, G0.order)
    if cost > bound:
        raise CostExceeded("functional_to_tilings", cost, bound)
    zero = dom.zero
    G0_elems = G0.elements()
    dom_tors = dom.finite_part.elements()

    def el(n, z, y):
        return tuple(n) + (z,) + tuple(y)

    def marker(j, anchor=zero):
        return [el(anchor, j + 1, g) for g in G0_elems]

    equations = []
    for eq in fs.equations:
        tiles = []
        for j in range(J):
            F = to_finite(eq.F[j], bound)
            body = [el(dom.neg(h), 0, f) for h in eq.H[j] for f in F]
            if marker_per_shift:
                marks = [c for h in eq.H[j] for c in marker(j, dom.neg(h))]
                tiles.append(FiniteSet.of(T, body + marks))
            else:
                tiles.append(uplus(T, body, marker(j)))
        E = to_finite(eq.E, bound)
        finite = [t + (0,) + e for t in dom_tors for e in E]
        finite += [t + (j + 1,) + g for t in dom_tors for j in range(J) for g in G0_elems]
        equations.append(TilingEquation(T, tiles, PeriodicSet.cylinder(T, finite)))
    layers = [t + (j + 1,) + g for t in dom_tors for j in range(J) for g in G0_elems]
    for sigma in _permutations(J):
        tiles = [FiniteSet.of(T, marker(sigma[j])) for j in range(J)]
        equations.append(TilingEquation(T, tiles, PeriodicSet.cylinder(T, layers)))
    system = TilingSystem(tuple(equations))

    def forward(f: dict, moduli) -> list[FiniteSet]:
        space = T.torus(moduli)
        return [FiniteSet.of(space, (el(n, 0, f[(j, n)]) for n in fs.domain_points(moduli))) for j in range(J)]

    def backward(assign: Sequence[FiniteSet], moduli) -> dict:
        dim = dom.dim
        f: dict = {}
        for j, A in enumerate(assign):
            for a in A:
                if a[dim] != 0:
                    raise NotConfined(f"tile {j} placed on layer {a[dim]}")
                n = a[:dim]
                if (j, n) in f:
                    raise NotAGraph(f"two values of f_{j} at {n}")
                f[(j, n)] = a[dim + 1:]
        for n in fs.domain_points(moduli):
            for j in range(J):
                if (j, n) not in f:
                    raise NotAGraph(f"f_{j} undefined at {n}")
        return f

    return Reduction("functional_to_tilings", fs, system, forward, backward, {"N": N})


def functional_to_tilings_zd(fs: FunctionalSystem, N: int | None = None, bump: Sequence[int] | None = None,
                             bound: int = DEFAULT_COST_BOUND) -> Reduction:
    """Tiling system over ``domain x Z x Z^k`` for a codomain ``prod Z_{N_i}``, ``N_i >= 5``.

    Layers are ``NZ + j`` and the finite group is replaced by ``Z^k`` with the
    rigid tile standing in for a full fiber.  Target torus for solution maps:
    ``moduli + (N,) + (N_1, ..., N_k)``.
    """
    J = fs.J
    N = J + 1 if N is None else N
    if N <= J:
        raise BadStackHeight(f"N={N} must exceed J={J}")
    dom, G0 = fs.domain, fs.codomain
    Ns = G0.moduli
    k = len(Ns)
    R = rigid_tile(Ns, bump)
    r = dom.free_rank
    T = ExplicitGroup(r + 1 + k, dom.moduli)
    cost = tile_cost(fs, len(R))
    if cost > bound:
        raise CostExceeded("functional_to_tilings_zd", cost, bound)
    dom_tors = dom.finite_part.elements()
    zero = dom.zero
    periods = (1,) * r + (N,) + Ns

    def el(n, z, y):
        return tuple(n[:r]) + (z,) + tuple(y) + tuple(n[r:])

    def marker(j):
        return [el(zero, j + 1, c) for c in R]

    def target(E0):
        quot = T.torus(periods)
        reps = [(0,) * r + (0,) + tuple(e) + t for t in dom_tors for e in E0]
        reps += [(0,) * r + (j + 1,) + tuple(y) + t for t in dom_tors for j in range(J) for y in G0.elements()]
        return PeriodicSet(T, periods, FiniteSet.of(quot, reps))

    equations = []
    for eq in fs.equations:
        tiles = []
        for j in range(J):
            F = to_finite(eq.F[j], bound)
            body = [el(dom.neg(h), 0, f) for h in eq.H[j] for f in F]
            tiles.append(uplus(T, body, marker(j)))
        equations.append(TilingEquation(T, tiles, target(to_finite(eq.E, bound))))
    for sigma in _permutations(J):
        tiles = [FiniteSet.of(T, marker(sigma[j])) for j in range(J)]
        equations.append(TilingEquation(T, tiles, target(())))
    system = TilingSystem(tuple(equations))

    def target_torus(moduli):
        return tuple(moduli) + (N,) + Ns

    def forward(f: dict, moduli) -> list[PeriodicSet]:
        per = tuple(moduli) + (N,) + Ns
        quot = T.torus(per)
        return [PeriodicSet(T, per, FiniteSet.of(quot, (el(n, 0, f[(j, n)]) for n in fs.domain_points(moduli))))
                for j in range(J)]

    def backward(assign: Sequence[FiniteSet], moduli) -> dict:
        f: dict = {}
        for j, A in enumerate(assign):
            Ms = A.group.moduli[r + 1:r + 1 + k]
            slices: dict = {}
            for a in A:
                if a[r] % N:
                    raise NotConfined(f"tile {j} placed at height {a[r]}")
                if a[r]:
                    continue
                n = tuple(a[:r]) + tuple(a[r + 1 + k:])
                slices.setdefault(n, set()).add(tuple(a[r + 1:r + 1 + k]))
            need = math.prod(M // Ni for M, Ni in zip(Ms, Ns))
            for n in fs.domain_points(moduli):
                ys = slices.get(n, set())
                classes = {tuple(y % Ni for y, Ni in zip(v, Ns)) for v in ys}
                if len(classes) != 1 or len(ys) != need:
                    raise NotAGraph(f"slice of tile {j} at {n} is not a lattice coset")
                f[(j, n)] = classes.pop()
        return f

    return Reduction("functional_to_tilings_zd", fs, system, forward, backward, {"N": N, "R": R}, target_torus)
