"""A bumped box whose only tilings of ``Z^k`` are the cosets of ``N_1 Z x ... x N_k Z``."""

from __future__ import annotations

import itertools
from typing import Sequence

from ..groups import ExplicitGroup, FiniteSet


class BadBumpPosition(ValueError):
    pass


def rigid_tile(N: Sequence[int], n: Sequence[int] | None = None) -> FiniteSet:
    """Box ``prod [0, N_j)`` with, for each axis ``j``, one cell on the ``x_j = 0`` face
    moved across to ``x_j = N_j``.  The moved cell sits at ``n`` in the other axes."""
    N = tuple(N)
    k = len(N)
    n = (2,) * k if n is None else tuple(n)
    if len(n) != k or k == 0:
        raise BadBumpPosition("N and n must have the same positive length")
    for Nj, nj in zip(N, n):
        if Nj < 5:
            raise BadBumpPosition(f"side length {Nj} < 5")
        if not 2 <= nj <= Nj - 3:
            raise BadBumpPosition(f"bump position {nj} outside [2, {Nj - 3}]")
    cells = set(itertools.product(*(range(Nj) for Nj in N)))
    for j in range(k):
        hole = tuple(0 if i == j else n[i] for i in range(k))
        bump = tuple(N[j] if i == j else n[i] for i in range(k))
        cells.remove(hole)
        cells.add(bump)
    return FiniteSet.of(ExplicitGroup(k), cells)


def lattice_cosets(N: Sequence[int], torus: Sequence[int]) -> list[FiniteSet]:
    """The images of the cosets ``y + prod N_j Z`` in ``prod Z_{torus_j}``."""
    T = ExplicitGroup(0, tuple(torus))
    out = []
    for y in itertools.product(*(range(Nj) for Nj in N)):
        pts = itertools.product(*(range(yj, pj, Nj) for yj, Nj, pj in zip(y, N, torus)))
        out.append(FiniteSet.of(T, pts))
    return sorted(out, key=lambda A: A.elements)
