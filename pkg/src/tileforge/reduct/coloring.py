"""From a tile set tiling ``Z^k`` to a local Boolean constraint, through colorings.

A tiling ``(A_j)`` colors each point ``a + h`` (``a`` in ``A_j``, ``h`` in ``F_j``)
by ``(j, h)``; a coloring is legal exactly when color ``(j, h)`` at ``n`` forces
color ``(j, h')`` at ``n - h + h'``.  Colors are then written in binary.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from ..groups import ExplicitGroup, FiniteSet
from .ir import BooleanLocalSystem, EmptyTile, NotAGraph, Reduction, shift, torus_points


def color_code(i: int, D: int) -> tuple:
    """Bits of ``i``, most significant first, with bit ``b`` written as ``(-1)^b``."""
    return tuple(-1 if (i >> (D - 1 - b)) & 1 else 1 for b in range(D))


def colors(tiles: Sequence[FiniteSet]) -> list[tuple]:
    return [(j, h) for j, F in enumerate(tiles) for h in sorted(F)]


def tileset_to_boolean(tiles: Sequence[FiniteSet]) -> Reduction:
    """Boolean system over the window ``{0}`` plus all differences ``h' - h`` within a tile."""
    tiles = list(tiles)
    if not tiles:
        raise ValueError("need at least one tile")
    for j, F in enumerate(tiles):
        if not F:
            raise EmptyTile(f"tile {j} is empty")
        if F.group.moduli:
            raise ValueError("tiles must live in Z^k")
    k = tiles[0].group.dim
    C = colors(tiles)
    D = max(1, (len(C) - 1).bit_length())
    code = {c: color_code(i, D) for i, c in enumerate(C)}
    decode = {v: c for c, v in code.items()}
    zero = (0,) * k
    diffs = {tuple(a - b for a, b in zip(h2, h1)) for F in tiles for h1 in F for h2 in F}
    diffs.discard(zero)
    shifts = [zero] + sorted(diffs)
    L = len(shifts)
    where = {h: l for l, h in enumerate(shifts)}
    codes = list(code.values())

    omega = set()
    for (j, h) in C:
        forced = {0: code[(j, h)]}
        for h2 in tiles[j]:
            forced[where[tuple(a - b for a, b in zip(h2, h))]] = code[(j, h2)]
        free = [l for l in range(L) if l not in forced]
        _fill(omega, forced, free, codes, D, L)
    bs = BooleanLocalSystem(D, L, tuple(shifts), frozenset(omega))

    def forward(assign: Sequence[FiniteSet], moduli) -> dict:
        col = coloring(tiles, assign, moduli)
        return {(d, n): code[c][d] for n, c in col.items() for d in range(D)}

    def backward(f: dict, moduli) -> list[FiniteSet]:
        T = ExplicitGroup(0, tuple(moduli))
        col = {}
        for n in torus_points(moduli):
            word = tuple(f[(d, n)] for d in range(D))
            if word not in decode:
                raise NotAGraph(f"unused code {word} at {n}")
            col[n] = decode[word]
        out = []
        for j, F in enumerate(tiles):
            anchors = {shift(n, [-v for v in h], moduli) for n, (jj, h) in col.items() if jj == j}
            out.append(FiniteSet.of(T, anchors))
        return out

    return Reduction("tileset_to_boolean", tiles, bs, forward, backward, {"C": C, "D": D, "L": L})


def _fill(omega: set, forced: dict, free: list, codes: list, D: int, L: int) -> None:
    for choice in itertools.product(codes, repeat=len(free)):
        words = dict(forced)
        words.update(zip(free, choice))
        omega.add(tuple(words[l][d] for d in range(D) for l in range(L)))


def coloring(tiles: Sequence[FiniteSet], assign: Sequence[FiniteSet], moduli) -> dict:
    """Color of every torus point; raises if the placements are not a tiling."""
    col: dict = {}
    for j, (F, A) in enumerate(zip(tiles, assign)):
        for a in A:
            for h in F:
                n = shift(a, h, moduli)
                if n in col:
                    raise NotAGraph(f"point {n} covered twice")
                col[n] = (j, h)
    missing = [n for n in torus_points(moduli) if n not in col]
    if missing:
        raise NotAGraph(f"point {missing[0]} uncovered")
    return col


def omega_size(tiles: Sequence[FiniteSet]) -> int:
    """``|Omega|`` without building it: each color fixes ``|F_j|`` window entries."""
    C = colors(tiles)
    zero = (0,) * tiles[0].group.dim
    diffs = {tuple(a - b for a, b in zip(h2, h1)) for F in tiles for h1 in F for h2 in F}
    diffs.discard(zero)
    L = 1 + len(diffs)
    return sum(len(C) ** (L - len(tiles[j])) for j, _ in C)
