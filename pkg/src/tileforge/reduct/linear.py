"""From linear equations on Boolean functions to Hamming-cube functional equations."""

from __future__ import annotations

from ..groups import ExplicitGroup, StructuredSet, fiber_set
from .hamming import coordinate_fiber
from .ir import HammingEquation, HammingSystem, LinearBooleanSystem, NotAGraph, Reduction


def choose_N(ls: LinearBooleanSystem) -> int:
    """Smallest multiple of 4 strictly above every row weight ``sum |a_d|``."""
    w = ls.max_row_weight()
    return 4 * (w // 4 + 1)


def linear_to_hamming(ls: LinearBooleanSystem, N: int | None = None) -> Reduction:
    """Bundle ``f_{j,1..D}`` into ``f_j`` with values in ``{-1,1}^D`` inside ``Z_N^D``.

    ``N`` defaults to :func:`choose_N`; a larger value may be passed (any ``N``
    above the row weights keeps the equivalence).
    """
    floor = ls.max_row_weight()
    N = choose_N(ls) if N is None else N
    if N <= max(floor, 2):
        raise ValueError(f"N={N} must exceed the row weight {floor} and 2")
    D = ls.D
    cube = ExplicitGroup(0, (N,) * D)
    empty = StructuredSet.empty((cube,))
    k = len(ls.shifts[0]) if ls.shifts else 0
    zero = (0,) * k
    eqs = []
    for j in range(2):
        for row in ls.coeffs[j]:
            H = fiber_set(cube, [a % N for a in row], N, [0])
            F = (H, empty) if j == 0 else (empty, H)
            eqs.append(HammingEquation((zero, zero), F, H))
    for d in range(ls.D0):
        F = coordinate_fiber(N, D, d, [0])
        E = coordinate_fiber(N, D, d, [1, N - 1])
        eqs.append(HammingEquation((zero, ls.shifts[d]), (F, F), E))
    hs = HammingSystem(N, D, tuple(eqs))

    def forward(f: dict, moduli) -> dict:
        out: dict = {}
        for (j, d, n), v in f.items():
            out.setdefault((j, n), [0] * D)[d] = v
        return {key: tuple(v) for key, v in out.items()}

    def backward(g: dict, moduli) -> dict:
        out = {}
        for (j, n), y in g.items():
            for d, v in enumerate(y):
                if v not in (1, -1):
                    raise NotAGraph(f"value {y} is not a sign vector")
                out[(j, d, n)] = v
        return out

    return Reduction("linear_to_hamming", ls, hs, forward, backward, {"N": N, "dim": k})
