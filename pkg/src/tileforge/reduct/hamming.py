"""From Hamming-cube functional equations to unrestricted ones over ``Z^k x Z_2``.

The ``Z_2`` coordinate carries the sign: ``f~(n, t) = (-1)^t f(n)``, and the
extra equations ``{x} u+ {-x} = {-1, 1}`` (per coordinate) force the values of
``f~`` back into the cube.
"""

from __future__ import annotations

from ..groups import ExplicitGroup, StructuredSet, fiber_set
from .ir import FunctionalEquation, FunctionalSystem, HammingSystem, NotAGraph, Reduction


def coordinate_fiber(N: int, D: int, d: int, targets) -> StructuredSet:
    """``pi_d^{-1}(targets)`` inside ``Z_N^D``."""
    coeffs = [0] * D
    coeffs[d] = 1
    return fiber_set(ExplicitGroup(0, (N,) * D), coeffs, N, targets)


def _dim(hs: HammingSystem, dim) -> int:
    if dim is not None:
        return dim
    if not hs.equations:
        raise ValueError("system has no equations; pass dim explicitly")
    return len(hs.equations[0].h[0])


def _sign_equations(N: int, D: int, k: int, extra_axis: int) -> list[FunctionalEquation]:
    """The per-coordinate sign constraints; ``extra_axis`` is the offset ``(0, 1)``."""
    zero = (0,) * (k + 1)
    one = (0,) * k + (extra_axis,)
    out = []
    for j in range(2):
        for d in range(D):
            F = coordinate_fiber(N, D, d, [0])
            E = coordinate_fiber(N, D, d, [1, N - 1])
            H = [(), ()]
            H[j] = (zero, one)
            out.append(FunctionalEquation(tuple(H), (F, F), E))
    return out


def hamming_to_functional(hs: HammingSystem, dim: int | None = None) -> Reduction:
    """Functional system over ``Z^k x Z_2`` with codomain ``Z_N^D``."""
    k = _dim(hs, dim)
    N, D = hs.N, hs.D
    domain = ExplicitGroup(k, (2,))
    cube = hs.cube_group
    eqs = _sign_equations(N, D, k, 1)
    for eq in hs.equations:
        H = ((tuple(eq.h[0]) + (0,),), (tuple(eq.h[1]) + (0,),))
        eqs.append(FunctionalEquation(H, eq.F, eq.E))
    fs = FunctionalSystem(domain, cube, tuple(eqs))

    def forward(f: dict, moduli) -> dict:
        out = {}
        for (j, n), y in f.items():
            out[(j, tuple(n) + (0,))] = hs.embed(y)
            out[(j, tuple(n) + (1,))] = hs.embed([-v for v in y])
        return out

    def backward(g: dict, moduli) -> dict:
        out = {}
        for (j, n), y in g.items():
            if n[-1]:
                continue
            out[(j, tuple(n[:-1]))] = _to_signs(y, N)
        return out

    return Reduction("hamming_to_functional", hs, fs, forward, backward, {"N": N, "D": D, "dim": k})


def _to_signs(y, N: int) -> tuple:
    out = []
    for v in y:
        if v % N == 1:
            out.append(1)
        elif v % N == N - 1:
            out.append(-1)
        else:
            raise NotAGraph(f"value {tuple(y)} is not in the Hamming cube")
    return tuple(out)


def pullback_z2z(fs: FunctionalSystem, q: int = 2) -> Reduction:
    """Replace the ``Z_2`` factor of the domain by ``Z``.

    Shifts ``(h, t)`` with ``t`` in ``{0, 1}`` are read as integer shifts.
    Solutions on a source torus ``p`` correspond to solutions on the torus
    ``p + (q,)`` for even ``q``; the correspondence is the sign rule
    ``g(n, z) = f~(n, z mod 2)`` and ``f~(n, t) = (-1)^t g(n, 0)``.
    """
    dom = fs.domain
    if dom.moduli != (2,):
        raise ValueError("domain must be Z^k x Z_2")
    if q % 2:
        raise ValueError("the Z-torus modulus must be even")
    k = dom.free_rank
    G0 = fs.codomain
    target = FunctionalSystem(ExplicitGroup(k + 1), G0, fs.equations, fs.J)

    def forward(f: dict, moduli) -> dict:
        out = {}
        for (j, n), y in f.items():
            base, t = tuple(n[:-1]), n[-1]
            for z in range(t, q, 2):
                out[(j, base + (z,))] = y
        return out

    def backward(g: dict, moduli) -> dict:
        out = {}
        for (j, n), y in g.items():
            if n[-1]:
                continue
            base = tuple(n[:-1])
            out[(j, base + (0,))] = tuple(y)
            out[(j, base + (1,))] = G0.neg(y)
        return out

    return Reduction("pullback_z2z", fs, target, forward, backward, {"q": q},
                     target_torus=lambda moduli: tuple(moduli) + (q,))
