"""Value types for each stage of the reduction pipeline, plus their checkers.

Solutions of the function-valued systems are plain dicts over a torus of
the base lattice ``Z^k``:

* Boolean systems: ``{(d, n): +-1}``
* antipode and linear systems: ``{(j, d, n): +-1}``
* Hamming systems: ``{(j, n): (+-1, ..., +-1)}``
* functional systems: ``{(j, n): element of G0}`` with ``n`` a point of the
  domain torus (free coordinates reduced, torsion coordinates kept).

Indices ``j`` and ``d`` are 0-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from ..groups import (
    DEFAULT_COST_BOUND,
    ExplicitGroup,
    FiniteSet,
    StructuredSet,
    as_structured,
    set_size,
    sum_equals,
)

Vec = tuple[int, ...]


def torus_points(moduli: Sequence[int]) -> list[Vec]:
    return [tuple(p) for p in itertools.product(*(range(m) for m in moduli))]


def shift(n: Sequence[int], h: Sequence[int], moduli: Sequence[int]) -> Vec:
    return tuple((a + b) % m for a, b, m in zip(n, h, moduli))


def freeze(sol: dict) -> tuple:
    return tuple(sorted(sol.items()))


@dataclass(frozen=True)
class BooleanLocalSystem:
    """``(f_d(n + h_l))_{d, l}`` must lie in ``omega``; tuple index is ``d*L + l``."""

    D: int
    L: int
    shifts: tuple[Vec, ...]
    omega: frozenset

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(tuple(h) for h in self.shifts))
        object.__setattr__(self, "omega", frozenset(tuple(w) for w in self.omega))
        if len(self.shifts) != self.L:
            raise ValueError(f"expected {self.L} shifts, got {len(self.shifts)}")
        if len(set(self.shifts)) != self.L:
            raise ValueError("shifts must be distinct")
        for w in self.omega:
            if len(w) != self.D * self.L or any(x not in (-1, 1) for x in w):
                raise ValueError(f"bad constraint tuple {w}")

    @property
    def dim(self) -> int:
        return len(self.shifts[0])

    def window(self, f: dict, n: Vec, moduli) -> tuple:
        return tuple(f[(d, shift(n, self.shifts[l], moduli))] for d in range(self.D) for l in range(self.L))

    def check(self, f: dict, moduli) -> bool:
        return all(self.window(f, n, moduli) in self.omega for n in torus_points(moduli))


@dataclass(frozen=True)
class AntipodeSystem:
    """Forbidden antipodal pairs per side plus ``f_2,d(n + h_d) = -f_1,d(n)``."""

    D0: int
    shifts: tuple[Vec, ...]
    forbidden: tuple[tuple[Vec, ...], tuple[Vec, ...]]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(tuple(h) for h in self.shifts))
        object.__setattr__(self, "forbidden", tuple(tuple(tuple(e) for e in side) for side in self.forbidden))
        if len(self.shifts) != self.D0 or len(self.forbidden) != 2:
            raise ValueError("inconsistent antipode system")
        for side in self.forbidden:
            for e in side:
                if len(e) != self.D0:
                    raise ValueError(f"forbidden vector {e} has wrong length")

    def check(self, f: dict, moduli) -> bool:
        for n in torus_points(moduli):
            for j in range(2):
                y = tuple(f[(j, d, n)] for d in range(self.D0))
                neg = tuple(-x for x in y)
                for e in self.forbidden[j]:
                    if y == e or neg == e:
                        return False
            for d in range(self.D0):
                if f[(1, d, shift(n, self.shifts[d], moduli))] != -f[(0, d, n)]:
                    return False
        return True


@dataclass(frozen=True)
class LinearBooleanSystem:
    """``sum_d a[j][m][d] f_j,d(n) = 0`` and ``f_2,d(n + h_d) = -f_1,d(n)`` for ``d < D0``."""

    D: int
    D0: int
    coeffs: tuple[tuple[Vec, ...], tuple[Vec, ...]]
    shifts: tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(tuple(h) for h in self.shifts))
        object.__setattr__(self, "coeffs", tuple(tuple(tuple(r) for r in side) for side in self.coeffs))
        if len(self.coeffs) != 2 or len(self.shifts) != self.D0 or self.D0 > self.D:
            raise ValueError("inconsistent linear system")
        for side in self.coeffs:
            for row in side:
                if len(row) != self.D:
                    raise ValueError(f"coefficient row of length {len(row)}, expected {self.D}")

    @property
    def M(self) -> tuple[int, int]:
        return len(self.coeffs[0]), len(self.coeffs[1])

    def max_row_weight(self) -> int:
        return max((sum(abs(a) for a in row) for side in self.coeffs for row in side), default=0)

    def check(self, f: dict, moduli) -> bool:
        for n in torus_points(moduli):
            for j in range(2):
                for row in self.coeffs[j]:
                    if sum(a * f[(j, d, n)] for d, a in enumerate(row) if a):
                        return False
            for d in range(self.D0):
                if f[(1, d, shift(n, self.shifts[d], moduli))] != -f[(0, d, n)]:
                    return False
        return True


@dataclass(frozen=True)
class HammingEquation:
    """``(F1 + eps f1(n + h1)) u+ (F2 + eps f2(n + h2)) = E`` for both signs."""

    h: tuple[Vec, Vec]
    F: tuple[StructuredSet, StructuredSet]
    E: StructuredSet

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(tuple(x) for x in self.h))


@dataclass(frozen=True)
class HammingSystem:
    N: int
    D: int
    equations: tuple[HammingEquation, ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        if self.N <= 2:
            raise ValueError("N must exceed 2 so that -1 != 1")

    @property
    def cube_group(self) -> ExplicitGroup:
        return ExplicitGroup(0, (self.N,) * self.D)

    @property
    def M(self) -> int:
        return len(self.equations)

    def embed(self, y: Sequence[int]) -> Vec:
        return tuple(v % self.N for v in y)

    def check(self, f: dict, moduli) -> bool:
        G = self.cube_group
        for n in torus_points(moduli):
            for eq in self.equations:
                for eps in (1, -1):
                    terms = []
                    for j in range(2):
                        y = f[(j, shift(n, eq.h[j], moduli))]
                        terms.append((eq.F[j], self.embed(tuple(eps * v for v in y))))
                    if not sum_equals(G, terms, eq.E):
                        return False
        return True


AnySet = Union[FiniteSet, StructuredSet]


@dataclass(frozen=True)
class FunctionalEquation:
    """``u+_j u+_{h in H_j} (F_j + f_j(n + h)) = E``."""

    H: tuple[tuple[Vec, ...], ...]
    F: tuple[AnySet, ...]
    E: AnySet

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(tuple(tuple(h) for h in Hj) for Hj in self.H))
        object.__setattr__(self, "F", tuple(self.F))
        if len(self.H) != len(self.F):
            raise ValueError("shift sets and tiles disagree on J")


@dataclass(frozen=True)
class FunctionalSystem:
    domain: ExplicitGroup
    codomain: ExplicitGroup
    equations: tuple[FunctionalEquation, ...]
    J: int = 2

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        if not self.codomain.is_finite:
            raise ValueError("codomain must be finite")
        for eq in self.equations:
            if len(eq.H) != self.J:
                raise ValueError(f"equation has {len(eq.H)} sides, system has J={self.J}")

    @property
    def M(self) -> int:
        return len(self.equations)

    def domain_points(self, moduli) -> list[Vec]:
        return self.domain.torus(moduli).elements()

    def shift(self, n: Vec, h: Vec, moduli) -> Vec:
        return self.domain.torus(moduli).normalize([a + b for a, b in zip(n, h)])

    def check_at(self, f: dict, n: Vec, moduli, m: int) -> bool:
        eq = self.equations[m]
        terms = [(eq.F[j], f[(j, self.shift(n, h, moduli))]) for j in range(self.J) for h in eq.H[j]]
        return sum_equals(self.codomain, terms, eq.E)

    def check(self, f: dict, moduli) -> bool:
        return all(self.check_at(f, n, moduli, m) for n in self.domain_points(moduli) for m in range(self.M))


@dataclass(frozen=True)
class TwoTileInstance:
    """``Tile(F1, F2; Z^d x E0)`` in ``Z^d x G0``.

    For the lattice variant ``group`` is ``Z^d`` and ``E0`` is the periodic target itself.
    """

    group: ExplicitGroup
    E0: object
    F1: FiniteSet
    F2: FiniteSet

    def __post_init__(self):
        if not self.F1 or not self.F2:
            raise ValueError("both tiles must be non-empty")

    @property
    def G0(self) -> ExplicitGroup:
        return self.group.finite_part

    def system(self):
        from ..groups import PeriodicSet
        from ..tiling import TilingSystem

        E = self.E0 if isinstance(self.E0, PeriodicSet) else PeriodicSet.cylinder(self.group, self.E0)
        return TilingSystem.single(self.group, [self.F1, self.F2], E)


@dataclass
class Reduction:
    """A pass result: target instance plus solution maps in both directions."""

    name: str
    source: object
    target: object
    forward: object          # (source solution, source moduli) -> target solution
    backward: object         # (target solution, source moduli) -> source solution
    params: dict = field(default_factory=dict)
    target_torus: object = None

    def target_moduli(self, moduli) -> tuple:
        """Torus on which target solutions live, given the source torus."""
        return tuple(moduli) if self.target_torus is None else tuple(self.target_torus(moduli))


class NotAGraph(ValueError):
    pass


class NotConfined(ValueError):
    pass


class EmptyTile(ValueError):
    pass


class BadStackHeight(ValueError):
    pass


def structured_size(S: AnySet) -> int:
    return set_size(S)


def to_finite(S: AnySet, bound: int = DEFAULT_COST_BOUND) -> FiniteSet:
    return S.to_finite(bound) if isinstance(S, StructuredSet) else S


__all__ = [
    "AntipodeSystem", "BadStackHeight", "BooleanLocalSystem", "EmptyTile", "FunctionalEquation",
    "FunctionalSystem", "HammingEquation", "HammingSystem", "LinearBooleanSystem", "NotAGraph",
    "NotConfined", "Reduction", "TwoTileInstance", "as_structured", "freeze", "shift", "to_finite",
    "torus_points",
]
