"""Tiling equations, finite-region verification, periodization and fiber swapping."""

from __future__ import annotations

import cmath
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .groups import (
    DimensionMismatch,
    ExplicitGroup,
    FiniteSet,
    GroupElement,
    NotFinite,
    PeriodicSet,
    PeriodMismatch,
    reduce_to_torus,
    restrict_to_torus,
)

TOL = 1e-9


class RegionIncompatible(ValueError):
    pass


class NoRepeatFound(RuntimeError):
    pass


class AgreementViolation(ValueError):
    pass


class PrereqViolation(ValueError):
    pass


class NotASolution(ValueError):
    pass


@dataclass(frozen=True)
class TilingEquation:
    """``A_1 (+) F_1 u+ ... u+ A_J (+) F_J = E``."""

    group: ExplicitGroup
    tiles: tuple[FiniteSet, ...]
    target: PeriodicSet

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(self.tiles))
        if not self.tiles:
            raise ValueError("a tiling equation needs at least one tile")
        target = self.target
        if isinstance(target, FiniteSet):
            if not self.group.is_finite:
                raise DimensionMismatch("finite targets are only allowed in finite groups")
            target = PeriodicSet(self.group, (), target)
            object.__setattr__(self, "target", target)
        for F in self.tiles:
            if F.group != self.group:
                raise DimensionMismatch(f"tile in {F.group}, equation in {self.group}")
        if target.group != self.group:
            raise DimensionMismatch(f"target in {target.group}, equation in {self.group}")

    @property
    def J(self) -> int:
        return len(self.tiles)

    def radius(self) -> int:
        return max(F.radius() for F in self.tiles)


@dataclass(frozen=True)
class TilingSystem:
    equations: tuple[TilingEquation, ...]

    def __post_init__(self):
        eqs = tuple(self.equations)
        object.__setattr__(self, "equations", eqs)
        if not eqs:
            raise ValueError("a tiling system needs at least one equation")
        g, J = eqs[0].group, eqs[0].J
        for e in eqs:
            if e.group != g or e.J != J:
                raise DimensionMismatch("equations of a system must share group and tile count")

    @classmethod
    def single(cls, group: ExplicitGroup, tiles: Sequence[FiniteSet], target) -> "TilingSystem":
        return cls((TilingEquation(group, tuple(tiles), target),))

    @property
    def group(self) -> ExplicitGroup:
        return self.equations[0].group

    @property
    def J(self) -> int:
        return self.equations[0].J

    @property
    def M(self) -> int:
        return len(self.equations)

    def radius(self) -> int:
        return max(e.radius() for e in self.equations)

    def period(self) -> int:
        return math.lcm(*(e.target.period for e in self.equations))


@dataclass(frozen=True)
class Torus:
    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(p) for p in self.moduli))
        if any(p < 1 for p in self.moduli):
            raise RegionIncompatible(f"bad torus moduli {self.moduli}")


@dataclass(frozen=True)
class Window:
    """Box ``[lo_1, hi_1] x ... x [lo_d, hi_d] x G0`` in the free coordinates."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(self.lo))
        object.__setattr__(self, "hi", tuple(self.hi))
        if len(self.lo) != len(self.hi) or any(a > b for a, b in zip(self.lo, self.hi)):
            raise RegionIncompatible(f"bad window {self.lo}..{self.hi}")

    def shrink(self, margin: int) -> "Window | None":
        lo = tuple(a + margin for a in self.lo)
        hi = tuple(b - margin for b in self.hi)
        if any(a > b for a, b in zip(lo, hi)):
            return None
        return Window(lo, hi)

    def contains_free(self, g: Sequence[int]) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, g, self.hi))

    def points(self, group: ExplicitGroup):
        ranges = [range(a, b + 1) for a, b in zip(self.lo, self.hi)]
        for free in itertools.product(*ranges):
            for t in itertools.product(*(range(n) for n in group.moduli)):
                yield tuple(free) + tuple(t)


def Window1D(lo: int, hi: int) -> Window:
    """The thickened interval ``[[lo, hi]]``."""
    return Window((lo,), (hi,))


Region = Union[Torus, Window]
SetLike = Union[FiniteSet, PeriodicSet]


@dataclass
class CoverReport:
    ok: bool
    region: Region
    checked: int
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        kind = "torus" if isinstance(self.region, Torus) else "window"
        reg = {"moduli": list(self.region.moduli)} if kind == "torus" else {
            "lo": list(self.region.lo), "hi": list(self.region.hi)}
        return {
            "ok": self.ok,
            "region": {"kind": kind, **reg},
            "checked": self.checked,
            "failures": [
                {"equation": m, "point": list(p), "count": c, "in_target": t} for m, p, c, t in self.failures
            ],
        }


def _torus_sets(system: TilingSystem, assign: Sequence[SetLike], torus: Torus) -> list[FiniteSet]:
    group = system.group
    T = group.torus(torus.moduli)
    out = []
    for A in assign:
        if isinstance(A, PeriodicSet):
            out.append(restrict_to_torus(A, torus.moduli))
        elif A.group == T:
            out.append(A)
        elif A.group == group:
            out.append(FiniteSet.of(T, (reduce_to_torus(group, a, torus.moduli) for a in A)))
        else:
            raise DimensionMismatch(f"assignment set in {A.group}, expected {group} or {T}")
    return out


def cover_counts(group: ExplicitGroup, sets: Sequence[FiniteSet], tiles: Sequence[FiniteSet],
                 reduce: Callable | None = None) -> Counter:
    counts: Counter = Counter()
    for A, F in zip(sets, tiles):
        for a in A:
            for f in F:
                s = tuple(x + y for x, y in zip(a, f))
                counts[reduce(s) if reduce else group.normalize(s)] += 1
    return counts


def verify(system: TilingSystem, assign: Sequence[SetLike], region: Region, max_failures: int = 50) -> CoverReport:
    """Check every equation of ``system`` on a torus or a window.

    On a torus the cover count of each point must be 1 on the target and 0
    elsewhere.  On a window only points at distance more than the tile radius
    from the boundary are judged; ``assign`` must contain the solution on the
    whole window.
    """
    if len(assign) != system.J:
        raise DimensionMismatch(f"assignment has {len(assign)} sets, system has {system.J} tiles")
    group = system.group
    failures = []
    checked = 0
    if isinstance(region, Torus):
        if len(region.moduli) != group.free_rank:
            raise RegionIncompatible(f"torus {region.moduli} for {group}")
        T = group.torus(region.moduli)
        sets = _torus_sets(system, assign, region)
        red = lambda s: T.normalize(s)  # noqa: E731
        for m, eq in enumerate(system.equations):
            try:
                target = restrict_to_torus(eq.target, region.moduli)
            except PeriodMismatch as exc:
                raise RegionIncompatible(str(exc)) from exc
            tiles = [FiniteSet.of(T, (reduce_to_torus(group, f, region.moduli) for f in F)) for F in eq.tiles]
            counts = cover_counts(T, sets, tiles, red)
            for p in T.elements():
                checked += 1
                c, t = counts.get(p, 0), p in target
                if c != (1 if t else 0) and len(failures) < max_failures:
                    failures.append((m, p, c, t))
    else:
        if len(region.lo) != group.free_rank:
            raise RegionIncompatible(f"window of dimension {len(region.lo)} for {group}")
        inner = region.shrink(system.radius())
        if inner is None:
            raise RegionIncompatible("window is smaller than the tile diameter")
        sets = []
        for A in assign:
            if isinstance(A, PeriodicSet):
                sets.append(FiniteSet.of(group, (g for g in region.points(group) if g in A)))
            else:
                sets.append(A)
        for m, eq in enumerate(system.equations):
            counts = cover_counts(group, sets, eq.tiles)
            for p in inner.points(group):
                checked += 1
                c, t = counts.get(p, 0), p in eq.target
                if c != (1 if t else 0) and len(failures) < max_failures:
                    failures.append((m, p, c, t))
    return CoverReport(not failures, region, checked, failures)


def translate_assignment(assign: Sequence[FiniteSet], h) -> list[FiniteSet]:
    return [A.translate(h) for A in assign]


# --- Newman periodization ---------------------------------------------------


def _slices(group: ExplicitGroup, A: FiniteSet) -> dict[int, frozenset]:
    out: dict[int, set] = {}
    for a in A:
        out.setdefault(a[0], set()).add(a[1:])
    return {n: frozenset(s) for n, s in out.items()}


def newman_periodize(system: TilingSystem, solution: Sequence[FiniteSet], window: Window, L: int, r: int) -> tuple[list[PeriodicSet], int]:
    """Turn a solution on a window of ``Z x G0`` into a periodic solution.

    Colors ``n`` in ``rZ`` by the restriction of every ``A_j - n`` to
    ``[[-L, L]]`` and cuts at the first repeated color ``n0, n0 + D``.
    Returns ``(A', D)`` with ``A'_j = (A_j n [[n0, n0+D-1]]) (+) DZ``.
    """
    group = system.group
    if group.free_rank != 1:
        raise DimensionMismatch("periodization works over Z x G0")
    if system.radius() > L:
        raise ValueError(f"tiles do not fit in [[-{L}, {L}]]")
    for eq in system.equations:
        if r % eq.target.period:
            raise PeriodMismatch(f"target period {eq.target.period} does not divide r={r}")
    slices = [_slices(group, A) for A in solution]
    lo, hi = window.lo[0], window.hi[0]
    start = -((-(lo + 2 * L)) // r) * r
    seen: dict[tuple, int] = {}
    n = start
    while n + 2 * L <= hi:
        color = tuple(tuple(s.get(n + t, frozenset()) for t in range(-L, L + 1)) for s in slices)
        if color in seen:
            n0, D = seen[color], n - seen[color]
            break
        seen[color] = n
        n += r
    else:
        raise NoRepeatFound(f"no repeated color on [{lo}, {hi}] with L={L}, r={r}")
    quot = group.torus((D,))
    out = []
    for s in slices:
        reps = [((m % D),) + x for m in range(n0, n0 + D) for x in s.get(m, ())]
        out.append(PeriodicSet(group, (D,), FiniteSet.of(quot, reps)))
    report = verify(system, out, Torus((D,)))
    if not report.ok:
        raise NotASolution(f"periodized assignment fails on the period-{D} torus: {report.failures[:3]}")
    return out, D


# --- fiber swapping and Fourier analysis -----------------------------------


def fiber_swap(A0: FiniteSet, A1: FiniteSet, omega: Union[Mapping[int, int], Callable[[int], int]],
               window: Window, n0: int | None = None) -> FiniteSet:
    """``A^(omega)``: the fiber over ``n`` is taken from ``A^(omega(n))``.

    When ``n0`` is given, the two sets must agree on every fiber ``n <= -n0``
    inside the window.
    """
    group = A0.group
    w = omega if callable(omega) else (lambda n: omega.get(n, 0))
    s0, s1 = _slices(group, A0), _slices(group, A1)
    lo, hi = window.lo[0], window.hi[0]
    if n0 is not None:
        for n in range(lo, min(hi, -n0) + 1):
            if s0.get(n, frozenset()) != s1.get(n, frozenset()):
                raise AgreementViolation(f"fibers differ at n={n} <= -n0={-n0}")
    out = []
    for n in range(lo, hi + 1):
        src = s1 if w(n) else s0
        out.extend((n,) + x for x in src.get(n, ()))
    return FiniteSet.of(group, out)


def characters(group: ExplicitGroup) -> list[GroupElement]:
    if not group.is_finite:
        raise NotFinite(f"{group} has no finite dual")
    return group.elements()


def fourier(f: Union[Mapping, Callable], group: ExplicitGroup) -> dict[GroupElement, complex]:
    """``f^(xi) = sum_x f(x) exp(-2 pi i xi.x)`` with ``xi.x = sum xi_i x_i / N_i``."""
    elems = characters(group)
    val = f if callable(f) else (lambda x: f.get(x, 0))
    vals = [(x, val(x)) for x in elems]
    vals = [(x, v) for x, v in vals if v != 0]
    out = {}
    for xi in elems:
        s = 0j
        for x, v in vals:
            phase = sum(a * b / n for a, b, n in zip(xi, x, group.moduli))
            s += v * cmath.exp(-2j * math.pi * phase)
        out[xi] = s
    return out


def inverse_fourier(fh: Mapping, group: ExplicitGroup) -> dict[GroupElement, complex]:
    elems = characters(group)
    out = {}
    for x in elems:
        s = 0j
        for xi in elems:
            phase = sum(a * b / n for a, b, n in zip(xi, x, group.moduli))
            s += fh.get(xi, 0) * cmath.exp(2j * math.pi * phase)
        out[x] = s / group.order
    return out


@dataclass
class DichotomyReport:
    ok: bool
    max_residual: float
    sides: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "max_residual": self.max_residual,
                "sides": {",".join(map(str, k)): v for k, v in self.sides.items()}}


def swap_dichotomy_check(A0: FiniteSet, A1: FiniteSet, F: FiniteSet, window: Window, tol: float = TOL) -> DichotomyReport:
    """For each character decide which side of the dichotomy holds.

    ``A0`` and ``A1`` must differ only on finitely many fibers inside the
    window; the differences ``f_n = 1_{A1_n} - 1_{A0_n}`` then satisfy the
    convolution recurrence exactly, which is checked first.
    """
    group = A0.group
    G0 = group.finite_part
    s0, s1 = _slices(group, A0), _slices(group, A1)
    lo, hi = window.lo[0], window.hi[0]
    diff = {}
    for n in range(lo, hi + 1):
        a, b = s0.get(n, frozenset()), s1.get(n, frozenset())
        if a != b:
            diff[n] = {x: (x in b) - (x in a) for x in a | b}
    Fs = _slices(group, F)
    # prerequisite: sum_l f_{n-l} * 1_{F_l} = 0 everywhere
    conv: Counter = Counter()
    for n, fn in diff.items():
        for l, Fl in Fs.items():
            for x, v in fn.items():
                for y in Fl:
                    conv[(n + l,) + G0.add(x, y)] += v
    bad = [k for k, v in conv.items() if v]
    if bad:
        raise PrereqViolation(f"inputs do not co-tile with F; first discrepancy at {sorted(bad)[0]}")
    fh = {n: fourier(fn, G0) for n, fn in diff.items()}
    Fh = {l: fourier({x: 1 for x in Fl}, G0) for l, Fl in Fs.items()}
    sides = {}
    ok = True
    for xi in G0.elements():
        F_zero = all(abs(Fh[l][xi]) < tol for l in Fh)
        f_zero = all(abs(fh[n][xi]) < tol for n in fh)
        sides[xi] = "both" if F_zero and f_zero else "F" if F_zero else "f" if f_zero else "neither"
        ok &= F_zero or f_zero
    max_res = 0.0
    if diff:
        ns = range(min(diff) + min(Fs), max(diff) + max(Fs) + 1)
        for xi in G0.elements():
            for n in ns:
                r = sum(fh[n - l][xi] * Fh[l][xi] for l in Fh if (n - l) in fh)
                max_res = max(max_res, abs(r))
    ok &= max_res < tol
    return DichotomyReport(ok, max_res, sides)
