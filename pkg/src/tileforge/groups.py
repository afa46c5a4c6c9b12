"""Explicit finitely generated abelian groups and the subsets we tile with.

A group ``Z^d x Z_N1 x ... x Z_Nm`` is an :class:`ExplicitGroup`; its
elements are plain integer tuples with the free coordinates first and the
torsion coordinates normalized into ``[0, N_i)``.  Three kinds of subsets
are supported:

* :class:`FiniteSet` -- an explicit, sorted, duplicate-free element list;
* :class:`PeriodicSet` -- a lattice-periodic set given by torus representatives;
* :class:`StructuredSet` -- a finite union of boxes, each box a product of
  per-factor descriptors (``Full``, ``Listed`` or a ``Fiber`` of a linear form),
  used for sets far too large to enumerate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

GroupElement = tuple[int, ...]

DEFAULT_COST_BOUND = 10**6


class GroupError(ValueError):
    pass


class DimensionMismatch(GroupError):
    pass


class PeriodMismatch(GroupError):
    pass


class NotFinite(GroupError):
    pass


class OverlapError(GroupError):
    """A sumset or disjoint union is undefined because two terms collide."""

    def __init__(self, witness, first, second):
        self.witness = witness
        self.first = first
        self.second = second
        super().__init__(f"element {witness} has two representations: {first} and {second}")


class CostExceeded(RuntimeError):
    def __init__(self, what: str, cost: int, bound: int):
        self.what = what
        self.cost = cost
        self.bound = bound
        super().__init__(f"{what}: cost {cost} exceeds bound {bound}")


@dataclass(frozen=True)
class ExplicitGroup:
    """The group ``Z^free_rank x Z_{moduli[0]} x ...``."""

    free_rank: int = 0
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(n) for n in self.moduli))
        if self.free_rank < 0:
            raise GroupError("free rank must be nonnegative")
        if any(n < 1 for n in self.moduli):
            raise GroupError(f"moduli must be positive, got {self.moduli}")

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.moduli)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise NotFinite(f"{self} is infinite")
        return math.prod(self.moduli)

    @property
    def finite_part(self) -> "ExplicitGroup":
        return ExplicitGroup(0, self.moduli)

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.dim

    def check(self, g: Sequence[int]) -> None:
        if len(g) != self.dim:
            raise DimensionMismatch(f"element {tuple(g)} has length {len(g)}, group {self} has dimension {self.dim}")

    def normalize(self, g: Sequence[int]) -> GroupElement:
        self.check(g)
        d = self.free_rank
        return tuple(g[:d]) + tuple(x % n for x, n in zip(g[d:], self.moduli))

    def add(self, a: Sequence[int], b: Sequence[int]) -> GroupElement:
        self.check(a)
        self.check(b)
        return self.normalize([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> GroupElement:
        self.check(a)
        return self.normalize([-x for x in a])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> GroupElement:
        return self.add(a, self.neg(b))

    def elements(self) -> list[GroupElement]:
        if not self.is_finite:
            raise NotFinite(f"cannot enumerate {self}")
        return [tuple(g) for g in itertools.product(*(range(n) for n in self.moduli))]

    def torus(self, moduli: Sequence[int]) -> "ExplicitGroup":
        """The finite quotient ``Z_p1 x ... x Z_pd x G0``."""
        if len(moduli) != self.free_rank:
            raise DimensionMismatch(f"torus needs {self.free_rank} moduli, got {len(moduli)}")
        return ExplicitGroup(0, tuple(moduli) + self.moduli)

    def product(self, other: "ExplicitGroup") -> "ExplicitGroup":
        """``self x other`` with free coordinates of both first (see :meth:`join`)."""
        return ExplicitGroup(self.free_rank + other.free_rank, self.moduli + other.moduli)

    def join(self, other: "ExplicitGroup", a: Sequence[int], b: Sequence[int]) -> GroupElement:
        d, e = self.free_rank, other.free_rank
        return tuple(a[:d]) + tuple(b[:e]) + tuple(a[d:]) + tuple(b[e:])

    def split(self, other: "ExplicitGroup", g: Sequence[int]) -> tuple[GroupElement, GroupElement]:
        d, e = self.free_rank, other.free_rank
        m = len(self.moduli)
        a = tuple(g[:d]) + tuple(g[d + e:d + e + m])
        b = tuple(g[d:d + e]) + tuple(g[d + e + m:])
        return a, b

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        for n, run in itertools.groupby(self.moduli):
            c = len(list(run))
            parts.append(f"Z_{n}" if c == 1 else f"Z_{n}^{c}")
        return " x ".join(parts) or "{0}"


def reduce_to_torus(group: ExplicitGroup, g: Sequence[int], moduli: Sequence[int]) -> GroupElement:
    d = group.free_rank
    return tuple(x % p for x, p in zip(g[:d], moduli)) + tuple(g[d:])


@dataclass(frozen=True)
class FiniteSet:
    """A finite subset, stored sorted and without duplicates."""

    group: ExplicitGroup
    elements: tuple[GroupElement, ...] = ()
    _lookup: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        elems = sorted({self.group.normalize(g) for g in self.elements})
        object.__setattr__(self, "elements", tuple(elems))
        object.__setattr__(self, "_lookup", frozenset(elems))

    @classmethod
    def of(cls, group: ExplicitGroup, elements: Iterable[Sequence[int]] = ()) -> "FiniteSet":
        return cls(group, tuple(tuple(g) for g in elements))

    def __contains__(self, g) -> bool:
        return tuple(g) in self._lookup

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __bool__(self) -> bool:
        return bool(self.elements)

    def translate(self, h: Sequence[int]) -> "FiniteSet":
        return FiniteSet.of(self.group, (self.group.add(g, h) for g in self.elements))

    def neg(self) -> "FiniteSet":
        return FiniteSet.of(self.group, (self.group.neg(g) for g in self.elements))

    def as_set(self) -> frozenset:
        return self._lookup

    def cross(self, other: "FiniteSet") -> "FiniteSet":
        """Cartesian product, living in ``self.group.product(other.group)``."""
        G = self.group.product(other.group)
        return FiniteSet.of(G, (self.group.join(other.group, a, b) for a in self for b in other))

    def radius(self) -> int:
        """Largest absolute free coordinate (0 for finite groups)."""
        d = self.group.free_rank
        return max((abs(x) for g in self.elements for x in g[:d]), default=0)


def finite_set(group: ExplicitGroup, *elements: Sequence[int]) -> FiniteSet:
    return FiniteSet.of(group, elements)


def uplus(group: ExplicitGroup, *parts: Iterable[Sequence[int]]) -> FiniteSet:
    """Disjoint union; raises :class:`OverlapError` when two parts share an element."""
    seen: dict[GroupElement, int] = {}
    for i, part in enumerate(parts):
        for g in part:
            g = group.normalize(g)
            if g in seen:
                raise OverlapError(g, (seen[g], g), (i, g))
            seen[g] = i
    return FiniteSet.of(group, seen)


def direct_sum(A: Union["FiniteSet", "StructuredSet"], F: FiniteSet, bound: int = DEFAULT_COST_BOUND) -> FiniteSet:
    """``A (+) F``: all sums ``a + f``, required to be pairwise distinct.

    Empty operands give the empty set.  ``A`` may be a :class:`StructuredSet`
    whose enumeration cost is within ``bound``.
    """
    group = F.group
    if isinstance(A, StructuredSet):
        A = A.to_finite(bound)
    if A.group != group:
        raise DimensionMismatch(f"sumset of sets in {A.group} and {group}")
    if not A or not F:
        return FiniteSet(group)
    reps: dict[GroupElement, tuple] = {}
    for a in A:
        for f in F:
            s = group.add(a, f)
            if s in reps:
                raise OverlapError(s, reps[s], (a, f))
            reps[s] = (a, f)
    return FiniteSet.of(group, reps)


@dataclass(frozen=True)
class PeriodicSet:
    """``E = {g : g mod (periods, 1) in reps}``.

    ``reps`` lives in the quotient ``Z_{periods[0]} x ... x G0``.  Each free
    coordinate may carry its own period and :attr:`period` gives their lcm.
    """

    group: ExplicitGroup
    periods: tuple[int, ...]
    reps: FiniteSet

    def __post_init__(self):
        periods = self.periods
        if isinstance(periods, int):
            periods = (periods,) * self.group.free_rank
        periods = tuple(int(p) for p in periods)
        object.__setattr__(self, "periods", periods)
        if len(periods) != self.group.free_rank or any(p < 1 for p in periods):
            raise PeriodMismatch(f"bad periods {periods} for {self.group}")
        if self.reps.group != self.quotient:
            raise DimensionMismatch(f"representatives live in {self.reps.group}, expected {self.quotient}")

    @property
    def quotient(self) -> ExplicitGroup:
        return self.group.torus(self.periods)

    @property
    def period(self) -> int:
        return math.lcm(*self.periods) if self.periods else 1

    @classmethod
    def full(cls, group: ExplicitGroup) -> "PeriodicSet":
        q = group.torus((1,) * group.free_rank)
        return cls(group, (1,) * group.free_rank, FiniteSet.of(q, q.elements()))

    @classmethod
    def empty(cls, group: ExplicitGroup) -> "PeriodicSet":
        return cls(group, (1,) * group.free_rank, FiniteSet(group.torus((1,) * group.free_rank)))

    @classmethod
    def cylinder(cls, group: ExplicitGroup, finite_part: Iterable[Sequence[int]]) -> "PeriodicSet":
        """``Z^d x E0`` for ``E0`` a subset of the torsion part."""
        d = group.free_rank
        q = group.torus((1,) * d)
        return cls(group, (1,) * d, FiniteSet.of(q, ((0,) * d + tuple(e) for e in finite_part)))

    @classmethod
    def lattice_coset(cls, group: ExplicitGroup, r: int, offsets: Iterable[Sequence[int]]) -> "PeriodicSet":
        """Union of the cosets ``o + (rZ)^d x {0}`` style sets, given as elements mod r."""
        q = group.torus((r,) * group.free_rank)
        return cls(group, r, FiniteSet.of(q, offsets))

    def __contains__(self, g) -> bool:
        self.group.check(g)
        return reduce_to_torus(self.group, g, self.periods) in self.reps

    def contains(self, g) -> bool:
        return g in self

    def finite_slice(self) -> FiniteSet:
        """Torsion parts of representatives with all free coordinates 0."""
        d = self.group.free_rank
        return FiniteSet.of(self.group.finite_part, (g[d:] for g in self.reps if not any(g[:d])))

    def is_cylinder(self) -> bool:
        """True when the set has the form ``Z^d x E0``."""
        d = self.group.free_rank
        E0 = self.finite_slice()
        return len(self.reps) == len(E0) * math.prod(self.periods) and all(g[d:] in E0 for g in self.reps)

    def translate(self, h: Sequence[int]) -> "PeriodicSet":
        hq = reduce_to_torus(self.group, h, self.periods)
        return PeriodicSet(self.group, self.periods, self.reps.translate(hq))

    def restrict_to_torus(self, moduli: Sequence[int]) -> FiniteSet:
        return restrict_to_torus(self, moduli)


# --- structured sets --------------------------------------------------------


@dataclass(frozen=True)
class Full:
    def size(self, factor: ExplicitGroup) -> int:
        return factor.order

    def contains(self, factor: ExplicitGroup, x) -> bool:
        return True

    def elements(self, factor: ExplicitGroup) -> list[GroupElement]:
        return factor.elements()

    def translate(self, factor: ExplicitGroup, h) -> "Full":
        return self

    def neg(self, factor: ExplicitGroup) -> "Full":
        return self


@dataclass(frozen=True)
class Listed:
    items: frozenset

    def size(self, factor: ExplicitGroup) -> int:
        return len(self.items)

    def contains(self, factor: ExplicitGroup, x) -> bool:
        return tuple(x) in self.items

    def elements(self, factor: ExplicitGroup) -> list[GroupElement]:
        return sorted(self.items)

    def translate(self, factor: ExplicitGroup, h) -> "Listed":
        return Listed(frozenset(factor.add(x, h) for x in self.items))

    def neg(self, factor: ExplicitGroup) -> "Listed":
        return Listed(frozenset(factor.neg(x) for x in self.items))


@dataclass(frozen=True)
class Fiber:
    """Preimage of ``targets`` under the homomorphism ``x -> sum(coeffs * x) mod modulus``."""

    coeffs: tuple[int, ...]
    modulus: int
    targets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "targets", frozenset(int(t) % self.modulus for t in self.targets))

    def value(self, x) -> int:
        return sum(c * v for c, v in zip(self.coeffs, x)) % self.modulus

    def check_factor(self, factor: ExplicitGroup) -> None:
        if not factor.is_finite or len(self.coeffs) != factor.dim:
            raise DimensionMismatch(f"linear form of length {len(self.coeffs)} on {factor}")
        if any((c * n) % self.modulus for c, n in zip(self.coeffs, factor.moduli)):
            raise GroupError(f"{self.coeffs} mod {self.modulus} is not a homomorphism on {factor}")

    def image_step(self) -> int:
        return math.gcd(self.modulus, *self.coeffs)

    def size(self, factor: ExplicitGroup) -> int:
        step = self.image_step()
        kernel = factor.order * step // self.modulus
        return kernel * sum(1 for t in self.targets if t % step == 0)

    def contains(self, factor: ExplicitGroup, x) -> bool:
        return self.value(x) in self.targets

    def elements(self, factor: ExplicitGroup) -> list[GroupElement]:
        return [x for x in factor.elements() if self.value(x) in self.targets]

    def translate(self, factor: ExplicitGroup, h) -> "Fiber":
        shift = self.value(h)
        return Fiber(self.coeffs, self.modulus, frozenset((t + shift) % self.modulus for t in self.targets))

    def neg(self, factor: ExplicitGroup) -> "Fiber":
        return Fiber(self.coeffs, self.modulus, frozenset((-t) % self.modulus for t in self.targets))


Descriptor = Union[Full, Listed, Fiber]


@dataclass(frozen=True)
class StructuredSet:
    """A finite union of boxes over ``factors[0] x factors[1] x ...``.

    Each box is a tuple with one descriptor per factor; an element belongs to
    the set if it belongs to at least one box.  All factors are finite.
    """

    factors: tuple[ExplicitGroup, ...]
    boxes: tuple[tuple[Descriptor, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "boxes", tuple(tuple(b) for b in self.boxes))
        for f in self.factors:
            if not f.is_finite:
                raise NotFinite("structured-set factors must be finite")
        for box in self.boxes:
            if len(box) != len(self.factors):
                raise DimensionMismatch("box arity differs from the number of factors")
            for desc, f in zip(box, self.factors):
                if isinstance(desc, Fiber):
                    desc.check_factor(f)

    @property
    def group(self) -> ExplicitGroup:
        return ExplicitGroup(0, tuple(n for f in self.factors for n in f.moduli))

    @classmethod
    def single(cls, factor: ExplicitGroup, desc: Descriptor) -> "StructuredSet":
        return cls((factor,), ((desc,),))

    @classmethod
    def empty(cls, factors: Sequence[ExplicitGroup]) -> "StructuredSet":
        return cls(tuple(factors), ())

    def _split(self, g) -> list[GroupElement]:
        out, i = [], 0
        for f in self.factors:
            out.append(tuple(g[i:i + f.dim]))
            i += f.dim
        return out

    def __contains__(self, g) -> bool:
        g = self.group.normalize(g)
        parts = self._split(g)
        return any(all(d.contains(f, x) for d, f, x in zip(box, self.factors, parts)) for box in self.boxes)

    def box_cost(self, box) -> int:
        """Product of the sizes of the non-Full factors of a box."""
        return math.prod(d.size(f) for d, f in zip(box, self.factors) if not isinstance(d, Full))

    def enumeration_cost(self) -> int:
        return sum(math.prod(d.size(f) for d, f in zip(box, self.factors)) for box in self.boxes)

    def size(self, bound: int = DEFAULT_COST_BOUND) -> int:
        """Exact cardinality; closed form for a single box, enumeration otherwise."""
        if not self.boxes:
            return 0
        if len(self.boxes) == 1:
            box = self.boxes[0]
            return math.prod(d.size(f) for d, f in zip(box, self.factors))
        return len(self.to_finite(bound))

    def iter_elements(self, bound: int = DEFAULT_COST_BOUND) -> Iterator[GroupElement]:
        cost = self.enumeration_cost()
        if cost > bound:
            raise CostExceeded("structured set enumeration", cost, bound)
        seen = set()
        for box in self.boxes:
            for combo in itertools.product(*(d.elements(f) for d, f in zip(box, self.factors))):
                g = tuple(x for part in combo for x in part)
                if g not in seen:
                    seen.add(g)
                    yield g

    def to_finite(self, bound: int = DEFAULT_COST_BOUND) -> FiniteSet:
        return FiniteSet.of(self.group, self.iter_elements(bound))

    def translate(self, h) -> "StructuredSet":
        parts = self._split(self.group.normalize(h))
        return StructuredSet(self.factors, tuple(
            tuple(d.translate(f, x) for d, f, x in zip(box, self.factors, parts)) for box in self.boxes))

    def neg(self) -> "StructuredSet":
        return StructuredSet(self.factors, tuple(
            tuple(d.neg(f) for d, f in zip(box, self.factors)) for box in self.boxes))

    def linear_signature(self):
        """``(factor index, coeffs, modulus, targets)`` for single-fiber boxes, else None."""
        if len(self.boxes) != 1:
            return None
        box = self.boxes[0]
        fibers = [(i, d) for i, d in enumerate(box) if not isinstance(d, Full)]
        if len(fibers) != 1 or not isinstance(fibers[0][1], Fiber):
            return None
        i, d = fibers[0]
        return i, d.coeffs, d.modulus, d.targets


AnySet = Union[FiniteSet, PeriodicSet, StructuredSet]


def fiber_set(group: ExplicitGroup, coeffs: Sequence[int], modulus: int, targets: Iterable[int]) -> StructuredSet:
    return StructuredSet.single(group, Fiber(tuple(coeffs), modulus, frozenset(targets)))


def as_structured(S: Union[FiniteSet, StructuredSet]) -> StructuredSet:
    if isinstance(S, StructuredSet):
        return S
    if not S:
        return StructuredSet.empty((S.group,))
    return StructuredSet.single(S.group, Listed(frozenset(S.elements)))


def set_size(S: Union[FiniteSet, StructuredSet]) -> int:
    return S.size() if isinstance(S, StructuredSet) else len(S)


def translate(S: Union[FiniteSet, StructuredSet], h) -> Union[FiniteSet, StructuredSet]:
    return S.translate(h)


def sum_equals(group: ExplicitGroup, terms: Sequence[tuple], target, bound: int = DEFAULT_COST_BOUND) -> bool:
    """Decide ``(S_1 + x_1) u+ ... u+ (S_k + x_k) == target``.

    Terms are ``(S, x)`` pairs.  When every nonempty set involved is a single
    fiber of one common linear form the question is settled in the image of
    that form; otherwise everything is enumerated (within ``bound``).
    """
    nonempty = [(S, x) for S, x in terms if set_size(S) > 0]
    sigs = [S.linear_signature() if isinstance(S, StructuredSet) else None for S, _ in nonempty]
    tsig = target.linear_signature() if isinstance(target, StructuredSet) else None
    target_empty = set_size(target) == 0
    if not nonempty:
        return target_empty
    if all(sigs) and (tsig or target_empty):
        keys = {(s[0], s[1], s[2]) for s in sigs} | ({(tsig[0], tsig[1], tsig[2])} if tsig else set())
        shapes = {S.factors for S, _ in nonempty} | ({target.factors} if tsig else set())
        if len(keys) == 1 and len(shapes) == 1:
            idx, coeffs, modulus, _ = sigs[0]
            fib = Fiber(coeffs, modulus, frozenset())
            step = fib.image_step()
            counts = [0] * modulus
            for (S, x), sig in zip(nonempty, sigs):
                part = S._split(group.normalize(x))[idx]
                shift = fib.value(part)
                for t in sig[3]:
                    counts[(t + shift) % modulus] += 1
            want = [0] * modulus
            if tsig:
                for t in tsig[3]:
                    want[t] += 1
            return all(counts[v] == want[v] for v in range(0, modulus, step))
    # explicit fallback
    seen: set = set()
    for S, x in nonempty:
        for g in (S.to_finite(bound) if isinstance(S, StructuredSet) else S):
            s = group.add(g, x)
            if s in seen:
                return False
            seen.add(s)
    tgt = target.to_finite(bound) if isinstance(target, StructuredSet) else target
    return seen == set(tgt)


def restrict_to_torus(S: AnySet, moduli: Sequence[int], bound: int = DEFAULT_COST_BOUND) -> FiniteSet:
    """Image of ``S`` in ``Z_p1 x ... x Z_pd x G0``, enumerated explicitly."""
    if isinstance(S, StructuredSet):
        if moduli:
            raise DimensionMismatch("structured sets live in finite groups")
        return S.to_finite(bound)
    group = S.group
    T = group.torus(moduli)
    if isinstance(S, FiniteSet):
        return FiniteSet.of(T, (reduce_to_torus(group, g, moduli) for g in S))
    d = group.free_rank
    for p, r in zip(moduli, S.periods):
        if p % r:
            raise PeriodMismatch(f"torus modulus {p} is not a multiple of period {r}")
    mult = [range(p // r) for p, r in zip(moduli, S.periods)]
    cost = len(S.reps) * math.prod(len(m) for m in mult)
    if cost > bound:
        raise CostExceeded("torus restriction", cost, bound)
    out = []
    for rep in S.reps:
        for ks in itertools.product(*mult):
            out.append(tuple(rep[i] + ks[i] * S.periods[i] for i in range(d)) + rep[d:])
    return FiniteSet.of(T, out)
