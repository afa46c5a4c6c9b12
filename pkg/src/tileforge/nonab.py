"""Permutations of ``Z_4^2`` and sampled checks of tilings in groups built from them.

Group law is written additively: ``a + b`` is the composition ``a o b``
(apply ``b`` first), ``-a`` the inverse, ``0`` the identity.  Cells of
``Z_4^2`` are indexed ``4*y1 + y2``.

Sets of size ``15!`` are never listed.  Tilings ``A (+) F = E`` are checked at
sampled points ``e``: the representations ``e = a + f`` are counted by running
through the small constrained part of ``F`` and solving for ``a``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

CELLS = [(a, b) for a in range(4) for b in range(4)]
CUBE = [(1, 1), (1, 3), (3, 1), (3, 3)]  # {-1,1}^2 inside Z_4^2
TWO_Z4 = [(0, 0), (0, 2), (2, 0), (2, 2)]
K = [(0, 0), (0, 2)]
FIBER_SIZE = math.factorial(15)


class NotAPermutation(ValueError):
    pass


class NotInCube(ValueError):
    pass


class NotInFiber(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


def cell(y) -> int:
    return (y[0] % 4) * 4 + y[1] % 4


@dataclass(frozen=True)
class Perm16:
    images: tuple

    def __post_init__(self):
        im = tuple(int(v) for v in self.images)
        if len(im) != 16 or sorted(im) != list(range(16)):
            raise NotAPermutation(f"not a permutation of 16 cells: {self.images}")
        object.__setattr__(self, "images", im)

    @classmethod
    def _raw(cls, images: tuple) -> "Perm16":
        # internal results are permutations by construction
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls) -> "Perm16":
        return cls(tuple(range(16)))

    @classmethod
    def from_map(cls, fn: Callable) -> "Perm16":
        return cls(tuple(cell(fn(y)) for y in CELLS))

    def __call__(self, y) -> tuple:
        return CELLS[self.images[cell(y)]]

    def __add__(self, other: "Perm16") -> "Perm16":
        a = self.images
        return Perm16._raw(tuple([a[i] for i in other.images]))

    def __neg__(self) -> "Perm16":
        inv = [0] * 16
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm16._raw(tuple(inv))

    def __sub__(self, other: "Perm16") -> "Perm16":
        return self + (-other)

    def __mul__(self, m: int) -> "Perm16":
        out = Perm16.identity()
        base = self if m >= 0 else -self
        for _ in range(abs(m)):
            out = out + base
        return out

    __rmul__ = __mul__

    def pi(self) -> tuple:
        """``alpha^{-1}(0, 0)``."""
        return CELLS[self.images.index(0)]

    def is_cycle(self) -> bool:
        i, n = 0, 0
        while True:
            i = self.images[i]
            n += 1
            if i == 0:
                return n == 16

    def is_stabilizer(self) -> bool:
        return all(self.images[cell(y)] == cell(y) for y in CUBE)


ZERO = Perm16.identity()


def tau(h) -> Perm16:
    """Translation ``x -> x - h``."""
    return Perm16.from_map(lambda x: (x[0] - h[0], x[1] - h[1]))


RHO = Perm16.from_map(lambda x: (x[1], x[0]))


def random_perm(rng: random.Random) -> Perm16:
    im = list(range(16))
    rng.shuffle(im)
    return Perm16(tuple(im))


def random_cycle(rng: random.Random) -> Perm16:
    order = list(range(16))
    rng.shuffle(order)
    im = [0] * 16
    for i, c in enumerate(order):
        im[c] = order[(i + 1) % 16]
    return Perm16(tuple(im))


def random_stabilizer(rng: random.Random) -> Perm16:
    fixed = {cell(y) for y in CUBE}
    rest = [i for i in range(16) if i not in fixed]
    moved = rest[:]
    rng.shuffle(moved)
    im = list(range(16))
    for src, dst in zip(rest, moved):
        im[src] = dst
    return Perm16(tuple(im))


def cyclic_group(sigma: Perm16) -> list[Perm16]:
    out = [ZERO]
    for _ in range(15):
        out.append(out[-1] + sigma)
    return out


# ranking inside a fiber pi^{-1}(y) = {alpha : alpha(y) = (0, 0)}

def rank_in_fiber(alpha: Perm16, y) -> int:
    """Lexicographic rank of ``alpha`` among permutations sending ``y`` to the origin, from 1."""
    p = cell(y)
    if alpha.images[p] != 0:
        raise NotInFiber(f"pi(alpha) = {alpha.pi()}, not {tuple(y)}")
    seq = [v for i, v in enumerate(alpha.images) if i != p]
    rank = 0
    left = list(range(1, 16))
    for i, v in enumerate(seq):
        pos = left.index(v)
        rank += pos * math.factorial(14 - i)
        left.pop(pos)
    return rank + 1


def unrank_in_fiber(k: int, y) -> Perm16:
    if not 1 <= k <= FIBER_SIZE:
        raise NotInFiber(f"rank {k} outside [1, 15!]")
    k -= 1
    left = list(range(1, 16))
    seq = []
    for i in range(15):
        q, k = divmod(k, math.factorial(14 - i))
        seq.append(left.pop(q))
    p = cell(y)
    return Perm16(tuple(seq[:p]) + (0,) + tuple(seq[p:]))


def random_in_fiber(rng: random.Random, y) -> Perm16:
    return unrank_in_fiber(rng.randint(1, FIBER_SIZE), y)


# ambient groups

class PermGroup:
    """``S_16``."""

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def random(self, rng):
        return random_perm(rng)


class PairGroup:
    """``S_16 x Z_4^2``."""

    def add(self, a, b):
        return (a[0] + b[0], ((a[1][0] + b[1][0]) % 4, (a[1][1] + b[1][1]) % 4))

    def neg(self, a):
        return (-a[0], ((-a[1][0]) % 4, (-a[1][1]) % 4))

    def random(self, rng):
        return (random_perm(rng), (rng.randrange(4), rng.randrange(4)))


@dataclass
class OracleSet:
    """A set known through membership, plus an optional enumerable list and sampler."""

    name: str
    contains: Callable
    elements: Sequence | None = None
    sampler: Callable | None = None

    def __contains__(self, x) -> bool:
        return bool(self.contains(x))

    def sample(self, rng):
        if self.sampler is not None:
            return self.sampler(rng)
        if self.elements is not None:
            return rng.choice(list(self.elements))
        raise ValueError(f"{self.name} cannot be sampled")


@dataclass
class CoverStats:
    family: str
    samples: int = 0
    in_target: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {"family": self.family, "samples": self.samples, "in_target": self.in_target,
                "violations": self.violations, "witnesses": [repr(w) for w in self.witnesses]}


def sampled_cover_check(A: OracleSet, F: OracleSet, E: OracleSet, group, samples: int = 10_000, seed: int = 0,
                        mix: float = 0.0, candidates: Callable | None = None, max_witnesses: int = 5,
                        stop_at_first: bool = False) -> CoverStats:
    """Check ``A (+) F = E`` at sampled points.

    Points are uniform in ``group``.  With ``mix > 0`` that fraction is drawn
    as ``a + f`` instead (``a`` from ``A``'s sampler, ``f`` from ``F``), which
    is what finds a handful of bad elements among ``15!`` good ones.
    At each point the number of representations must be 1 inside ``E`` and 0
    outside.  ``candidates(e)`` yields pairs ``(a, f)`` with ``a + f = e``; by
    default it runs over ``F.elements``.
    """
    rng = random.Random(seed)
    if candidates is None:
        if F.elements is None:
            raise ValueError(f"{F.name} has no enumerable part; pass candidates")
        elems = list(F.elements)

        def candidates(e):
            for f in elems:
                yield group.add(e, group.neg(f)), f

    stats = CoverStats(F.name)
    for _ in range(samples):
        if rng.random() < mix:
            e = group.add(A.sample(rng), F.sample(rng))
        else:
            e = group.random(rng)
        count = 0
        for a, f in candidates(e):
            if a in A and f in F:
                count += 1
        inside = e in E
        stats.samples += 1
        stats.in_target += inside
        if count != int(inside):
            stats.violations += 1
            if len(stats.witnesses) < max_witnesses:
                stats.witnesses.append((e, count, inside))
            if stop_at_first:
                break
    return stats


# the encoding of one cube point as a tiling system

def _check_cube(y) -> tuple:
    y = (y[0] % 4, y[1] % 4)
    if y not in CUBE:
        raise NotInCube(f"{y} is not in {{-1,1}}^2")
    return y


def fiber_oracle(y, extra: Iterable[Perm16] = ()) -> OracleSet:
    """``pi^{-1}(y)``, optionally with extra elements (sampled half the time)."""
    y = (y[0] % 4, y[1] % 4)
    extra = list(extra)
    target = cell(y)
    extra_set = set(extra)

    def contains(a):
        return a.images[target] == 0 or a in extra_set

    def sampler(rng):
        if extra and rng.random() < 0.5:
            return rng.choice(extra)
        return random_in_fiber(rng, y)

    return OracleSet(f"pi^-1({y})", contains, None, sampler)


def lemma_oracles(y) -> dict:
    """Sets of the encoding of ``y`` in ``S_16`` by tiling equations."""
    y = _check_cube(y)
    cube = {cell(c) for c in CUBE}
    B = OracleSet("B", lambda a: a.images.index(0) in cube)
    F_tau = OracleSet("tau((2Z_4)^2)", lambda a: a in _TAU_2Z4, list(_TAU_2Z4))
    ALL = OracleSet("S_16", lambda a: True)

    def F_cycle(sigma: Perm16, phi: Perm16 = ZERO) -> OracleSet:
        if not sigma.is_cycle():
            raise ValueError("sigma is not a 16-cycle")
        if not phi.is_stabilizer():
            raise ValueError("phi does not fix the cube")
        elems = [phi] + cyclic_group(sigma)[1:]
        s = set(elems)
        return OracleSet("cycle", lambda a: a in s, elems)

    return {"A": fiber_oracle(y), "B": B, "F_tau": F_tau, "F_cycle": F_cycle, "S16": ALL}


_TAU_2Z4 = [tau(h) for h in TWO_Z4]
_TAU_K = [tau(h) for h in K]
_RHO_TAU_K = [RHO + t for t in _TAU_K]


def corollary_oracles(y) -> dict:
    """The same encoding in ``S_16 x Z_4^2``, where solutions are graphs of ``pi``."""
    y = _check_cube(y)
    cube = set(CUBE)
    A = OracleSet(f"graph over {y}", lambda p: p[1] == y and p[0].pi() == y, None,
                  lambda rng: (random_in_fiber(rng, y), y))
    tau_pairs = [(tau(h), h) for h in TWO_Z4]
    F_tau = OracleSet("(tau(h), h)", lambda p: p in tau_pairs, tau_pairs)
    E_tau = OracleSet("graph of pi over B", lambda p: p[0].pi() == p[1] and p[1] in cube)
    ALL = OracleSet("S_16 x Z_4^2", lambda p: True)

    def F_cycle(sigma: Perm16, phi: Perm16 = ZERO) -> OracleSet:
        firsts = [phi] + cyclic_group(sigma)[1:]
        elems = [(s, c) for s in firsts for c in CELLS]
        fs = set(firsts)
        return OracleSet("cycle x Z_4^2", lambda p: p[0] in fs, elems)

    return {"A": A, "F_tau": F_tau, "E_tau": E_tau, "F_cycle": F_cycle, "ALL": ALL}


# forward construction for linear equations

class BigGroup:
    """``Z^2 x Z_2 x (Z_N^2)^D x S_16^D`` with the lattice factor reduced to a torus."""

    def __init__(self, moduli, N: int, D: int):
        self.moduli = tuple(moduli)
        self.N = N
        self.D = D

    def _n(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def _y(self, a, b):
        return tuple(((p[0] + q[0]) % self.N, (p[1] + q[1]) % self.N) for p, q in zip(a, b))

    def add(self, a, b):
        return (self._n(a[0], b[0]), (a[1] + b[1]) % 2, self._y(a[2], b[2]),
                tuple(x + y for x, y in zip(a[3], b[3])))

    def neg(self, a):
        return (tuple((-x) % m for x, m in zip(a[0], self.moduli)), (-a[1]) % 2,
                tuple(((-p[0]) % self.N, (-p[1]) % self.N) for p in a[2]), tuple(-x for x in a[3]))

    def sub_y(self, a, b):
        return tuple(((p[0] - q[0]) % self.N, (p[1] - q[1]) % self.N) for p, q in zip(a, b))

    def random_y(self, rng):
        return tuple((rng.randrange(self.N), rng.randrange(self.N)) for _ in range(self.D))

    def random(self, rng):
        return (tuple(rng.randrange(m) for m in self.moduli), rng.randrange(2), self.random_y(rng),
                tuple(random_perm(rng) for _ in range(self.D)))


class LinearEncoding:
    """The set ``A`` built from a solution ``f`` of a linear Boolean system, with its tile families.

    ``A`` holds ``(n, t, (y_{n,t,d})_d, (alpha_{y_{n,t,d}, k})_d)`` for every rank
    ``k``, with ``y_{n,t,d} = (-1)^t (f_{1,d}(n), f_{2,d}(n))``.
    """

    def __init__(self, ls, f: dict, moduli, N: int | None = None, check: bool = True):
        from .reduct.linear import choose_N

        self.ls = ls
        self.D = ls.D
        self.moduli = tuple(moduli)
        self.N = choose_N(ls) if N is None else N
        if self.N % 4:
            raise ValueError("N must be a multiple of 4")
        self.f = f
        if check:
            self.check_precondition()
        self.G = BigGroup(self.moduli, self.N, self.D)

    def check_precondition(self) -> None:
        from .reduct.ir import shift, torus_points

        ls, f = self.ls, self.f
        for n in torus_points(self.moduli):
            for j in range(2):
                for m, row in enumerate(ls.coeffs[j]):
                    if sum(a * f[(j, d, n)] for d, a in enumerate(row)):
                        raise PreconditionFailed(f"linear equation j={j + 1}, m={m + 1} fails at n={n}")
            for d in range(ls.D0):
                if f[(1, d, shift(n, ls.shifts[d], self.moduli))] != -f[(0, d, n)]:
                    raise PreconditionFailed(f"shift equation d={d + 1} fails at n={n}")

    def Y(self, n, t) -> tuple:
        s = -1 if t else 1
        return tuple((s * self.f[(0, d, tuple(n))], s * self.f[(1, d, tuple(n))]) for d in range(self.D))

    def Y_N(self, n, t) -> tuple:
        return tuple((a % self.N, b % self.N) for a, b in self.Y(n, t))

    def Y_4(self, n, t) -> tuple:
        return tuple((a % 4, b % 4) for a, b in self.Y(n, t))

    def contains(self, a) -> bool:
        n, t, y, z = a
        if y != self.Y_N(n, t):
            return False
        y4 = self.Y_4(n, t)
        if any(z[d].pi() != y4[d] for d in range(self.D)):
            return False
        return len({rank_in_fiber(z[d], y4[d]) for d in range(self.D)}) == 1

    def solve(self, n, t, d: int, zd: Perm16):
        """The element of ``A`` over ``(n, t)`` whose ``d``-th permutation is ``zd``, or None."""
        y4 = self.Y_4(n, t)
        if zd.pi() != y4[d]:
            return None
        k = rank_in_fiber(zd, y4[d])
        z = tuple(zd if i == d else unrank_in_fiber(k, y4[i]) for i in range(self.D))
        return (tuple(n), t, self.Y_N(n, t), z)

    def sample(self, rng):
        n = tuple(rng.randrange(m) for m in self.moduli)
        t = rng.randrange(2)
        k = rng.randint(1, FIBER_SIZE)
        y4 = self.Y_4(n, t)
        return (n, t, self.Y_N(n, t), tuple(unrank_in_fiber(k, y4[d]) for d in range(self.D)))

    def oracle(self) -> OracleSet:
        return OracleSet("A", self.contains, None, self.sample)

    def _shift_n(self, n, h):
        return tuple((a + b) % m for a, b, m in zip(n, h, self.moduli))

    def _rest(self, a, e, fn, ft, fy):
        """``f = -a + e`` written out, with the lattice and y parts given."""
        return (fn, ft, fy, tuple(-x + y for x, y in zip(a[3], e[3])))

    # tile families: each returns (F oracle, E oracle, candidates)

    def family_linear(self, j: int, m: int, sigma: Perm16):
        """Rows of the linear system: ``{0} x H x C_sigma`` onto ``Z^2 x Z_2 x H x S^D``."""
        N, D = self.N, self.D
        row = self.ls.coeffs[j][m]
        powers = cyclic_group(sigma)
        pset = set(powers)
        zero_n = (0,) * len(self.moduli)

        def in_H(y):
            return sum(a * y[d][j] for d, a in enumerate(row)) % N == 0

        F = OracleSet(f"linear j={j + 1} m={m + 1}",
                      lambda f: f[0] == zero_n and f[1] == 0 and in_H(f[2]) and f[3][0] in pset,
                      None, lambda rng: (zero_n, 0, self._random_in_H(rng, row, j),
                                         (rng.choice(powers),) + tuple(random_perm(rng) for _ in range(D - 1))))
        E = OracleSet("Z^2 x Z_2 x H x S^D", lambda e: in_H(e[2]))

        def candidates(e):
            n, t, y, z = e
            h = self.G.sub_y(y, self.Y_N(n, t))
            for s in powers:
                a = self.solve(n, t, 0, z[0] - s)
                if a is not None:
                    yield a, self._rest(a, e, zero_n, 0, h)

        return F, E, candidates

    def _random_in_H(self, rng, row, j):
        N = self.N
        while True:
            y = self.G.random_y(rng)
            if sum(a * y[d][j] for d, a in enumerate(row)) % N == 0:
                return y

    def family_sign(self, d: int, j: int, sigma: Perm16):
        """``{0} x Z_2 x {y_{d,j} = 0} x C_sigma`` onto ``y_{d,j}`` in ``{-1, 1}``."""
        N, D = self.N, self.D
        powers = cyclic_group(sigma)
        pset = set(powers)
        zero_n = (0,) * len(self.moduli)

        def rand_f(rng):
            y = list(self.G.random_y(rng))
            p = list(y[d])
            p[j] = 0
            y[d] = tuple(p)
            return (zero_n, rng.randrange(2), tuple(y),
                    (rng.choice(powers),) + tuple(random_perm(rng) for _ in range(D - 1)))

        F = OracleSet(f"sign d={d + 1} j={j + 1}",
                      lambda f: f[0] == zero_n and f[2][d][j] == 0 and f[3][0] in pset, None, rand_f)
        E = OracleSet("y_{d,j} in {-1,1}", lambda e: e[2][d][j] in (1, N - 1))

        def candidates(e):
            n, t, y, z = e
            for s in (0, 1):
                tt = (t - s) % 2
                h = self.G.sub_y(y, self.Y_N(n, tt))
                for p in powers:
                    a = self.solve(n, tt, 0, z[0] - p)
                    if a is not None:
                        yield a, self._rest(a, e, zero_n, s, h)

        return F, E, candidates

    def family_shift(self, d: int):
        """``T_d u+ T'_d`` onto ``pi(zeta_d)`` in the cube."""
        D = self.D
        zero_n = (0,) * len(self.moduli)
        hd = tuple(self.ls.shifts[d])
        minus_h = tuple((-v) % m for v, m in zip(hd, self.moduli))
        tk, rtk = set(_TAU_K), set(_RHO_TAU_K)
        cube = set(CUBE)

        def contains_f(f):
            if f[1] != 0:
                return False
            c = f[3][d]
            return (f[0] == zero_n and c in tk) or (f[0] == minus_h and c in rtk)

        def rand_f(rng):
            z = [random_perm(rng) for _ in range(D)]
            if rng.random() < 0.5:
                z[d] = rng.choice(_TAU_K)
                return (zero_n, 0, self.G.random_y(rng), tuple(z))
            z[d] = rng.choice(_RHO_TAU_K)
            return (minus_h, 0, self.G.random_y(rng), tuple(z))

        F = OracleSet(f"shift d={d + 1}", contains_f, None, rand_f)
        E = OracleSet("pi(zeta_d) in cube", lambda e: e[3][d].pi() in cube)

        def candidates(e):
            n, t, y, z = e
            for base, kappas, fn in ((n, _TAU_K, zero_n), (self._shift_n(n, hd), _RHO_TAU_K, minus_h)):
                h = self.G.sub_y(y, self.Y_N(base, t))
                for kap in kappas:
                    a = self.solve(base, t, d, z[d] - kap)
                    if a is not None:
                        yield a, self._rest(a, e, fn, 0, h)

        return F, E, candidates

    def family_cube(self, d: int, F_l: OracleSet, E_l: OracleSet):
        """Lift of one equation ``Tile(F_l; E_l)`` of the cube encoding to coordinate ``d``."""
        D = self.D
        zero_n = (0,) * len(self.moduli)
        pairs = list(F_l.elements)

        def proj(y, z):
            return (z[d], (y[d][0] % 4, y[d][1] % 4))

        def rand_f(rng):
            beta, u = rng.choice(pairs)
            y = list(self.G.random_y(rng))
            y[d] = ((u[0] + 4 * rng.randrange(self.N // 4)) % self.N, (u[1] + 4 * rng.randrange(self.N // 4)) % self.N)
            z = [random_perm(rng) for _ in range(D)]
            z[d] = beta
            return (zero_n, 0, tuple(y), tuple(z))

        F = OracleSet(f"cube d={d + 1} {F_l.name}",
                      lambda f: f[0] == zero_n and f[1] == 0 and proj(f[2], f[3]) in F_l, None, rand_f)
        E = OracleSet(f"lift of {E_l.name}", lambda e: proj(e[2], e[3]) in E_l)

        def candidates(e):
            n, t, y, z = e
            h = self.G.sub_y(y, self.Y_N(n, t))
            hd = (h[d][0] % 4, h[d][1] % 4)
            for beta, u in pairs:
                if u != hd:
                    continue
                a = self.solve(n, t, d, z[d] - beta)
                if a is not None:
                    yield a, self._rest(a, e, zero_n, 0, h)

        return F, E, candidates

    def check_family(self, family, samples: int, seed: int, mix: float = 0.0) -> CoverStats:
        F, E, cands = family
        return sampled_cover_check(self.oracle(), F, E, self.G, samples, seed, mix, candidates=cands)


def k_decomposition(y, y_shift) -> bool:
    """``(y + K) u+ (rho(y') + K) == {-1,1}^2`` inside ``Z_4^2``."""
    y = (y[0] % 4, y[1] % 4)
    r = (y_shift[1] % 4, y_shift[0] % 4)
    left = [((y[0] + k[0]) % 4, (y[1] + k[1]) % 4) for k in K]
    right = [((r[0] + k[0]) % 4, (r[1] + k[1]) % 4) for k in K]
    both = left + right
    return len(set(both)) == 4 and set(both) == set(CUBE)


def linear_encoding_forward(ls, f: dict, moduli, N: int | None = None, samples: int = 1000, seed: int = 0,
                            n_sigma: int = 2, check: bool = True, mix: float = 0.0) -> dict:
    """Run every tile family of the encoding on sampled points; returns ``{family: CoverStats}``."""
    enc = LinearEncoding(ls, f, moduli, N, check)
    rng = random.Random(seed)
    out: dict = {}

    def run(key, fam):
        st = enc.check_family(fam, samples, rng.randrange(2**32), mix)
        out[key] = st

    for _ in range(n_sigma):
        sigma = random_cycle(rng)
        for j in range(2):
            for m in range(len(ls.coeffs[j])):
                run(("linear", j, m, sigma), enc.family_linear(j, m, sigma))
        for d in range(ls.D):
            for j in range(2):
                run(("sign", d, j, sigma), enc.family_sign(d, j, sigma))
    for d in range(ls.D0):
        run(("shift", d), enc.family_shift(d))
        cor = corollary_oracles(CUBE[0])
        run(("cube-tau", d), enc.family_cube(d, cor["F_tau"], cor["E_tau"]))
        for i in range(n_sigma):
            F_l = cor["F_cycle"](random_cycle(rng), random_stabilizer(rng))
            run(("cube-cycle", d, i), enc.family_cube(d, F_l, cor["ALL"]))
    return out


def iter_families(stats: dict) -> Iterator[tuple]:
    for key, st in stats.items():
        yield key[0], st
