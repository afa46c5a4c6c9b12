"""Exact-cover and SAT oracles for tiling systems on tori and windows."""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .groups import CostExceeded, DimensionMismatch, ExplicitGroup, FiniteSet, PeriodicSet, reduce_to_torus, restrict_to_torus
from .tiling import RegionIncompatible, Torus, TilingSystem, Window, verify

DEFAULT_VAR_BOUND = 10**6


class CapExceeded(RuntimeError):
    def __init__(self, cap: int, partial: list):
        self.cap = cap
        self.partial = partial
        super().__init__(f"more than {cap} solutions")


# --- placements -------------------------------------------------------------


@dataclass
class Placement:
    j: int
    a: tuple
    cols: list          # (m, point) target points covered, in the region
    bad: bool           # self-overlap or covers a forbidden point


@dataclass
class CoverModel:
    """Placements of every tile over a region, and the points they must cover."""

    system: TilingSystem
    region: Union[Torus, Window]
    space: ExplicitGroup                 # group the placements live in
    placements: list
    columns: list                        # target points (m, p) that need exactly one cover

    def decode(self, chosen: Sequence[int]) -> list[FiniteSet]:
        parts = [[] for _ in range(self.system.J)]
        for i in chosen:
            p = self.placements[i]
            parts[p.j].append(p.a)
        return [FiniteSet.of(self.space, part) for part in parts]


def _box(lo, hi, group: ExplicitGroup):
    for free in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        for t in itertools.product(*(range(n) for n in group.moduli)):
            yield tuple(free) + t


def cover_model(system: TilingSystem, region, bound: int = DEFAULT_VAR_BOUND) -> CoverModel:
    group = system.group
    J = system.J
    if isinstance(region, Torus):
        if len(region.moduli) != group.free_rank:
            raise RegionIncompatible(f"torus {region.moduli} for {group}")
        space = group.torus(region.moduli)
        size = space.order * J
        if size > bound:
            raise CostExceeded("placement enumeration", size, bound)
        targets = []
        for eq in system.equations:
            try:
                targets.append(restrict_to_torus(eq.target, region.moduli).as_set())
            except Exception as exc:
                raise RegionIncompatible(str(exc)) from exc
        tiles = [[[reduce_to_torus(group, f, region.moduli) for f in F] for F in eq.tiles] for eq in system.equations]
        anchors = space.elements()
        inside = lambda p: True  # noqa: E731
        norm = space.normalize
        points = anchors
    else:
        if len(region.lo) != group.free_rank:
            raise RegionIncompatible(f"window of dimension {len(region.lo)} for {group}")
        space = group
        R = system.radius()
        lo = tuple(a - R for a in region.lo)
        hi = tuple(b + R for b in region.hi)
        size = math.prod(b - a + 1 for a, b in zip(lo, hi)) * (group.finite_part.order) * J
        if size > bound:
            raise CostExceeded("placement enumeration", size, bound)
        anchors = list(_box(lo, hi, group))
        points = list(_box(region.lo, region.hi, group))
        targets = [frozenset(p for p in points if p in eq.target) for eq in system.equations]
        tiles = [[list(F) for F in eq.tiles] for eq in system.equations]
        inside = region.contains_free
        norm = group.normalize
    placements = []
    for j in range(J):
        for a in anchors:
            cols, bad, touched = [], False, False
            for m in range(system.M):
                seen = set()
                for f in tiles[m][j]:
                    p = norm(tuple(x + y for x, y in zip(a, f)))
                    if not inside(p):
                        continue
                    touched = True
                    if p in seen or p not in targets[m]:
                        bad = True
                    seen.add(p)
                    cols.append((m, p))
            if touched:
                placements.append(Placement(j, a, cols, bad))
    columns = [(m, p) for m in range(system.M) for p in points if p in targets[m]]
    return CoverModel(system, region, space, placements, columns)


# --- exact cover (Algorithm X over dicts of sets) --------------------------


def _exact_cover(model: CoverModel) -> Iterator[list[int]]:
    rows = {i: p.cols for i, p in enumerate(model.placements) if not p.bad and p.cols}
    free = [i for i, p in enumerate(model.placements) if not p.bad and not p.cols]
    X: dict = {c: set() for c in model.columns}
    for i, cols in rows.items():
        for c in cols:
            X[c].add(i)

    def select(r):
        removed = []
        for c in rows[r]:
            for i in X[c]:
                for k in rows[i]:
                    if k != c:
                        X[k].remove(i)
            removed.append(X.pop(c))
        return removed

    def deselect(r, removed):
        for c in reversed(rows[r]):
            X[c] = removed.pop()
            for i in X[c]:
                for k in rows[i]:
                    if k != c:
                        X[k].add(i)

    def search(partial):
        if not X:
            yield list(partial)
            return
        c = min(X, key=lambda col: (len(X[col]), col))
        for r in sorted(X[c]):
            partial.append(r)
            removed = select(r)
            yield from search(partial)
            deselect(r, removed)
            partial.pop()

    for sol in search([]):
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                yield sorted(sol + list(extra))


def _canonical(assign: Sequence[FiniteSet]) -> tuple:
    return tuple(A.elements for A in assign)


def enumerate_solutions(system: TilingSystem, torus: Torus, cap: int = 1000, method: str = "exact_cover",
                        bound: int = DEFAULT_VAR_BOUND) -> list[list[FiniteSet]]:
    """All solutions on ``torus`` (at most ``cap``), each re-verified.

    ``method`` is ``"exact_cover"`` (Algorithm X) or ``"cnf"`` (DPLL with
    blocking clauses); both return the same canonically ordered list.
    """
    if not isinstance(torus, Torus):
        torus = Torus(tuple(torus))
    if method == "cnf":
        cnf = encode(system, torus, bound)
        sols = []
        for model in enumerate_models(cnf, cap + 1):
            sols.append(cnf.decode(model))
            if len(sols) > cap:
                break
    else:
        model = cover_model(system, torus, bound)
        sols = []
        for chosen in _exact_cover(model):
            sols.append(model.decode(chosen))
            if len(sols) > cap:
                break
    sols.sort(key=_canonical)
    if len(sols) > cap:
        raise CapExceeded(cap, sols[:cap])
    for s in sols:
        rep = verify(system, s, torus)
        if not rep.ok:
            raise AssertionError(f"solver produced an invalid solution: {rep.failures[:3]}")
    return sols


def find_solution(system: TilingSystem, region, bound: int = DEFAULT_VAR_BOUND) -> list[FiniteSet] | None:
    model = cover_model(system, region, bound)
    for chosen in _exact_cover(model):
        return model.decode(chosen)
    return None


# --- CNF --------------------------------------------------------------------


@dataclass
class CnfInstance:
    num_vars: int
    clauses: list
    var_map: list = field(default_factory=list)      # var index - 1 -> (j, a)
    space: ExplicitGroup | None = None
    J: int = 1

    def __post_init__(self):
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"bad literal {lit}")

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    def var_map_json(self) -> str:
        return json.dumps([{"var": i + 1, "tile": j, "at": list(a)} for i, (j, a) in enumerate(self.var_map)])

    def decode(self, model: Sequence[bool]) -> list[FiniteSet]:
        parts = [[] for _ in range(self.J)]
        for i, (j, a) in enumerate(self.var_map):
            if model[i]:
                parts[j].append(a)
        return [FiniteSet.of(self.space, p) for p in parts]


def parse_dimacs(text: str) -> CnfInstance:
    nv, clauses, cur = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            nv = int(line.split()[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    return CnfInstance(nv, clauses)


def encode(system: TilingSystem, region, bound: int = DEFAULT_VAR_BOUND) -> CnfInstance:
    """One variable per placement; exactly-one per target point, none elsewhere."""
    model = cover_model(system, region, bound)
    var_map = [(p.j, p.a) for p in model.placements]
    clauses = []
    by_col: dict = {c: [] for c in model.columns}
    for i, p in enumerate(model.placements):
        v = i + 1
        if p.bad:
            clauses.append([-v])
            continue
        for c in p.cols:
            by_col[c].append(v)
    for c in model.columns:
        vs = by_col[c]
        clauses.append(list(vs))
        for x, y in itertools.combinations(vs, 2):
            clauses.append([-x, -y])
    return CnfInstance(len(var_map), clauses, var_map, model.space, system.J)


def _check_model(clauses, model) -> bool:
    return all(any((lit > 0) == model[abs(lit) - 1] for lit in c) for c in clauses)


def solve(cnf: CnfInstance, seed: int | None = None) -> list[bool] | None:
    """DPLL with two watched literals; returns a model or None for UNSAT.

    Variables are branched on in index order, or in a seeded shuffled order
    when ``seed`` is given; positive polarity first.
    """
    n = cnf.num_vars
    val = [0] * (n + 1)
    clauses = []
    units = []
    for c in cnf.clauses:
        c = list(dict.fromkeys(c))
        if any(-lit in c for lit in c):
            continue
        if not c:
            return None
        if len(c) == 1:
            units.append(c[0])
        else:
            clauses.append(c)
    watches: dict[int, list[int]] = {}
    for ci, c in enumerate(clauses):
        watches.setdefault(c[0], []).append(ci)
        watches.setdefault(c[1], []).append(ci)
    trail: list[int] = []
    levels: list[list] = []   # [trail index, decision literal, flipped]

    def value(lit):
        v = val[abs(lit)]
        return v if lit > 0 else -v

    def assign(lit):
        val[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)

    for u in units:
        if value(u) == -1:
            return None
        if value(u) == 0:
            assign(u)
    qhead = 0

    def propagate():
        nonlocal qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            falsified = -p
            wl = watches.get(falsified, [])
            i = 0
            while i < len(wl):
                ci = wl[i]
                c = clauses[ci]
                if c[0] == falsified:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    i += 1
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches.setdefault(c[1], []).append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        break
                else:
                    if value(c[0]) == -1:
                        return False
                    if value(c[0]) == 0:
                        assign(c[0])
                    i += 1
        return True

    order = list(range(1, n + 1))
    if seed is not None:
        random.Random(seed).shuffle(order)
    pos = 0

    def undo_to(t):
        nonlocal qhead
        while len(trail) > t:
            val[abs(trail.pop())] = 0
        qhead = min(qhead, t)

    while True:
        if not propagate():
            while levels and levels[-1][2]:
                levels.pop()
            if not levels:
                return None
            t, lit, _ = levels[-1]
            undo_to(t)
            levels[-1][2] = True
            assign(-lit)
            pos = 0
            continue
        while pos < n and val[order[pos]] != 0:
            pos += 1
        if pos == n:
            model = [val[v] == 1 for v in range(1, n + 1)]
            if not _check_model(cnf.clauses, model):
                raise AssertionError("internal error: model fails a clause")
            return model
        v = order[pos]
        levels.append([len(trail), v, False])
        assign(v)


def enumerate_models(cnf: CnfInstance, cap: int) -> Iterator[list[bool]]:
    """Distinct models via blocking clauses over all variables."""
    extra: list = []
    for _ in range(cap):
        model = solve(CnfInstance(cnf.num_vars, cnf.clauses + extra, cnf.var_map, cnf.space, cnf.J))
        if model is None:
            return
        yield model
        extra.append([-(i + 1) if b else (i + 1) for i, b in enumerate(model)])


def truth_table_sat(cnf: CnfInstance, max_vars: int = 20) -> bool:
    """Brute-force satisfiability, independent of :func:`solve`."""
    if cnf.num_vars > max_vars:
        raise CostExceeded("truth table", 2**cnf.num_vars, 2**max_vars)
    for bits in range(2**cnf.num_vars):
        model = [(bits >> i) & 1 == 1 for i in range(cnf.num_vars)]
        if _check_model(cnf.clauses, model):
            return True
    return False


# --- dual semi-decision -----------------------------------------------------


@dataclass
class Satisfiable:
    assignment: list
    torus: Torus
    k: int


@dataclass
class Unsatisfiable:
    window: Window
    k: int


@dataclass
class Exhausted:
    budget: int


SearchVerdict = Union[Satisfiable, Unsatisfiable, Exhausted]


def verdict_to_dict(v: SearchVerdict) -> dict:
    if isinstance(v, Satisfiable):
        return {"verdict": "Satisfiable", "k": v.k, "torus": list(v.torus.moduli),
                "assignment": [{"periods": list(A.periods), "reps": [list(a) for a in A.reps]} for A in v.assignment]}
    if isinstance(v, Unsatisfiable):
        return {"verdict": "Unsatisfiable", "k": v.k, "window": {"lo": list(v.window.lo), "hi": list(v.window.hi)}}
    return {"verdict": "Exhausted", "budget": v.budget}


def dual_search(system: TilingSystem, budget: int, bound: int = DEFAULT_VAR_BOUND) -> SearchVerdict:
    """Interleave periodic-solution search and window refutation for k = 1..budget.

    At step ``k`` a solution is sought on the tori with moduli ``(2k-1)*r`` and
    ``2k*r`` (a periodic solution of the whole system), so every multiple of
    ``r`` is tried exactly once; failing that, the window ``[-k, k]^d`` is
    tested for unsatisfiability.
    """
    group = system.group
    d = group.free_rank
    if d not in (1, 2):
        raise DimensionMismatch("dual search handles Z or Z^2 times a finite group")
    r = system.period()
    for k in range(1, budget + 1):
        for m in (2 * k - 1, 2 * k):
            torus = Torus((m * r,) * d)
            sol = find_solution(system, torus, bound)
            if sol is not None:
                break
        if sol is not None:
            if not verify(system, sol, torus).ok:
                raise AssertionError("torus solution fails verification")
            quot = group.torus(torus.moduli)
            periodic = [PeriodicSet(group, torus.moduli, FiniteSet.of(quot, A)) for A in sol]
            return Satisfiable(periodic, torus, k)
        window = Window((-k,) * d, (k,) * d)
        if find_solution(system, window, bound) is None:
            return Unsatisfiable(window, k)
    return Exhausted(budget)
