"""Brute-force constraint enumeration for the function-level systems.

This is deliberately independent of the exact-cover/SAT machinery so that it
can serve as a second oracle when checking that a pass preserves solutions.
Each constraint is tested as soon as its last variable is assigned.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

from ..groups import CostExceeded
from .ir import (
    AntipodeSystem,
    BooleanLocalSystem,
    FunctionalSystem,
    HammingSystem,
    LinearBooleanSystem,
    shift,
    torus_points,
)
from ..groups import sum_equals

Constraint = tuple[tuple[Hashable, ...], Callable[..., bool]]


def csp_solutions(variables: Sequence[Hashable], domains: dict, constraints: Sequence[Constraint],
                  cap: int = 100_000) -> list[dict]:
    index = {v: i for i, v in enumerate(variables)}
    buckets: list[list[Constraint]] = [[] for _ in variables]
    for scope, pred in constraints:
        if not scope:
            if not pred():
                return []
            continue
        buckets[max(index[v] for v in scope)].append((scope, pred))
    n = len(variables)
    out: list[dict] = []
    assign: dict = {}
    iters = [None] * n
    i = 0
    if n == 0:
        return [{}]
    iters[0] = iter(domains[variables[0]])
    while i >= 0:
        v = variables[i]
        for value in iters[i]:
            assign[v] = value
            if all(pred(*(assign[u] for u in scope)) for scope, pred in buckets[i]):
                break
        else:
            assign.pop(v, None)
            i -= 1
            continue
        if i == n - 1:
            out.append(dict(assign))
            if len(out) > cap:
                raise CostExceeded("csp enumeration", len(out), cap)
            continue
        i += 1
        iters[i] = iter(domains[variables[i]])
    return out


PM = (1, -1)


def boolean_solutions(bs: BooleanLocalSystem, moduli, cap: int = 100_000) -> list[dict]:
    pts = torus_points(moduli)
    variables = [(d, n) for n in pts for d in range(bs.D)]
    cons = []
    for n in pts:
        scope = tuple((d, shift(n, bs.shifts[l], moduli)) for d in range(bs.D) for l in range(bs.L))
        cons.append((scope, lambda *w: tuple(w) in bs.omega))
    return csp_solutions(variables, {v: PM for v in variables}, cons, cap)


def _pair_constraints(shifts, moduli, pts):
    cons = []
    for n in pts:
        for d, h in enumerate(shifts):
            cons.append((((0, d, n), (1, d, shift(n, h, moduli))), lambda a, b: b == -a))
    return cons


def antipode_solutions(sys: AntipodeSystem, moduli, cap: int = 100_000) -> list[dict]:
    pts = torus_points(moduli)
    variables = [(j, d, n) for n in pts for j in range(2) for d in range(sys.D0)]
    cons = _pair_constraints(sys.shifts, moduli, pts)
    for n in pts:
        for j in range(2):
            bad = set()
            for e in sys.forbidden[j]:
                bad.add(tuple(e))
                bad.add(tuple(-x for x in e))
            scope = tuple((j, d, n) for d in range(sys.D0))
            cons.append((scope, lambda *y, bad=frozenset(bad): tuple(y) not in bad))
    return csp_solutions(variables, {v: PM for v in variables}, cons, cap)


def linear_solutions(ls: LinearBooleanSystem, moduli, cap: int = 100_000) -> list[dict]:
    pts = torus_points(moduli)
    variables = [(j, d, n) for n in pts for j in range(2) for d in range(ls.D)]
    cons = _pair_constraints(ls.shifts, moduli, pts)
    for n in pts:
        for j in range(2):
            for row in ls.coeffs[j]:
                ds = [d for d, a in enumerate(row) if a]
                coeffs = [row[d] for d in ds]
                scope = tuple((j, d, n) for d in ds)
                cons.append((scope, lambda *y, c=tuple(coeffs): sum(a * b for a, b in zip(c, y)) == 0))
    return csp_solutions(variables, {v: PM for v in variables}, cons, cap)


def hamming_solutions(hs: HammingSystem, moduli, cap: int = 100_000) -> list[dict]:
    pts = torus_points(moduli)
    cube = list(itertools.product(PM, repeat=hs.D))
    variables = [(j, n) for n in pts for j in range(2)]
    G = hs.cube_group
    cons = []
    for n in pts:
        for eq in hs.equations:
            scope = ((0, shift(n, eq.h[0], moduli)), (1, shift(n, eq.h[1], moduli)))

            def pred(y1, y2, eq=eq):
                for eps in PM:
                    terms = [(eq.F[0], hs.embed([eps * v for v in y1])), (eq.F[1], hs.embed([eps * v for v in y2]))]
                    if not sum_equals(G, terms, eq.E):
                        return False
                return True

            cons.append((scope, pred))
    return csp_solutions(variables, {v: cube for v in variables}, cons, cap)


def functional_solutions(fs: FunctionalSystem, moduli, cap: int = 100_000) -> list[dict]:
    pts = fs.domain_points(moduli)
    variables = [(j, n) for n in pts for j in range(fs.J)]
    values = fs.codomain.elements()
    cons = []
    for n in pts:
        for eq in fs.equations:
            scope = tuple((j, fs.shift(n, h, moduli)) for j in range(fs.J) for h in eq.H[j])
            sets = [eq.F[j] for j in range(fs.J) for _ in eq.H[j]]

            def pred(*ys, sets=sets, eq=eq):
                return sum_equals(fs.codomain, list(zip(sets, ys)), eq.E)

            # repeated variables in a scope are fine: values are looked up by key
            cons.append((scope, pred))
    return csp_solutions(variables, {v: values for v in variables}, cons, cap)
