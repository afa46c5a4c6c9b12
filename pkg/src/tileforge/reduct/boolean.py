"""From a local Boolean constraint to linear equations on Boolean functions.

Three steps, each a :class:`Reduction` of its own:

1. :func:`symmetrize` adds a sign function ``f_D`` so the constraint set is
   closed under negation.
2. :func:`boolean_to_antipode` doubles the unknowns into ``f_{1,d,l}`` and
   ``f_{2,d,l}`` and writes each symmetric constraint as a list of forbidden
   antipodal pairs.
3. :func:`antipode_to_linear` encodes every forbidden pair as one linear
   equation with ``D0 - 2`` slack functions.
"""

from __future__ import annotations

import itertools
import math

from ..groups import DEFAULT_COST_BOUND, CostExceeded
from .ir import AntipodeSystem, BooleanLocalSystem, LinearBooleanSystem, Reduction, shift, torus_points

PM = (1, -1)


def symmetrize(bs: BooleanLocalSystem) -> Reduction:
    """``Omega'`` over ``D+1`` functions: the last one is constant on each window
    and multiplies the others back into ``Omega``."""
    D, L = bs.D, bs.L
    omega = set()
    for w in bs.omega:
        for s in PM:
            t = [0] * ((D + 1) * L)
            for d in range(D):
                for l in range(L):
                    t[d * L + l] = w[d * L + l] * s
            for l in range(L):
                t[D * L + l] = s
            omega.add(tuple(t))
    target = BooleanLocalSystem(D + 1, L, bs.shifts, frozenset(omega))

    def forward(f: dict, moduli) -> dict:
        out = dict(f)
        for n in torus_points(moduli):
            out[(D, n)] = 1
        return out

    def backward(g: dict, moduli) -> dict:
        return {(d, n): g[(d, n)] * g[(D, n)] for n in torus_points(moduli) for d in range(D)}

    return Reduction("symmetrize", bs, target, forward, backward, {})


def window_components(shifts, moduli) -> int:
    """Number of cosets of the subgroup spanned by ``h_l - h_0`` in the torus.

    A symmetrized solution may flip its sign function independently on each
    of them, so ``#target = #source * 2**components``.
    """
    pts = torus_points(moduli)
    gens = [tuple(a - b for a, b in zip(h, shifts[0])) for h in shifts[1:]]
    seen: set = set()
    count = 0
    for p in pts:
        if p in seen:
            continue
        count += 1
        stack = [p]
        seen.add(p)
        while stack:
            x = stack.pop()
            for g in gens:
                for y in (shift(x, g, moduli), shift(x, [-v for v in g], moduli)):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return count


def antipodal_complement(omega, length: int, bound: int = DEFAULT_COST_BOUND) -> list[tuple]:
    """One representative (first entry ``+1``) of each antipodal pair missing from ``omega``."""
    cost = 2 ** max(length - 1, 0)
    if cost > bound:
        raise CostExceeded("antipodal complement", cost, bound)
    out = []
    for rest in itertools.product(PM, repeat=length - 1):
        e = (1,) + rest
        neg = tuple(-x for x in e)
        inside = e in omega
        if inside != (neg in omega):
            raise ValueError("constraint set is not symmetric")
        if not inside:
            out.append(e)
    return out


def boolean_to_antipode(bs: BooleanLocalSystem, bound: int = DEFAULT_COST_BOUND) -> Reduction:
    """Label ``(d, l)`` becomes index ``d*L + l`` of an :class:`AntipodeSystem` with shift ``h_l``."""
    D, L = bs.D, bs.L
    D0 = D * L
    shifts = tuple(bs.shifts[l] for d in range(D) for l in range(L))
    forb1 = antipodal_complement(bs.omega, D0, bound)
    constant = set()
    for vals in itertools.product(PM, repeat=D):
        constant.add(tuple(vals[d] for d in range(D) for _ in range(L)))
    forb2 = antipodal_complement(constant, D0, bound)
    target = AntipodeSystem(D0, shifts, (tuple(forb1), tuple(forb2)))

    def forward(f: dict, moduli) -> dict:
        out = {}
        for n in torus_points(moduli):
            for d in range(D):
                for l in range(L):
                    out[(0, d * L + l, n)] = f[(d, shift(n, bs.shifts[l], moduli))]
                    out[(1, d * L + l, n)] = -f[(d, n)]
        return out

    def backward(g: dict, moduli) -> dict:
        return {(d, n): -g[(1, d * L, n)] for n in torus_points(moduli) for d in range(D)}

    return Reduction("boolean_to_antipode", bs, target, forward, backward, {"D0": D0})


def slack_split(D0: int, s: int) -> int:
    """Number ``p`` of ``+1`` slack entries that cancel a signed sum ``s``."""
    return (D0 - 2 - s) // 2


def antipode_to_linear(asys: AntipodeSystem) -> Reduction:
    """Pad both sides to ``M`` forbidden vectors and add ``D0 - 2`` slack columns per row.

    Sides are padded by repeating their vectors; a side with none gets
    all-zero rows, whose slack columns are left unconstrained.
    """
    D0 = asys.D0
    M = max(len(asys.forbidden[0]), len(asys.forbidden[1]))
    width = D0 - 2
    D = D0 + M * width
    rows: list[list[tuple]] = []
    live: list[list[bool]] = []
    for side in asys.forbidden:
        side = list(side)
        if side:
            padded = [side[m % len(side)] for m in range(M)]
        else:
            padded = [None] * M
        r, a = [], []
        for m, eps in enumerate(padded):
            row = [0] * D
            if eps is not None:
                row[:D0] = eps
                for i in range(width):
                    row[D0 + m * width + i] = 1
            r.append(tuple(row))
            a.append(eps is not None)
        rows.append(r)
        live.append(a)
    target = LinearBooleanSystem(D, D0, (tuple(rows[0]), tuple(rows[1])), asys.shifts)

    def forward(f: dict, moduli) -> dict:
        out = dict(f)
        for n in torus_points(moduli):
            for j in range(2):
                for m in range(M):
                    p = width
                    if live[j][m]:
                        s = sum(rows[j][m][d] * f[(j, d, n)] for d in range(D0))
                        p = slack_split(D0, s)
                    for i in range(width):
                        out[(j, D0 + m * width + i, n)] = 1 if i < p else -1
        return out

    def backward(g: dict, moduli) -> dict:
        return {(j, d, n): g[(j, d, n)] for n in torus_points(moduli) for j in range(2) for d in range(D0)}

    def fiber_weight(f: dict, moduli) -> int:
        """Number of linear solutions restricting to the antipode solution ``f``."""
        w = 1
        for n in torus_points(moduli):
            for j in range(2):
                for m in range(M):
                    if live[j][m]:
                        s = sum(rows[j][m][d] * f[(j, d, n)] for d in range(D0))
                        w *= math.comb(width, slack_split(D0, s))
                    else:
                        w *= 2 ** width
        return w

    red = Reduction("antipode_to_linear", asys, target, forward, backward, {"M": M, "D": D})
    red.params["fiber_weight"] = fiber_weight
    return red


def boolean_to_linear(bs: BooleanLocalSystem, bound: int = DEFAULT_COST_BOUND) -> Reduction:
    """Composite of the three steps above, with composed solution maps."""
    steps = [symmetrize(bs)]
    steps.append(boolean_to_antipode(steps[-1].target, bound))
    steps.append(antipode_to_linear(steps[-1].target))

    def forward(f: dict, moduli) -> dict:
        for st in steps:
            f = st.forward(f, moduli)
        return f

    def backward(g: dict, moduli) -> dict:
        for st in reversed(steps):
            g = st.backward(g, moduli)
        return g

    return Reduction("boolean_to_linear", bs, steps[-1].target, forward, backward,
                     {"steps": steps, "D0": steps[1].target.D0, "M": steps[2].params["M"]})


def abc_table(D0: int) -> list[tuple]:
    """``(eps, y, a, b, c)`` for every ``eps, y`` in ``{-1,1}^D0``.

    (a) ``y`` avoids ``{eps, -eps}``; (b) ``<eps, y>`` lies strictly between
    ``-D0`` and ``D0`` with the parity of ``D0``; (c) some slack vector in
    ``{-1,1}^(D0-2)`` cancels ``<eps, y>``.
    """
    if D0 < 2:
        raise ValueError("D0 must be at least 2")
    allowed = set(range(-D0 + 2, D0 - 1, 2))
    slacks = {sum(v) for v in itertools.product(PM, repeat=D0 - 2)}
    out = []
    for eps in itertools.product(PM, repeat=D0):
        neg = tuple(-x for x in eps)
        for y in itertools.product(PM, repeat=D0):
            s = sum(a * b for a, b in zip(eps, y))
            out.append((eps, y, y != eps and y != neg, s in allowed, -s in slacks))
    return out
