"""End-to-end compilation of a tile set in ``Z^k`` into two tiles.

``dry_run`` only does integer arithmetic on the sizes each stage would
produce; ``materialize`` runs the passes and composes their solution maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..groups import DEFAULT_COST_BOUND, FiniteSet
from .boolean import boolean_to_linear
from .coloring import colors, omega_size, tileset_to_boolean
from .functional import functional_to_tilings, functional_to_tilings_zd
from .hamming import hamming_to_functional, pullback_z2z
from .ir import Reduction, TwoTileInstance
from .linear import linear_to_hamming
from .stacking import combine, combine_zd

STAGES = ("boolean", "linear", "hamming", "functional", "tilings", "two-tile")
ZD_STAGES = ("boolean", "linear", "hamming", "functional", "pullback", "tilings-zd", "zd")


@dataclass
class Stage:
    name: str
    params: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "params": dict(self.params), "sizes": {k: str(v) for k, v in self.sizes.items()}}


@dataclass
class PipelineTrace:
    stages: list[Stage] = field(default_factory=list)

    def add(self, name: str, params=None, **sizes) -> Stage:
        st = Stage(name, dict(params or {}), sizes)
        self.stages.append(st)
        return st

    def __getitem__(self, name: str) -> Stage:
        for st in self.stages:
            if st.name == name:
                return st
        raise KeyError(name)

    def to_dict(self) -> dict:
        # sizes go out as decimal strings: some are far beyond 64 bits
        return {"stages": [st.to_dict() for st in self.stages]}


def _differences(tiles) -> int:
    zero = (0,) * tiles[0].group.dim
    diffs = {tuple(a - b for a, b in zip(h2, h1)) for F in tiles for h1 in F for h2 in F}
    diffs.discard(zero)
    return len(diffs)


def dry_run(tiles: Sequence[FiniteSet], N_override: int | None = None) -> PipelineTrace:
    """Sizes of every stage, by exact integer arithmetic only."""
    tiles = list(tiles)
    trace = PipelineTrace()
    k = tiles[0].group.dim
    nC = len(colors(tiles))
    D = max(1, (nC - 1).bit_length())
    L = 1 + _differences(tiles)
    omega = omega_size(tiles)
    trace.add("boolean", {"D": D, "L": L}, colors=nC, omega=omega)

    Ds = D + 1
    D0 = Ds * L
    M1 = 2 ** (D0 - 1) - omega
    M2 = 2 ** (D0 - 1) - 2 ** (Ds - 1)
    M = max(M1, M2)
    width = D0 - 2
    Dl = D0 + M * width
    trace.add("linear", {"D0": D0, "M": M, "D": Dl}, M1=M1, M2=M2, unknowns=2 * Dl)

    weight = (D0 + width) if M else 0
    N = 4 * (weight // 4 + 1) if N_override is None else N_override
    Mh = 2 * M + D0
    trace.add("hamming", {"N": N, "D": Dl}, equations=Mh, cube=N ** Dl)

    G0 = N ** Dl
    Mf = 2 * Dl + Mh
    trace.add("functional", {"domain": f"Z^{k} x Z_2", "G0": f"Z_{N}^{Dl}"}, equations=Mf, G0=G0)

    # tile cells: sign equations, linear rows (zero rows have full fibers), shift equations
    fib = N ** (Dl - 1)
    zero_rows = (M if M1 == 0 else 0) + (M if M2 == 0 else 0)
    live_rows = 2 * M - zero_rows
    J = 2
    per_eq_marker = J * G0
    body = 2 * Dl * (2 * fib) + live_rows * fib + zero_rows * G0 + D0 * 2 * fib
    marker_cells = (Mf + 2) * per_eq_marker
    total_cells = body + marker_cells
    Nt = J + 1
    trace.add("tilings", {"N": Nt}, equations=Mf + 2, tile_cells=total_cells, group_torsion=2 * Nt * G0)

    Nc = Mf + 2 + 1
    E0 = Mf * 2 * J * G0  # marker layers, per equation
    E0 += 2 * (2 * Dl * 2 * fib + live_rows * fib + zero_rows * G0 + D0 * 2 * fib)  # equation layer
    E0 += 2 * 2 * J * G0  # permutation equations
    trace.add("two-tile", {"N": Nc}, G0=2 * Nt * G0 * Nc, tile_cells=total_cells, E0=E0)
    return trace


@dataclass
class Compiled:
    """Materialized pipeline: the chain of passes and composed solution maps."""

    trace: PipelineTrace
    passes: list[Reduction]
    result: object

    def moduli_chain(self, moduli) -> list[tuple]:
        out = [tuple(moduli)]
        for p in self.passes:
            out.append(p.target_moduli(out[-1]))
        return out

    def forward(self, sol, moduli):
        chain = self.moduli_chain(moduli)
        for p, m in zip(self.passes, chain):
            sol = p.forward(sol, m)
        return sol

    def backward(self, sol, moduli):
        chain = self.moduli_chain(moduli)
        for p, m in reversed(list(zip(self.passes, chain))):
            sol = p.backward(sol, m)
        return sol

    @property
    def target(self):
        return self.passes[-1].target if self.passes else None


def _instance(system) -> TwoTileInstance:
    (eq,) = system.equations
    F1, F2 = eq.tiles
    E0 = eq.target.finite_slice() if eq.target.is_cylinder() and eq.group.moduli else eq.target
    return TwoTileInstance(eq.group, E0, F1, F2)


def compile_pipeline(tiles: Sequence[FiniteSet], to: str = "two-tile", N: int | None = None,
                     bound: int = DEFAULT_COST_BOUND) -> Compiled:
    """Run the passes up to stage ``to`` (one of :data:`STAGES` or :data:`ZD_STAGES`)."""
    tiles = list(tiles)
    zd = to in ("pullback", "tilings-zd", "zd")
    order = ZD_STAGES if zd else STAGES
    if to not in order:
        raise ValueError(f"unknown stage {to!r}")
    if zd and N is None:
        N = 8  # the Z^k variant needs N_i >= 5 in the codomain
    trace = dry_run(tiles, N)
    passes: list[Reduction] = []
    k = tiles[0].group.dim
    builders = {
        "boolean": lambda src: tileset_to_boolean(tiles),
        "linear": lambda src: boolean_to_linear(src, bound),
        "hamming": lambda src: linear_to_hamming(src, N),
        "functional": lambda src: hamming_to_functional(src, dim=k),
        "tilings": lambda src: functional_to_tilings(src, bound=bound),
        "two-tile": lambda src: combine(src),
        "pullback": lambda src: pullback_z2z(src),
        "tilings-zd": lambda src: functional_to_tilings_zd(src, bound=bound),
        "zd": lambda src: combine_zd(src),
    }
    src = tiles
    for name in order:
        p = builders[name](src)
        passes.append(p)
        src = p.target
        if name == to:
            break
    result = src
    if to in ("two-tile", "zd"):
        result = _instance(src)
    return Compiled(trace, passes, result)


def compile_two_tiles(tiles: Sequence[FiniteSet], mode: str = "dry_run", bound: int = DEFAULT_COST_BOUND):
    """``(trace, compiled)``; ``compiled`` is None in ``dry_run`` mode."""
    if mode == "dry_run":
        return dry_run(tiles), None
    if mode != "materialize":
        raise ValueError(f"unknown mode {mode!r}")
    c = compile_pipeline(tiles, "two-tile", bound=bound)
    return c.trace, c


def stage_growth(trace: PipelineTrace) -> list[int]:
    """A single size per stage, for eyeballing growth."""
    keys = {"boolean": "omega", "linear": "unknowns", "hamming": "cube", "functional": "G0",
            "tilings": "tile_cells", "two-tile": "tile_cells"}
    return [int(st.sizes[keys[st.name]]) for st in trace.stages if st.name in keys]


__all__ = ["Compiled", "PipelineTrace", "Stage", "compile_pipeline", "compile_two_tiles", "dry_run", "stage_growth"]
