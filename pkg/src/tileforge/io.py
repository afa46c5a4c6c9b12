"""JSON interchange: one envelope ``{schema_version, kind, payload}`` for every instance kind.

Output is canonical (sorted elements, sorted keys), so ``dumps(loads(s)) == s``
for anything ``dumps`` wrote.
"""

from __future__ import annotations

import json

from .groups import ExplicitGroup, Fiber, FiniteSet, Full, Listed, PeriodicSet, StructuredSet
from .reduct.ir import (
    AntipodeSystem,
    BooleanLocalSystem,
    FunctionalEquation,
    FunctionalSystem,
    HammingEquation,
    HammingSystem,
    LinearBooleanSystem,
    TwoTileInstance,
)
from .tiling import TilingEquation, TilingSystem

SCHEMA = "tileforge-ir/1"


class SchemaError(ValueError):
    """Well-formed JSON that is not a valid instance file."""


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}" if line else msg)


# --- sets ---------------------------------------------------------------------

def group_to_json(G: ExplicitGroup) -> dict:
    return {"free_rank": G.free_rank, "moduli": list(G.moduli)}


def group_from_json(d) -> ExplicitGroup:
    return ExplicitGroup(int(d.get("free_rank", 0)), tuple(d.get("moduli", ())))


def _pts(elems) -> list:
    return [list(g) for g in sorted(tuple(g) for g in elems)]


def _desc_to_json(d) -> dict:
    if isinstance(d, Full):
        return {"full": True}
    if isinstance(d, Listed):
        return {"listed": _pts(d.items)}
    return {"fiber": {"coeffs": list(d.coeffs), "modulus": d.modulus, "targets": sorted(d.targets)}}


def _desc_from_json(d):
    if "full" in d:
        return Full()
    if "listed" in d:
        return Listed(frozenset(tuple(x) for x in d["listed"]))
    f = d["fiber"]
    return Fiber(tuple(f["coeffs"]), int(f["modulus"]), frozenset(f["targets"]))


def set_to_json(S) -> dict:
    if isinstance(S, FiniteSet):
        return {"type": "finite", "group": group_to_json(S.group), "elements": _pts(S)}
    if isinstance(S, PeriodicSet):
        return {"type": "periodic", "group": group_to_json(S.group), "periods": list(S.periods),
                "reps": _pts(S.reps)}
    if isinstance(S, StructuredSet):
        return {"type": "structured", "factors": [group_to_json(f) for f in S.factors],
                "boxes": [[_desc_to_json(d) for d in box] for box in S.boxes]}
    raise TypeError(f"cannot serialize {type(S).__name__}")


def set_from_json(d):
    t = d.get("type")
    if t == "finite":
        return FiniteSet.of(group_from_json(d["group"]), (tuple(x) for x in d["elements"]))
    if t == "periodic":
        G = group_from_json(d["group"])
        periods = tuple(d["periods"])
        return PeriodicSet(G, periods, FiniteSet.of(G.torus(periods), (tuple(x) for x in d["reps"])))
    if t == "structured":
        return StructuredSet(tuple(group_from_json(f) for f in d["factors"]),
                             tuple(tuple(_desc_from_json(x) for x in box) for box in d["boxes"]))
    raise SchemaError(f"unknown set type {t!r}")


# --- instances ----------------------------------------------------------------

def _tileset_to(tiles) -> dict:
    return {"group": group_to_json(tiles[0].group), "tiles": [_pts(F) for F in tiles]}


def _tileset_from(p) -> list:
    G = group_from_json(p["group"])
    return [FiniteSet.of(G, (tuple(x) for x in F)) for F in p["tiles"]]


def _system_to(s: TilingSystem) -> dict:
    return {"group": group_to_json(s.group),
            "equations": [{"tiles": [_pts(F) for F in e.tiles], "target": set_to_json(e.target)} for e in s.equations]}


def _system_from(p) -> TilingSystem:
    G = group_from_json(p["group"])
    return TilingSystem(tuple(
        TilingEquation(G, tuple(FiniteSet.of(G, (tuple(x) for x in F)) for F in e["tiles"]), set_from_json(e["target"]))
        for e in p["equations"]))


def _vecs(vs) -> list:
    return [list(v) for v in vs]


def _tuples(vs) -> tuple:
    return tuple(tuple(v) for v in vs)


_TO = {
    "tileset": _tileset_to,
    "tiling-system": _system_to,
    "boolean": lambda b: {"D": b.D, "L": b.L, "shifts": _vecs(b.shifts), "omega": _pts(b.omega)},
    "antipode": lambda a: {"D0": a.D0, "shifts": _vecs(a.shifts), "forbidden": [_vecs(s) for s in a.forbidden]},
    "linear": lambda s: {"D": s.D, "D0": s.D0, "shifts": _vecs(s.shifts), "coeffs": [_vecs(c) for c in s.coeffs]},
    "hamming": lambda h: {"N": h.N, "D": h.D, "equations": [
        {"h": _vecs(e.h), "F": [set_to_json(x) for x in e.F], "E": set_to_json(e.E)} for e in h.equations]},
    "functional": lambda f: {"domain": group_to_json(f.domain), "codomain": group_to_json(f.codomain), "J": f.J,
                             "equations": [{"H": [_vecs(Hj) for Hj in e.H], "F": [set_to_json(x) for x in e.F],
                                            "E": set_to_json(e.E)} for e in f.equations]},
    "two-tile": lambda t: {"group": group_to_json(t.group), "E0": set_to_json(t.E0),
                           "F1": set_to_json(t.F1), "F2": set_to_json(t.F2)},
}

_FROM = {
    "tileset": _tileset_from,
    "tiling-system": _system_from,
    "boolean": lambda p: BooleanLocalSystem(p["D"], p["L"], _tuples(p["shifts"]), frozenset(_tuples(p["omega"]))),
    "antipode": lambda p: AntipodeSystem(p["D0"], _tuples(p["shifts"]), tuple(_tuples(s) for s in p["forbidden"])),
    "linear": lambda p: LinearBooleanSystem(p["D"], p["D0"], tuple(_tuples(c) for c in p["coeffs"]), _tuples(p["shifts"])),
    "hamming": lambda p: HammingSystem(p["N"], p["D"], tuple(
        HammingEquation(_tuples(e["h"]), tuple(set_from_json(x) for x in e["F"]), set_from_json(e["E"]))
        for e in p["equations"])),
    "functional": lambda p: FunctionalSystem(group_from_json(p["domain"]), group_from_json(p["codomain"]), tuple(
        FunctionalEquation(tuple(_tuples(Hj) for Hj in e["H"]), tuple(set_from_json(x) for x in e["F"]),
                           set_from_json(e["E"])) for e in p["equations"]), p["J"]),
    "two-tile": lambda p: TwoTileInstance(group_from_json(p["group"]), set_from_json(p["E0"]),
                                          set_from_json(p["F1"]), set_from_json(p["F2"])),
}

_TYPES = [
    (TilingSystem, "tiling-system"), (BooleanLocalSystem, "boolean"), (AntipodeSystem, "antipode"),
    (LinearBooleanSystem, "linear"), (HammingSystem, "hamming"), (FunctionalSystem, "functional"),
    (TwoTileInstance, "two-tile"),
]

KINDS = tuple(_TO) + ("trace", "cover-stats", "solutions", "verdict")


def kind_of(obj) -> str:
    if isinstance(obj, (list, tuple)) and obj and all(isinstance(F, FiniteSet) for F in obj):
        return "tileset"
    for cls, kind in _TYPES:
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no instance kind for {type(obj).__name__}")


def envelope(kind: str, payload) -> dict:
    return {"schema_version": SCHEMA, "kind": kind, "payload": payload}


def to_json(obj, kind: str | None = None) -> dict:
    kind = kind or kind_of(obj)
    return envelope(kind, _TO[kind](obj))


def dumps_envelope(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=1) + "\n"


def dumps(obj, kind: str | None = None) -> str:
    return dumps_envelope(to_json(obj, kind))


def parse_envelope(text: str) -> dict:
    try:
        env = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(env, dict) or env.get("schema_version") != SCHEMA:
        raise SchemaError(f"expected schema_version {SCHEMA!r}")
    if env.get("kind") not in KINDS:
        raise SchemaError(f"unknown kind {env.get('kind')!r}")
    return env


def from_json(env: dict):
    kind = env["kind"]
    if kind not in _FROM:
        return env["payload"]
    try:
        return _FROM[kind](env["payload"])
    except (KeyError, TypeError) as e:
        raise SchemaError(f"bad {kind} payload: {e}") from None


def loads(text: str):
    """``(kind, object)``; report kinds come back as plain payload dicts."""
    env = parse_envelope(text)
    return env["kind"], from_json(env)


def solutions_to_json(solutions, region: dict, verdict: str) -> dict:
    return envelope("solutions", {"region": region, "verdict": verdict, "count": len(solutions),
                                  "solutions": [[set_to_json(A) for A in sol] for sol in solutions]})


def solutions_from_json(payload) -> list:
    return [[set_from_json(A) for A in sol] for sol in payload["solutions"]]
