"""``tileforge`` command line.

Exit codes: 0 success, 1 parse or usage error, 2 resource, cost or region
error, 3 internal assertion or failed check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import fixtures, io
from .groups import CostExceeded, DimensionMismatch, PeriodMismatch, PeriodicSet
from .solver import CapExceeded, dual_search, encode, enumerate_solutions, find_solution, verdict_to_dict
from .tiling import NoRepeatFound, RegionIncompatible, Torus, Window, newman_periodize, verify

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3

PALETTE = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
           "#9c755f", "#bab0ac"]


class UsageError(ValueError):
    pass


class NotTwoDimensional(ValueError):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


# --- helpers ------------------------------------------------------------------

def load(arg: str):
    """``(kind, object)`` from a file path or ``fixture:NAME``."""
    if arg.startswith("fixture:"):
        try:
            obj = fixtures.get(arg[len("fixture:"):])
        except (KeyError, ValueError) as e:
            raise UsageError(str(e)) from None
        return io.kind_of(obj), obj
    try:
        with open(arg) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(str(e)) from None
    return io.loads(text)


def as_system(kind: str, obj):
    if kind == "tileset":
        return fixtures.tileset_system(obj)
    if kind == "tiling-system":
        return obj
    if kind == "two-tile":
        return obj.system()
    raise UsageError(f"a {kind} file is not a tiling problem")


def parse_region(torus: str | None, window: str | None):
    if (torus is None) == (window is None):
        raise UsageError("give exactly one of --torus and --window")
    try:
        if torus is not None:
            return Torus(tuple(int(x) for x in torus.split(",")))
        lo, hi = zip(*(tuple(int(v) for v in part.split(":")) for part in window.split(",")))
        return Window(lo, hi)
    except ValueError as e:
        if isinstance(e, RegionIncompatible):
            raise
        raise UsageError(f"bad region: {e}") from None


def region_json(region) -> dict:
    if isinstance(region, Torus):
        return {"kind": "torus", "moduli": list(region.moduli)}
    return {"kind": "window", "lo": list(region.lo), "hi": list(region.hi)}


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands --------------------------------------------------------------

def cmd_compile(args) -> int:
    from .reduct.pipeline import compile_pipeline, dry_run

    kind, tiles = load(args.input)
    if kind != "tileset":
        raise UsageError("compile expects a tile set")
    if args.dry_run:
        N = args.N if args.N is not None else (8 if args.to == "zd" else None)
        emit(io.dumps_envelope(io.envelope("trace", dry_run(tiles, N).to_dict())), args.out)
        return EXIT_OK
    c = compile_pipeline(tiles, args.to, N=args.N, bound=args.bound)
    emit(io.dumps(c.result), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    kind, obj = load(args.instance)
    system = as_system(kind, obj)
    region = parse_region(args.torus, args.window)
    if isinstance(region, Torus):
        sols = enumerate_solutions(system, region, cap=args.enumerate, method=args.method)
    else:
        one = find_solution(system, region)
        sols = [] if one is None else [one]
    for s in sols:
        if not verify(system, s, region).ok:
            raise AssertionError("solution failed re-verification")
    env = io.solutions_to_json(sols, region_json(region), "sat" if sols else "unsat")
    env["payload"]["seed"] = args.seed
    env["payload"]["tiles"] = [io.set_to_json(F) for F in system.equations[0].tiles]
    emit(io.dumps_envelope(env), args.out)
    return EXIT_OK


def cmd_dual_search(args) -> int:
    kind, obj = load(args.instance)
    v = dual_search(as_system(kind, obj), args.budget)
    d = verdict_to_dict(v)
    label = d["verdict"] + (f"({d['k']})" if "k" in d else "")
    print(label)
    if args.out:
        emit(io.dumps_envelope(io.envelope("verdict", d)), args.out)
    return EXIT_OK


def render_svg(tiles, solution, moduli, cell: int = 20) -> str:
    """One ``<g>`` of squares per tile translate, colored by a fixed palette."""
    if len(moduli) != 2:
        raise NotTwoDimensional(f"need a 2D torus, got {list(moduli)}")
    w, h = moduli[0] * cell, moduli[1] * cell
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
             f'<rect width="{w}" height="{h}" fill="white"/>']
    k = 0
    for j, (F, A) in enumerate(zip(tiles, solution)):
        for a in A:
            color = PALETTE[k % len(PALETTE)]
            lines.append(f'<g class="translate" data-tile="{j}" fill="{color}" stroke="black" stroke-width="0.5">')
            for f in F:
                x = (a[0] + f[0]) % moduli[0]
                y = (a[1] + f[1]) % moduli[1]
                lines.append(f'<rect x="{x * cell}" y="{(moduli[1] - 1 - y) * cell}" width="{cell}" height="{cell}"/>')
            lines.append("</g>")
            k += 1
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_render(args) -> int:
    env = io.parse_envelope(open(args.solutions).read())
    if env["kind"] != "solutions":
        raise UsageError("render expects a solutions file")
    p = env["payload"]
    if p["region"].get("kind") != "torus" or len(p["region"]["moduli"]) != 2:
        raise NotTwoDimensional("render needs a solution on a 2D torus")
    moduli = p["region"]["moduli"]
    tiles = [io.set_from_json(F) for F in p.get("tiles", [])]
    sols = io.solutions_from_json(p)
    if tiles and any(F.group.dim != 2 for F in tiles):
        raise NotTwoDimensional("tiles are not two-dimensional")
    sol = sols[args.index] if sols else []
    emit(render_svg(tiles, sol, moduli), args.out)
    return EXIT_OK


def cmd_export_cnf(args) -> int:
    kind, obj = load(args.instance)
    system = as_system(kind, obj)
    cnf = encode(system, parse_region(args.torus, args.window))
    emit(cnf.to_dimacs(), args.out)
    vm = args.var_map or (args.out + ".varmap.json" if args.out else None)
    if vm:
        with open(vm, "w") as fh:
            fh.write(cnf.var_map_json() + "\n")
    return EXIT_OK


def cmd_periodize(args) -> int:
    kind, obj = load(args.instance)
    system = as_system(kind, obj)
    if system.group.free_rank != 1:
        raise UsageError("periodize needs a system over Z x G0")
    window = parse_region(None, args.window)
    sol = find_solution(system, window)
    if sol is None:
        print(json.dumps({"verdict": "unsat", "window": region_json(window)}))
        return EXIT_OK
    L = args.L if args.L is not None else max(system.radius(), 1)
    r = args.r if args.r is not None else system.period()
    out, D = newman_periodize(system, sol, window, L, r)
    payload = {"period": D, "assignment": [io.set_to_json(A) for A in out]}
    emit(io.dumps_envelope(io.envelope("solutions", {"region": {"kind": "torus", "moduli": [D]},
                                                     "verdict": "sat", "count": 1, "periodic": payload,
                                                     "solutions": []})), args.out)
    return EXIT_OK


def swap_report(instances: int, omegas: int, seed: int) -> dict:
    from .tiling import fiber_swap, swap_dichotomy_check

    rng = random.Random(seed)
    failed_swaps, max_res, dich_ok = 0, 0.0, True
    for _ in range(instances):
        system, A0, A1, W = fixtures.random_swap_instance(rng)
        F = system.equations[0].tiles[0]
        for _ in range(omegas):
            om = {n: rng.randrange(2) for n in range(W.lo[0], W.hi[0] + 1)}
            if not verify(system, [fiber_swap(A0, A1, om, W, n0=1)], W).ok:
                failed_swaps += 1
        rep = swap_dichotomy_check(A0, A1, F, W)
        dich_ok &= rep.ok
        max_res = max(max_res, rep.max_residual)
    F, mk = fixtures.swap_counterexample()
    W = Window((-6,), (6,))
    system = fixtures.TilingSystem.single(F.group, [F], PeriodicSet.full(F.group))
    A = fiber_swap(mk(-6, 6, 0), mk(-6, 6, 1), lambda n: int(n > 0), W)
    counter_fails = not verify(system, [A], W).ok
    ok = failed_swaps == 0 and dich_ok and counter_fails
    return {"ok": ok, "instances": instances, "omegas": omegas, "failed_swaps": failed_swaps,
            "dichotomy_ok": dich_ok, "max_residual": max_res, "counterexample_fails": counter_fails}


def cmd_swap_check(args) -> int:
    rep = swap_report(args.instances, args.omegas, args.seed)
    print(json.dumps(rep, sort_keys=True))
    return EXIT_OK if rep["ok"] else EXIT_INTERNAL


def nonab_report(family: str, samples: int, seed: int, mix: float) -> dict:
    from . import nonab

    rng = random.Random(seed)
    stats, expect_violation = [], False
    G = nonab.PermGroup()
    if family in ("lemma", "all"):
        for y in nonab.CUBE:
            L = nonab.lemma_oracles(y)
            stats.append(nonab.sampled_cover_check(L["A"], L["F_tau"], L["B"], G, samples, rng.randrange(2**32), mix))
            sigma, phi = nonab.random_cycle(rng), nonab.random_stabilizer(rng)
            stats.append(nonab.sampled_cover_check(L["A"], L["F_cycle"](sigma, phi), L["S16"], G, samples,
                                                   rng.randrange(2**32), mix))
    if family in ("corollary", "all"):
        C = nonab.corollary_oracles((1, 1))
        P = nonab.PairGroup()
        stats.append(nonab.sampled_cover_check(C["A"], C["F_tau"], C["E_tau"], P, samples, rng.randrange(2**32), mix))
        stats.append(nonab.sampled_cover_check(C["A"], C["F_cycle"](nonab.random_cycle(rng)), C["ALL"], P, samples,
                                               rng.randrange(2**32), mix))
    if family in ("linear", "all"):
        ls, f, moduli = fixtures.minimal_linear_instance()
        res = nonab.linear_encoding_forward(ls, f, moduli, samples=samples, seed=rng.randrange(2**32), n_sigma=1,
                                            mix=mix)
        stats.extend(res.values())
    if family == "defect":
        expect_violation = True
        extra = nonab.unrank_in_fiber(1, (1, 3))
        A = nonab.fiber_oracle((1, 1), [extra])
        L = nonab.lemma_oracles((1, 1))
        stats.append(nonab.sampled_cover_check(A, L["F_tau"], L["B"], G, samples, seed, max(mix, 0.5),
                                               stop_at_first=True))
    violations = sum(s.violations for s in stats)
    ok = violations > 0 if expect_violation else violations == 0
    return {"ok": ok, "family": family, "violations": violations, "stats": [s.to_dict() for s in stats]}


def cmd_nonab_check(args) -> int:
    rep = nonab_report(args.family, args.samples, args.seed, args.mix)
    emit(io.dumps_envelope(io.envelope("cover-stats", rep)), args.out)
    return EXIT_OK if rep["ok"] else EXIT_INTERNAL


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = Parser(prog="tileforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)
    common = Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--out", default=None, help="output file (default stdout)")

    c = sub.add_parser("compile", parents=[common], help="run the reduction pipeline on a tile set")
    c.add_argument("input")
    c.add_argument("--to", default="two-tile",
                   choices=["boolean", "linear", "hamming", "functional", "tilings", "two-tile", "zd"])
    c.add_argument("--dry-run", action="store_true", help="sizes only")
    c.add_argument("--N", type=int, default=None, help="Hamming modulus override")
    c.add_argument("--bound", type=int, default=10**6)
    c.set_defaults(fn=cmd_compile)

    def region(q):
        q.add_argument("--torus", help="p1,p2,...")
        q.add_argument("--window", help="lo:hi,lo:hi,...")

    s = sub.add_parser("solve", parents=[common], help="enumerate solutions on a torus or find one on a window")
    s.add_argument("instance")
    region(s)
    s.add_argument("--enumerate", type=int, default=1000, metavar="CAP")
    s.add_argument("--method", choices=["exact_cover", "cnf"], default="exact_cover")
    s.set_defaults(fn=cmd_solve)

    d = sub.add_parser("dual-search", parents=[common], help="periodic search against window refutation")
    d.add_argument("instance")
    d.add_argument("--budget", type=int, default=4)
    d.set_defaults(fn=cmd_dual_search)

    r = sub.add_parser("render", parents=[common], help="draw a 2D torus solution as SVG")
    r.add_argument("solutions")
    r.add_argument("--index", type=int, default=0)
    r.set_defaults(fn=cmd_render)

    e = sub.add_parser("export-cnf", parents=[common], help="write DIMACS and a variable map")
    e.add_argument("instance")
    region(e)
    e.add_argument("--var-map", default=None)
    e.set_defaults(fn=cmd_export_cnf)

    q = sub.add_parser("periodize", parents=[common], help="solve on a 1D window and periodize")
    q.add_argument("instance")
    q.add_argument("--window", required=True, help="lo:hi")
    q.add_argument("--L", type=int, default=None)
    q.add_argument("--r", type=int, default=None)
    q.set_defaults(fn=cmd_periodize)

    w = sub.add_parser("swap-check", parents=[common], help="fiber swapping on random one-tile instances")
    w.add_argument("--instances", type=int, default=100)
    w.add_argument("--omegas", type=int, default=20)
    w.set_defaults(fn=cmd_swap_check)

    n = sub.add_parser("nonab-check", parents=[common], help="sampled cover checks of the permutation encodings")
    n.add_argument("--family", choices=["lemma", "corollary", "linear", "defect", "all"], default="all")
    n.add_argument("--samples", type=int, default=10_000)
    n.add_argument("--mix", type=float, default=0.0, help="fraction of samples drawn as a + f")
    n.set_defaults(fn=cmd_nonab_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (io.ParseError, io.SchemaError, UsageError, NotTwoDimensional) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (CostExceeded, CapExceeded, RegionIncompatible, NoRepeatFound, PeriodMismatch, DimensionMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
