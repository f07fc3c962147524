"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 a precondition of the requested
operation fails, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import ext_oracle, fixtures, koszul_dual, rgb_algebra, stability_walk, tilt_rep
from .fields import Field
from .flip_engine import FlipError, exchange_graph, flip
from .sgraph_core import SGraphError, require_valid, sorted_ids, surface_invariants, to_json, validate

FORMAT = 1


class Malformed(Exception):
    pass


class Precondition(Exception):
    pass


def _graph(ref: str, check: bool = True):
    try:
        g = fixtures.resolve(ref)
    except FileNotFoundError as exc:
        raise Malformed(f"no such file: {exc.filename}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise Malformed(f"cannot read S-graph {ref!r}: {exc}") from None
    if check:
        require_valid(g)
    return g


def _n(args, g) -> int:
    if args.n is not None:
        return args.n
    try:
        return fixtures.default_n(args.graph)
    except SGraphError:
        return rgb_algebra.minimal_n(g)


def _field(args) -> Field:
    try:
        return Field.parse(args.field)
    except ValueError as exc:
        raise Malformed(str(exc)) from None


def _json_arg(text: str) -> dict:
    """Inline JSON object or a path to a JSON file."""
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise Malformed(f"bad JSON argument: {exc}") from None
    return _read_json(text)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise Malformed(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise Malformed(f"{path}: {exc}") from None


def _write(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


# -- subcommands ----------------------------------------------------------------------


def cmd_validate(args) -> int:
    g = _graph(args.graph, check=False)
    rep = validate(g)
    info = {"format": FORMAT, "valid": rep.ok, "violations": rep.violations}
    if rep.ok:
        info["invariants"] = surface_invariants(g)
        info["degrees"] = {v: ("inf" if not g.is_internal(v) else int(g.degree(v))) for v in g.vertices}
    if args.emit == "json":
        print(_dump(info))
    else:
        print("valid" if rep.ok else "invalid")
        for v in rep.violations:
            print(f"  {v}")
        if rep.ok:
            inv = info["invariants"]
            print(f"  V={inv['vertices']} E={inv['edges']} F={inv['faces']} chi={inv['euler_characteristic']}")
    return 0 if rep.ok else 1


def cmd_flip(args) -> int:
    g = _graph(args.graph)
    rec = flip(g, args.edge, args.dir)
    if args.emit == "json":
        _write(args.out, _dump(to_json(rec.output)))
    else:
        lines = [f"{rec.direction} flip at {rec.edge}" + (" (degree-1 end)" if rec.monogon else "")]
        for m in rec.moved:
            lines.append(f"  {m.halfedge}: {m.source} -> {m.target} past {m.via}")
        if not rec.moved:
            lines.append("  no halfedge moved")
        _write(args.out, "\n".join(lines))
    return 0


def cmd_exchange(args) -> int:
    g = _graph(args.graph)
    eg = exchange_graph(g, args.depth, key=args.key, both_directions=args.both, threads=args.threads)
    names = {k: f"G{i}" for i, k in enumerate(eg.sorted_nodes())}
    if args.emit == "json":
        print(_dump({"format": FORMAT, "depth": args.depth, "key": args.key, "truncated": eg.truncated,
                     "nodes": [{"id": names[k], "depth": eg.depth[k]} for k in eg.sorted_nodes()],
                     "edges": sorted([names[s], e, names[t]] for s, e, t in eg.edges),
                     "regularity": eg.regularity()}))
    elif args.emit == "dot":
        lines = ["digraph exchange {"]
        for k in eg.sorted_nodes():
            lines.append(f'  {names[k]} [label="{names[k]} d={eg.depth[k]}"];')
        for s, e, t in sorted((names[s], e, names[t]) for s, e, t in eg.edges):
            lines.append(f'  {s} -> {t} [label="{e}"];')
        lines.append("}")
        print("\n".join(lines))
    else:
        reg = eg.regularity()
        print(f"nodes {len(eg.nodes)}, arrows {len(eg.edges)}, depth {args.depth}, key {args.key}")
        print(f"interior {reg['interior']}: {reg['all_flippable']} with every edge flippable, "
              f"{reg['with_unflippable']} with unflippable edges, {reg['violations']} violations")
    return 0


def cmd_algebra(args) -> int:
    g = _graph(args.graph)
    A = rgb_algebra.build_rgb(g, _n(args, g), field=_field(args))
    if args.check:
        rep = rgb_algebra.check_dg(A)
        if not rep.ok:
            print("\n".join(rep.failures), file=sys.stderr)
            return 3
    print(rgb_algebra.emit(A, args.emit))
    return 0


def cmd_koszul(args) -> int:
    g = _graph(args.graph)
    n, F = _n(args, g), _field(args)
    if args.form == "cobar":
        Q = koszul_dual.cobar(rgb_algebra.build_rgb(g, n, field=F))
    elif args.form == "explicit":
        Q = koszul_dual.explicit_dual(g, n, field=F)
    else:
        Q = koszul_dual.reduced_quiver(g, n, field=F)
    print(koszul_dual.emit(Q, args.emit, title=Path(args.graph).stem))
    return 0


def cmd_cy(args) -> int:
    g = _graph(args.graph)
    A = rgb_algebra.build_rgb(g, _n(args, g), field=_field(args))
    if g.has_boundary():
        raise Precondition("the graph has boundary vertices; no trace is defined")
    obstruction = None
    if A.n % 2 == 0:
        try:
            obstruction = rgb_algebra.refute_cy(A)
        except rgb_algebra.AlgebraError:
            obstruction = None
    if obstruction is not None:
        out = {"format": FORMAT, "calabi_yau": False, "witness": obstruction.describe(A)}
    else:
        rep = rgb_algebra.verify_cy(A, rgb_algebra.cy_trace(A))
        out = {"format": FORMAT, "calabi_yau": rep.ok, "symmetric": rep.symmetric,
               "pairing_rank": rep.rank, "dim": rep.dim}
    if args.emit == "json":
        print(_dump(out))
    elif out["calabi_yau"]:
        print(f"CY verified: n={A.n}, symmetric trace, pairing rank {out['pairing_rank']} = dim {out['dim']}")
    elif "witness" in out:
        print(f"not CY: {out['witness']}")
    else:
        print(f"not CY: symmetric={out['symmetric']}, pairing rank {out['pairing_rank']} of {out['dim']}")
    return 0


def cmd_ext(args) -> int:
    g = _graph(args.graph)
    n = _n(args, g)
    rgb_algebra.check_compatible(g, n)
    A = rgb_algebra.build_rgb(g, n)
    if args.pairs == "all":
        edges = sorted_ids(g.edges)
        pairs = [(e, h) for e in edges for h in edges]
    else:
        bits = args.pairs.split(",")
        if len(bits) != 2:
            raise Malformed("--pairs takes 'all' or 'e,h'")
        pairs = [tuple(bits)]
        for x in bits:
            if x not in g.edges:
                raise Precondition(f"unknown edge {x!r}")
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        chunks = list(pool.map(lambda p: ext_oracle.compare_with_algebra(g, n, A, [p]), pairs))
    rows = [r for c in chunks for r in c]
    print(ext_oracle.emit(rows, args.emit))
    return 0 if all(r["match"] for r in rows) else 3


def cmd_tilt(args) -> int:
    g = _graph(args.graph)
    if args.edge not in g.edges:
        raise Precondition(f"unknown edge {args.edge!r}")
    direction = "forward" if args.dir == "fwd" else "backward"
    scheme = ext_oracle.rgb_scheme(max(2, _n(args, g)))
    if args.emit == "arcs":
        print(tilt_rep.tilt_arcs(g, args.edge, direction).text())
    elif args.emit == "k0":
        M = tilt_rep.k0_tilt_matrix(g, scheme, args.edge, direction)
        print(_dump({"format": FORMAT, **M.to_json()}))
    else:
        problems = tilt_rep.check_tilt_flip(g, args.edge, direction)
        M = tilt_rep.k0_tilt_matrix(g, scheme, args.edge, direction)
        arcs = tilt_rep.k0_from_arcs(tilt_rep.tilt_arcs(g, args.edge, direction))
        if M != arcs:
            problems.append("classes of the tilted arcs differ from the base-change matrix")
        print(f"{direction} tilt at {args.edge}: " + ("matches the flip" if not problems else "MISMATCH"))
        for p in problems:
            print(f"  {p}")
        return 0 if not problems else 3
    return 0


def cmd_walk(args) -> int:
    g = _graph(args.graph)
    try:
        z = stability_walk.CentralCharge.from_json(_json_arg(args.z))
        t = stability_walk.CentralCharge.from_json(_json_arg(args.target))
    except (TypeError, ValueError, IndexError) as exc:
        raise Malformed(f"bad central charge: {exc}") from None
    state = stability_walk.start(g, z, max(2, _n(args, g)))
    end = stability_walk.walk(state, t, steps=args.steps)
    print(stability_walk.emit(end, args.emit))
    return 0


def cmd_fixtures(args) -> int:
    if args.show:
        print(_dump(fixtures.raw(args.show)))
        return 0
    if args.export:
        g = fixtures.load(args.export)
        _write(args.out, _dump(to_json(g)))
        return 0
    for name in fixtures.names():
        g = fixtures.load(name)
        print(f"{name}\tedges={len(g.edges)}\tn={fixtures.default_n(name)}")
    return 0


# -- parser ---------------------------------------------------------------------------


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brauerflip", description=__doc__.splitlines()[0])
    p.add_argument("--field", default="q", help="q for the rationals or pN for a prime field")
    p.add_argument("--threads", type=int, default=1)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_, n=False):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.add_argument("--graph", required=True, help="S-graph JSON file or fixture name")
        if n:
            s.add_argument("--n", type=int)
        s.set_defaults(fn=fn)
        return s

    s = graph_cmd("validate", cmd_validate, "check the S-graph axioms")
    s.add_argument("--emit", choices=["text", "json"], default="text")

    s = graph_cmd("flip", cmd_flip, "flip one edge")
    s.add_argument("--edge", required=True)
    s.add_argument("--dir", choices=["fwd", "bwd"], default="fwd")
    s.add_argument("--emit", choices=["text", "json"], default="json")
    s.add_argument("--out")

    s = graph_cmd("exchange", cmd_exchange, "explore flips to a given depth")
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--key", choices=["canonical", "labeled"], default="canonical")
    s.add_argument("--both", action="store_true", help="also follow backward flips")
    s.add_argument("--emit", choices=["summary", "json", "dot"], default="summary")

    s = graph_cmd("algebra", cmd_algebra, "the graded algebra A(graph, n)", n=True)
    s.add_argument("--emit", choices=["json", "dims", "relations", "basis"], default="dims")
    s.add_argument("--check", action="store_true", help="verify the dg axioms first")

    s = graph_cmd("koszul", cmd_koszul, "the Koszul dual quiver", n=True)
    s.add_argument("--form", choices=["reduced", "explicit", "cobar"], default="reduced")
    s.add_argument("--emit", choices=["dot", "json", "quiver"], default="quiver")

    s = graph_cmd("cy", cmd_cy, "Calabi-Yau trace check", n=True)
    s.add_argument("--emit", choices=["text", "json"], default="text")

    s = graph_cmd("ext", cmd_ext, "graded Hom dims from intersections vs the algebra", n=True)
    s.add_argument("--pairs", default="all")
    s.add_argument("--emit", choices=["table", "json"], default="table")

    s = graph_cmd("tilt", cmd_tilt, "simple tilt at an edge", n=True)
    s.add_argument("--edge", required=True)
    s.add_argument("--dir", choices=["fwd", "bwd"], default="fwd")
    s.add_argument("--emit", choices=["arcs", "k0", "report"], default="report")

    s = graph_cmd("walk", cmd_walk, "walk the central charge along a straight line", n=True)
    s.add_argument("--z", required=True, help="JSON: edge -> [re, im]")
    s.add_argument("--target", required=True, help="JSON: edge -> [re, im]")
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--emit", choices=["log", "json"], default="log")

    s = sub.add_parser("fixtures", help="bundled S-graphs", parents=[common])
    g = s.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--show", metavar="NAME")
    g.add_argument("--export", metavar="NAME")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_fixtures)
    return p


PRECONDITIONS = (FlipError, rgb_algebra.AlgebraError, koszul_dual.KoszulError, ext_oracle.ExtError,
                 tilt_rep.TiltError, stability_walk.WalkError, Precondition)


def run(argv: list[str] | None = None) -> int:
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except PRECONDITIONS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Malformed, SGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
