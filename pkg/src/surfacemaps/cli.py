"""Command-line interface.

Subcommands::

    construct {k34|grid|K|union} ...     emit a graph in the text format
    faces <map>                          facial walks of a map
    genus <map>                          v, e, f, Euler characteristic, genus
    search <graph> [--fix v:order]...    exact minimum genus over rotations
    verify-drawing <drawing> [--w ...]   drawing diagnostics and parity checks
    contractible <map> <cycle>           does the cycle bound a disc
    glue <mapA> <mapB> <corr>            splice two maps along a correspondence
    reproduce-all [--n N] [--json out]   run the whole verification suite

Exit codes: 0 pass, 1 check failure, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import textio
from .drawings import (
    crossing_counts,
    is_even,
    is_independently_even,
    is_w_even,
    surface_genus,
    validate_drawing,
)
from .graphs import Graph, GridSpec, apex_grid, complete_bipartite, disjoint_union, grid
from .maps import euler_characteristic, genus, is_contractible, splice_glue, trace_faces
from .search import RotationConstraint, SearchBudgetExceeded, min_genus

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_construct(args) -> int:
    if args.kind == "k34":
        g = complete_bipartite(args.m, args.n if args.n else 4)
        name = f"k{args.m}{args.n or 4}"
    elif args.kind == "grid":
        spec = GridSpec(args.n) if args.plain else GridSpec.standard(args.n)
        g = grid(spec)
        name = f"grid{args.n}"
    elif args.kind == "K":
        g = apex_grid(GridSpec.standard(args.n))
        name = f"apexgrid{args.n}"
    else:  # union
        graphs = [textio.load_graph(p) for p in args.files]
        if not graphs:
            raise textio.FormatError("union needs at least one graph file")
        g = graphs[0]
        for h in graphs[1:]:
            g = disjoint_union(g, h)
        name = "union"
    _write_out(textio.write_graph(g, name), args.out)
    return 0


def _cmd_faces(args) -> int:
    m = textio.load_map(args.map)
    fs = trace_faces(m)
    for face in fs.faces:
        verts = " ".join(str(v) for v in fs.walk_vertices(m, face))
        print(f"face {len(face)} {verts}")
    print(f"total {len(fs)} faces, lengths {list(fs.lengths)}")
    return 0


def _cmd_genus(args) -> int:
    m = textio.load_map(args.map)
    f = len(trace_faces(m))
    chi = euler_characteristic(m)
    print(
        f"v={m.num_vertices} e={m.num_edges} f={f} chi={chi} genus={genus(m)}"
    )
    return 0


def _parse_fix(g: Graph, spec: str) -> tuple[int, tuple[int, ...]]:
    try:
        vtx, order = spec.split(":")
    except ValueError as exc:
        raise textio.FormatError(f"bad --fix {spec!r}; expected v:n1,n2,...") from exc

    def resolve(token: str) -> int:
        token = token.strip()
        try:
            return g.vertex_by_label(token)  # labels win over raw ids
        except KeyError:
            pass
        v = int(token)
        if v not in set(g.vertices):
            raise KeyError(f"no vertex {token!r}")
        return v

    v = resolve(vtx)
    return v, tuple(resolve(t) for t in order.split(","))


def _cmd_search(args) -> int:
    g = textio.load_graph(args.graph)
    fixed = {}
    for spec in args.fix or ():
        v, order = _parse_fix(g, spec)
        fixed[v] = order
    try:
        value, cert = min_genus(
            g,
            RotationConstraint(fixed),
            budget=args.budget,
            jobs=args.jobs,
            prune=args.prune,
        )
    except SearchBudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return CHECK_FAILURE
    print(f"minimum genus {value} over {cert.search_space} rotation systems")
    print(f"witness index {list(cert.witness_index)}")
    if args.witness_out:
        Path(args.witness_out).write_text(textio.write_map(cert.witness, name="witness"))
        print(f"witness map written to {args.witness_out}")
    if args.cert:
        import json

        Path(args.cert).write_text(
            json.dumps(cert.to_json_obj(witness_ref=args.witness_out), indent=2) + "\n"
        )
    return 0


def _cmd_verify_drawing(args) -> int:
    d = textio.load_drawing(args.drawing)
    problems = validate_drawing(d)
    for p in problems:
        print(f"violation: {p}")
    if problems:
        return CHECK_FAILURE
    mat = crossing_counts(d)
    print(f"valid drawing: genus={surface_genus(d)} crossings={mat.total}")
    print(f"is_even={is_even(d)} is_independently_even={is_independently_even(d)}")
    ok = True
    if args.w:
        w = []
        for token in args.w.split(","):
            token = token.strip()
            try:
                v = d.original_graph.vertex_by_label(token)
            except KeyError:
                v = int(token)
                if v not in set(d.original_graph.vertices):
                    raise
            w.append(v)
        w_ok = is_w_even(d, w)
        print(f"is_w_even({args.w})={w_ok}")
        ok = w_ok
    return 0 if ok else CHECK_FAILURE


def _cmd_contractible(args) -> int:
    m = textio.load_map(args.map)
    cycle = [int(t) for t in args.cycle.split(",")]
    print("contractible" if is_contractible(m, cycle) else "noncontractible")
    return 0


def _cmd_glue(args) -> int:
    a = textio.load_map(args.map_a)
    b = textio.load_map(args.map_b)
    corr = textio.load_correspondence(args.corr)
    glued = splice_glue(a, b, corr)
    _write_out(textio.write_map(glued, name="glued"), args.out)
    if args.out:
        print(f"glued map written to {args.out}; genus {genus(glued)}")
    return 0


def _cmd_reproduce_all(args) -> int:
    from .repro import reproduce_all

    report = reproduce_all(n=args.n, asset_path=args.asset)
    print(report.summary())
    if args.json:
        Path(args.json).write_text(report.to_json())
        print(f"json report written to {args.json}")
    return 0 if report.all_passed else CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="surfacemaps",
        description="combinatorial maps, genus search and crossing parity on orientable surfaces",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit one of the reference graphs")
    c.add_argument("kind", choices=("k34", "grid", "K", "union"))
    c.add_argument("files", nargs="*", help="graph files (union only)")
    c.add_argument("--m", type=int, default=3, help="first part size (k34)")
    c.add_argument("--n", type=int, default=None, help="second part size (k34) or grid side")
    c.add_argument("--plain", action="store_true", help="grid without special cells")
    c.add_argument("--out", help="output file (default stdout)")
    c.set_defaults(func=_cmd_construct)

    f = sub.add_parser("faces", help="facial walks of a map")
    f.add_argument("map")
    f.set_defaults(func=_cmd_faces)

    ge = sub.add_parser("genus", help="Euler characteristic and genus of a map")
    ge.add_argument("map")
    ge.set_defaults(func=_cmd_genus)

    s = sub.add_parser("search", help="exact minimum genus over rotation systems")
    s.add_argument("graph")
    s.add_argument("--fix", action="append", metavar="V:ORDER", help="fix a rotation, e.g. A:1,2,3")
    s.add_argument("--budget", type=int, default=10**8)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--prune", action="store_true", help="branch-and-bound pruning")
    s.add_argument("--witness-out", help="write the witness map here")
    s.add_argument("--cert", help="write a JSON certificate here")
    s.set_defaults(func=_cmd_search)

    v = sub.add_parser("verify-drawing", help="validate a drawing and its parity predicates")
    v.add_argument("drawing")
    v.add_argument("--w", help="comma-separated vertices for the W-evenness check")
    v.set_defaults(func=_cmd_verify_drawing)

    ct = sub.add_parser("contractible", help="does a cycle bound a disc")
    ct.add_argument("map")
    ct.add_argument("cycle", help="comma-separated vertex ids")
    ct.set_defaults(func=_cmd_contractible)

    gl = sub.add_parser("glue", help="splice two maps along a correspondence")
    gl.add_argument("map_a")
    gl.add_argument("map_b")
    gl.add_argument("corr")
    gl.add_argument("--out", help="output file (default stdout)")
    gl.set_defaults(func=_cmd_glue)

    r = sub.add_parser("reproduce-all", help="run the full verification suite")
    r.add_argument("--n", type=int, default=8, help="grid side (divisible by 8)")
    r.add_argument("--json", help="write the JSON report here")
    r.add_argument("--asset", help="path to the torus drawing asset")
    r.set_defaults(func=_cmd_reproduce_all)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (textio.FormatError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
