"""Command-line interface: generation, coloring, verification, search,
tableau operations and SVG rendering.

Exit codes: 0 success or verified, 1 negative result (failed verification,
conformity violation, exhausted or inconclusive search), 2 usage errors or
invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import spikes
from .chromatic import cf_coloring, ruler_sequence, strong_coloring
from .geometry import validate
from .partition import window_partition
from .polyio import (
    guarding_from_dict,
    guarding_to_dict,
    polygon_from_dict,
    polygon_to_dict,
)
from .pyramids import decompose
from .render import RenderSpec, render
from .search import exists_guarding, min_colors
from .tableau import (
    check_conform,
    extract_l,
    extract_r,
    from_json_dict,
    op_delete_top_rows,
    op_restrict_block,
    op_select_columns,
    staged_reduction,
    to_json_dict,
)
from .verify import verify_cf, verify_cover, verify_strong


def _read_json(path: str):
    data = sys.stdin.read() if path == "-" else open(path).read()
    return json.loads(data)


def _load_poly(path: str):
    return polygon_from_dict(_read_json(path))


def _emit(data, out: str | None) -> None:
    text = data if isinstance(data, str) else json.dumps(data)
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt_point(p) -> dict:
    def f(x):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return {"x": f(p.x), "y": f(p.y)}


def cmd_gen(args) -> int:
    poly = spikes.gen_spike(args.m, stretched=args.stretched)
    _emit(polygon_to_dict(poly), args.out)
    return 0


def cmd_info(args) -> int:
    if args.what == "blocks":
        m, k = args.m, args.k
        b = spikes.block(m, k)
        print(f"pi2({k}) = {spikes.pi2(k)}")
        print(f"depth({k}) = {spikes.depth(m, k)}")
        print(f"B({k}) = [{b[0]}, {b[-1]}]")
        if k % 2 == 0:
            print(f"l({k}) = {spikes.center_left(m, k)}")
            print(f"r({k}) = {spikes.center_right(m, k)}")
            for xy in ("LL", "LR", "RL", "RR"):
                q = spikes.quarter_block(m, k, xy)
                print(f"B_{xy}({k}) = [{q[0]}, {q[-1]}]" if len(q) else f"B_{xy}({k}) = empty")
        return 0
    poly = _load_poly(args.poly)
    report = validate(poly)
    print(f"vertices: {poly.n}")
    print(f"valid: {report.ok}")
    for kind, detail in report.violations:
        print(f"  {kind}: {detail}")
    return 0 if report.ok else 1


def cmd_partition(args) -> int:
    tree = window_partition(_load_poly(args.poly))
    nodes = [
        {
            "id": n.id,
            "parent": n.parent,
            "side": n.side,
            "depth": n.depth,
            "vertices": polygon_to_dict(n.wvp.subpolygon)["vertices"],
        }
        for n in tree.nodes
    ]
    _emit({"nodes": nodes}, args.out)
    return 0


def cmd_decompose(args) -> int:
    tree = window_partition(_load_poly(args.poly))
    out = []
    for node in tree.nodes:
        gt = decompose(node.wvp)
        for i, gn in enumerate(gt.nodes):
            p = gn.pyramid
            out.append({
                "partition_node": node.id,
                "index": i,
                "parent": gn.parent,
                "depth": gn.depth,
                "stage": p.stage,
                "cells": len(p.cells),
                "guard": _fmt_point(gn.guard),
            })
    _emit({"pyramids": out}, args.out)
    return 0


def cmd_color(args) -> int:
    poly = _load_poly(args.poly)
    g = strong_coloring(poly) if args.mode == "strong" else cf_coloring(poly)
    _emit(guarding_to_dict(g), args.out)
    return 0


def cmd_verify(args) -> int:
    poly = _load_poly(args.poly)
    g = guarding_from_dict(_read_json(args.guards), poly)
    fn = {"cover": verify_cover, "strong": verify_strong, "cf": verify_cf}[args.mode]
    verdict = fn(poly, g, model=args.vis)
    if verdict.ok:
        print(json.dumps({"ok": True}))
        return 0
    print(json.dumps({
        "ok": False,
        "kind": verdict.kind,
        "witnesses": [
            {"point": _fmt_point(p), "detail": d} for p, d in verdict.witnesses
        ],
    }))
    return 1


def cmd_search(args) -> int:
    poly = _load_poly(args.poly)
    if args.action == "exists":
        res = exists_guarding(poly, args.t, args.mode, args.vis, args.budget)
    else:
        res = min_colors(poly, args.mode, args.vis, args.budget, args.max_t)
    out = {"status": res.status, "t": res.t, "nodes": res.nodes}
    if res.witness is not None:
        out["witness"] = guarding_to_dict(res.witness)
    print(json.dumps(out))
    return 0 if res.status == "yes" else 1


def _violation_dict(v):
    return {
        "property": v.prop,
        "indices": list(v.indices),
        "condition": v.condition,
        "detail": v.detail,
    }


def cmd_tableau(args) -> int:
    if args.action == "extract":
        poly = _load_poly(args.poly)
        spec = spikes.spec_of(poly)
        if spec is None:
            raise ValueError("tableau extraction needs a spike polygon")
        g = guarding_from_dict(_read_json(args.guards), poly)
        T = extract_l(spec.m, g) if args.vis == "l" else extract_r(spec.m, g)
        _emit(to_json_dict(T), args.out)
        return 0
    T = from_json_dict(_read_json(args.tableau))
    if args.action == "check":
        v = check_conform(T, args.t)
        if v is None:
            print(json.dumps({"conform": True}))
            return 0
        print(json.dumps({"conform": False, "violation": _violation_dict(v)}))
        return 1
    if args.action == "restrict":
        _emit(to_json_dict(op_restrict_block(T, args.k)), args.out)
        return 0
    if args.action == "droprows":
        _emit(to_json_dict(op_delete_top_rows(T, args.m_new)), args.out)
        return 0
    if args.action == "select":
        choices = {}
        if args.choices:
            for part in args.choices.split(","):
                slot, col = part.split(":")
                choices[int(slot)] = int(col)
        _emit(to_json_dict(op_select_columns(T, args.m_star, choices)), args.out)
        return 0
    # reduce
    trace = staged_reduction(T, args.t, args.m_sub)
    out = {
        "outcome": trace.outcome,
        "stages": [
            {
                "stage": r.stage,
                "center": r.center,
                "color": r.color,
                "witness_xy": r.witness_xy,
                "case": r.case,
                "detail": r.detail,
                "violation": _violation_dict(r.violation) if r.violation else None,
            }
            for r in trace.stages
        ],
    }
    if trace.reduced is not None:
        out["reduced"] = to_json_dict(trace.reduced)
    print(json.dumps(out))
    return 0 if trace.outcome == "reduced" else 1


def cmd_seq(args) -> int:
    print(" ".join(str(s) for s in ruler_sequence(args.m)))
    return 0


def cmd_render(args) -> int:
    poly = _load_poly(args.poly)
    g = None
    if args.guards:
        g = guarding_from_dict(_read_json(args.guards), poly)
    spec = RenderSpec(scale=args.scale, show_cells=args.cells,
                      squash_rows=args.squash)
    _emit(render(poly, g, spec), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chromguard")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate polygons")
    gsub = p.add_subparsers(dest="shape", required=True)
    sp = gsub.add_parser("spike")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--stretched", action="store_true")
    sp.add_argument("-o", "--out")
    sp.set_defaults(fn=cmd_gen)

    p = sub.add_parser("info", help="polygon report or block arithmetic")
    isub = p.add_subparsers(dest="what", required=True)
    ib = isub.add_parser("blocks")
    ib.add_argument("--m", type=int, required=True)
    ib.add_argument("--k", type=int, required=True)
    ib.set_defaults(fn=cmd_info)
    ip = isub.add_parser("poly")
    ip.add_argument("poly")
    ip.set_defaults(fn=cmd_info)

    p = sub.add_parser("partition", help="window partition tree")
    p.add_argument("poly")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("decompose", help="pyramid guard trees")
    p.add_argument("poly")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("color", help="compute a chromatic guarding")
    p.add_argument("--mode", choices=("strong", "cf"), required=True)
    p.add_argument("poly")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_color)

    p = sub.add_parser("verify", help="check a guarding")
    p.add_argument("--mode", choices=("cover", "strong", "cf"), required=True)
    p.add_argument("--vis", choices=("r", "l"), default="r")
    p.add_argument("poly")
    p.add_argument("guards")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("search", help="exhaustive color-count search")
    p.add_argument("action", choices=("exists", "min-colors"))
    p.add_argument("--mode", choices=("strong", "cf"), required=True)
    p.add_argument("--vis", choices=("r",), default="r")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--max-t", type=int, default=None)
    p.add_argument("--budget", type=float, default=60.0)
    p.add_argument("poly")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("tableau", help="multicolor tableau operations")
    tsub = p.add_subparsers(dest="action", required=True)
    te = tsub.add_parser("extract")
    te.add_argument("--vis", choices=("r", "l"), default="r")
    te.add_argument("poly")
    te.add_argument("guards")
    te.add_argument("-o", "--out")
    te.set_defaults(fn=cmd_tableau)
    tc = tsub.add_parser("check")
    tc.add_argument("--t", type=int, default=None)
    tc.add_argument("tableau")
    tc.set_defaults(fn=cmd_tableau)
    tr = tsub.add_parser("restrict")
    tr.add_argument("--k", type=int, required=True)
    tr.add_argument("tableau")
    tr.add_argument("-o", "--out")
    tr.set_defaults(fn=cmd_tableau)
    td = tsub.add_parser("droprows")
    td.add_argument("--m-new", type=int, required=True)
    td.add_argument("tableau")
    td.add_argument("-o", "--out")
    td.set_defaults(fn=cmd_tableau)
    ts = tsub.add_parser("select")
    ts.add_argument("--m-star", type=int, required=True)
    ts.add_argument("--choices", default="")
    ts.add_argument("tableau")
    ts.add_argument("-o", "--out")
    ts.set_defaults(fn=cmd_tableau)
    tg = tsub.add_parser("reduce")
    tg.add_argument("--t", type=int, required=True)
    tg.add_argument("--m-sub", type=int, required=True)
    tg.add_argument("tableau")
    tg.set_defaults(fn=cmd_tableau)

    p = sub.add_parser("seq", help="ruler sequence")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=cmd_seq)

    p = sub.add_parser("render", help="SVG picture")
    p.add_argument("poly")
    p.add_argument("guards", nargs="?")
    p.add_argument("--cells", action="store_true")
    p.add_argument("--squash", action="store_true")
    p.add_argument("--scale", type=int, default=40)
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_render)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
