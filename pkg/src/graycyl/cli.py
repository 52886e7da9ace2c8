"""Command-line front end: computations, verifications, JSON/DOT output."""

from __future__ import annotations

import argparse
import json
import sys

from .dac import lambda_cell, tensor
from .gray import (cylinder_complex, gray_cylinder, hyperface_cylinder,
                   shuffle_dot, verify_gluing, verify_globular_preservation)
from .nu import DEFAULT_CEILING, NuView, skeleton_dot
from .pr import pr_count
from .span import span_dot, verify_span
from .theta import CellSyntaxError, hyperfaces, globular_sum, parse_cell

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _decompose_text(t) -> str:
    d = globular_sum(t)
    parts = [str(d.leaf_dims[0])]
    for m, n in zip(d.meet_dims, d.leaf_dims[1:]):
        parts.append(f"⊕{str(m).translate(_SUBSCRIPTS)} {n}")
    return " ".join(parts)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump_view(view: NuView, fmt: str, out):
    if fmt == "dot":
        _emit(skeleton_dot(view), out)
        return
    data = {
        "counts": list(view.counts()),
        "nondegenerate": list(view.nondegenerate_counts()),
        "cells": {str(d): [c.to_json() for c in view.cells(d)]
                  for d in range(view.max_dim + 1)},
    }
    _emit(json.dumps(data, sort_keys=True, ensure_ascii=False, indent=None if fmt == "json" else 1), out)


def _run_verify(suite: str, t, max_dim) -> tuple[bool, dict]:
    results: dict = {"cell": str(t)}
    ok = True
    if suite in ("gluing", "gray", "all"):
        rep = verify_gluing(t)
        results["gluing"] = rep.to_json()
        ok = ok and rep.overall
    if suite in ("globular", "gray", "all"):
        res = verify_globular_preservation(t)
        results["globular"] = res
        ok = ok and res
    if suite in ("hyperface", "all"):
        faces = []
        for f in hyperfaces(t):
            rep = hyperface_cylinder(f)
            faces.append({"kind": f.kind, "position": list(f.position), "agree": rep.agree})
            ok = ok and rep.agree
        results["hyperfaces"] = faces
    if suite in ("span", "all"):
        rep = verify_span(t, max_dim)
        results["span"] = rep.to_json()
        ok = ok and rep.passed
    results["ok"] = ok
    return ok, results


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--out", default=None)

    parser = argparse.ArgumentParser(
        prog="graycyl",
        description="Exact computations and verification for Gray cylinders over Theta-cells")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("decompose", "lambda", "tensor", "nu", "gray", "counts", "span"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("cell")
    pv = sub.add_parser("verify", parents=[common])
    pv.add_argument("suite", choices=("gluing", "globular", "hyperface", "span", "gray", "all"))
    pv.add_argument("cell")
    pe = sub.add_parser("emit", parents=[common])
    pe.add_argument("kind", choices=("shuffle", "skeleton", "span"))
    pe.add_argument("cell")

    args = parser.parse_args(argv)
    try:
        t = parse_cell(args.cell)
    except CellSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    max_dim = args.max_dim if args.max_dim is not None else t.dimension() + 1
    if max_dim < 0 or args.ceiling < 1:
        print("error: max-dim must be >= 0 and ceiling >= 1", file=sys.stderr)
        return 2

    if args.command == "decompose":
        _emit(_decompose_text(t), args.out)
        return 0
    if args.command == "lambda":
        _emit(json.dumps(lambda_cell(t).to_json(), sort_keys=True, ensure_ascii=False), args.out)
        return 0
    if args.command == "tensor":
        _emit(json.dumps(cylinder_complex(t).to_json(), sort_keys=True, ensure_ascii=False), args.out)
        return 0
    if args.command == "nu":
        _dump_view(NuView(lambda_cell(t), max_dim, args.ceiling), args.format, args.out)
        return 0
    if args.command == "gray":
        _dump_view(gray_cylinder(t, max_dim, args.ceiling), args.format, args.out)
        return 0
    if args.command == "counts":
        view = gray_cylinder(t, max_dim, args.ceiling)
        rows = []
        agree = True
        for d in range(max_dim + 1):
            nu_n = len(view.layers[d])
            pr_n = pr_count([t], d)
            agree = agree and nu_n == pr_n
            rows.append({"dim": d, "nu": nu_n, "pr": pr_n})
        if args.format == "text":
            lines = [f"dim {r['dim']}: nu={r['nu']} pr={r['pr']}" for r in rows]
            _emit("\n".join(lines + [f"agree: {agree}"]), args.out)
        else:
            _emit(json.dumps({"cell": str(t), "rows": rows, "agree": agree},
                             sort_keys=True, ensure_ascii=False), args.out)
        return 0 if agree else 1
    if args.command == "span":
        rep = verify_span(t, args.max_dim)
        _emit(json.dumps(rep.to_json(), sort_keys=True, ensure_ascii=False), args.out)
        return 0 if rep.passed else 1
    if args.command == "verify":
        ok, results = _run_verify(args.suite, t, args.max_dim)
        _emit(json.dumps(results, sort_keys=True, ensure_ascii=False), args.out)
        return 0 if ok else 1
    if args.command == "emit":
        if args.kind == "shuffle":
            _emit(shuffle_dot(t), args.out)
        elif args.kind == "skeleton":
            _emit(skeleton_dot(gray_cylinder(t, min(max_dim, 2), args.ceiling)), args.out)
        else:
            _emit(span_dot(t), args.out)
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
