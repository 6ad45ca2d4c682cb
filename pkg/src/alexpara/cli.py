"""Command-line entry point: ``alexpara <command> ...``.

Exit codes for a single law follow its status: 0 pass, 1 fail, 2 inapplicable.
A multi-law run exits 0 when every failure was expected and 1 otherwise.
Usage or configuration errors exit 2.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import poset as P
from .catalog import catalog_build, catalog_names
from .enumeration import MAX_GROUP_ORDER, theorem_holds, verify_discreteness_theorem, verify_topgroup_triviality
from .errors import AlexparaError, BadParameter
from .oracle import DEFAULT_SAMPLES, DEFAULT_SEED, ball, neighbourhood, window
from .suite import EXPECTED_FAIL, LAW_IDS, OK, SKIPPED, run_suite, suite_ok


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _law_list(text: str) -> list[str]:
    if text == "all":
        return list(LAW_IDS)
    ids = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [t for t in ids if t not in LAW_IDS]
    if unknown or not ids:
        raise argparse.ArgumentTypeError(f"unknown law id(s) {unknown}; choose from: all, {', '.join(LAW_IDS)}")
    return ids


def _depth(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("depth must be >= 0")
    return v


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise BadParameter(f"expected key=value, got {item!r}")
        out[key] = int(value) if value.lstrip("-").isdigit() else value
    return out


def _config(args, entry=None) -> dict:
    cfg = {"seed": args.seed, "budget": args.budget}
    if entry is not None:
        cfg.update(example=entry.name, params=dict(entry.params),
                   depth=entry.default_depth if args.depth is None else args.depth)
    return cfg


def _window(args, entry):
    depth = entry.default_depth if args.depth is None else args.depth
    o = entry.oracle
    elems = neighbourhood(o, depth) if args.shape == "box" else ball(o, depth)
    return window(o, elems), depth


# -- commands -------------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = [catalog_build(n) for n in catalog_names()]
        if args.json:
            _emit({"examples": [e.summary() for e in entries], "seed": args.seed})
        else:
            for e in entries:
                exp = e.expected
                print(f"{e.name:22s} radius={exp['radius']!s:12s} width={exp['width']!s:9s} "
                      f"connected={exp['connected']}")
        return 0
    if not args.name:
        raise BadParameter("catalog show needs an example name")
    e = catalog_build(args.name, _params(args.params))
    if args.json:
        _emit({**e.summary(), "seed": args.seed})
    else:
        s = e.summary()
        print(f"{e.name} {s['params']}")
        for key, value in s["oracle"].items():
            print(f"  oracle.{key}: {value}")
        for key, value in s["expected"].items():
            print(f"  expected.{key}: {value}")
        print(f"  default_depth: {s['default_depth']}")
    return 0


def cmd_hasse(args) -> int:
    e = catalog_build(args.example, _params(args.params))
    w, depth = _window(args, e)
    note = f"example={e.name} params={json.dumps(e.params, sort_keys=True)} depth={depth} shape={args.shape} " \
           f"seed={args.seed}"
    sys.stdout.write(P.to_dot(w.poset, highlight=[w.node(e.oracle.identity)], comment=note))
    return 0


def cmd_window(args) -> int:
    e = catalog_build(args.example, _params(args.params))
    w, depth = _window(args, e)
    data = w.to_json_dict()
    data["config"] = {**_config(args, e), "depth": depth, "shape": args.shape}
    _emit(data)
    return 0


def cmd_invariants(args) -> int:
    if args.file:
        with open(args.file) as fh:
            p = P.from_json_dict(json.load(fh))
        cfg = {"file": args.file, "seed": args.seed}
    else:
        if not args.example:
            raise BadParameter("invariants needs --example or --file")
        e = catalog_build(args.example, _params(args.params))
        w, depth = _window(args, e)
        p = w.poset
        cfg = {**_config(args, e), "depth": depth, "shape": args.shape}
    inv = P.invariants(p)
    if args.json:
        _emit({"invariants": inv, "config": cfg})
    else:
        for key, value in inv.items():
            print(f"{key}: {value}")
    return 0


def cmd_check(args) -> int:
    params = _params(args.params)
    entry = catalog_build(args.example, params)
    records = run_suite(args.example, params, args.law, args.depth, args.seed, args.samples, args.budget,
                        args.workers)
    single = len(records) == 1
    if single:
        code = {"pass": 0, "fail": 1}.get(records[0]["result"].status, 2)
    else:
        code = 0 if suite_ok(records) else 1
    rows = [{**rec["result"].to_dict(), "outcome": rec["outcome"]} for rec in records]
    if args.json:
        if single:
            _emit({**rows[0], "config": _config(args, entry)})
        else:
            _emit({"config": _config(args, entry), "results": rows, "ok": code == 0})
    else:
        for row in rows:
            mark = {OK: "PASS", EXPECTED_FAIL: "XFAIL", SKIPPED: "SKIP"}.get(row["outcome"], "FAIL")
            extra = row["note"] or (json.dumps(row["witness"], sort_keys=True) if row["status"] == "fail" else "")
            print(f"{mark:5s} {row['law_id']:34s} {row['status']:12s} {extra}")
        print(f"{'ok' if code == 0 else 'FAILED'}: {entry.name} seed={args.seed}")
    return code


def cmd_enumerate(args) -> int:
    if not 1 <= args.max_order <= MAX_GROUP_ORDER:
        raise BadParameter(f"--max-order must be between 1 and {MAX_GROUP_ORDER}")
    run = verify_topgroup_triviality if args.topological else verify_discreteness_theorem
    reports = run(args.max_order)
    ok = theorem_holds(reports, topological=args.topological)
    if args.json:
        _emit({"max_order": args.max_order, "topological": args.topological, "confirmed": ok,
               "reports": [r.to_dict(timing=args.timing) for r in reports]})
    else:
        for r in reports:
            line = (f"{r.group:3s} order={r.order} posets={r.posets_examined:6d} monotone={r.monotone_orders} "
                    f"non_discrete={len(r.survivors)}")
            if args.topological:
                line += f" connected={len(r.connected_survivors)}"
            if args.timing:
                line += f" runtime={r.runtime:.3f}s"
            print(line)
        print("confirmed" if ok else "COUNTEREXAMPLE FOUND")
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------------

def _globals(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    env_budget = os.environ.get("ALEXPARA_BUDGET")
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="sampling seed")
    parser.add_argument("--depth", type=_depth, default=d(None), help="window / ball depth")
    parser.add_argument("--budget", type=_depth, default=d(int(env_budget) if env_budget else None),
                        help="witness-search ball depth (env ALEXPARA_BUDGET)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alexpara", description=__doc__.splitlines()[0])
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    def example_args(p, required=True):
        p.add_argument("--example", required=required, help="catalog example name")
        p.add_argument("params", nargs="*", help="example parameters as key=value")

    def shape(p):
        p.add_argument("--shape", choices=["ball", "box"], default="ball",
                       help="generator ball (default) or coordinate box")

    p = add("catalog", cmd_catalog, "list examples or show one")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*", help="example parameters as key=value")

    p = add("hasse", cmd_hasse, "Hasse diagram of a window as DOT")
    example_args(p)
    shape(p)

    p = add("window", cmd_window, "window poset as JSON")
    example_args(p)
    shape(p)

    p = add("invariants", cmd_invariants, "finite poset invariants of a window or a JSON poset")
    example_args(p, required=False)
    p.add_argument("--file", help="poset JSON file instead of an example")
    shape(p)

    p = add("check", cmd_check, "run laws on an example")
    p.add_argument("--law", type=_law_list, required=True, help="'all' or comma-separated law ids")
    example_args(p)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random elements per sample")
    p.add_argument("--workers", type=int, default=1, help="run laws in this many processes")

    p = add("enumerate", cmd_enumerate, "exhaustive check over all groups of small order")
    p.add_argument("--max-order", type=int, default=MAX_GROUP_ORDER)
    p.add_argument("--topological", action="store_true", help="also require monotone inversion")
    p.add_argument("--timing", action="store_true", help="include runtimes (output no longer reproducible)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AlexparaError, KeyError, ValueError, OSError) as exc:
        name = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {name}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
