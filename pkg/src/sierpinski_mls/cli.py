"""Command-line front end.

Usage:
    gsn generate --t 3 [--format edgelist|dot] [--output FILE]
    gsn stats    --t 5 [--format json|csv] [--output FILE]
    gsn tree     --t 3 [--output FILE]
    gsn family   --t 4 [--seed-cap 3] [--per-level-cap 10] [--output DIR]
    gsn verify   --t 5 --k 2 [--output FILE]
    gsn oracle   --t 2 [--majors-internal]
    gsn flip     --t 3 --flips 500 [--rng-seed 0] [--output FILE]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import GsnError
from .graph_core import faces_are_triangles, random_flips
from .growth import grow
from .stats import compute_report, cumulative_csv

CAPS = {"generate": 9, "stats": 9, "tree": 7, "family": 5, "verify": 7,
        "oracle": 2, "flip": 9}
FORMATS = {
    "generate": ("edgelist", "dot"),
    "stats": ("json", "csv"),
    "tree": ("tree",),
    "family": ("tree",),
    "verify": ("json",),
    "oracle": ("json",),
    "flip": ("json", "edgelist"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsn", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in CAPS:
        p = sub.add_parser(name)
        p.add_argument("--t", type=int, required=True)
        p.add_argument("--format", choices=FORMATS[name], default=FORMATS[name][0])
        p.add_argument("--output", type=Path)
        p.add_argument("--force", action="store_true",
                       help=f"lift the t <= {CAPS[name]} cap")
        if name in ("family", "verify"):
            p.add_argument("--seed-cap", type=int, default=3)
            p.add_argument("--per-level-cap", type=int, default=10 if name == "family" else 60)
        if name == "verify":
            p.add_argument("--k", type=int, default=0)
        if name == "oracle":
            p.add_argument("--majors-internal", action="store_true",
                           help="only count trees keeping A, B, C internal")
        if name == "flip":
            p.add_argument("--flips", type=int, default=1)
            p.add_argument("--rng-seed", type=int, default=0)
    return parser


def _config(args) -> dict:
    # the output path is left out so reruns elsewhere stay byte-identical
    return {k: v for k, v in sorted(vars(args).items()) if k != "output"}


def _meta_line(args) -> str:
    return f"version={__version__} config={json.dumps(_config(args), sort_keys=True)}"


def _meta(args) -> dict:
    return {"version": __version__, "config": _config(args)}


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_generate(args) -> int:
    g, _ = grow(args.t, max_t=max(args.t, 9))
    header = [_meta_line(args)]
    text = g.to_dot(args.t, header) if args.format == "dot" else g.to_edgelist(args.t, header)
    _emit(text, args.output)
    return 0


def cmd_stats(args) -> int:
    g, h = grow(args.t, max_t=max(args.t, 9))
    report = compute_report(g, args.t, h).as_dict()
    report["meta"] = _meta(args)
    csv = cumulative_csv(args.t, [f"t={args.t} {_meta_line(args)}"]) if args.t >= 2 else None
    if args.output is not None:
        _emit(_dump(report), args.output)
        if csv is not None:
            _emit(csv, args.output.with_suffix(".csv"))
    elif args.format == "csv":
        if csv is None:
            raise SystemExit("the cumulative distribution needs t >= 2")
        _emit(csv, None)
    else:
        _emit(_dump(report), None)
    return 0


def _metrics_line(m) -> str:
    return f"leaves={m.leaf_count} diameter={m.diameter} max_degree={m.max_degree}"


def cmd_tree(args) -> int:
    from .trees import dff_bfsa, tree_metrics

    g, h = grow(args.t, max_t=max(args.t, 9))
    tr = dff_bfsa(g, h)
    m = tree_metrics(tr)
    if args.output is not None:
        _emit(tr.to_text([_meta_line(args), _metrics_line(m)]), args.output)
    print(_metrics_line(m))
    return 0


def cmd_family(args) -> int:
    from .trees import build_family, seed_family, tree_metrics

    seeds = seed_family(args.seed_cap)
    family = seeds if args.t == 2 else build_family(args.t, seeds, args.per_level_cap)
    for i, tr in enumerate(family.trees):
        m = tree_metrics(tr)
        if args.output is not None:
            perm = family.tuples[i] if family.tuples else ()
            header = [_meta_line(args), f"perm={list(perm)}", _metrics_line(m)]
            _emit(tr.to_text(header), args.output / f"tree_{i:04d}.txt")
        print(f"{i} {_metrics_line(m)}")
    return 0


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.t, args.k, args.seed_cap, args.per_level_cap)
    _emit(_dump({"meta": _meta(args), "results": results}) if args.output else _dump(results),
          args.output)
    failed = [r for r in results if r["pass"] is False]
    for r in failed:
        print(f"FAIL {r['check']} {r['params']}: expected {r['expected']}, "
              f"measured {r['measured']}", file=sys.stderr)
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    from .verify import brute_force_max_leaves

    g, _ = grow(args.t)
    res = brute_force_max_leaves(g, (0, 1, 2) if args.majors_internal else ())
    print(f"max_leaves={res.max_leaves} cds_size={res.cds_size}")
    if args.output is not None:
        _emit(_dump({"meta": _meta(args), "max_leaves": res.max_leaves,
                     "cds_size": res.cds_size, "witness_cds": sorted(res.witness_cds),
                     "exhausted_sizes": res.exhausted_sizes}), args.output)
    return 0


def cmd_flip(args) -> int:
    g, h = grow(args.t, max_t=max(args.t, 9))
    flips = random_flips(g, args.flips, args.rng_seed)
    if args.format == "edgelist":
        _emit(g.to_edgelist(args.t, [_meta_line(args), f"flips={len(flips)}"]), args.output)
        return 0
    report = compute_report(g, args.t, h, with_proportions=False).as_dict()
    report["flips"] = [[list(a), list(b)] for a, b in flips]
    report["faces_triangular"] = faces_are_triangles(g)
    report["meta"] = _meta(args)
    _emit(_dump(report), args.output)
    return 0


COMMANDS = {"generate": cmd_generate, "stats": cmd_stats, "tree": cmd_tree,
            "family": cmd_family, "verify": cmd_verify, "oracle": cmd_oracle,
            "flip": cmd_flip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.t < 0:
        parser.error("--t must be non-negative")
    if args.t > CAPS[args.subcommand] and not args.force:
        parser.error(f"{args.subcommand} is capped at t <= {CAPS[args.subcommand]}; "
                     "use --force to override")
    if args.subcommand == "family" and args.t < 2:
        parser.error("family needs t >= 2")
    try:
        return COMMANDS[args.subcommand](args)
    except GsnError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
