"""Command line entry point ``qpmspace``.

Every command prints JSON objects, one per line.  Exit codes: 0 success,
1 a theorem check failed, 2 bad input (unreadable file, violated precondition).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .errors import QPMSpaceError
from .hilbert import embed, strict_embed, verify_order_embedding, verify_order_subspace
from .io import (
    family_to_list,
    jsonable,
    load_family,
    load_qpm,
    load_space,
    qpm_to_dict,
    space_to_dict,
)
from .qpm import is_admissible, is_strictly_admissible
from .quniform import appendix_check, base_from_qpm, reduce_family, star, weak_base_from_family
from .space import is_completely_regular_preordered, property_report
from .synthesis import metrize, product


def _emit(obj) -> None:
    print(json.dumps(jsonable(obj), sort_keys=True))


def _verdict(v) -> dict:
    out = {"admissible": v.admissible, "failures": v.failures}
    if v.strict is not None:
        out["strict"] = v.strict
    return out


def _check_record(c) -> dict:
    return {"status": c.status, "witness": c.witness}


def cmd_check(args) -> int:
    if args.replay:
        results = harness.replay(args.replay)
        for r in results:
            _emit({"suite": r.suite, "index": r.index, "expected": r.expected, "actual": r.actual,
                   "reproduced": r.reproduced})
        _emit({"replayed": len(results), "reproduced": sum(r.reproduced for r in results)})
        return 0 if all(r.reproduced for r in results) else 1
    if not args.space:
        raise SystemExit("check: a space file or --replay is required")
    space = load_space(args.space, strict=args.strict)
    rep = property_report(space)
    _emit({"space": space_to_dict(space), "properties": rep.flags(), "witnesses": rep.witnesses})
    return 0


def cmd_metrize(args) -> int:
    space = load_space(args.space)
    p = metrize(space)
    if args.output:
        Path(args.output).write_text(json.dumps(qpm_to_dict(p)) + "\n", encoding="utf-8")
    _emit({"qpm": qpm_to_dict(p), "report": _verdict(is_strictly_admissible(space, p))})
    if args.figures:
        from .plotting import plot_qpm

        plot_qpm(p, Path(args.figures) / "metric.png", space.name)
    return 0


def cmd_embed(args) -> int:
    space = load_space(args.space)
    if args.strict:
        p = load_qpm(args.metric) if args.metric else metrize(space)
        emb = strict_embed(space, p)
        checks = {"embedding": verify_order_embedding(emb), "order_subspace": verify_order_subspace(emb)}
    else:
        if args.metric:
            raise SystemExit("embed: --metric only applies with --strict")
        emb = embed(space)
        checks = {"embedding": verify_order_embedding(emb)}
    _emit({"K": emb.K, "image": emb.coordinates(),
           "verification": {k: _check_record(c) for k, c in checks.items()}})
    if args.figures:
        from .plotting import plot_embedding

        plot_embedding(emb, Path(args.figures) / "embedding.png", space.name)
    return 0 if all(checks.values()) else 1


def cmd_product(args) -> int:
    files = args.files
    if len(files) < 2 or len(files) % 2:
        raise SystemExit("product: expected space/matrix file pairs")
    factors = [(load_space(s), load_qpm(m)) for s, m in zip(files[::2], files[1::2])]
    space, p = product(factors)
    v = is_admissible(space, p)
    _emit({"space": space_to_dict(space), "qpm": qpm_to_dict(p), "report": _verdict(v)})
    return 0 if v.admissible else 1


def _stream(args, suite_id: str) -> harness.InstanceStream | None:
    if args.random:
        n, count = args.random
        return harness.InstanceStream.random(n, count, args.seed)
    if args.n is not None:
        if suite_id in harness.SUITES and harness.SUITES[suite_id].kind in ("qpm",):
            raise SystemExit(f"suite {suite_id}: use --random N COUNT")
        return harness.InstanceStream("exhaustive", args.n, args.seed, args.count)
    return None


def _finish(result, args) -> int:
    if args.report:
        harness.write_report(result, args.report)
    for rec in result.failures[: args.show]:
        _emit(rec)
    _emit({"summary": result.summary()})
    print(result.summary_line(), file=sys.stderr)
    if args.figures:
        from .plotting import plot_suite_summary

        plot_suite_summary(result, Path(args.figures) / f"{result.suite.replace(':', '_')}.png")
    return 0 if result.passed else 1


def cmd_suite(args) -> int:
    result = harness.run_suite(args.id, _stream(args, args.id), jobs=args.jobs)
    return _finish(result, args)


def cmd_search(args) -> int:
    return _finish(harness.search_counterexamples(args.id, args.budget), args)


def cmd_quniform(args) -> int:
    space = load_space(args.space)
    family = load_family(args.family)
    if is_completely_regular_preordered(space):
        uniformity = star(base_from_qpm(metrize(space)))
        source = "metrized space"
    else:
        uniformity = star(weak_base_from_family(space, family))
        source = "family"
    rep = appendix_check(space, uniformity, family)
    out = {"uniformity_from": source, "status": rep.status,
           "checks": {k: _check_record(c) for k, c in rep.checks.items()}}
    if rep.status != "skip":
        out["reduced_family"] = family_to_list(reduce_family(space, family), space.n)
    _emit(out)
    return 1 if rep.status == "fail" else 0


def cmd_list(args) -> int:
    for s in harness.SUITES.values():
        _emit({"suite": s.id, "theorem": s.theorem, "default": s.default.describe(), "description": s.description})
    for i in harness.IMPLICATIONS.values():
        _emit({"implication": i.id, "theorem": i.theorem, "note": i.note})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpmspace", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="property report of a space, or replay a suite report")
    p.add_argument("space", nargs="?")
    p.add_argument("--replay", metavar="REPORT")
    p.add_argument("--strict", action="store_true", help="reject a non-closed leq relation")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("metrize", help="admissible metric of a completely regular space")
    p.add_argument("space")
    p.add_argument("-o", "--output", help="also write the matrix file here")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_metrize)

    p = sub.add_parser("embed", help="order embedding into the Hilbert cube")
    p.add_argument("space")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--metric", metavar="MATRIX")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("product", help="product of space/matrix file pairs")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(func=cmd_product)

    def reporting(q):
        q.add_argument("--report", metavar="PATH", help="write JSONL records and a summary")
        q.add_argument("--figures", metavar="DIR")
        q.add_argument("--show", type=int, default=5, help="failure records printed (default 5)")

    p = sub.add_parser("suite", help="run a checking suite")
    p.add_argument("id", choices=sorted(harness.SUITES))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--random", type=int, nargs=2, metavar=("N", "COUNT"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, help="sampled pairs for the product suite")
    p.add_argument("--jobs", type=int, default=1)
    reporting(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("search", help="search for a counterexample to an implication")
    p.add_argument("id", choices=sorted(harness.IMPLICATIONS))
    p.add_argument("--budget", type=int, required=True)
    reporting(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("quniform-check", help="weak quasi-uniformity checks for a function family")
    p.add_argument("space")
    p.add_argument("family")
    p.set_defaults(func=cmd_quniform)

    p = sub.add_parser("list", help="list suites and implications")
    p.set_defaults(func=cmd_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QPMSpaceError, ValueError, OSError, KeyError) as exc:
        print(f"qpmspace: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
