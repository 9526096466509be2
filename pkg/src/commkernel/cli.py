"""Command-line front end.

Exit status: 0 when every check passed, 1 when a mathematical check failed
(the report carries witnesses), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__, kernels
from .scalars import DEFAULT_P

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _workers(value):
    if value is not None:
        return value
    return int(os.environ.get("COMMKERNEL_WORKERS", "1"))


def cmd_conjecture(args):
    from .commutator import conjecture_experiment
    res = conjecture_experiment(args.n, args.k, field=args.field, trials=args.trials,
                                seed=args.seed, p=args.p, workers=_workers(args.workers))
    # the experiment reports and never asserts
    return res, True


def cmd_al_check(args):
    from .commutator import al_check
    ok = al_check(args.n, args.m, trials=args.trials, seed=args.seed, p=args.p)
    return {"n": args.n, "m": args.m, "trials": args.trials, "vanished": ok}, ok


def cmd_eulerian_sum(args):
    from .graphs import LabeledDigraph, count_paths
    try:
        with open(args.graph) as fh:
            G = LabeledDigraph.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read graph: {exc}") from exc
    paths, signed = count_paths(G, args.start)
    return {"graph": G.to_json(), "start": args.start, "paths": paths, "signed_sum": signed}, True


def cmd_block(args):
    from .specialization import block_Lj_direct, block_Lj_via_operator
    build = block_Lj_direct if args.method == "direct" else block_Lj_via_operator
    B = build(args.n, args.r, args.j)
    return {"method": args.method, "block": B.to_json(),
            "display": [[repr(x) for x in row] for row in B.body.entries]}, True


def _j_values(value, n):
    if value == "all":
        return list(range(n))
    try:
        return [int(value) % n]
    except ValueError as exc:
        raise UsageError(f"--j must be 'all' or an integer, got {value!r}") from exc


def cmd_ic(args):
    from .linalg import nullity
    from .ordering import ic_via_maximal
    from .specialization import exponents
    out = {}
    for j in _j_values(args.j, args.n):
        M, rows = ic_via_maximal(args.n, exponents(args.r), j)
        out[str(j)] = {
            "matrix": M.tolist(), "nullity": nullity(M),
            "rows": [{"a": x.a, "graph": x.graph.to_json() if x.graph else None,
                      "descent_steps": x.steps, "empty": x.empty} for x in rows],
        }
    return {"ic": out}, True


def cmd_maximal_graph(args):
    from .ordering import max_t, maximal_graph
    from .specialization import exponents
    e = exponents(args.r)
    G = maximal_graph(args.a, args.j, args.n, e)
    return {"a": args.a, "j": args.j, "t": max_t(args.a, args.j, args.n, e),
            "graph": G.to_json(), "display": str(G)}, True


def cmd_structure_report(args):
    from .ordering import ic_via_maximal, structure_report
    from .specialization import exponents
    provider = None
    if args.inject_fault:
        e = exponents(args.r)

        def provider(j):
            M = ic_via_maximal(args.n, e, j)[0]
            if j:
                return M
            rows = M.tolist()
            rows[0] = [0] * len(rows[0])  # corrupt Ic(L_0)
            from .linalg import ExactMatrix
            return ExactMatrix(rows)
    p = args.p if args.field == "gfp" else None
    res = structure_report(args.n, args.r, p=p, trials=args.trials, seed=args.seed,
                           ic_provider=provider)
    return res, res["pass"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="commkernel", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, field=False, rand=False):
        p.add_argument("--out", choices=["json", "csv"], default="json")
        p.add_argument("--output", help="write the report here instead of stdout")
        if field:
            p.add_argument("--field", choices=["q", "gfp"], default="gfp")
        if rand or field:
            p.add_argument("--p", type=int, default=DEFAULT_P)
        if rand:
            p.add_argument("--trials", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("conjecture", help="generic nullity of L on random k-tuples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--workers", type=int)
    common(p, field=True, rand=True)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("al-check", help="standard polynomial of degree m >= 2n vanishes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    common(p, rand=True)
    p.set_defaults(func=cmd_al_check)

    p = sub.add_parser("eulerian-sum", help="signed count of Eulerian paths from a vertex")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--start", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eulerian_sum)

    p = sub.add_parser("block", help="the polynomial block L_j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--method", choices=["direct", "operator"], default="direct")
    common(p)
    p.set_defaults(func=cmd_block)

    p = sub.add_parser("ic", help="initial-coefficient matrices Ic(L_j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--j", default="all")
    common(p)
    p.set_defaults(func=cmd_ic)

    p = sub.add_parser("maximal-graph", help="largest graph of U(a, j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_maximal_graph)

    p = sub.add_parser("structure-report", help="nullity budget and block layout of Ic(L_j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--inject-fault", action="store_true",
                   help="zero a row of Ic(L_0) to exercise the failure path")
    common(p, field=True, rand=True)
    p.set_defaults(func=cmd_structure_report, field="q", trials=3)
    return ap


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "output", "out")}


def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    res = report["result"]
    if "nullities" in res:
        w.writerow(["trial", "nullity", "conjectured"])
        for t, v in enumerate(res["nullities"]):
            w.writerow([t, v, res["conjectured"]])
    elif "checks" in res:
        w.writerow(["check", "pass"])
        for c in res["checks"]:
            w.writerow([c["name"], c["pass"]])
    else:
        w.writerow(["key", "value"])
        for key, val in res.items():
            w.writerow([key, json.dumps(val, sort_keys=True)])
    return buf.getvalue()


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, ok = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"commkernel: error: {exc}", file=sys.stderr)
        return 2
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "version": __version__,
        "backend": kernels.BACKEND,
        "config": _config(args),
        "pass": bool(ok),
        "result": result,
    }
    text = _csv(report) if args.out == "csv" else json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
