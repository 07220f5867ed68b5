"""Command line front end: ``groupoidlp <command> --model FILE ...``.

Exit status: 0 when every check passes, 1 when some check fails, 2 for
usage, I/O or schema errors.
"""

import argparse
import csv
import glob
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .checks import (SUITES, SUITE_TABLE, Check, fmt, groupoid_norm_rows, jsonable, model_elements,
                     run_suite)
from .exactnum import as_exponent, parse_scalar
from .galg import AlgElement
from .graphalg import boundary_paths, classify, graph_groupoid
from .models import ModelError, bisection_semigroup_from_spec, label, parse_model

COMMAND_SUITES = {
    "verify": None,
    "rep": ("rep",),
    "tight": ("tight",),
    "graph": ("axioms", "tight", "ck"),
    "crossprod": ("axioms", "crossprod", "twist"),
}


class UsageError(Exception):
    pass


def _p_list(text):
    try:
        return [as_exponent(s) for s in text.split(",") if s.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("bad --p list %r (%s)" % (text, exc))


def _expand(paths):
    out = []
    for p in paths:
        hits = sorted(glob.glob(p))
        out += hits if hits else [p]
    return out


def build_parser():
    ap = argparse.ArgumentParser(prog="groupoidlp",
                                 description="Verify finite twisted groupoid models and compute their norms.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("verify", "norm", "rep", "tight", "graph", "crossprod"):
        sp = sub.add_parser(name)
        sp.add_argument("--model", action="append", required=True, metavar="PATH",
                        help="model file (repeatable; shell-style patterns allowed)")
        sp.add_argument("--p", default=None, help="comma separated exponents, e.g. 1,3/2,2,inf")
        sp.add_argument("--mode", choices=("real", "complex"), default=None)
        sp.add_argument("--seed", type=int, default=7)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--timing", action="store_true", help="add elapsed times (not reproducible)")
        if name == "verify":
            sp.add_argument("--suite", default="all",
                            help="all or a comma separated subset of %s" % ",".join(SUITES))
        if name == "norm":
            sp.add_argument("--semigroup", default=None,
                            help="bisections for the projective norm: all, singletons or model (default)")
            sp.add_argument("--element", default=None,
                            help="inline element as JSON [[arrow, scalar], ...] (default: the model's)")
    return ap


def _load(paths, args):
    models = []
    for path in _expand(paths):
        m = parse_model(path)
        if args.p is not None:
            m.p_list = _p_list(args.p)
        if args.mode is not None:
            m.mode = args.mode
        models.append(m)
    return models


def _run_checks(models, suites, args):
    tasks = [(m, s) for m in models for s in suites if s in SUITE_TABLE[m.kind]]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(lambda ms: run_suite(ms[0], ms[1], args.seed, args.timing), tasks))
    else:
        parts = [run_suite(m, s, args.seed, args.timing) for m, s in tasks]
    return [c for part in parts for c in part]


def _info(models, command):
    info = []
    for m in models:
        entry = {"model": m.name, "kind": m.kind}
        if m.kind == "graph":
            Q = m.graph
            entry["vertices"] = classify(Q)
            entry["acyclic"] = Q.is_acyclic()
            if Q.is_acyclic():
                entry["boundary_paths"] = [list(x) for x in boundary_paths(Q)]
                entry["groupoid_arrows"] = len(graph_groupoid(Q)[0])
        elif m.kind == "groupoid":
            entry["arrows"] = len(m.groupoid)
            entry["units"] = len(m.groupoid.units)
            entry["bisections"] = len(m.semigroup)
        elif m.kind in ("semigroup", "action"):
            E = m.semigroup.idempotent_semilattice()
            entry["elements"] = len(m.semigroup)
            entry["idempotents"] = len(E)
            entry["tight_characters"] = len(E.tight_characters())
        elif m.kind == "partial-action":
            entry["group_order"] = len(m.partial_action.group)
            entry["points"] = len(m.partial_action.points)
        info.append(entry)
    return info


def _norm_command(models, args):
    rows, checks = [], []
    for m in models:
        if m.kind != "groupoid":
            checks.append(Check(m.name, "norms", "norm report", "SKIP", "needs a groupoid model"))
            continue
        if args.semigroup in (None, "model"):
            S = m.semigroup
        else:
            S = bisection_semigroup_from_spec(m.groupoid, args.semigroup)
        bis = [U for U in S.elements if U]
        if args.element is not None:
            try:
                entries = json.loads(args.element)
                c = {m.groupoid.index(label(a)): parse_scalar(v) for a, v in entries}
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError("bad --element (%s)" % exc)
            elements = {"element": AlgElement.from_dict(m.groupoid, m.sigma, c)}
        else:
            elements = model_elements(m, args.seed)
        r, c = groupoid_norm_rows(m, elements, m.p_list, bis, args.seed)
        rows += r
        checks += c
    return rows, checks


def _emit(command, args, checks, rows, info, out):
    n_fail = sum(c.status == "FAIL" for c in checks)
    if args.format == "csv":
        buf = io.StringIO()
        if rows:
            cols = ["model", "element", "p", "lower", "upper", "interp", "inorm", "projective", "note"]
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["model", "suite", "check", "status", "detail", "witness"])
            for c in checks:
                w.writerow([c.model, c.suite, c.check, c.status, c.detail,
                            "" if c.witness is None else json.dumps(c.witness, sort_keys=True)])
        out.write(buf.getvalue())
    else:
        report = {
            "command": command,
            "args": {"model": args.model, "p": args.p, "mode": args.mode, "seed": args.seed,
                     "suite": getattr(args, "suite", None), "jobs": args.jobs},
            "checks": [{"model": c.model, "suite": c.suite, "check": c.check, "status": c.status,
                        "detail": c.detail, "witness": c.witness} for c in checks],
            "summary": {"checks": len(checks), "failed": n_fail,
                        "passed": sum(c.status == "PASS" for c in checks),
                        "skipped": sum(c.status == "SKIP" for c in checks)},
        }
        if rows:
            report["norms"] = rows
        if info:
            report["models"] = jsonable(info)
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return n_fail


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        models = _load(args.model, args)
        rows, info = [], []
        if args.command == "norm":
            rows, checks = _norm_command(models, args)
        else:
            if args.command == "verify":
                suites = SUITES if args.suite == "all" else tuple(s.strip() for s in args.suite.split(","))
                unknown = [s for s in suites if s not in SUITES]
                if unknown:
                    raise UsageError("unknown suite %s" % ", ".join(unknown))
            else:
                suites = COMMAND_SUITES[args.command]
                if args.command == "graph" and any(m.kind != "graph" for m in models):
                    raise UsageError("graph command needs graph models")
                if args.command == "crossprod" and any(m.kind != "partial-action" for m in models):
                    raise UsageError("crossprod command needs partial-action models")
                info = _info(models, args.command)
            checks = _run_checks(models, suites, args)
    except (ModelError, UsageError) as exc:
        sys.stderr.write("groupoidlp: error: %s\n" % exc)
        return 2
    n_fail = _emit(args.command, args, checks, rows, info, out)
    if n_fail:
        first = next(c for c in checks if c.status == "FAIL")
        sys.stderr.write("groupoidlp: %d check(s) failed; first: %s / %s / %s %s\n"
                         % (n_fail, first.model, first.suite, first.check,
                            ("(witness %s)" % json.dumps(first.witness)) if first.witness is not None else ""))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
