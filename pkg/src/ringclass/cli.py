"""Command line front end: ``ringclass <subcommand> ...``.

Exit status: 0 success, 1 verification or census mismatch, 2 usage
error, 3 resource error.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import cubicenum, tables
from .conductor import divisor_lattice, factorization
from .errors import InadmissibleError, NonFundamentalError, ResourceError
from .multiplicity import predict
from .quadclass import quadratic_field
from .selmer import ring_space, selmer_basis

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ringclass",
        description="Cubic fields, 3-ring class ranks and discriminant multiplicities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help="worker processes (default: $RINGCLASS_WORKERS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list cubic fields by discriminant")
    p.add_argument("--bound", type=_positive_int, required=True, help="largest |d_L|")
    p.add_argument("--sign", choices=("positive", "negative"), required=True)
    p.add_argument("--oracle", action="store_true",
                   help="use the slow polynomial search (bound <= 2000)")

    p = sub.add_parser("rank", parents=[common], help="class number, 3-rank and Selmer rank")
    p.add_argument("-d", type=int, required=True, help="fundamental discriminant")

    for name, text in (("selmer", "Selmer basis and ring spaces for (d, f)"),
                       ("multiplicity", "predicted multiplicities vs enumeration")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("-d", type=int, required=True, help="fundamental discriminant or 1")
        p.add_argument("-f", type=_positive_int, default=1, help="conductor")
        p.add_argument("-p", type=int, default=3, help="prime (only 3 is supported)")

    p = sub.add_parser("table", parents=[common], help="census for a preset, with diff")
    p.add_argument("--preset", choices=tables.PRESETS, required=True)
    p.add_argument("--output-dir", type=Path, default=None,
                   help="write CSV, JSON, diff and figures here")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--only", type=_positive_int, action="append",
                   help="check number to run (repeatable)")
    return parser


# --- subcommands -------------------------------------------------------------

def cmd_enumerate(args, out):
    sign = 1 if args.sign == "positive" else -1
    if args.oracle:
        recs = cubicenum.brute_force_oracle(args.bound, sign)
    else:
        recs = cubicenum.enumerate_fields(args.bound, sign, workers=args.workers)
    if args.format == "csv":
        out.write(cubicenum.records_to_csv(recs))
    elif args.format == "json":
        out.write(cubicenum.records_to_jsonl(recs))
    else:
        for r in recs:
            flag = " cyclic" if r.isCyclic else " pure" if r.isPure else ""
            out.write(f"{r.dL} f={r.f} d={r.dK} x^3 + {r.poly[0]}x^2 + {r.poly[1]}x"
                      f" + {r.poly[2]}{flag}\n")
        out.write(f"{len(recs)} fields\n")
    return EXIT_OK


def _emit(data, fmt, out):
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif fmt == "csv":
        keys = list(data)
        out.write(",".join(keys) + "\n")
        out.write(",".join(str(data[k]) for k in keys) + "\n")
    else:
        for k, v in data.items():
            out.write(f"{k}: {v}\n")


def cmd_rank(args, out):
    q = quadratic_field(args.d)
    _emit({"d": q.d, "h": q.h, "rho3": q.rho3, "sigma3": q.sigma3}, args.format, out)
    return EXIT_OK


def _check_p(args):
    if args.p != 3:
        raise UsageError(f"only p = 3 is supported, got {args.p}")


def cmd_selmer(args, out):
    _check_p(args)
    if args.d == 1:
        raise UsageError("the rational field has no Selmer space here; use d != 1")
    fact = factorization(args.d, args.f)
    space = selmer_basis(args.d)
    rep = ring_space(args.d, fact, divisor_lattice(fact))
    data = {
        "d": args.d, "f": args.f, "rho3": rep.rho, "sigma3": rep.sigma,
        "basis": [f"{u.source}:{u.element}" for u in space.basis],
        "divisors": [
            {"c": c, "localDim": rep.localDims[c], "defect": rep.defects[c],
             "subspaceDim": rep.subspaceDims[c], "free": rep.freeFlags[c],
             "ringClassRank": rep.ring_class_rank(c)}
            for c in sorted(rep.defects)
        ],
    }
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        out.write("c,localDim,defect,subspaceDim,free,ringClassRank\n")
        for row in data["divisors"]:
            out.write(",".join(str(row[k]) for k in
                               ("c", "localDim", "defect", "subspaceDim", "free",
                                "ringClassRank")) + "\n")
    else:
        out.write(f"d = {args.d}, f = {args.f}: rho3 = {rep.rho}, sigma3 = {rep.sigma}\n")
        for b in data["basis"]:
            out.write(f"  basis {b}\n")
        for row in data["divisors"]:
            out.write(f"  c = {row['c']}: local dim {row['localDim']}, defect {row['defect']},"
                      f" ring class rank {row['ringClassRank']}"
                      f"{' (free)' if row['free'] else ''}\n")
    return EXIT_OK


def _oracle_counts(d, divisors):
    """Enumerated field counts at c^2 d for each c."""
    bound = max(c * c * abs(d) for c in divisors)
    recs = cubicenum.enumerate_fields(bound, 1 if d > 0 else -1)
    got = cubicenum.discriminant_counts(recs)
    return {c: got.get(c * c * d, 0) for c in divisors}


def cmd_multiplicity(args, out):
    _check_p(args)
    try:
        fact = factorization(args.d, args.f)
    except InadmissibleError as exc:
        # still a valid question: no field can have this discriminant
        dl = args.f ** 2 * args.d
        found = _oracle_counts(args.d, [args.f])[args.f]
        _emit({"d": args.d, "f": args.f, "dL": dl, "admissible": False,
               "reason": str(exc), "enumerated": found}, args.format, out)
        return EXIT_OK if found == 0 else EXIT_MISMATCH
    pred = predict(args.d, fact)
    divisors = sorted(c.f for c in divisor_lattice(fact))
    oracle = _oracle_counts(args.d, divisors)
    rows = [{"c": c, "dL": c * c * args.d, "predicted": pred.perDivisor.get(c),
             "enumerated": oracle[c]} for c in divisors]
    agree = all(r["predicted"] is None or r["predicted"] == r["enumerated"]
                or (args.d == 1 and r["c"] == 1) for r in rows)
    if args.format == "json":
        out.write(json.dumps({"d": args.d, "f": args.f, "coverage": pred.coverage,
                              "ringClassRank": pred.ringClassRank, "divisors": rows,
                              "agree": agree}, indent=2) + "\n")
    elif args.format == "csv":
        out.write("c,dL,predicted,enumerated\n")
        for r in rows:
            pv = "" if r["predicted"] is None else r["predicted"]
            out.write(f"{r['c']},{r['dL']},{pv},{r['enumerated']}\n")
    else:
        out.write(f"d = {args.d}, f = {args.f}: {pred.coverage},"
                  f" ring class rank {pred.ringClassRank}\n")
        for r in rows:
            pv = "-" if r["predicted"] is None else r["predicted"]
            out.write(f"  c = {r['c']} (d_L = {r['dL']}): predicted {pv},"
                      f" enumerated {r['enumerated']}\n")
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_table(args, out):
    census = tables.census_for_preset(args.preset, workers=args.workers)
    mismatches = tables.diff_against_expected(census, args.preset)
    if args.format == "json":
        out.write(tables.census_to_json(census) + "\n")
    else:
        for stratum, rows in census.items():
            if args.format == "text":
                discs, fields, nilets = tables.field_totals(rows)
                out.write(f"# {stratum}: {discs} discriminants, {fields} fields,"
                          f" {nilets} nilets\n")
            else:
                out.write(f"# {stratum}\n")
            out.write(tables.rows_to_csv(rows))
    if args.output_dir is not None:
        _write_report(args.output_dir, args.preset, census, mismatches)
    sys.stderr.write(tables.diff_to_text(mismatches))
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _write_report(directory, preset, census, mismatches):
    from .plotting import multiplicity_figure, shape_figure
    directory.mkdir(parents=True, exist_ok=True)
    for stratum, rows in census.items():
        (directory / f"{preset}-{stratum}.csv").write_text(tables.rows_to_csv(rows))
    (directory / f"{preset}.json").write_text(tables.census_to_json(census) + "\n")
    (directory / f"{preset}-diff.txt").write_text(tables.diff_to_text(mismatches))
    multiplicity_figure(census, preset, directory / f"{preset}-multiplicities.png")
    shape_figure(census, directory / f"{preset}-shapes.png")


def cmd_verify(args, out):
    from .verify import run_all
    results = run_all(set(args.only) if args.only else None)
    if args.format == "json":
        out.write(json.dumps([r.__dict__ for r in results], indent=2) + "\n")
    elif args.format == "csv":
        out.write("number,name,passed,detail\n")
        for r in results:
            out.write(f"{r.number},\"{r.name}\",{int(r.passed)},\"{r.detail}\"\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


COMMANDS = {
    "enumerate": cmd_enumerate, "rank": cmd_rank, "selmer": cmd_selmer,
    "multiplicity": cmd_multiplicity, "table": cmd_table, "verify": cmd_verify,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is not None:
        os.environ["RINGCLASS_WORKERS"] = str(args.workers)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, NonFundamentalError, InadmissibleError, ValueError) as exc:
        sys.stderr.write(f"ringclass {args.command}: {exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        sys.stderr.write(f"ringclass {args.command}: resource limit: {exc}\n")
        return EXIT_RESOURCE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
