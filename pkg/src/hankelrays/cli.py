"""Command line interface: ``hankelrays <command> [options]``.

Every command writes its report(s) into the output directory (``--output-dir``,
else ``$HANKELRAYS_OUTPUT_DIR``, else the current directory) and prints a JSON
summary on stdout.  Exit codes: 0 success / all values match, 1 certification
failure or mismatch, 2 usage error, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

from . import diesel
from .apolarity import Functional, hankel
from .cayley_bacharach import gamma_split, is_exceptional, relation_grid_matrix, unique_relation
from .errors import HankelRaysError
from .extremal import build_max_rank, certify, d5_catalog, rank_bounds_hold
from .polyring import dim_forms
from .qlinalg import QMatrix, format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
ENV_OUTPUT_DIR = "HANKELRAYS_OUTPUT_DIR"


def load_golden() -> dict:
    text = resources.files("hankelrays").joinpath("data/golden.json").read_text()
    return json.loads(text)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _output_dir(args) -> Path:
    out = Path(args.output_dir or os.environ.get(ENV_OUTPUT_DIR) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(args, name: str, text: str) -> str:
    path = _output_dir(args) / name
    path.write_text(text)
    return str(path)


def _poly_value(coeffs, d):
    a, b, c = coeffs
    return a * d * d + b * d + c


# -- commands -------------------------------------------------------------


def cmd_construct(args) -> int:
    c = build_max_rank(args.d, args.removed_point, args.perturb)
    cert = certify(c.functional, c.config)
    report = {
        "certificate": cert.to_json_obj(),
        "configuration": c.config.to_json_obj(),
        "functional": c.functional.to_json_obj(),
        "relation": c.relation.to_json_obj(),
        "removed_point": c.removed_point.to_json_obj(),
    }
    files = [
        _write(args, f"construct-d{args.d}.json", dumps(report)),
        _write(args, f"hankel-d{args.d}.csv", hankel(c.functional).to_csv()),
    ]
    summary = {
        "command": "construct", "d": args.d, "rank": cert.rank, "corank": cert.corank,
        "is_extreme": cert.is_extreme, "t0": cert.metadata.get("t0"), "files": files,
    }
    print(dumps(summary), end="")
    return EXIT_OK if cert.is_extreme else EXIT_FAIL


def cmd_certify(args) -> int:
    data = json.loads(Path(args.input).read_text())
    ell = Functional.from_json_obj(data.get("functional", data))
    cert = certify(ell)
    obj = cert.to_json_obj()
    name = Path(args.input).stem + "-certificate.json"
    obj["file"] = _write(args, name, dumps(obj))
    print(dumps(obj), end="")
    return EXIT_OK if cert.is_extreme else EXIT_FAIL


def cmd_relation(args) -> int:
    config = gamma_split(args.d)
    rel = unique_relation(config.gamma1_points, args.d)
    M = relation_grid_matrix(rel, config)
    if args.format == "csv":
        text, ext = M.to_csv(), "csv"
    elif args.format == "text":
        width = max(len(format_rational(x)) for x in M.entries)
        text = "".join(
            " ".join(format_rational(x).rjust(width) for x in row) + "\n" for row in M.rows
        )
        ext = "txt"
    else:
        text, ext = dumps({"d": args.d, "matrix": M.to_json_obj(), "relation": rel.to_json_obj()}), "json"
    path = _write(args, f"relation-d{args.d}.{ext}", text)
    summary = {"command": "relation", "d": args.d, "file": path}
    golden = load_golden()["relation"].get(str(args.d))
    if golden is not None:
        summary["matches_expected"] = M == QMatrix(golden["matrix"])
    print(dumps(summary), end="")
    return EXIT_FAIL if summary.get("matches_expected") is False else EXIT_OK


def cmd_catalog_d5(args) -> int:
    golden = load_golden()["catalog_d5"]
    ranks = [args.rank] if args.rank is not None else list(range(13, 18))
    rows, ok = [], True
    for r in ranks:
        _, cert = d5_catalog(r)
        expected = golden[str(r)]
        match = (cert.rank == r and cert.is_extreme and list(cert.hilbert.T) == expected
                 and cert.dual_variety_criterion)
        ok &= match
        row = {"rank": r, "computed_rank": cert.rank, "is_extreme": cert.is_extreme,
               "hilbert": list(cert.hilbert.T), "dual_variety_criterion": cert.dual_variety_criterion,
               "match": match}
        if not match:
            row["expected_hilbert"] = expected
        rows.append(row)
    suffix = "all" if args.rank is None else str(args.rank)
    path = _write(args, f"catalog-d5-{suffix}.json", dumps(rows))
    print(dumps({"command": "catalog-d5", "entries": rows, "file": path, "match": ok}), end="")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_exceptional(args) -> int:
    if args.to < args.from_:
        raise UsageError("--to must be at least --from")
    found = [d for d in range(args.from_, args.to + 1) if is_exceptional(d)]
    golden = load_golden()["exceptional"]
    lo, hi = golden["range"]
    lo, hi = max(lo, args.from_), min(hi, args.to)
    expected = [d for d in golden["degrees"] if lo <= d <= hi]
    got = [d for d in found if lo <= d <= hi]
    report = {"command": "exceptional", "from": args.from_, "to": args.to, "degrees": found,
              "checked_range": [lo, hi] if lo <= hi else None, "match": got == expected}
    if got != expected:
        report["missing"] = sorted(set(expected) - set(got))
        report["unexpected"] = sorted(set(got) - set(expected))
    report["file"] = _write(args, f"exceptional-{args.from_}-{args.to}.json", dumps(report))
    print(dumps(report), end="")
    return EXIT_OK if report["match"] else EXIT_FAIL


def _diesel_checks(rep: diesel.Corank4Report, g: dict) -> dict[str, bool]:
    d = rep.d
    checks = {
        "h_EM_T2": rep.t2.h_EM == _poly_value(g["h_EM_T2_poly"], d),
        "codim_T1": rep.t1.codim_bound >= g["codim_bound_T1"],
        "codim_T2": rep.t2.codim_bound >= _poly_value(g["codim_bound_T2_poly"], d),
    }
    if d == 4:
        checks["h_EM_T1"] = rep.t1.h_EM == g["h_EM_T1_d4"]
        checks["dim_bound_T1"] = rep.t1.dim_bound == g["dim_bound_T1_d4"]
        checks["ambient"] = rep.t1.ambient_dim == g["ambient_d4"]
    else:
        checks["h_EM_T1"] = rep.t1.h_EM == _poly_value(g["h_EM_T1_poly"], d)
    return checks


def cmd_diesel(args) -> int:
    lo = args.d if args.d is not None else args.from_
    hi = args.d if args.d is not None else args.to
    if lo < 4 or hi < lo:
        raise UsageError("need 4 <= d (and --from <= --to)")
    g = load_golden()["diesel"]
    reports, ok = [], True
    for d in range(lo, hi + 1):
        rep = diesel.corank4_dimension_bounds(d)
        checks = _diesel_checks(rep, g)
        ok &= all(checks.values())
        obj = rep.to_json_obj()
        obj["checks"] = checks
        reports.append(obj)
    path = _write(args, f"diesel-{lo}-{hi}.json", dumps(reports))
    summary = {"command": "diesel", "reports": [
        {"d": r["d"], "h_EM_T1": r["T1"]["h_EM"], "h_EM_T2": r["T2"]["h_EM"],
         "dim_bound_T1": r["T1"]["dim_bound"], "codim_bound_T1": r["T1"]["codim_bound"],
         "codim_bound_T2": r["T2"]["codim_bound"], "match": all(r["checks"].values())}
        for r in reports], "file": path, "match": ok}
    print(dumps(summary), end="")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(args) -> int:
    if args.to < args.from_:
        raise UsageError("--to must be at least --from")
    rows, ok = [], True
    for d in range(args.from_, args.to + 1):
        c = build_max_rank(d)
        cert = certify(c.functional, c.config)
        good = cert.is_extreme and cert.corank == 4 and cert.rank == dim_forms(d) - 4
        ok &= good
        rows.append({"d": d, "rank": cert.rank, "corank": cert.corank, "is_extreme": cert.is_extreme,
                     "exceptional": is_exceptional(d), "t0": cert.metadata.get("t0"),
                     "rank_bounds": rank_bounds_hold(cert), "ok": good})
    path = _write(args, f"scan-{args.from_}-{args.to}.json", dumps(rows))
    print(dumps({"command": "scan", "rows": rows, "file": path, "ok": ok}), end="")
    return EXIT_OK if ok else EXIT_FAIL


def self_test_checks(max_d: int = 9) -> list[tuple[str, bool]]:
    """Recompute every embedded expected value; returns (name, passed) pairs."""
    golden = load_golden()
    out = []

    config = gamma_split(5)
    M = relation_grid_matrix(unique_relation(config.gamma1_points, 5), config)
    out.append(("relation d=5", M == QMatrix(golden["relation"]["5"]["matrix"])))

    for key, r in sorted(golden["max_rank"]["ranks"].items(), key=lambda kv: int(kv[0])):
        d = int(key)
        if d > max_d:
            continue
        c = build_max_rank(d)
        cert = certify(c.functional, c.config)
        out.append((f"max rank d={d}", cert.is_extreme and cert.rank == r
                    and cert.corank == golden["max_rank"]["corank"]))
    if max_d >= 9:
        c = build_max_rank(9, perturb=False)
        out.append(("unperturbed d=9 not extreme", not certify(c.functional, c.config).is_extreme))

    lo, hi = golden["exceptional"]["range"]
    found = [d for d in range(lo, hi + 1) if is_exceptional(d)]
    out.append((f"exceptional {lo}..{hi}", found == golden["exceptional"]["degrees"]))

    for r in range(13, 18):
        _, cert = d5_catalog(r)
        out.append((f"d=5 rank {r}", cert.rank == r and cert.is_extreme and cert.dual_variety_criterion
                    and list(cert.hilbert.T) == golden["catalog_d5"][str(r)]))

    g = golden["diesel"]
    for d in range(4, 13):
        checks = _diesel_checks(diesel.corank4_dimension_bounds(d), g)
        out.append((f"diesel d={d}", all(checks.values())))
    for case in g["q_min"]:
        seq = diesel.DegreeSequence(tuple(case["Q"]), tuple(case["P"]), case["socle"])
        out.append((f"q_min {case['Q_min']}", list(diesel.minimize_degrees(seq).Q) == case["Q_min"]))
    return out


def cmd_self_test(args) -> int:
    start = time.perf_counter()
    results = self_test_checks(8 if args.quick else 9)
    for name, passed in results:
        print(f"{'PASS' if passed else 'FAIL'}  {name}", file=sys.stderr)
    ok = all(p for _, p in results)
    report = {"command": "self-test", "results": [{"check": n, "passed": p} for n, p in results],
              "ok": ok}
    report["file"] = _write(args, "self-test.json", dumps(report))
    report["seconds"] = round(time.perf_counter() - start, 1)
    print(dumps(report), end="")
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------


class UsageError(Exception):
    pass


def _degree(text: str) -> int:
    d = int(text)
    if d < 4:
        raise argparse.ArgumentTypeError(f"d must be at least 4, got {d}")
    return d


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hankelrays", description=__doc__.splitlines()[0])
    parser.add_argument("--output-dir", help=f"directory for reports (default ${ENV_OUTPUT_DIR} or .)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and certify the corank-4 extreme ray")
    p.add_argument("--d", type=_degree, required=True)
    p.add_argument("--removed-point", type=int, default=None,
                   help="index (sorted order) of the point given negative weight; default last")
    p.add_argument("--perturb", dest="perturb", action="store_true", default=None)
    p.add_argument("--no-perturb", dest="perturb", action="store_false")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="certify a functional read from JSON")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("relation", help="relation matrix on the split grid")
    p.add_argument("--d", type=_degree, required=True)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.set_defaults(func=cmd_relation)

    p = sub.add_parser("catalog-d5", help="extreme rays of rank 13..17 on forms of degree 10")
    p.add_argument("--rank", type=int, choices=range(13, 18), default=None)
    p.set_defaults(func=cmd_catalog_d5)

    p = sub.add_parser("exceptional", help="degrees needing the perturbed grid")
    p.add_argument("--from", dest="from_", type=_degree, default=4)
    p.add_argument("--to", type=_degree, default=100)
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("diesel", help="dimension counts for the corank-4 families")
    p.add_argument("--d", type=_degree, default=None)
    p.add_argument("--from", dest="from_", type=_degree, default=4)
    p.add_argument("--to", type=_degree, default=12)
    p.set_defaults(func=cmd_diesel)

    p = sub.add_parser("scan", help="certify the max-rank construction over a range of d")
    p.add_argument("--from", dest="from_", type=_degree, default=4)
    p.add_argument("--to", type=_degree, default=8)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("self-test", help="recompute all embedded expected values")
    p.add_argument("--quick", action="store_true", help="skip the d=9 cases")
    p.set_defaults(func=cmd_self_test)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except HankelRaysError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:  # noqa: BLE001 - reported as machine-readable internal error
        print(json.dumps({"error": "internal", "type": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
