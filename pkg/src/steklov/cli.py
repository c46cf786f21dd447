"""Command-line interface: spectra, families, extremal search, verification.

Exit codes: 0 success, 1 verification mismatch, 2 malformed edge list,
3 invalid family string, 4 unsupported numeric options.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from steklov import __version__
from steklov.enumeration import (
    ExtremalQuery,
    explore_seesaw_conjecture,
    extremal_search,
    monotonicity_property_test,
    verify_diameter_max,
    verify_sigma2_max,
    verify_sigma_k_max,
)
from steklov.errors import (
    EdgeListFormatError,
    EnumerationRangeError,
    FamilyParameterError,
    GraphError,
)
from steklov.families import make_family, parse_family, predicted_spectrum
from steklov.graph_core import canonical_code, format_edge_list, parse_edge_list
from steklov.spectral import EIG_ATOL, dtn_matrix, steklov_spectrum

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BAD_EDGELIST = 2
EXIT_BAD_FAMILY = 3
EXIT_BAD_RANGE = 4

CSV_COLUMNS = ("mode", "b_or_D", "n", "k", "max_value", "predicted_value", "match", "attainer_codes")


def fmt(x) -> str:
    """12-significant-digit rendering used in all text output."""
    if x is None:
        return ""
    return format(float(x), ".12g")


def round12(x):
    if x is None:
        return None
    return float(fmt(x))


def exact_str(value) -> str | None:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return None


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _spectrum_payload(tree, tolerance, verbose=False):
    spectrum = steklov_spectrum(tree, tolerance=tolerance)
    payload = {
        "version": __version__,
        "tolerance": tolerance,
        "n": tree.n,
        "b": len(tree.boundary),
        "canonical_code": canonical_code(tree).hex(),
        "eigenvalues": [round12(0.0 if abs(x) < tolerance else x) for x in spectrum.values],
    }
    if verbose:
        payload["dtn_matrix"] = [[round12(x) for x in row] for row in dtn_matrix(tree)]
    return payload


def _spectrum_text(payload) -> str:
    lines = [
        f"version {payload['version']}  tolerance {fmt(payload['tolerance'])}",
        f"n={payload['n']} b={payload['b']} code={payload['canonical_code']}",
        "eigenvalues: " + " ".join(fmt(x) for x in payload["eigenvalues"]),
    ]
    for row in payload.get("dtn_matrix", []):
        lines.append("  " + " ".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    text = Path(args.edges).read_text(encoding="utf-8")
    tree = parse_edge_list(text)
    payload = _spectrum_payload(tree, args.tol, verbose=args.verbose)
    if args.format == "json":
        _emit(args, _report_json(payload))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "b", "canonical_code", "eigenvalues"])
        writer.writerow(
            [payload["n"], payload["b"], payload["canonical_code"],
             ";".join(fmt(x) for x in payload["eigenvalues"])]
        )
        _emit(args, buf.getvalue())
    else:
        _emit(args, _spectrum_text(payload))
    return EXIT_OK


def cmd_family(args) -> int:
    descriptor = parse_family(args.family)
    tree = make_family(descriptor)
    closed_form = predicted_spectrum(descriptor)
    payload = _spectrum_payload(tree, args.tol)
    predicted = [
        {"value": round12(value), "exact": exact_str(value), "multiplicity": mult}
        for value, mult in closed_form.entries
    ]
    numeric = payload["eigenvalues"]
    expanded = closed_form.expand()
    payload.update(
        {
            "family": str(descriptor),
            "edges": [list(e) for e in tree.edges],
            "predicted": predicted,
            "predicted_matches_numeric": len(expanded) == len(numeric)
            and all(abs(a - b) <= args.tol for a, b in zip(expanded, numeric)),
        }
    )
    if args.edges_out:
        Path(args.edges_out).write_text(format_edge_list(tree), encoding="utf-8")
    if args.format == "json":
        _emit(args, _report_json(payload))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["family", "n", "b", "canonical_code", "eigenvalues", "predicted", "match"])
        writer.writerow(
            [payload["family"], payload["n"], payload["b"], payload["canonical_code"],
             ";".join(fmt(x) for x in numeric),
             ";".join(exact_str(v) or fmt(v) for v, _ in closed_form.entries),
             payload["predicted_matches_numeric"]]
        )
        _emit(args, buf.getvalue())
    else:
        lines = [_spectrum_text(payload).rstrip("\n")]
        lines.append(f"family {payload['family']}  predicted vs numeric match: "
                     f"{payload['predicted_matches_numeric']}")
        for entry in predicted:
            exact = f" = {entry['exact']}" if entry["exact"] else ""
            lines.append(f"  {fmt(entry['value'])}{exact} (x{entry['multiplicity']})")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_search(args) -> int:
    if (args.leaves is None) == (args.diameter is None):
        raise EnumerationRangeError("pass exactly one of --leaves or --diameter")
    if args.leaves is not None:
        query = ExtremalQuery(mode="by_leaves", k=args.k, bound=args.leaves, n=args.n)
    else:
        query = ExtremalQuery(mode="by_diameter", k=args.k, bound=args.diameter, n=args.n)
    record = extremal_search(query, tolerance=args.tol)
    payload = {
        "version": __version__,
        "tolerance": args.tol,
        "mode": query.mode,
        "b_or_D": query.bound,
        "n": query.n,
        "k": query.k,
        "empty_class": record.empty_class,
        "max_value": round12(record.value),
        "attainer_codes": list(record.attainer_codes),
    }
    if args.format == "json":
        _emit(args, _report_json(payload))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_COLUMNS)
        writer.writerow(
            [query.mode, query.bound, query.n, query.k, fmt(record.value), "", "",
             ";".join(record.attainer_codes)]
        )
        _emit(args, buf.getvalue())
    else:
        if record.empty_class:
            _emit(args, f"{query.mode} b_or_D={query.bound} n={query.n} k={query.k}: empty class\n")
        else:
            _emit(
                args,
                f"{query.mode} b_or_D={query.bound} n={query.n} k={query.k}: "
                f"max={fmt(record.value)} attainers={' '.join(record.attainer_codes)}\n",
            )
    return EXIT_OK


def _verification_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        for row in report.rows:
            writer.writerow(
                [row.mode, row.bound, row.n, row.k, fmt(row.max_value),
                 fmt(row.predicted), row.match, ";".join(row.attainer_codes)]
            )
    return buf.getvalue()


def _verification_summary(reports, monotonicity, tolerance) -> str:
    lines = [f"steklov verify  version {__version__}  tolerance {fmt(tolerance)}"]
    for report in reports:
        status = "OK" if report.ok else f"{len(report.mismatches)} MISMATCH"
        lines.append(f"  {report.name}: {len(report.rows)} checks, {status}")
        for row in report.mismatches:
            lines.append(
                f"    mismatch {row.section} b_or_D={row.bound} n={row.n} k={row.k}: "
                f"max={fmt(row.max_value)} predicted={fmt(row.predicted)} {row.note}"
            )
        for flag in report.flags:
            lines.append(f"  flagged: {flag}")
        for finding in report.findings:
            lines.append(f"  finding: {finding}")
    if monotonicity is not None:
        status = "OK" if monotonicity.ok else f"{len(monotonicity.violations)} VIOLATION"
        lines.append(
            f"  monotonicity: {monotonicity.trials} random subtree pairs "
            f"(n <= {monotonicity.n_max}, seed {monotonicity.seed}), {status}"
        )
        lines.extend(f"    {v}" for v in monotonicity.violations)
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    reports = [
        verify_sigma2_max(args.n_max, tolerance=args.tol),
        verify_sigma_k_max(args.n_max, tolerance=args.tol),
        verify_diameter_max(args.n_max, tolerance=args.tol),
    ]
    monotonicity = None
    if args.trials > 0:
        monotonicity = monotonicity_property_test(
            args.trials, min(args.n_max, 12), tolerance=args.tol
        )
    summary = _verification_summary(reports, monotonicity, args.tol)
    if args.format == "json":
        payload = {
            "version": __version__,
            "tolerance": args.tol,
            "reports": [
                {
                    "name": report.name,
                    "checks": len(report.rows),
                    "mismatches": len(report.mismatches),
                    "flags": report.flags,
                    "findings": report.findings,
                    "rows": [
                        {
                            "section": row.section,
                            "mode": row.mode,
                            "b_or_D": row.bound,
                            "n": row.n,
                            "k": row.k,
                            "max_value": round12(row.max_value),
                            "predicted_value": round12(row.predicted),
                            "match": row.match,
                            "attainer_codes": list(row.attainer_codes),
                            "note": row.note,
                        }
                        for row in report.rows
                    ],
                }
                for report in reports
            ],
            "monotonicity_violations": monotonicity.violations if monotonicity else [],
        }
        _emit(args, _report_json(payload))
    elif args.format == "csv":
        _emit(args, _verification_csv(reports))
        sys.stdout.write(summary)
    else:
        _emit(args, summary)
    failed = any(not report.ok for report in reports)
    if monotonicity is not None and not monotonicity.ok:
        failed = True
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_conjecture(args) -> int:
    diameters = None
    if args.diameters:
        diameters = [int(x) for x in args.diameters.split(",")]
    report = explore_seesaw_conjecture(args.n_max, diameters=diameters, tolerance=args.tol)
    if args.format == "json":
        payload = {
            "version": __version__,
            "tolerance": args.tol,
            "internally_consistent": report.consistent,
            "rows": [
                {
                    "D": row.diameter,
                    "n": row.n,
                    "applicable": row.applicable,
                    "enumerated_max": round12(row.enumerated),
                    "conjectured": round12(row.conjectured),
                    "difference": round12(row.difference),
                    "attainer_codes": list(row.attainer_codes),
                    "attainer_is_seesaw": row.attainer_is_seesaw,
                    "note": row.note,
                }
                for row in report.rows
            ],
        }
        _emit(args, _report_json(payload))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["D", "n", "applicable", "enumerated_max", "conjectured", "difference",
             "attainer_is_seesaw", "attainer_codes", "note"]
        )
        for row in report.rows:
            writer.writerow(
                [row.diameter, row.n, row.applicable, fmt(row.enumerated),
                 fmt(row.conjectured), fmt(row.difference), row.attainer_is_seesaw,
                 ";".join(row.attainer_codes), row.note]
            )
        _emit(args, buf.getvalue())
    else:
        lines = [f"seesaw conjecture explorer  version {__version__}  tolerance {fmt(args.tol)}"]
        for row in report.rows:
            if not row.applicable:
                lines.append(f"  D={row.diameter} n={row.n}: {row.note}")
            else:
                verdict = "attainer is the seesaw" if row.attainer_is_seesaw else "attainer differs"
                lines.append(
                    f"  D={row.diameter} n={row.n}: enumerated {fmt(row.enumerated)} vs "
                    f"conjectured {fmt(row.conjectured)} (diff {fmt(row.difference)}); {verdict}"
                )
        lines.append(f"  internal consistency: {report.consistent}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _tol(value: str) -> float:
    tol = float(value)
    if not 0.0 < tol <= 1e-3:
        raise argparse.ArgumentTypeError("tolerance must be in (0, 1e-3]")
    return tol


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steklov",
        description="Steklov (Dirichlet-to-Neumann) spectra of trees with leaf boundary",
    )
    parser.add_argument("--version", action="version", version=f"steklov {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--tol", type=_tol, default=EIG_ATOL,
                       help="eigenvalue comparison tolerance (default 1e-9)")
        p.add_argument("--out", help="write the report to this path instead of stdout")
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("spectrum", help="Steklov spectrum of an edge-list tree")
    p.add_argument("edges", help="edge-list file: optional 'n=<int>' header, one 'u v' per line")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("family", help="generate a named family member and report its spectra")
    p.add_argument("family", help="family string: path:n | af:b,r | cg:b1,b2,r | "
                                  "barbell:p,q,D | as:r,b,c | ruler:r,k")
    p.add_argument("--edges-out", help="also write the edge list to this path")
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("search", help="exhaustive maximum of sigma_k over a tree class")
    p.add_argument("-n", type=int, required=True, help="number of vertices")
    p.add_argument("-k", type=int, default=2, help="eigenvalue index (1-based, default 2)")
    p.add_argument("--leaves", type=int, help="fix the leaf count b")
    p.add_argument("--diameter", type=int, help="fix the diameter D")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="run every closed-form verifier up to n-max")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--trials", type=int, default=200,
                   help="random monotonicity trials (0 disables)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="odd-diameter seesaw conjecture explorer")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--diameters", help="comma-separated odd diameters (default: all >= 5)")
    common(p)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EdgeListFormatError, GraphError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_EDGELIST
    except FamilyParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FAMILY
    except (EnumerationRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_RANGE


if __name__ == "__main__":
    sys.exit(main())
