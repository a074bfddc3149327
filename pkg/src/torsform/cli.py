"""Command-line front end.

Exit codes: 0 success, 2 bad input (validation, unknown family, unreadable
file), 3 internal inconsistency (a pairing property failed at runtime or an
oracle disagreed).  Errors go to stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import AnalysisReport, analyze, run_analysis
from .corpus import GeneratorUnavailable, InstanceSpec, UnknownFamily, build_instance
from .lattice import ValidationError, dump_instance, load_instance
from .oracle import (
    MAX_MINOR_RANK,
    BoundExceeded,
    OracleConfig,
    exhaustive_nondegeneracy,
    resample_instance,
    snf_oracle,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3


def _error(code, message, **extra):
    payload = {"error": code, "message": message}
    payload.update(extra)
    print(json.dumps(payload), file=sys.stderr)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(args):
    try:
        return load_instance(args.path, args.l)
    except ValidationError as exc:
        _error(exc.code, str(exc), path=args.path)
    except OSError as exc:
        _error("IOError", str(exc), path=args.path)
    return None


def format_text(report: AnalysisReport) -> str:
    lines = [
        f"instance   {report.name or '-'}  (l = {report.l}, rank {report.rank})",
        f"free rank  {report.free_rank}",
        "torsion    " + (" + ".join(f"Z/{report.l}^{m}" for m in report.torsion_exponents) or "0"),
    ]
    if report.pairing_matrix:
        width = max(len(s) for row in report.pairing_matrix for s in row)
        lines.append("pairing")
        lines += ["  " + " ".join(s.rjust(width) for s in row) for row in report.pairing_matrix]
    lines.append("verdicts   " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in report.verdicts.items()))
    if report.criteria is not None:
        c = report.criteria
        lines.append(f"w0 mod 2   {c['w0_mod2']}")
        lines.append(f"H0 even    {'yes' if c['h0_even'] else 'no'}")
        lines.append(f"invariant characteristic  {c['invariant_witness']}")
        odd = c["odd_period"]
        lines.append("odd-period characteristic " + ("None" if odd is None else f"{odd['witness']} (n = {odd['n']})"))
    for v in report.violations:
        lines.append(f"VIOLATION  {v}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    L = _load(args)
    if L is None:
        return EXIT_INPUT
    report = analyze(L)
    text = format_text(report) if args.format == "text" else report.to_json()
    _emit(text, args.out)
    if report.violations:
        _error("InternalInconsistency", "pairing properties violated", violations=report.violations)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_check(args) -> int:
    L = _load(args)
    if L is None:
        return EXIT_INPUT
    a = run_analysis(L)
    cfg = OracleConfig(trials=args.trials, enumeration_bound=args.enum_bound, seed=args.seed)
    checks, warnings = {}, []
    checks["analysis"] = "fail" if a.violations else "pass"
    checks["resampling"] = "pass" if resample_instance(L, a.decomposition, cfg) else "fail"
    try:
        agree = exhaustive_nondegeneracy(a.matrix, L.prime, cfg) == a.verdicts.nondegenerate
        checks["exhaustive_nondegeneracy"] = "pass" if agree else "fail"
    except BoundExceeded as exc:
        checks["exhaustive_nondegeneracy"] = "skipped"
        warnings.append(f"BoundExceeded: {exc}")
    one_minus = [[int(i == j) - L.isometry[i][j] for j in range(L.rank)] for i in range(L.rank)]
    if 0 < L.rank <= MAX_MINOR_RANK:
        ok = snf_oracle(one_minus) == a.decomposition.smith.diagonal
        checks["snf_oracle"] = "pass" if ok else "fail"
    elif L.rank == 0:
        checks["snf_oracle"] = "pass"
    else:
        checks["snf_oracle"] = "skipped"
        warnings.append(f"BoundExceeded: rank {L.rank} exceeds minor enumeration limit {MAX_MINOR_RANK}")
    result = {
        "name": L.name,
        "l": int(L.prime),
        "seed": args.seed,
        "trials": args.trials,
        "checks": checks,
        "violations": list(a.violations),
        "warnings": warnings,
    }
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(json.dumps(result, indent=None if args.format == "json" else 2), args.out)
    failed = sorted(k for k, v in checks.items() if v == "fail")
    if failed:
        _error("OracleDisagreement", f"failed checks: {', '.join(failed)}", seed=args.seed, checks=checks)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_gen(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    entries = []
    for i in range(args.count):
        spec = InstanceSpec(args.family, args.l or 2, args.isometry, seed=args.seed + i, n=args.n, k=args.k)
        try:
            L = build_instance(spec)
        except (UnknownFamily, GeneratorUnavailable, ValidationError, ValueError) as exc:
            _error(type(exc).__name__ if not isinstance(exc, ValidationError) else exc.code, str(exc))
            return EXIT_INPUT
        stem = f"{args.prefix or spec.family.replace('^', '').replace('+', '_')}-{i:03d}.json"
        path = os.path.join(args.outdir, stem)
        with open(path, "w") as fh:
            fh.write(dump_instance(L) + "\n")
        report = analyze(L)
        entries.append({
            "name": L.name,
            "path": path,
            "expected": {"torsion_exponents": report.torsion_exponents, **report.verdicts},
        })
    manifest = json.dumps({"instances": entries}, indent=2)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            fh.write(manifest + "\n")
    print(manifest)
    return EXIT_OK


def cmd_validate(args) -> int:
    L = _load(args)
    if L is None:
        return EXIT_INPUT
    print(json.dumps({"valid": True, "name": L.name, "l": int(L.prime), "rank": L.rank}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--l", type=int, default=None, help="prime for instance files that lack one")
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("analyze", help="torsion, pairing matrix and verdicts for an instance file")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="analyze plus all oracle cross-checks")
    p.add_argument("path")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--enum-bound", type=int, default=2**20)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("validate", help="only validate an instance file")
    p.add_argument("path")
    p.add_argument("--l", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="generate corpus instances and print a manifest")
    p.add_argument("--family", required=True)
    p.add_argument("--isometry", default="random:6", help="isometry recipe (see torsform.corpus)")
    p.add_argument("--l", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--n", type=int, default=None, help="rank for I_n")
    p.add_argument("--k", type=int, default=None, help="number of planes for U^k")
    p.add_argument("--outdir", default=".")
    p.add_argument("--prefix", default=None)
    p.add_argument("--manifest", default=None, help="also write the manifest to this path")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
