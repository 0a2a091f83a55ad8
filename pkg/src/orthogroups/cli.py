"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 input data is invalid (non-orthogonal matrix, non-normalisable vector).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

import numpy as np

from .decomposition import householder_decompose, matrix_from_json, reconstruct
from .errors import NotOrthogonal
from .sparse import SparseVector, basis, distance, norm
from .sphere import SpherePoint, contract_path
from .suites import SUITES, CheckResult, RunReport, aggregate, run_samples, run_suite

log = logging.getLogger("orthogroups")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
NORMALIZE_SLACK = 1e-6


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_decompose(args) -> int:
    start = time.perf_counter()
    data = _read_json(args.file)
    try:
        M = matrix_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed matrix JSON: {exc}") from None
    report = RunReport("decompose", 0)
    try:
        word = householder_decompose(M)
    except NotOrthogonal as exc:
        report.checks.append(CheckResult("orthogonal_input", False, exc.residual, exc.tol))
        report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
        _emit({"report": report.to_json(args.timing)}, args.out)
        return EXIT_DATA
    residual = float(np.max(np.abs(reconstruct(word) - M)))
    report.checks.append(CheckResult("decomposition_round_trip", residual <= 1e-8, residual, 1e-8))
    report.checks.append(CheckResult("word_length", len(word) <= word.n, float(len(word)), float(word.n)))
    report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    _emit({"word": word.to_json(), "residual": residual, "report": report.to_json(args.timing)}, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.samples, args.seed, args.jobs)
    log.info("verify %s: %d ms", args.suite, report.wall_time_ms)
    _emit(report.to_json(args.timing), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_contract(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    data = _read_json(args.file)
    try:
        x = SparseVector.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed vector JSON: {exc}") from None
    n = norm(x)
    if abs(n - 1.0) > NORMALIZE_SLACK:
        log.error("input has norm %r; only vectors within %g of unit norm are accepted", n, NORMALIZE_SLACK)
        return EXIT_DATA
    x = SpherePoint.normalized(x)
    path = contract_path(x, args.steps)
    resid = path.max_norm_residual()
    end = distance(path.points[-1], basis(0))
    checks = [
        CheckResult("homotopy_unit_norm", resid <= 1e-9, resid, 1e-9),
        CheckResult("homotopy_endpoints", end <= 1e-10, end, 1e-10),
    ]
    out = path.to_json()
    for s, p in zip(out["samples"], path.points):
        s["norm_residual"] = abs(norm(p) - 1.0)
    out["certificate"] = {
        "checks": [c.to_json() for c in checks],
        "lipschitz_constant": path.lipschitz_constant(),
        "length": path.length(),
    }
    _emit(out, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_fibre(args) -> int:
    if not 1 <= args.dim <= 8:
        raise UsageError("--dim must be between 1 and 8")
    start = time.perf_counter()
    rows = run_samples("fibre", args.samples, args.seed, args.jobs, j=args.dim)
    report = RunReport("fibre", args.seed, aggregate(rows))
    report.extra.update({"dim": args.dim, "samples": args.samples})
    report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    _emit(report.to_json(args.timing), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write JSON here instead of stdout")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall_time_ms in reports (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="orthogroups", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default=None)
    parser.add_argument("--timing", action="store_true", default=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="factor an orthogonal matrix into reflections")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run a randomised invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("contract", parents=[common], help="sample the contraction path of a unit vector")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=100)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("fibre", parents=[common], help="trivialisation round trips for O(j+1) -> S^j")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_fibre)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"orthogroups: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
