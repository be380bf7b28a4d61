"""File-driven command line front end.

Problem files are JSON.  Univariate modes take a full-length "moments"
array with null at each gap position; curve modes take "k",
"bivariate_moments" records and optionally "extra_moment".  Numbers may be
given as integers, floats, or exact "p/q" strings.  Reports are JSON with
exact values serialized as "p/q" strings and irrational witnesses as
{"center", "radicand", "sign"} objects.

Exit codes: 0 a representing measure exists, 1 provably none (the report
carries the certificate), 2 input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .curves import CURVES, BivariateSequence, curve_equation_residual, curve_residual, solve_curve
from .errors import MomentGapsError
from .gaps import GapPattern, GappedSequence, solve_gap
from .hamburger import max_relative_error, solve_thmp
from .linalg import Tolerance
from .oracle import scan_gap
from .rational import as_rational, is_rational, rational_str
from .surd import Surd

GAP_MODES = {
    "gap-last": GapPattern.LAST,
    "gap-last2": GapPattern.LAST2,
    "gap-first": GapPattern.FIRST,
    "gap-first2": GapPattern.FIRST2,
}

CURVE_MODES = {
    "curve-yx3": "y=x3",
    "curve-yx4": "y=x4",
    "curve-y2x3": "y2=x3",
    "curve-y3x4": "y3=x4",
}

MODES = ["thmp", *GAP_MODES, *CURVE_MODES]


class SchemaError(Exception):
    pass


def _parse_value(raw, exact: bool):
    if raw is None:
        return None
    try:
        if exact:
            return as_rational(raw)
        if isinstance(raw, str):
            return float(as_rational(raw))
        return float(raw)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad numeric value {raw!r}: {exc}") from exc


def _encode_value(v):
    if v is None:
        return None
    if isinstance(v, bool) or isinstance(v, int):
        return v
    if isinstance(v, Surd):
        if v.is_rational:
            return rational_str(v.as_rational())
        return {
            "center": rational_str(v.center),
            "radicand": rational_str(v.radicand),
            "sign": v.sign,
        }
    if is_rational(v):
        return rational_str(v)
    return float(v)


def _load_problem(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON (line {exc.lineno}): {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError("problem file must be a JSON object")
    return data


def _problem_tolerance(data: dict, override) -> Tolerance:
    tols = data.get("tolerances", {})
    if not isinstance(tols, dict):
        raise SchemaError("'tolerances' must be an object")
    eps_psd = float(tols.get("eps_psd", 1e-9))
    eps_rank = float(tols.get("eps_rank", 1e-9))
    if override is not None:
        eps_psd = eps_rank = float(override)
    return Tolerance(eps_psd=eps_psd, eps_rank=eps_rank)


def _univariate_moments(data: dict, exact: bool):
    if "moments" not in data:
        raise SchemaError("field 'moments' is required for univariate modes")
    raw = data["moments"]
    if not isinstance(raw, list):
        raise SchemaError("'moments' must be an array")
    return [_parse_value(v, exact) for v in raw]


def _bivariate(data: dict, exact: bool) -> BivariateSequence:
    if "k" not in data or "bivariate_moments" not in data:
        raise SchemaError("curve modes need 'k' and 'bivariate_moments'")
    try:
        k = int(data["k"])
    except (TypeError, ValueError) as exc:
        raise SchemaError("'k' must be an integer") from exc
    beta = {}
    for rec in data["bivariate_moments"]:
        if not isinstance(rec, dict) or not {"i", "j", "value"} <= set(rec):
            raise SchemaError("bivariate moment records need fields i, j, value")
        beta[(int(rec["i"]), int(rec["j"]))] = _parse_value(rec["value"], exact)
    extra = _parse_value(data.get("extra_moment"), exact)
    try:
        return BivariateSequence(k, beta, extra)
    except MomentGapsError as exc:
        raise SchemaError(str(exc)) from exc


def _measure_payload(measure, points=None):
    out = {
        "atoms": [_encode_value(a) for a in measure.atoms],
        "weights": [_encode_value(w) for w in measure.weights],
    }
    if points is not None:
        out["points"] = [[_encode_value(p), _encode_value(q)] for p, q in points]
    return out


def _encode_certificate(cert: dict):
    out = {}
    for key, val in cert.items():
        if isinstance(val, tuple) and len(val) == 2:
            out[key] = [_encode_value(val[0]), _encode_value(val[1])]
        elif isinstance(val, list):
            out[key] = [
                [_encode_value(x) for x in row] if isinstance(row, list) else _encode_value(row)
                for row in val
            ]
        elif is_rational(val) or isinstance(val, Surd):
            out[key] = _encode_value(val)
        else:
            out[key] = val
    return out


def run_solve(args) -> int:
    data = _load_problem(args.input)
    mode = args.mode or data.get("mode")
    if mode not in MODES:
        raise SchemaError(f"mode must be one of {MODES}, got {mode!r}")
    arithmetic = args.arithmetic or data.get("arithmetic", "exact")
    if arithmetic not in ("exact", "float"):
        raise SchemaError("arithmetic must be 'exact' or 'float'")
    exact = arithmetic == "exact"
    tol = _problem_tolerance(data, args.tol)

    t0 = time.perf_counter()
    report = {"mode": mode, "arithmetic": arithmetic}
    if mode == "thmp":
        moments = _univariate_moments(data, exact)
        if any(v is None for v in moments):
            raise SchemaError("thmp mode takes a fully specified sequence (no nulls)")
        verdict = solve_thmp(moments, tol)
        report.update(
            exists=verdict.exists,
            reason=verdict.reason,
            rank=verdict.rank,
            atom_count=None if verdict.measure is None else len(verdict.measure),
        )
        if verdict.measure is not None:
            report["measure"] = _measure_payload(verdict.measure)
            if args.verify:
                resid = max_relative_error(verdict.measure, list(enumerate(moments)))
                report["residuals"] = {"max_relative_error": resid}
        exists = verdict.exists
    elif mode in GAP_MODES:
        moments = _univariate_moments(data, exact)
        try:
            g = GappedSequence.from_values(GAP_MODES[mode], moments)
        except MomentGapsError as exc:
            raise SchemaError(str(exc)) from exc
        verdict = solve_gap(g, tol)
        report.update(
            exists=verdict.exists,
            reason=verdict.reason,
            atom_count=verdict.atom_count,
            minimal=verdict.minimal,
            completions={str(i): _encode_value(v) for i, v in verdict.completions.items()},
            admissible=None
            if verdict.admissible is None
            else [_encode_value(verdict.admissible[0]), _encode_value(verdict.admissible[1])],
            certificate=_encode_certificate(verdict.certificate),
        )
        if verdict.measure is not None:
            report["measure"] = _measure_payload(verdict.measure)
            if args.verify:
                resid = max_relative_error(verdict.measure, [(i, g.known[i]) for i in g.known])
                report["residuals"] = {"max_relative_error": resid}
        exists = verdict.exists
    else:
        b = _bivariate(data, exact)
        verdict = solve_curve(b, CURVE_MODES[mode], tol)
        report.update(
            exists=verdict.exists,
            stage=verdict.stage,
            diagnostics=verdict.diagnostics,
        )
        if verdict.gap is not None:
            report.update(
                reason=verdict.gap.reason,
                atom_count=verdict.gap.atom_count,
                minimal=verdict.gap.minimal,
                completions={str(i): _encode_value(v) for i, v in verdict.gap.completions.items()},
                certificate=_encode_certificate(verdict.gap.certificate),
            )
        if verdict.measure is not None:
            report["measure"] = _measure_payload(verdict.gap.measure, verdict.measure.points)
            if args.verify:
                report["residuals"] = {
                    "max_relative_error": curve_residual(verdict.measure, b, CURVE_MODES[mode]),
                    "curve_equation": curve_equation_residual(verdict.measure, CURVE_MODES[mode]),
                }
        exists = verdict.exists
    if args.timing:
        report["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(report, args.output)
    return 0 if exists else 1


def run_scan(args) -> int:
    data = _load_problem(args.input)
    mode = args.mode or data.get("mode")
    if mode not in GAP_MODES:
        raise SchemaError(f"scan needs a gap mode, one of {sorted(GAP_MODES)}")
    moments = _univariate_moments(data, exact=False)
    try:
        g = GappedSequence.from_values(GAP_MODES[mode], moments)
    except MomentGapsError as exc:
        raise SchemaError(str(exc)) from exc
    report = scan_gap(g, args.step)
    payload = {
        "mode": mode,
        "grid_step": report.grid_step,
        "box": list(report.box),
        "feasible": report.feasible,
        "feasible_count": len(report.feasible_points),
        "intervals": [list(iv) for iv in report.intervals],
        "sample_points": [
            list(p) if isinstance(p, tuple) else p for p in report.feasible_points[:16]
        ],
    }
    _emit(payload, args.output)
    return 0 if report.feasible else 1


def _emit(payload: dict, output):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentgaps",
        description="Moment-sequence solvers for sequences with missing entries "
        "and for moment problems on four plane curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide existence and build a measure")
    solve.add_argument("--input", required=True, help="problem JSON file")
    solve.add_argument("--output", help="write the report here instead of stdout")
    solve.add_argument("--mode", choices=MODES, help="override the file's mode")
    solve.add_argument("--arithmetic", choices=["exact", "float"], help="override arithmetic")
    solve.add_argument("--tol", type=float, help="float-mode tolerance override")
    solve.add_argument("--verify", dest="verify", action="store_true", default=True)
    solve.add_argument("--no-verify", dest="verify", action="store_false")
    solve.add_argument("--timing", action="store_true", help="include wall time in the report")

    scan = sub.add_parser("scan", help="brute-force grid scan of the gap values")
    scan.add_argument("--input", required=True)
    scan.add_argument("--output")
    scan.add_argument("--mode", choices=sorted(GAP_MODES))
    scan.add_argument("--step", type=float, default=1e-3)
    scan.add_argument("--seed", type=int, default=0, help="reserved for randomized scans")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return run_solve(args)
        return run_scan(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MomentGapsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
