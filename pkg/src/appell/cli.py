"""Command-line front end: single evaluations and seeded identity-suite runs.

Exit codes: 0 success, 1 verification failures, 2 usage, 3 domain or
parameter error (a JSON reason is written to stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

from . import extended, integrals, verify
from .core import EvaluationOptions, gauss_2f1
from .errors import AppellError
from .series import F1, F2, F3, F4, SIGNATURES, eval_appell
from .transforms import eval_auto

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _floats(text: str | None, what: str) -> list[float]:
    if text is None or text.strip() == "":
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of numbers") from None


def _arity(name: str, got: list, want: int, what: str = "parameters"):
    if len(got) != want:
        raise UsageError(f"{name} takes {want} {what}, got {len(got)}")


def _result(name: str, res, **extra) -> dict:
    out = {"name": name}
    out.update(asdict(res))
    out.update(extra)
    return out


def _lauricella(which: str, values: list[float], x: list[float]) -> extended.LauricellaParams:
    n = len(x)
    if n < 1:
        raise UsageError(f"{which} needs at least one argument in --point")
    sizes = [n if vec else 1 for vec in extended.LAURICELLA_VECTORS[which]]
    _arity(which, values, sum(sizes))
    parts, i = [], 0
    for vec, size in zip(extended.LAURICELLA_VECTORS[which], sizes):
        chunk = values[i:i + size]
        parts.append(tuple(chunk) if vec else chunk[0])
        i += size
    return extended.LauricellaParams(which, *parts, x=tuple(x))


def evaluate(name: str, values: list[float], point: list[float], opts: EvaluationOptions) -> dict:
    key = name.lower()
    if key in ("f1", "f2", "f3", "f4"):
        family = key.upper()
        _arity(name, values, len(SIGNATURES[family]))
        _arity(name, point, 2, "point coordinates")
        params = {"F1": F1, "F2": F2, "F3": F3, "F4": F4}[family](*values)
        res = eval_auto(params, point, opts) if opts.strategy == "auto" else eval_appell(params, point, opts)
        return _result(name, res)
    if key == "2f1":
        _arity(name, values, 3)
        _arity(name, point, 1, "point coordinates")
        return _result(name, gauss_2f1(*values, point[0], opts))
    if key in ("g1", "h3", "h7"):
        which = key.upper()
        _arity(name, values, len(extended.HORN_SIGNATURES[which]))
        _arity(name, point, 2, "point coordinates")
        return _result(name, extended.eval_horn(extended.HornParams(which, tuple(values)), point, opts))
    if key in ("fa", "fb", "fc", "fd"):
        lp = _lauricella(key.upper(), values, point)
        return _result(name, extended.eval_lauricella(lp, opts))
    if key.startswith("elliptic-"):
        kind = name.split("-", 1)[1]
        kind = {"f": "F", "e": "E", "pi": "Pi"}.get(kind.lower())
        if kind is None:
            raise UsageError("elliptic kinds are elliptic-F, elliptic-E and elliptic-Pi")
        _arity(name, values, 2)
        args = (integrals.EllipticArgs(phi=values[0], k=values[1]) if kind != "Pi"
                else integrals.EllipticArgs(n=values[0], k=values[1]))
        quad, series = integrals.elliptic(kind, args)
        return {"name": name, "value": quad, "quadrature": quad, "f1_based": series,
                "difference": abs(quad - series), "strategy": "integral"}
    if key in extended.SUMMATIONS:
        _arity(name, values, 5)
        spec = extended.summation_spec(key, *values)
        closed = extended.kdf_summation(key, *values)
        res = extended.eval_kdf_unit(spec)
        return _result(name, res, closed_form=closed)
    raise UsageError(f"unknown function {name!r}")


def _print_result(out: dict, as_json: bool):
    if as_json:
        print(json.dumps(out))
        return
    for k, v in out.items():
        print(f"{k}: {v!r}" if isinstance(v, float) else f"{k}: {v}")


def _fail(exc: Exception) -> int:
    kind = type(exc).__name__
    print(json.dumps({"error": kind, "reason": str(exc)}), file=sys.stderr)
    return EXIT_DOMAIN


def cmd_eval(args) -> int:
    values = _floats(args.params, "--params")
    point = _floats(args.point, "--point")
    opts = EvaluationOptions(tol=args.tol, strategy=args.strategy)
    try:
        out = evaluate(args.name, values, point, opts)
    except AppellError as exc:
        return _fail(exc)
    _print_result(out, args.json)
    return EXIT_OK


def _overrides(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items or []:
        suite, sep, tol = item.partition("=")
        if not sep:
            raise UsageError(f"--tol-override expects suite=T, got {item!r}")
        try:
            out[suite] = float(tol)
        except ValueError:
            raise UsageError(f"bad tolerance in {item!r}") from None
    return out


def cmd_verify(args) -> int:
    suites = tuple(s for s in (args.suites or "").split(",") if s)
    try:
        config = verify.VerificationRunConfig(
            suites=suites,
            draws_per_identity=args.draws,
            seed=verify.default_seed() if args.seed is None else args.seed,
            tolerance_overrides=_overrides(args.tol_override),
            output_format=args.format,
            strict_paper=args.strict_paper,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = verify.run_verification(config)
    text = verify.render_report(verify.build_report(config, reports), config.output_format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    stream = sys.stderr if not args.out else sys.stdout
    for r in reports:
        status = "PASS" if r.passed else ("DIFF" if r.diagnostic else "FAIL")
        worst = r.max_rel_residual
        print(f"{status} {r.suite}/{r.identity_id} max={worst:.3g} tol={r.tolerance:g}"
              + (f" failures={r.failures}" if r.failures else ""), file=stream)
    return verify.exit_status(reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="appell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one function")
    ev.add_argument("name", help="f1..f4, 2f1, g1, h3, h7, fa..fd, elliptic-F/E/Pi, "
                                 "karlsson, pitre_vdj_1, pitre_vdj_2")
    ev.add_argument("--params", required=True, help="comma-separated parameters (use --params=-1,... for a leading minus)")
    ev.add_argument("--point", default="", help="comma-separated arguments")
    ev.add_argument("--tol", type=float, default=1e-12)
    ev.add_argument("--strategy", choices=("direct", "auto"), default="direct")
    ev.add_argument("--json", action="store_true", help="print one JSON object")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="run seeded identity suites")
    ve.add_argument("--suites", default="", help=f"comma-separated subset of {', '.join(verify.SUITE_NAMES)}")
    ve.add_argument("--draws", type=int, default=10)
    ve.add_argument("--seed", type=int, default=None, help=f"master seed (default ${verify.SEED_ENV} or {verify.DEFAULT_SEED})")
    ve.add_argument("--out", default=None, help="report path (stdout when omitted)")
    ve.add_argument("--format", choices=("json", "csv"), default="json")
    ve.add_argument("--strict-paper", action="store_true",
                    help="also run the printed-reading variants as diagnostic rows")
    ve.add_argument("--tol-override", action="append", metavar="SUITE=T")
    ve.add_argument("--jobs", type=int, default=1)
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "eval" and not (math.isfinite(args.tol) and args.tol > 0):
        parser.print_usage(sys.stderr)
        print("appell: error: --tol must be a positive number", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"appell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
