"""Command-line front end.

Subcommands: nc (enumerate non-crossing partitions), kac (validate a spec),
trace (evaluate a trace on a word), factor (tower factor parameters), verify
(run a verification suite), mp (Marchenko-Pastur moments).  Exact values are
always printed alongside decimal approximations; --json emits deterministic
machine output.  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .algnum import AlgebraicReal
from .catalog import BUILTIN_NAMES, builtin
from .errors import CapExceeded, KacValidationError, UnsupportedShapeError
from .gjs import Word, X, kac_letter, tau1, tau2
from .kac import IrrepData, KacAlgebra, kac_from_json, kac_to_json, validate, validate_irreps
from .mp_oracle import FreePoissonParams, QuadratureError, atom_mass, mp_moment_with_error
from .ncpart import enumerate_nc
from .vncalc import m0_expression, m1_expression, m2_expression
from . import verify as verify_suites

USAGE_ERROR, VERIFY_FAILURE, CAP_ERROR = 2, 1, 3


class UsageError(Exception):
    pass


def _max_word_len() -> int:
    raw = os.environ.get("GJS_MAX_WORD_LEN")
    return int(raw) if raw else 12


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines:
            print(line)


def _decimal(x: float) -> str:
    return f"{x:.15g}"


def _value_json(v: AlgebraicReal) -> dict:
    out = {"exact": v.to_json(), "pretty": str(v)}
    if v.is_real():
        out["approx"] = _decimal(float(v))
    else:
        z = v.to_complex()
        out["approx"] = [_decimal(z.real), _decimal(z.imag)]
    return out


def _load_spec(name: str) -> tuple[KacAlgebra, IrrepData]:
    if os.path.exists(name):
        return kac_from_json(name)
    try:
        return builtin(name)
    except KeyError:
        raise UsageError(
            f"spec {name!r} is neither a file nor a built-in ({', '.join(BUILTIN_NAMES)})"
        ) from None


def _expr_json(expr) -> dict:
    payload = {"expr": expr.to_json(), "pretty": str(expr)}
    if expr.is_factor():
        atom = expr.summands[0][0]
        if hasattr(atom, "r"):
            payload["parameter_approx"] = _decimal(float(atom.r))
    return payload


def cmd_nc(args) -> int:
    parts = enumerate_nc(args.n)
    payload = {
        "n": args.n,
        "count": len(parts),
        "partitions": [p.to_json()["classes"] for p in parts],
    }
    lines = [f"NC({args.n}): {len(parts)} partitions"]
    if not args.count_only:
        lines += [f"  {p}" for p in parts]
    else:
        payload.pop("partitions")
    _emit(args, payload, lines)
    return 0


def cmd_kac(args) -> int:
    k, irreps = _load_spec(args.spec)
    report = validate(k)
    report2 = validate_irreps(k, irreps)
    checks = report.to_json() + report2.to_json()
    payload = {
        "name": k.name,
        "dim": k.dim,
        "profile": list(irreps.dims),
        "checks": checks,
        "ok": report.ok and report2.ok,
    }
    lines = [f"{k.name}: dim {k.dim}, irrep profile {list(irreps.dims)}"]
    lines += [
        f"  [{c['status'].upper():4}] {c['check']}" + (f"  ({c['witness']})" if "witness" in c else "")
        for c in checks
    ]
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump(kac_to_json(k, irreps), fh, sort_keys=True)
        lines.append(f"spec written to {args.dump}")
        payload["dumped_to"] = args.dump
    _emit(args, payload, lines)
    return 0 if payload["ok"] else VERIFY_FAILURE


def _parse_word(k: KacAlgebra, text: str, side: int) -> tuple[list, Word | None]:
    labels = [w.strip() for w in text.split(",") if w.strip()]
    if not labels:
        raise UsageError("empty word")
    letters = []
    for lab in labels:
        if lab == "X":
            if side == 1:
                raise UsageError("the X generator only lives on side 2")
            letters.append(X)
        else:
            try:
                vec = k.element(lab)
            except ValueError:
                raise UsageError(f"unknown basis label {lab!r} (basis: {', '.join(k.basis)})") from None
            letters.append(kac_letter(vec))
    if side == 1:
        return [l.coeffs for l in letters], None
    return [], Word(tuple(letters))


def cmd_trace(args) -> int:
    k, irreps = _load_spec(args.spec)
    vectors, word = _parse_word(k, args.word, args.side)
    cap = _max_word_len()
    if args.side == 1:
        value = tau1(k, irreps, vectors, max_len=cap)
    else:
        value = tau2(k, word, max_len=cap)
    payload = {"spec": k.name, "word": args.word, "side": args.side, "value": _value_json(value)}
    _emit(args, payload, [f"trace_{args.side}({args.word}) = {value}  ~ {payload['value']['approx']}"])
    return 0


def _parse_profile(args) -> list[int]:
    given = [x for x in (args.n, args.profile, args.spec) if x]
    if len(given) != 1:
        raise UsageError("specify exactly one of --n, --profile, --spec")
    if args.n is not None:
        if args.n <= 1:
            raise UsageError("dimension must exceed 1")
        return [1] * args.n
    if args.profile:
        try:
            profile = [int(x) for x in args.profile.split(",")]
        except ValueError:
            raise UsageError(f"bad profile {args.profile!r}") from None
        if not profile or any(d < 1 for d in profile):
            raise UsageError("profile entries must be positive integers")
        if sum(d * d for d in profile) <= 1:
            raise UsageError("profile dimension must exceed 1")
        return profile
    _, irreps = _load_spec(args.spec)
    return list(irreps.dims)


def cmd_factor(args) -> int:
    profile = _parse_profile(args)
    n = sum(d * d for d in profile)
    exprs = {
        "M0": m0_expression(profile),
        "M1": m1_expression(profile),
        "M2": m2_expression(profile),
    }
    payload = {"n": n, "profile": profile}
    payload.update({key: _expr_json(e) for key, e in exprs.items()})
    lines = [f"n = {n}, profile = {profile}"] + [
        f"  {key} = {e}" + (f"  (parameter ~ {_expr_json(e).get('parameter_approx', '')})" if e.is_factor() else "")
        for key, e in exprs.items()
    ]
    _emit(args, payload, lines)
    return 0


SUITES = ("euler", "mobius", "rcyclic", "freeness", "tau2-routes", "dykema-boundaries", "mp")


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "euler":
        report = verify_suites.euler_suite(max_n=args.max or 8)
    elif suite == "mobius":
        report = verify_suites.mobius_suite(max_n=args.max or 5, seeds=args.samples or 10)
    elif suite == "rcyclic":
        report = verify_suites.rcyclic_suite(args.spec or "dual-s3", t_max=args.max or 4)
    elif suite == "freeness":
        report = verify_suites.freeness_suite(args.spec or "dual-s3", t_max=args.max or 4)
    elif suite == "tau2-routes":
        spec = args.spec or "c2"
        k, _ = _load_spec(spec)
        exhaustive = k.dim <= 2
        report = verify_suites.tau2_routes_suite(
            (k, _),
            max_len=args.max or 5,
            samples=args.samples or (0 if exhaustive else 100),
            seed=args.seed,
            exhaustive=exhaustive,
        )
    elif suite == "dykema-boundaries":
        report = verify_suites.dykema_boundaries_suite()
    elif suite == "mp":
        report = verify_suites.mp_suite(k_max=args.max or 10)
    else:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    payload = {"suite": suite, "ok": report.ok, "checks": report.to_json()}
    lines = [
        f"[{c['status'].upper():4}] {c['check']}" + (f"  ({c['witness']})" if "witness" in c else "")
        for c in report.checks
    ]
    lines.append(f"suite {suite}: {'PASS' if report.ok else 'FAIL'}")
    _emit(args, payload, lines)
    return 0 if report.ok else VERIFY_FAILURE


def cmd_mp(args) -> int:
    params = FreePoissonParams(args.rate, args.jump)
    value, err = mp_moment_with_error(params, args.k, tol=args.tol)
    payload = {
        "rate": args.rate,
        "jump": args.jump,
        "k": args.k,
        "moment": value,
        "error_bound": err,
        "atom_mass": atom_mass(params),
    }
    _emit(
        args,
        payload,
        [f"moment_{args.k} = {_decimal(value)} (error bound {err:.2e}, atom mass {_decimal(atom_mass(params))})"],
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gjsfree",
        description="Exact free-probability combinatorics of the GJS tower over finite Kac algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nc", help="enumerate non-crossing partitions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_nc)

    p = sub.add_parser("kac", help="validate a Kac algebra spec")
    p.add_argument("--spec", required=True, help="built-in name or JSON file")
    p.add_argument("--dump", help="write the spec back out as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_kac)

    p = sub.add_parser("trace", help="evaluate a trace on a generator word")
    p.add_argument("--spec", required=True)
    p.add_argument("--word", required=True, help="comma-separated letters: basis labels or X")
    p.add_argument("--side", type=int, choices=(1, 2), default=2)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("factor", help="tower factor parameters M0, M1, M2")
    p.add_argument("--n", type=int)
    p.add_argument("--profile", help="comma-separated irrep dimensions")
    p.add_argument("--spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max", type=int, help="size/order cap for the suite")
    p.add_argument("--spec")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("mp", help="Marchenko-Pastur moment oracle")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--jump", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mp)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (KacValidationError, UnsupportedShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (CapExceeded, QuadratureError) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return CAP_ERROR


if __name__ == "__main__":
    sys.exit(main())
