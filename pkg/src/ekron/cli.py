"""Command-line entry point: ``ekron <subcommand> ...``.

Exit codes: 0 ok, 2 zero-difference verdict, 3 hypothesis violated,
64 usage error, 65 data/overflow error, 70 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import generalized, ideals, mertens, residues, sieve, witness
from .extrapolate import FitError
from .field import FieldError, NormOverflowError, parse_field, splitting_type
from .primes import primes_up_to

SCHEMA = "ekron/1"
EX_OK, EX_ZERO, EX_HYPOTHESIS, EX_USAGE, EX_DATA, EX_INTERNAL = 0, 2, 3, 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    field: str
    precision: int = residues.DEFAULT_PREC
    bound: int = 1
    model: str = residues.Model.ONE_TERM.value
    output: str = "json"
    deterministic: bool = True  # nothing here is random

    def __post_init__(self):
        if self.precision < 64:
            raise UsageError("--precision must be >= 64")
        if self.bound < 1:
            raise UsageError("--bound must be >= 1")


def parse_int(text: str) -> int:
    """Integers written plainly, with underscores, or as ``a^b`` / ``aeb``."""
    t = text.strip().replace("_", "")
    m = re.fullmatch(r"(\d+)\s*(?:\^|\*\*)\s*(\d+)", t)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    m = re.fullmatch(r"(\d+)[eE](\d+)", t)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _num(x, prec: int) -> dict:
    digits = max(15, int(prec * 0.30103))
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            x = mpmath.mpf(x.numerator) / x.denominator
        return {"value": mpmath.nstr(mpmath.mpf(x), digits), "precision_bits": prec}


# exact rationals longer than this are reported by size only
EXACT_DIGITS_LIMIT = 1000


def _exact(q: Fraction) -> dict:
    num, den = q.numerator, q.denominator
    if max(num.bit_length(), den.bit_length()) * 0.30103 < EXACT_DIGITS_LIMIT:
        return {"exact": f"{num}/{den}" if den != 1 else str(num)}
    return {"exact": None, "numerator_bits": num.bit_length(), "denominator_bits": den.bit_length()}


def _emit_json(payload: dict, out) -> None:
    json.dump({"schema": SCHEMA, **payload}, out, indent=2, sort_keys=False)
    out.write("\n")


def _inputs(args, *names) -> dict:
    d = {"command": args.command}
    for n in names:
        v = getattr(args, n, None)
        d[n] = v
    return d


def _field(args):
    try:
        return parse_field(args.field)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _omega(field, spec: str | None, rule: str | None) -> generalized.OmegaSet:
    try:
        if rule:
            if spec:
                raise UsageError("give either --omega or --omega-rule, not both")
            return generalized.omega_from_rule(field, rule)
        return generalized.parse_omega(field, spec or "")
    except generalized.OmegaSpecError as exc:
        raise UsageError(str(exc)) from None


def _rho(field, bound: int, prec: int) -> residues.ResidueEstimate:
    return residues.residue(field, bound if bound >= 1000 else None, prec)


# -- subcommands -----------------------------------------------------------


def cmd_field_info(args, out) -> int:
    K = _field(args)
    rows = []
    for p in primes_up_to(args.bound).tolist():
        st = splitting_type(K, p)
        rows.append({"p": p, "e": st.e, "f": st.f, "g": st.g})
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "e", "f", "g"])
        for r in rows:
            w.writerow([r["p"], r["e"], r["f"], r["g"]])
        return EX_OK
    _emit_json(
        {
            "inputs": _inputs(args, "field", "bound"),
            "field": K.spec(),
            "kind": K.kind.value,
            "degree": K.degree,
            "discriminant": K.discriminant,
            "splitting": rows,
        },
        out,
    )
    return EX_OK


def cmd_sieve(args, out) -> int:
    K = _field(args)
    excl = generalized.parse_omega(K, args.exclude or "").members if args.exclude else ()
    table = sieve.build_table(K, args.bound, excl)
    cum = table.cumulative
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["m", "a_m", "A_m"])
    for m in range(1, args.bound + 1):
        w.writerow([m, int(table.counts[m]), int(cum[m])])
    return EX_OK


def _residue_payload(r: residues.ResidueEstimate, prec: int) -> dict:
    return {
        "value": _num(r.value, prec),
        "method": r.method.value,
        "uncertainty": _num(r.uncertainty, prec),
        "bound": r.bound,
        "residual": _num(r.residual, prec) if r.residual is not None else None,
    }


def cmd_residue(args, out) -> int:
    K = _field(args)
    prec = args.precision
    if args.method == "exact":
        r = residues.residue_exact(K, prec)
    elif args.method == "fit":
        r = residues.residue_fit(K, args.bound, prec=prec)
    else:
        r = _rho(K, args.bound, prec)
    _emit_json({"inputs": _inputs(args, "field", "bound", "method", "precision"), **_residue_payload(r, prec), "model": None}, out)
    return EX_OK


def cmd_gamma(args, out) -> int:
    K = _field(args)
    prec = args.precision
    rho = _rho(K, args.bound, prec)
    ek = residues.euler_kronecker(K, args.bound, args.model, rho=rho, prec=prec)
    _emit_json(
        {
            "inputs": _inputs(args, "field", "bound", "model", "precision"),
            "value": _num(ek.gamma_K, prec),
            "method": "extrapolated-limit",
            "uncertainty": _num(ek.residual, prec),
            "bound": ek.bound_used,
            "model": ek.model.value,
            "residual": _num(ek.residual, prec),
            "raw_S_at_bound": _num(ek.raw, prec),
            "c_K": _num(ek.c_K, prec),
            "samples": list(ek.samples),
            "rho": _residue_payload(rho, prec),
        },
        out,
    )
    return EX_OK


def cmd_delta(args, out) -> int:
    K = _field(args)
    om = _omega(K, args.omega, args.omega_rule)
    d = generalized.delta(om, args.bound)
    cs = generalized.convergence_sum(om, args.bound, args.precision)
    _emit_json(
        {
            "inputs": _inputs(args, "field", "bound", "omega", "omega_rule", "precision"),
            "omega": om.describe(),
            "truncation": [P.spec() for P in om.truncate(args.bound)] if cs.count <= generalized.SYMBOLIC_LIMIT else None,
            "truncation_size": cs.count,
            "delta": {**_exact(d.exact), **_num(d.exact, args.precision)},
            "convergence_sum": _num(cs.value, args.precision),
            "convergence_form": cs.form.to_json() if cs.form is not None else None,
        },
        out,
    )
    return EX_OK


def cmd_gamma_omega(args, out) -> int:
    K = _field(args)
    prec = args.precision
    om = _omega(K, args.omega, args.omega_rule)
    rho = _rho(K, args.bound, prec)
    payload = {"inputs": _inputs(args, "field", "bound", "omega", "omega_rule", "model", "method", "precision"), "omega": om.describe()}
    closed = direct = None
    if args.method in ("closed", "both"):
        ek = residues.euler_kronecker(K, args.bound, args.model, rho=rho, prec=prec)
        closed = generalized.gamma_omega_closed(om, args.bound, ek, prec)
        payload["gamma_K"] = _num(ek.gamma_K, prec)
        payload["closed"] = _num(closed, prec)
    if args.method in ("direct", "both"):
        est = generalized.gamma_omega_direct(om, args.bound, rho, args.model, prec)
        direct = est.value
        payload["direct"] = {**_num(direct, prec), "residual": _num(est.residual, prec), "samples": list(est.samples)}
    if closed is not None and direct is not None:
        payload["difference"] = _num(abs(closed - direct), prec)
    d = generalized.delta(om, args.bound)
    payload["delta"] = {**_exact(d.exact), **_num(d.exact, prec)}
    payload["model"] = residues.Model(args.model).value
    payload["bound"] = args.bound
    _emit_json(payload, out)
    return EX_OK


def cmd_verify_identities(args, out) -> int:
    K = _field(args)
    n = failures = 0
    for a in ideals.identity_test_family(K, args.norm_bound, args.max_factors, args.max_exponent, args.universe):
        n += 1
        try:
            ideals.check_mobius_identity(a)
            ideals.check_mangoldt_identity(a)
        except ideals.IdentityViolation as exc:
            failures += 1
            print(str(exc), file=sys.stderr)
    _emit_json(
        {
            "inputs": _inputs(args, "field", "norm_bound", "max_factors", "max_exponent", "universe"),
            "ideals_checked": n,
            "failures": failures,
            "identities": ["mobius_density", "mangoldt_log_norm"],
            "exact": True,
        },
        out,
    )
    return EX_INTERNAL if failures else EX_OK


def cmd_witness(args, out) -> int:
    K = _field(args)
    oi = _omega(K, args.omega_i, None)
    oj = _omega(K, args.omega_j, None)
    cert = witness.witness(oi, oj, args.bound, args.precision)
    payload = {"inputs": _inputs(args, "field", "omega_i", "omega_j", "bound", "precision"), **cert.to_json()}
    if args.crosscheck:
        rho = _rho(K, args.crosscheck_bound, args.precision)
        gi = generalized.gamma_omega_direct(oi, args.crosscheck_bound, rho, args.model, args.precision).value
        gj = generalized.gamma_omega_direct(oj, args.crosscheck_bound, rho, args.model, args.precision).value
        res = witness.numeric_crosscheck(
            cert, gi, gj, generalized.delta(oi, args.crosscheck_bound), generalized.delta(oj, args.crosscheck_bound), args.precision
        )
        payload["crosscheck"] = {"bound": args.crosscheck_bound, "residual": _num(res, args.precision)}
    if args.json or args.format == "json":
        _emit_json(payload, out)
    else:
        out.write(f"{cert.verdict.value}: log alpha = {cert.form!r}\n")
    if not cert.hypothesis_ok:
        return EX_HYPOTHESIS
    return EX_OK if cert.verdict is witness.Verdict.TRANSCENDENTAL_DIFFERENCE else EX_ZERO


def cmd_rosen(args, out) -> int:
    K = _field(args)
    xs = [parse_int(s) for s in args.points.split(",") if s.strip()]
    rho = _rho(K, max(xs) if xs else 1, args.precision)
    rows = mertens.rosen_table(K, xs, rho, args.precision, args.exact_threshold)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "prime_ideals", "delta_exact", "delta", "normalized", "target", "relative_error", "precision_bits"])
    digits = max(15, int(args.precision * 0.30103))
    for r in rows:
        w.writerow(
            [
                r.x,
                r.ideal_count,
                "yes" if r.exact else "no",
                mpmath.nstr(r.delta_value, digits),
                mpmath.nstr(r.normalized, digits),
                mpmath.nstr(r.target, digits),
                mpmath.nstr(r.relative_error, 8),
                args.precision,
            ]
        )
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ekron", description="Euler-Kronecker constants and their generalizations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, bound_default: int | None = 10**6, model: bool = False):
        sp.add_argument("--field", required=True, help='"Q", "Q(sqrt,d)" or "Q(zeta,m)"')
        if bound_default is not None:
            sp.add_argument("--bound", type=parse_int, default=bound_default, help=f"norm bound x (default {bound_default})")
        sp.add_argument("--precision", type=int, default=residues.DEFAULT_PREC, help="working precision in bits (default 128)")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json", help="output format (default json)")
        if model:
            sp.add_argument(
                "--model", choices=[m.value for m in residues.Model], default=residues.Model.ONE_TERM.value,
                help="extrapolation model in t^(-1/n) (default one-term)",
            )

    sp = sub.add_parser("field-info", help="degree, discriminant and splitting of small primes")
    common(sp, 50)
    sp.set_defaults(run=cmd_field_info)

    sp = sub.add_parser("sieve", help="CSV of m, a_m, A(m)")
    common(sp, 100)
    sp.add_argument("--exclude", default="", help='prime ideals to omit, "p:f:index,..."')
    sp.set_defaults(run=cmd_sieve)

    sp = sub.add_parser("residue", help="residue rho_K of the Dedekind zeta function")
    common(sp, 10**6)
    sp.add_argument("--method", choices=["auto", "exact", "fit"], default="auto", help="default auto: exact when available")
    sp.set_defaults(run=cmd_residue)

    sp = sub.add_parser("gamma", help="Euler-Kronecker constant gamma_K")
    common(sp, 10**6, model=True)
    sp.set_defaults(run=cmd_gamma)

    for name, fn in (("delta", cmd_delta), ("gamma-omega", cmd_gamma_omega)):
        sp = sub.add_parser(name, help="delta_K(Omega(x))" if name == "delta" else "generalized constant gamma_K(Omega)")
        common(sp, 10**6, model=(name == "gamma-omega"))
        sp.add_argument("--omega", default=None, help='explicit Omega, "p:f:index,..."')
        sp.add_argument("--omega-rule", default=None, choices=sorted(generalized.RULES), help="Omega given by a rule, truncated at --bound")
        if name == "gamma-omega":
            sp.add_argument("--method", choices=["closed", "direct", "both"], default="both")
        sp.set_defaults(run=fn)

    sp = sub.add_parser("verify-identities", help="exact check of the Mobius and von Mangoldt ideal identities")
    common(sp, None)
    sp.add_argument("--norm-bound", type=parse_int, default=1000, help="prime ideal norms up to this (default 1000)")
    sp.add_argument("--max-factors", type=int, default=4, help="largest support size (default 4)")
    sp.add_argument("--max-exponent", type=int, default=3, help="largest exponent (default 3)")
    sp.add_argument("--universe", type=int, default=8, help="prime ideals combined into multi-prime supports (default 8)")
    sp.set_defaults(run=cmd_verify_identities)

    sp = sub.add_parser("witness", help="exact certificate for gamma(Omega_i)/delta(Omega_i) - gamma(Omega_j)/delta(Omega_j)")
    common(sp, 10**6, model=True)
    sp.add_argument("--omega-i", required=True, help='"p:f:index,..."')
    sp.add_argument("--omega-j", required=True, help='"p:f:index,..."')
    sp.add_argument("--json", action="store_true", help="emit the JSON certificate (default)")
    sp.add_argument("--crosscheck", action="store_true", help="also compare against extrapolated direct values")
    sp.add_argument("--crosscheck-bound", type=parse_int, default=10**6, help="sieve bound for --crosscheck (default 10^6)")
    sp.set_defaults(run=cmd_witness)

    sp = sub.add_parser("rosen", help="CSV of delta_K(all primes <= x) * rho_K * log x against e^-gamma")
    common(sp, None)
    sp.add_argument("--points", default="10^3,10^4,10^5,10^6", help="ascending x values (default 10^3,10^4,10^5,10^6)")
    sp.add_argument("--exact-threshold", type=int, default=mertens.EXACT_THRESHOLD, help="prime-ideal count above which delta is floating (default 10^5)")
    sp.set_defaults(run=cmd_rosen)
    return p


def _bound_of(args) -> int:
    b = getattr(args, "bound", None)
    return 1 if b is None else b


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    threads = os.environ.get("EKRON_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    try:
        args = build_parser().parse_args(argv)
        RunConfig(getattr(args, "field", ""), args.precision, _bound_of(args), getattr(args, "model", "one-term"), args.format)
        buf = io.StringIO()
        code = args.run(args, buf)
        out.write(buf.getvalue())
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EX_USAGE
    except (NormOverflowError, sieve.CountOverflowError, OverflowError) as exc:
        print(f"data error: {exc}", file=err)
        return EX_DATA
    except (FieldError, generalized.OmegaSpecError, argparse.ArgumentTypeError) as exc:
        print(f"usage error: {exc}", file=err)
        return EX_USAGE
    except (FitError, residues.UnsupportedExactResidue, ideals.DivisorCapError, ValueError) as exc:
        print(f"data error: {exc}", file=err)
        return EX_DATA
    except (ideals.IdentityViolation, AssertionError) as exc:
        print(f"internal invariant violation: {exc}", file=err)
        return EX_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
