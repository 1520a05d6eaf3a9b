"""Command-line interface.

Exit code 1 marks a mathematical failure such as a non-ordinary prime or a
failed audit; exit code 2 marks a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .diffop import (
    DegenerateRecurrenceError,
    annihilation_check,
    honda_group_law,
    honda_operator,
    honda_solution,
    pf_operator_1124,
    pf_operator_cyclic,
    series_solution,
)
from .formal_log import beta_table, log_series, signed_pf_series
from .grouplaw import axioms_check, group_law, integrality_report
from .hassewitt import NotOrdinaryError, congruence_check_1, congruence_check_2, frobenius_limit, hasse_witt, hasse_witt_exact
from .laurent import LaurentParseError, TermLimitError
from .oracle import BadReductionError, SupersingularError, crosscheck_unit_root, cubic_ap, torus_point_count
from .padic import NotInvertibleError
from .polytope import HypothesisError, PolytopeError, check_hypotheses, polytope_report


class MathFailure(Exception):
    """A well-formed request whose mathematical answer is a failure verdict."""

    def __init__(self, payload):
        super().__init__("mathematical failure")
        self.payload = payload


def _emit(obj, fmt="json"):
    if isinstance(obj, str):
        sys.stdout.write(obj)
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _poly(args):
    return catalog.resolve(args.poly, args.dim)


def _fractions(text: str) -> list:
    return [Fraction(t.strip()) for t in text.split(",") if t.strip()]


def cmd_newton(args):
    return polytope_report(_poly(args))


def cmd_check(args):
    rep = check_hypotheses(_poly(args)).to_json()
    if not rep["ok"]:
        raise MathFailure(rep)
    return rep


def cmd_betas(args):
    table = beta_table(_poly(args), args.max_nu)
    if args.format == "tsv":
        return table.to_tsv()
    return [{"v": list(v), "w": list(w), "nu": nu, "beta": str(b)} for v, w, nu, b in table.rows()]


def cmd_log(args):
    return log_series(_poly(args), args.degree).to_json()


def cmd_grouplaw(args):
    F = group_law(_poly(args), args.degree)
    out = {"D": F.D, "N": F.N, "series": F.to_json()}
    failed = False
    if args.audit_integrality:
        rep = integrality_report(F)
        out["integrality"] = rep.to_json()
        failed |= not rep.integral
    if args.axioms:
        ax = axioms_check(F)
        out["axioms"] = ax.to_json()
        failed |= not ax.ok
    if failed:
        raise MathFailure(out)
    return out


def cmd_hassewitt(args):
    f = _poly(args)
    if args.exact:
        rows = hasse_witt_exact(f, args.prime, args.power)
        return {"p": args.prime, "s": args.power, "exact": True, "entries": [[str(x) for x in r] for r in rows]}
    out = hasse_witt(f, args.prime, args.power, args.precision).to_json()
    out["s"] = args.power
    return out


def cmd_congruence(args):
    f = _poly(args)
    if args.part == 1:
        rep = congruence_check_1(f, args.prime, args.smax)
    else:
        rep = congruence_check_2(f, args.prime, args.smax, args.precision)
    out = rep.to_json()
    if not rep.passed:
        raise MathFailure(out)
    return out


def cmd_limit(args):
    f = _poly(args)
    out = frobenius_limit(f, args.prime, args.precision).to_json()
    if args.crosscheck:
        if f != catalog.cubic():
            raise ValueError("--crosscheck is only defined for builtin:cubic")
        cc = crosscheck_unit_root(args.prime, args.precision)
        out["crosscheck"] = cc.to_json()
        if not cc.match:
            raise MathFailure(out)
    return out


def cmd_count(args):
    f = _poly(args)
    out = {"p": args.prime, "torus_points": torus_point_count(f, args.prime)}
    if f == catalog.cubic():
        out["a_p"] = cubic_ap(args.prime)
    return out


def cmd_ode_check(args):
    fam = args.family
    D = args.degree
    if fam.startswith("cyclic"):
        d = int(fam.split("-", 1)[1]) if "-" in fam else args.dim
        if d is None:
            raise ValueError("cyclic family needs -d")
        op = pf_operator_cyclic(d)
        g = signed_pf_series(catalog.cyclic(d), (0,) * (d - 1), (0,) * (d - 1), D, signed=not args.unsigned)
        label = f"cyclic-{d}"
    elif fam == "honda":
        if args.S is None or args.N is None:
            raise ValueError("honda family needs --S and --N")
        op = honda_operator(_fractions(args.S), args.N)
        g = honda_solution(_fractions(args.S), args.N, D)
        label = "honda"
    elif fam == "op-1124":
        op = pf_operator_1124()
        g = series_solution(op, D)
        label = "op-1124"
    else:
        raise ValueError(f"unknown family {fam!r}")
    rep = annihilation_check(op, g).to_json()
    out = {"family": label, "operator": op.to_json(), **rep}
    if not rep["annihilated"]:
        raise MathFailure(out)
    return out


def cmd_honda_grouplaw(args):
    F, rep = honda_group_law(_fractions(args.S), args.N, args.degree)
    out = {"S": args.S, "N": args.N, "D": F.D, "denominator_primes": list(rep.denominator_primes),
           "integral_above_N": all(q <= args.N for q in rep.denominator_primes)}
    if args.series:
        out["series"] = F.to_json()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unitroot", description=__doc__.splitlines()[0])
    ap.add_argument("--seed-report", action="store_true", help="print the full reproduction document and exit")
    sub = ap.add_subparsers(dest="command")

    def poly_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-f", "--poly", required=True, help="text, JSON, @file or builtin:<name>")
        p.add_argument("-d", "--dim", type=int, default=None)
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.set_defaults(func=func)
        return p

    poly_cmd("newton", cmd_newton, "Newton polytope and interior points")
    poly_cmd("check", cmd_check, "standing hypotheses on the Newton polytope")
    p = poly_cmd("betas", cmd_betas, "beta(v, w, nu) table")
    p.add_argument("-D", "--max-nu", "--degree", dest="max_nu", type=int, default=12)
    p = poly_cmd("log", cmd_log, "formal logarithm")
    p.add_argument("-D", "--degree", type=int, default=12)
    p = poly_cmd("grouplaw", cmd_grouplaw, "formal group law")
    p.add_argument("-D", "--degree", type=int, default=8)
    p.add_argument("--audit-integrality", action="store_true")
    p.add_argument("--axioms", action="store_true")
    p = poly_cmd("hassewitt", cmd_hassewitt, "higher Hasse-Witt matrix alpha_s")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("-s", "--power", type=int, default=1)
    p.add_argument("-K", "--precision", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="exact integer entries")
    p = poly_cmd("congruence", cmd_congruence, "congruences between Hasse-Witt matrices")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("--part", type=int, choices=(1, 2), default=1)
    p.add_argument("--smax", type=int, default=3)
    p.add_argument("-K", "--precision", type=int, default=None)
    p = poly_cmd("limit", cmd_limit, "unit-root Frobenius matrix mod p^K")
    p.add_argument("-p", "--prime", type=int, required=True)
    p.add_argument("-K", "--precision", type=int, default=4)
    p.add_argument("--crosscheck", action="store_true")
    p = poly_cmd("count", cmd_count, "zeros on the torus over F_p")
    p.add_argument("-p", "--prime", type=int, required=True)

    p = sub.add_parser("ode-check", help="annihilation of a series by a Picard-Fuchs or Honda operator")
    p.add_argument("--family", required=True, help="cyclic, cyclic-<d>, honda or op-1124")
    p.add_argument("-d", "--dim", type=int, default=None)
    p.add_argument("-D", "--degree", type=int, default=60)
    p.add_argument("--S", default=None, help="comma-separated fractions, e.g. 1/4,3/4")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--unsigned", action="store_true", help="drop the alternating sign (negative control)")
    p.set_defaults(func=cmd_ode_check)

    p = sub.add_parser("honda-grouplaw", help="Honda's formal group law and its denominator primes")
    p.add_argument("--S", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("-D", "--degree", type=int, default=20)
    p.add_argument("--series", action="store_true")
    p.set_defaults(func=cmd_honda_grouplaw)
    return ap


MATH_ERRORS = (HypothesisError, NotOrdinaryError, NotInvertibleError, SupersingularError, BadReductionError, DegenerateRecurrenceError)
USAGE_ERRORS = (LaurentParseError, PolytopeError, TermLimitError, ValueError, KeyError, OSError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed_report:
        from .report import seed_report

        _emit(seed_report())
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        _emit(args.func(args), getattr(args, "format", "json"))
    except MathFailure as exc:
        _emit(exc.payload)
        return 1
    except MATH_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except USAGE_ERRORS as exc:
        print(f"unitroot: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
