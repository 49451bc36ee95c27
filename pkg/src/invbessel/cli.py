"""Command-line front end: ``invbessel <command> ...``.

Exit codes: 0 success, 2 domain or range error, 3 parse error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import __version__
from .constexpr import ConstExpr
from .errors import InvBesselError, NoSuchExtremum, ParseError
from .extrema import branch_interval, infsupum
from .inverses import inverse
from .lambert import lambert_w, w_via_k0
from .laurent import Family, coefficients, derivative, evaluate, rayleigh_coefficients
from .parser import parse_const
from .recognizer import FloatInput, SearchConfig, recognize
from .solver import Limits, solve_equation

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v):
    """JSON-safe float: repr round-trips exactly; non-finite values become strings."""
    if v is None:
        return None
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _const_arg(text: str) -> ConstExpr:
    return parse_const(text)


def _family(text: str) -> Family:
    try:
        return Family.coerce(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("order must be >= 0")
    return n


class _Out:
    def __init__(self, args):
        self.json = args.format == "json"
        self.digits = args.digits

    def f(self, v) -> str:
        if v is None:
            return "-"
        v = float(v)
        if math.isnan(v):
            return "nan"
        return f"{v:.{self.digits}g}"


# ---- commands -----------------------------------------------------------


def cmd_eval(args, out: _Out):
    x = _const_arg(args.x).value
    fn = derivative if args.derivative else evaluate
    v = fn(args.family, args.n, x, direction=args.direction)
    if out.json:
        return {"command": "eval", "family": args.family.value, "n": args.n, "x": _num(x),
                "derivative": args.derivative, "value": _num(v)}
    print(out.f(v))


def cmd_table(args, out: _Out):
    row = (rayleigh_coefficients if args.rayleigh else coefficients)(args.family, args.n)
    if out.json:
        return {"command": "table", "family": args.family.value, "n": args.n,
                "factors": list(args.family.factors), "pcoeffs": list(row.pcoeffs),
                "qcoeffs": list(row.qcoeffs), "text": str(row)}
    print(row)


def cmd_extrema(args, out: _Out):
    if args.m_from > args.m_to:
        raise UsageError("--from must not exceed --to")
    recs = []
    for m in range(args.m_from, args.m_to + 1):
        try:
            recs.append(infsupum(args.family, args.n, m, include_boundaries=args.boundaries))
        except NoSuchExtremum:
            continue
    if not recs:
        raise NoSuchExtremum(f"{args.family.symbol}_{args.n} has no infsupum numbered {args.m_from}..{args.m_to}")
    if out.json:
        return {"command": "extrema", "family": args.family.value, "n": args.n, "records": [
            {"m": r.m, "kind": r.kind, "abscissa": _num(r.abscissa), "ordinate": _num(r.ordinate),
             "ordinate_above": _num(r.ordinate_above), "ordinate_below": _num(r.ordinate_below)}
            for r in recs]}
    print(f"{'m':>4}  {'abscissa':>14}  ordinate")
    for r in recs:
        if r.kind == "pole":
            y = f"{out.f(r.ordinate_above)} from above, {out.f(r.ordinate_below)} from below"
        else:
            y = out.f(r.ordinate)
        print(f"{r.m:>4}  {out.f(r.abscissa):>14}  {y}{'  (limit)' if r.kind == 'boundary' else ''}")


def cmd_inverse(args, out: _Out):
    c0 = _const_arg(args.c0)
    x = inverse(args.family, args.n, args.b, c0.value)
    if out.json:
        iv = branch_interval(args.family, args.n, args.b)
        return {"command": "inverse", "family": args.family.value, "n": args.n, "b": args.b,
                "c0": str(c0), "c0_value": _num(c0.value), "x": _num(x),
                "interval": {"left": _num(iv.left), "right": _num(iv.right),
                             "lo": _num(iv.lo), "hi": _num(iv.hi), "increasing": iv.increasing}}
    print(out.f(x))


def cmd_solve(args, out: _Out):
    res = solve_equation(args.equation, Limits(args.max_branch, args.max_x))
    nf = res.normal_form
    if out.json:
        return {"command": "solve", "equation": args.equation,
                "normal_form": {"family": nf.family.value, "n": nf.n, "lambda": str(nf.lam),
                                "c0": str(nf.c0), "c0_value": _num(nf.c0.value), "shift": nf.shift,
                                "text": str(nf)},
                "solutions": [{"branch": s.branch, "closed_form": s.tag, "x": _num(s.value),
                               "residual": _num(s.residual)} for s in res],
                "truncated": res.truncated, "zero_caveat": res.zero_caveat}
    print(f"normal form: {nf}   (multiplied by x^{nf.shift}, scaled by {nf.lam})")
    if not res.solutions:
        print("no real solutions")
    for s in res:
        print(f"  x = {s.tag} = {out.f(s.value)}")
    if res.truncated:
        print(f"  ... more solutions lie beyond |b| <= {args.max_branch}")
    if res.zero_caveat:
        print(f"  note: {res.zero_caveat}")


def cmd_recognize(args, out: _Out):
    inp = FloatInput(args.decimal)
    cfg = SearchConfig(max_order=args.max_order, max_abs_branch=args.max_branch, max_den=args.max_den,
                       multipliers=not args.no_multipliers, min_margin=args.min_margin)
    cands = recognize(inp, cfg)[: args.top]
    if out.json:
        return {"command": "recognize", "input": inp.text, "precision": inp.precision, "candidates": [
            {"family": c.family.value, "n": c.n, "b": c.b, "c0": str(c.c0), "closed_form": str(c),
             "value": _num(c.value), "agreement": _num(c.agreement), "entropy10": _num(c.entropy10),
             "margin": _num(c.margin)} for c in cands]}
    if not cands:
        print("no candidates")
    for c in cands:
        print(f"{str(c):<40} margin {c.margin:6.2f}  agreement {c.agreement:5.2f}  entropy10 {c.entropy10:5.2f}")


def cmd_lambert(args, out: _Out):
    d0 = _const_arg(args.d0).value
    w = (w_via_k0 if args.via_k0 else lambert_w)(args.branch, d0)
    if out.json:
        return {"command": "lambert", "branch": args.branch, "d0": _num(d0), "w": _num(w),
                "method": "k0" if args.via_k0 else "halley"}
    print(out.f(w))


def cmd_sample(args, out: _Out):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    a, b = _const_arg(args.x_from).value, _const_arg(args.x_to).value
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["x", "f"])
    for i in range(args.points):
        x = a + (b - a) * i / (args.points - 1)
        try:
            y = evaluate(args.family, args.n, x)
        except InvBesselError:
            y = math.nan
        w.writerow([repr(x), repr(y)])


# ---- argument parsing ---------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--digits", type=int, default=6, help="significant digits in human output")

    p = _Parser(prog="invbessel", description="Spherical Bessel functions and their real inverses.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fam_n(sp):
        sp.add_argument("family", type=_family, help="Y, J, I or K")
        sp.add_argument("n", type=_order)

    sp = sub.add_parser("eval", parents=[common], help="evaluate f_n(x)")
    fam_n(sp)
    sp.add_argument("x", help="abscissa (a constant expression such as 2*pi)")
    sp.add_argument("--derivative", action="store_true")
    sp.add_argument("--direction", choices=("above", "below"), help="one-sided limit at a pole")
    sp.set_defaults(run=cmd_eval)

    sp = sub.add_parser("table", parents=[common], help="print the exact Laurent row")
    fam_n(sp)
    sp.add_argument("--rayleigh", action="store_true", help="derive the row from the Rayleigh operator")
    sp.set_defaults(run=cmd_table)

    sp = sub.add_parser("extrema", parents=[common], help="list infsupum records")
    fam_n(sp)
    sp.add_argument("--from", dest="m_from", type=int, default=-2)
    sp.add_argument("--to", dest="m_to", type=int, default=2)
    sp.add_argument("--boundaries", action="store_true", help="include the limits at +-infinity")
    sp.set_defaults(run=cmd_extrema)

    sp = sub.add_parser("inverse", parents=[common], help="inverse_b(f_n)(c0)")
    fam_n(sp)
    sp.add_argument("b", type=int)
    sp.add_argument("c0", help="target ordinate (a constant expression)")
    sp.set_defaults(run=cmd_inverse)

    sp = sub.add_parser("solve", parents=[common], help="solve an equation in x")
    sp.add_argument("equation")
    sp.add_argument("--max-branch", type=int, default=64)
    sp.add_argument("--max-x", type=float, default=None)
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("recognize", parents=[common], help="find inverse-Bessel closed forms")
    sp.add_argument("decimal")
    sp.add_argument("--max-order", type=int, default=3)
    sp.add_argument("--max-den", type=int, default=1000)
    sp.add_argument("--max-branch", type=int, default=8)
    sp.add_argument("--min-margin", type=float, default=0.0)
    sp.add_argument("--no-multipliers", action="store_true", help="rationals only; no pi, 1/pi or log 2")
    sp.add_argument("--top", type=int, default=10)
    sp.set_defaults(run=cmd_recognize)

    sp = sub.add_parser("lambert", parents=[common], help="Lambert W")
    sp.add_argument("branch", type=int, choices=(0, -1))
    sp.add_argument("d0")
    sp.add_argument("--via-k0", action="store_true", help="compute through the inverse of k_0")
    sp.set_defaults(run=cmd_lambert)

    sp = sub.add_parser("sample", help="CSV samples x,f for plotting")
    fam_n(sp)
    sp.add_argument("--from", dest="x_from", required=True)
    sp.add_argument("--to", dest="x_to", required=True)
    sp.add_argument("--points", type=int, default=200)
    sp.set_defaults(run=cmd_sample, format="csv", digits=17)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args)
    try:
        doc = args.run(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"invbessel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        _report(out, exc, f"parse error at offset {exc.offset}\n{exc.caret()}")
        return EXIT_PARSE
    except (InvBesselError, ValueError, OverflowError) as exc:
        _report(out, exc, str(exc))
        return EXIT_DOMAIN
    if doc is not None:
        print(json.dumps(doc))
    return EXIT_OK


def _report(out: _Out, exc: Exception, text: str):
    if out.json:
        doc = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            doc["offset"] = exc.offset
        print(json.dumps(doc))
    print(f"invbessel: {text}", file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
