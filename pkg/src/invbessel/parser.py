"""Text front end: equations in x and exact constant expressions.

Grammar (``^`` binds tightest, then unary minus, then ``*``, ``/`` and
juxtaposition left to right, then ``+`` and ``-``)::

    equation := expr "=" expr
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/")? unary)*
    unary    := "-" unary | power
    power    := primary ("^" unary)?
    primary  := number | "x" | "pi" | "e" | name "(" expr ")" | "(" expr ")"
              | "inverse_" b "(" f "_" n ")" "(" expr ")"

Functions of x: cos, sin, cosh, sinh, tan, cot, and exp(-x) (also written
e^(-x)).  Constant functions: log, sqrt.  Decimal literals are read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .constexpr import ConstExpr, add, const, div, func, inverse_node, mul, neg, sub, symbol
from .errors import DomainError, NotTransformable, ParseError, UnsupportedFunction

__all__ = ["RawEquation", "Term", "Token", "parse_const", "parse_equation", "tokenize"]

TRIG = ("cos", "sin", "cosh", "sinh")
FACTORS = TRIG + ("exp", "one")
_X_FUNCS = TRIG + ("tan", "cot", "exp")
_CONST_FUNCS = ("log", "sqrt")
_KNOWN = _X_FUNCS + _CONST_FUNCS + ("x", "pi", "e", "inverse")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<inv>inverse_-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*|π)
  | (?P<op>[-+*/^=−·×])
  | (?P<paren>[()])
    """,
    re.VERBOSE,
)
_OP_ALIASES = {"−": "-", "·": "*", "×": "*"}


@dataclass(frozen=True)
class Token:
    kind: str  # number, name, operator, paren, end
    lexeme: str
    position: int


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; the last token has kind ``end``."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        lex = m.group()
        if kind == "inv":
            out.append(Token("name", lex, pos))
        elif kind == "op":
            out.append(Token("operator", _OP_ALIASES.get(lex, lex), pos))
        elif kind != "ws":
            out.append(Token(kind, "pi" if lex == "π" else lex, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


@dataclass(frozen=True, order=True)
class Term:
    """coef * x^power * factor(x); ``factor`` is one of cos, sin, cosh, sinh, exp, one."""

    coef: Fraction
    power: int
    factor: str

    def __str__(self) -> str:
        return ("-" if self.coef < 0 else "") + _format_term(self)


def _format_term(t: Term) -> str:
    num, den = [], []
    c = abs(t.coef)
    if c.numerator != 1 or (t.factor == "one" and t.power == 0):
        num.append(str(c.numerator))
    if t.power > 0:
        num.append("x" if t.power == 1 else f"x^{t.power}")
    if t.factor != "one":
        num.append("exp(-x)" if t.factor == "exp" else f"{t.factor}(x)")
    if c.denominator != 1:
        den.append(str(c.denominator))
    if t.power < 0:
        den.append("x" if t.power == -1 else f"x^{-t.power}")
    s = "*".join(num) or "1"
    if den:
        d = "*".join(den)
        s += f"/({d})" if len(den) > 1 else f"/{d}"
    return s


@dataclass(frozen=True)
class RawEquation:
    """sum(left) = right, with every x-dependent term on the left.

    ``multiplier`` records a cos or sin factor applied to rewrite tan or cot;
    solutions where it vanishes are not solutions of the text as written.
    """

    left: tuple[Term, ...]
    right: ConstExpr
    multiplier: str | None = None
    source: str | None = field(default=None, compare=False)

    def __str__(self) -> str:
        if not self.left:
            return f"0 = {self.right}"
        parts = []
        for i, t in enumerate(self.left):
            body = _format_term(t)
            if i == 0:
                parts.append(("-" if t.coef < 0 else "") + body)
            else:
                parts.append((" - " if t.coef < 0 else " + ") + body)
        return "".join(parts) + f" = {self.right}"

    def residual(self, x: float) -> float:
        """Left side minus right side at x, in binary64."""
        import math

        fn = {
            "cos": math.cos,
            "sin": math.sin,
            "cosh": math.cosh,
            "sinh": math.sinh,
            "exp": lambda v: math.exp(-v),
            "one": lambda v: 1.0,
        }
        s = 0.0
        for t in self.left:
            s += float(t.coef) * x**t.power * fn[t.factor](x)
        return s - self.right.value

    def scale_of(self, x: float) -> float:
        """Magnitude of the largest contribution at x, for relative residuals."""
        import math

        fn = {
            "cos": math.cos,
            "sin": math.sin,
            "cosh": math.cosh,
            "sinh": math.sinh,
            "exp": lambda v: math.exp(-v),
            "one": lambda v: 1.0,
        }
        parts = [abs(float(t.coef) * x**t.power * fn[t.factor](x)) for t in self.left]
        return max(parts + [abs(self.right.value)])


# ---- expression values during parsing -----------------------------------


@dataclass
class _Val:
    """A linear combination of (power, factor) monomials plus a constant."""

    terms: dict
    const: ConstExpr

    @classmethod
    def of_const(cls, c: ConstExpr) -> "_Val":
        return cls({}, c)

    @classmethod
    def mono(cls, power: int, factor: str, coef=Fraction(1)) -> "_Val":
        return cls({(power, factor): Fraction(coef)}, const(0))

    @property
    def is_const(self) -> bool:
        return not self.terms


class _Parser:
    def __init__(self, text: str, symbols: dict | None, allow_x: bool):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.symbols = dict(symbols or {})
        self.allow_x = allow_x

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, pos=None, cls=ParseError):
        return cls(msg, self.tok.position if pos is None else pos, self.text)

    def expect(self, kind, lexeme=None) -> Token:
        t = self.tok
        if t.kind != kind or (lexeme is not None and t.lexeme != lexeme):
            want = repr(lexeme) if lexeme else kind
            got = "end of input" if t.kind == "end" else repr(t.lexeme)
            raise self.error(f"expected {want}, found {got}")
        return self.advance()

    def is_op(self, *ops) -> bool:
        return self.tok.kind == "operator" and self.tok.lexeme in ops

    # grammar
    def expr(self) -> _Val:
        v = self.term()
        while self.is_op("+", "-"):
            op = self.advance()
            w = self.term()
            v = self._addsub(v, w, op.lexeme, op.position)
        return v

    def term(self) -> _Val:
        v = self.unary()
        while True:
            if self.is_op("*", "/"):
                op = self.advance()
                w = self.unary()
                v = self._mul(v, w, op.position) if op.lexeme == "*" else self._div(v, w, op.position)
            elif self.tok.kind in ("number", "name") or (self.tok.kind == "paren" and self.tok.lexeme == "("):
                pos = self.tok.position
                v = self._mul(v, self.unary(), pos)
            else:
                return v

    def unary(self) -> _Val:
        if self.is_op("-"):
            self.advance()
            return self._negate(self.unary())
        if self.is_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> _Val:
        start = self.tok.position
        if self.tok.kind == "name" and self.tok.lexeme == "e" and self._peek_is_op(1, "^"):
            self.advance()
            self.advance()
            pos = self.tok.position
            return self._exp_of(self.unary(), pos, spelled="e^")
        base = self.primary()
        if not self.is_op("^"):
            return base
        op = self.advance()
        ex = self.unary()
        return self._pow(base, ex, start, op.position)

    def _peek_is_op(self, k, lexeme) -> bool:
        t = self.toks[min(self.i + k, len(self.toks) - 1)]
        return t.kind == "operator" and t.lexeme == lexeme

    def primary(self) -> _Val:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return _Val.of_const(const(Fraction(t.lexeme)))
        if t.kind == "paren" and t.lexeme == "(":
            self.advance()
            v = self.expr()
            self.expect("paren", ")")
            return v
        if t.kind == "name":
            return self.named()
        got = "end of input" if t.kind == "end" else repr(t.lexeme)
        raise self.error(f"expected a number, name or '(', found {got}")

    def named(self) -> _Val:
        t = self.advance()
        name = t.lexeme
        if name.startswith("inverse_"):
            return self.inverse_call(t)
        if name == "x":
            if not self.allow_x:
                raise self.error("x is not allowed in a constant expression", t.position)
            return _Val.mono(1, "one")
        if name == "pi" or name == "e":
            return _Val.of_const(symbol(name))
        if name in self.symbols:
            return _Val.of_const(symbol(name, self.symbols[name]))
        if name in _X_FUNCS or name in _CONST_FUNCS:
            self.expect("paren", "(")
            pos = self.tok.position
            arg = self.expr()
            self.expect("paren", ")")
            return self.apply(name, arg, t.position, pos)
        self._unknown(t)

    def _unknown(self, t: Token):
        for known in _KNOWN:
            if known.startswith(t.lexeme) and known != t.lexeme and len(t.lexeme) >= 2:
                raise ParseError(
                    f"unknown name {t.lexeme!r}; did you mean {known!r}?",
                    t.position + len(t.lexeme),
                    self.text,
                )
        raise UnsupportedFunction(f"unsupported name {t.lexeme!r}", t.position, self.text)

    def inverse_call(self, t: Token) -> _Val:
        b = int(t.lexeme[len("inverse_") :])
        self.expect("paren", "(")
        f = self.expect("name")
        m = re.fullmatch(r"([yjikYJIK])_(\d+)", f.lexeme)
        if m is None:
            raise ParseError(f"expected a family such as y_0, found {f.lexeme!r}", f.position, self.text)
        self.expect("paren", ")")
        self.expect("paren", "(")
        pos = self.tok.position
        arg = self.expr()
        self.expect("paren", ")")
        if not arg.is_const:
            raise ParseError("the argument of an inverse must be constant", pos, self.text)
        from .errors import InvBesselError

        node = inverse_node(m.group(1).upper(), int(m.group(2)), b, arg.const)
        try:
            node.value
        except InvBesselError as exc:
            raise DomainError(f"{node}: {exc}") from exc
        return _Val.of_const(node)

    def apply(self, name, arg: _Val, fpos, apos) -> _Val:
        if name in _CONST_FUNCS:
            if not arg.is_const:
                raise ParseError(f"{name} accepts only a constant argument", apos, self.text)
            return _Val.of_const(func(name, arg.const))
        if name == "exp":
            return self._exp_of(arg, apos, spelled="exp")
        if not self.allow_x:
            raise UnsupportedFunction(f"{name} is not allowed in a constant expression", fpos, self.text)
        if arg.terms != {(1, "one"): 1} or arg.const.as_fraction() != 0:
            raise NotTransformable(
                f"{name} must be applied to plain x",
                "substitute s for the argument so that the function reads " + f"{name}(s)",
            )
        return _Val.mono(0, name)

    def _exp_of(self, arg: _Val, pos, spelled) -> _Val:
        if not self.allow_x:
            if arg.is_const:
                raise UnsupportedFunction("exponentials of constants are not supported; use e", pos, self.text)
            raise self.error("x is not allowed in a constant expression", pos)
        if arg.terms == {(1, "one"): -1} and arg.const.as_fraction() == 0:
            return _Val.mono(0, "exp")
        if arg.terms == {(1, "one"): 1} and arg.const.as_fraction() == 0:
            raise NotTransformable(
                f"{spelled}(x) grows without bound",
                "substitute x = -s to obtain a multiple of exp(-s)",
            )
        raise NotTransformable("only exp(-x) is accepted", "substitute s for the exponent")

    # algebra
    def _negate(self, v: _Val) -> _Val:
        return _Val({k: -c for k, c in v.terms.items()}, neg(v.const))

    def _addsub(self, v, w, op, pos) -> _Val:
        sign = 1 if op == "+" else -1
        terms = dict(v.terms)
        for k, c in w.terms.items():
            terms[k] = terms.get(k, 0) + sign * c
            if terms[k] == 0:
                del terms[k]
        c = add(v.const, w.const) if sign > 0 else sub(v.const, w.const)
        return _Val(terms, c)

    def _rational(self, v: _Val, pos, what):
        q = v.const.as_fraction()
        if q is None:
            raise ParseError(f"{what} of an x-dependent term must be rational", pos, self.text)
        return q

    def _mul(self, v: _Val, w: _Val, pos) -> _Val:
        if v.is_const and w.is_const:
            return _Val.of_const(mul(v.const, w.const))
        if v.is_const or w.is_const:
            c, t = (v, w) if v.is_const else (w, v)
            q = self._rational(c, pos, "coefficient")
            if q == 0:
                return _Val.of_const(const(0))
            return _Val({k: q * a for k, a in t.terms.items()}, mul(c.const, t.const))
        # both x-dependent: distribute, allowing at most one non-polynomial factor per product
        q1, q2 = self._rational(v, pos, "coefficient"), self._rational(w, pos, "coefficient")
        out = {}

        def put(key, c):
            out[key] = out.get(key, 0) + c
            if out[key] == 0:
                del out[key]

        for (k1, f1), a in v.terms.items():
            for (k2, f2), b in w.terms.items():
                put((k1 + k2, _times(f1, f2, self.text, pos)), a * b)
            if q2:
                put((k1, f1), a * q2)
        if q1:
            for k2f2, b in w.terms.items():
                put(k2f2, q1 * b)
        return _Val(out, const(q1 * q2))

    def _div(self, v: _Val, w: _Val, pos) -> _Val:
        if w.is_const:
            if w.const.value == 0:
                raise ParseError("division by zero", pos, self.text)
            if v.is_const:
                return _Val.of_const(div(v.const, w.const))
            q = self._rational(w, pos, "divisor")
            return _Val({k: a / q for k, a in v.terms.items()}, div(v.const, w.const))
        if len(w.terms) != 1 or w.const.as_fraction() != 0:
            raise NotTransformable("division by a sum involving x is not supported")
        ((k, f), a), = w.terms.items()
        if f != "one":
            raise NotTransformable(f"division by {f}(x) is not supported", "write tan or cot instead")
        q = self._rational(v, pos, "numerator") if v.const.as_fraction() != 0 else Fraction(0)
        out = {(kk - k, ff): c / a for (kk, ff), c in v.terms.items()}
        if q:
            out[(-k, "one")] = out.get((-k, "one"), 0) + q / a
        return _Val(out, const(0))

    def _pow(self, base: _Val, ex: _Val, start, pos) -> _Val:
        q = ex.const.as_fraction() if ex.is_const else None
        if q is None or q.denominator != 1:
            raise ParseError("exponent must be an integer", pos + 1, self.text)
        k = int(q)
        if base.is_const:
            bq = base.const.as_fraction()
            if bq is not None:
                if bq == 0 and k < 0:
                    raise ParseError("zero to a negative power", pos, self.text)
                return _Val.of_const(const(bq**k))
            if k == 0:
                return _Val.of_const(const(1))
            acc = base.const
            for _ in range(abs(k) - 1):
                acc = mul(acc, base.const)
            return _Val.of_const(acc if k > 0 else div(const(1), acc))
        if len(base.terms) == 1 and base.const.as_fraction() == 0:
            ((p, f), a), = base.terms.items()
            if f == "one":
                return _Val({(p * k, "one"): a**k}, const(0))
        raise NotTransformable("only monomials in x may be raised to a power", f"at offset {start}")


def _times(f1, f2, text, pos):
    if f1 == "one":
        return f2
    if f2 == "one":
        return f1
    raise NotTransformable(f"products {f1}(x)*{f2}(x) are not supported")


def _parse(text, symbols, allow_x):
    p = _Parser(text, symbols, allow_x)
    lhs = p.expr()
    if allow_x:
        if not p.is_op("="):
            raise p.error("expected '='" if p.tok.kind == "end" else f"unexpected {p.tok.lexeme!r}")
        p.advance()
        rhs = p.expr()
    else:
        rhs = None
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.lexeme!r}")
    return lhs, rhs


def parse_const(text: str, symbols: dict | None = None) -> ConstExpr:
    """Parse an exact constant such as ``3/(3*log(2) - pi)``.

    ``symbols`` maps extra names to float values; each counts as one symbolic
    constant.

    >>> round(parse_const("3/(3*log(2) - pi)").value, 5)
    -2.82446
    """
    v, _ = _parse(text, symbols, allow_x=False)
    return v.const


def parse_equation(text: str) -> RawEquation:
    """Parse ``lhs = rhs`` into x-dependent terms on the left and a constant on the right.

    tan and cot are removed by multiplying through by cos(x) or sin(x).

    >>> str(parse_equation("tan(x) - x = 0"))
    'sin(x) - x*cos(x) = 0'
    """
    lhs, rhs = _parse(text, None, allow_x=True)
    diff = _Val(dict(lhs.terms), const(0))
    for k, c in rhs.terms.items():
        diff.terms[k] = diff.terms.get(k, 0) - c
        if diff.terms[k] == 0:
            del diff.terms[k]
    right = sub(rhs.const, lhs.const)
    kinds = {f for (_, f) in diff.terms if f in ("tan", "cot")}
    multiplier = None
    if kinds:
        if len(kinds) > 1:
            raise NotTransformable("tan and cot together are not supported")
        kind = kinds.pop()
        multiplier = "cos" if kind == "tan" else "sin"
        q = right.as_fraction()
        if q is None:
            raise NotTransformable(f"multiplying by {multiplier}(x) leaves an irrational coefficient")
        out = {}
        for (k, f), c in diff.terms.items():
            if f == kind:
                nf = "sin" if kind == "tan" else "cos"
            elif f == "one":
                nf = multiplier
            else:
                raise NotTransformable(
                    f"{kind}(x) together with {f}(x) does not reduce to a single factor pair"
                )
            out[(k, nf)] = out.get((k, nf), 0) + c
        if q:
            out[(0, multiplier)] = out.get((0, multiplier), 0) - q
        diff = _Val({k: c for k, c in out.items() if c}, const(0))
        right = const(0)
    if not any(f != "one" for (_, f) in diff.terms):
        raise NotTransformable("no cos, sin, cosh, sinh or exp(-x) factor remains")
    left = tuple(Term(c, k, f) for (k, f), c in diff.terms.items())
    return RawEquation(left, right, multiplier, text)
