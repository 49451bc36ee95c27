import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invbessel import (
    DomainError,
    NotTransformable,
    ParseError,
    Term,
    UnsupportedFunction,
    parse_const,
    parse_equation,
)
from invbessel.constexpr import Num, add, const, div, func, inverse_node, mul, neg, scale, sub, symbol
from invbessel.parser import tokenize

F = Fraction


def terms(eq):
    return Counter(eq.left)


def test_dottie_equation():
    eq = parse_equation("cos(x) = x")
    assert terms(eq) == Counter([Term(F(1), 0, "cos"), Term(F(-1), 1, "one")])
    assert eq.right.as_fraction() == 0


def test_tan_rewrite():
    eq = parse_equation("tan(x) - x = 0")
    assert terms(eq) == Counter([Term(F(1), 0, "sin"), Term(F(-1), 1, "cos")])
    assert eq.multiplier == "cos"
    assert str(parse_equation("tan(x) = x")) == "sin(x) - x*cos(x) = 0"


def test_cot_rewrite():
    eq = parse_equation("cot(x) = 1/x")
    assert terms(eq) == Counter([Term(F(1), 0, "cos"), Term(F(-1), -1, "sin")])
    assert eq.multiplier == "sin"


def test_tan_with_irrational_constant_is_not_transformable():
    with pytest.raises(NotTransformable):
        parse_equation("tan(x) = pi")


def test_j1_row():
    eq = parse_equation("sin(x)/x^2 - cos(x)/x = 0")
    assert terms(eq) == Counter([Term(F(1), -2, "sin"), Term(F(-1), -1, "cos")])


def test_k2_equation():
    eq = parse_equation("(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)")
    assert terms(eq) == Counter([Term(F(1), -1, "exp"), Term(F(3), -2, "exp"), Term(F(3), -3, "exp")])
    assert eq.right.value == pytest.approx(-2.82446, abs=5e-6)


def test_exponential_spellings():
    a = parse_equation("exp(-x)/x = 2")
    assert parse_equation("e^(-x)/x = 2") == a
    assert parse_equation("e^-x/x = 2") == a
    for text in ("e^x/x = 2", "exp(x)/x = 2"):
        with pytest.raises(NotTransformable) as info:
            parse_equation(text)
        assert "x = -s" in str(info.value.hint)


def test_scaled_argument_is_rejected_with_hint():
    with pytest.raises(NotTransformable):
        parse_equation("cos(2x) = x")


def test_syntax_error_offset():
    with pytest.raises(ParseError) as info:
        parse_equation("co s(x) = 1")
    assert info.value.offset == 2
    caret = info.value.caret()
    assert caret.splitlines()[1].index("^") == 2


@pytest.mark.parametrize(
    "text, offset",
    [("cos(x = 1", 6), ("cos(x) = ", 9), ("cos(x) 1 = )", 11), ("cos(x) = x $", 11), ("", 0)],
)
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_equation(text)
    assert info.value.offset == offset


def test_unsupported_function():
    with pytest.raises(UnsupportedFunction) as info:
        parse_equation("sec(x) = 2")
    assert info.value.offset == 0
    assert isinstance(info.value, ParseError)


def test_irrational_coefficient_on_x_rejected():
    with pytest.raises(ParseError):
        parse_equation("pi*cos(x) = x")


def test_whitespace_and_implicit_multiplication():
    a = parse_equation("2*x*cos(x) = 3")
    for text in ("2x cos(x)=3", "  2 x  cos ( x ) = 3 ", "2·x·cos(x) = 3", "2×x×cos(x)=3"):
        assert parse_equation(text) == a


def test_unicode_aliases():
    assert parse_const("π").value == math.pi
    assert parse_const("2 − 1").as_fraction() == 1


def test_tokenize_positions_increase():
    toks = tokenize("inverse_1(y_0)(-1) + 2x^3")
    assert [t.position for t in toks] == sorted(t.position for t in toks)
    assert toks[0].lexeme == "inverse_1" and toks[-1].kind == "end"


# ---- constants --------------------------------------------------------------


def test_const_examples():
    assert parse_const("3/(3*log(2) - pi)").value == pytest.approx(-2.82446, abs=5e-6)
    assert parse_const("-1").as_fraction() == -1
    with pytest.raises(DomainError):
        parse_const("sqrt(-2)")
    with pytest.raises(DomainError):
        parse_const("log(0)")
    with pytest.raises(ParseError) as info:
        parse_const("1/(2-2)")
    assert info.value.offset == 1


def test_const_exact_folding():
    assert parse_const("sqrt(8/2)").as_fraction() == 2
    assert parse_const("2^-3").as_fraction() == F(1, 8)
    assert parse_const("log(1)").as_fraction() == 0
    assert str(parse_const("1/(2pi)")) == "1/(2*pi)"
    assert str(parse_const("3/(2*pi)")) == "3/(2*pi)"


def test_const_with_symbols():
    e = parse_const("2*(55103 + 19462*Khinchin)/290541", symbols={"Khinchin": 2.6854520010653064})
    # a near miss for the Dottie number
    assert e.value == pytest.approx(0.739085133215160642, rel=1e-12)


def test_inverse_call_in_constant():
    e = parse_const("inverse_1(y_0)(-1)")
    assert e == inverse_node("Y", 0, 1, const(-1))
    assert e.value == pytest.approx(0.739085133215160642, rel=1e-15)


def test_equation_with_constant_right_side():
    eq = parse_equation("cos(x)/x = 180/pi")
    assert str(eq.right) == "180/pi"


# ---- round trips -------------------------------------------------------------

CONSTS = [
    "3/(3*log(2) - pi)",
    "-1",
    "1/2",
    "2*pi",
    "sqrt(2) + e",
    "-(pi - 1)",
    "log(2)/3",
    "inverse_-1(k_2)(-3)",
    "2^-3*pi",
]


@pytest.mark.parametrize("text", CONSTS)
def test_const_round_trip(text):
    e = parse_const(text)
    assert parse_const(str(e)) == e
    assert parse_const(str(e)).value == e.value


EQUATIONS = [
    "cos(x) = x",
    "sin(x) = x/2",
    "tan(x) - x = 0",
    "sin(x)/x^2 - cos(x)/x = 0",
    "(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)",
    "3 cosh(x)/x^2 - 3 sinh(x)/x^3 - sinh(x)/x + 1 = 0",
    "-x^2 cos(x)/7 = 5/3",
]


@pytest.mark.parametrize("text", EQUATIONS)
def test_equation_round_trip(text):
    eq = parse_equation(text)
    again = parse_equation(str(eq))
    assert terms(again) == terms(eq)
    assert again.right == eq.right


_atoms = st.one_of(
    st.fractions(min_value=-50, max_value=50, max_denominator=12).map(const),
    st.sampled_from([symbol("pi"), symbol("e"), func("log", const(2)), func("sqrt", const(3))]),
)


def _combine(children):
    return st.one_of(
        st.tuples(children, children).map(lambda p: add(*p)),
        st.tuples(children, children).map(lambda p: sub(*p)),
        st.tuples(children, children).map(lambda p: mul(*p)),
        st.tuples(children, children).map(lambda p: div(*p) if p[1].value != 0 else p[0]),
        children.map(neg),
        st.tuples(st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool), children).map(lambda p: scale(*p)),
    )


@settings(max_examples=300, deadline=None)
@given(st.recursive(_atoms, _combine, max_leaves=8))
def test_const_print_parse_round_trip(e):
    assert parse_const(str(e)) == e


_terms = st.lists(
    st.tuples(
        st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(bool),
        st.integers(-4, 3),
        st.sampled_from(["cos", "sin", "cosh", "sinh", "exp", "one"]),
    ),
    min_size=1,
    max_size=5,
    unique_by=lambda t: (t[1], t[2]),
)


@settings(max_examples=300, deadline=None)
@given(_terms, st.fractions(min_value=-20, max_value=20, max_denominator=9))
def test_equation_print_parse_round_trip(ts, rhs):
    left = [Term(c, p, f) for c, p, f in ts if not (f == "one" and p == 0)]
    if all(t.factor == "one" for t in left):
        return
    text = " + ".join(f"({t})" for t in left) + f" = {rhs}"
    eq = parse_equation(text)
    assert terms(eq) == Counter(left)
    assert terms(parse_equation(str(eq))) == terms(eq)
    assert eq.right.as_fraction() == rhs


def test_fractional_exponent_rejected():
    with pytest.raises(ParseError):
        parse_const("2^(1/2)")


def test_num_is_nonnegative():
    with pytest.raises(ValueError):
        Num(F(-1))
