from fractions import Fraction

import pytest
from hypothesis import given, settings

from lecycle import (
    DEGREVLEX,
    LEX,
    NEGDEGREVLEX,
    MonomialOrder,
    Polynomial,
    Ring,
    ShearMatrix,
    apply_shear,
    evaluate,
    parse_polynomial,
    partial_derivative,
    poly_mul,
)
from lecycle.errors import ParseError, RingMismatchError, UnknownVariableError
from strategies import R3, polynomials, shears

XY = Ring(("x", "y"))
TXY = Ring(("t", "x", "y"))


def P(text, ring=XY):
    return parse_polynomial(text, ring)


# -- examples ----------------------------------------------------------------


def test_difference_of_squares():
    assert poly_mul(P("x + y"), P("x - y")) == P("x^2 - y^2")


def test_multiply_by_zero():
    assert poly_mul(P("x^3 - 2*y"), XY.zero()).is_zero()


def test_product_expansion():
    assert poly_mul(P("y - x^2"), P("y + x^2")) == P("y^2 - x^4")


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        poly_mul(P("x"), parse_polynomial("x", ("x", "z")))


def test_partial_y_of_cusp():
    assert partial_derivative(P("y^2 - x^3"), 2 - 1) == P("2*y")


def test_partial_t_of_degen_family():
    f = parse_polynomial("y^2 - x^5 - t*x^3", TXY)
    assert partial_derivative(f, 0) == parse_polynomial("-x^3", TXY)
    assert partial_derivative(f, "x") == parse_polynomial("-5*x^4 - 3*t*x^2", TXY)


def test_partial_of_constant():
    assert partial_derivative(XY.const(7), 0).is_zero()


def test_partial_index_out_of_range():
    with pytest.raises(IndexError):
        partial_derivative(P("x"), 2)


def test_identity_shear():
    p = P("y^2 - x^3")
    assert apply_shear(p, ShearMatrix.identity(2)) == p


def test_binomial_shear():
    M = ShearMatrix(((1, 1), (0, 1)))
    assert apply_shear(P("x^2"), M) == P("x^2 + 2*x*y + y^2")


def test_shear_then_inverse():
    M = ShearMatrix(((1, 2, -3), (0, 1, 1), (0, 0, 1)))
    p = parse_polynomial("y^2 - x^5 - t*x^3", TXY)
    assert apply_shear(apply_shear(p, M), M.inverse()) == p
    assert (M @ M.inverse()).is_identity()
    assert M.determinant() == 1


def test_shear_size_mismatch():
    with pytest.raises(ValueError):
        apply_shear(P("x"), ShearMatrix.identity(3))


def test_shear_rejects_non_unipotent():
    with pytest.raises(ValueError):
        ShearMatrix(((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        ShearMatrix(((1, 0), (1, 1)))


def test_evaluate():
    assert evaluate(P("y^2 - x^3"), (1, 1)) == 0
    assert evaluate(P("y^2 - x^3"), (0, 2)) == 4
    assert evaluate(XY.zero(), (5, Fraction(1, 3))) == 0
    assert evaluate(P("1/2*x"), (Fraction(2, 3), 0)) == Fraction(1, 3)
    with pytest.raises(ValueError):
        evaluate(P("x"), (1,))


def test_canonical_form_drops_zero_coefficients():
    assert P("x - x + y").terms == {(0, 1): 1}
    assert Polynomial(XY, {(1, 0): 0}).is_zero()


def test_degrees():
    p = P("x^3 + x*y + y")
    assert p.total_degree() == 3
    assert p.low_degree() == 1
    assert XY.zero().total_degree() == -1


# -- orders ------------------------------------------------------------------


def test_degrevlex_vs_local():
    p = P("y^2 - x^3 - x^2")
    assert p.leading_term(DEGREVLEX)[0] == (3, 0)
    assert p.leading_term(NEGDEGREVLEX)[0] == (2, 0)


def test_lex():
    assert P("x + y^5").leading_term(LEX)[0] == (1, 0)


def test_order_compare_and_kinds():
    assert DEGREVLEX.compare((1, 1), (2, 0)) == -1  # revlex: x^2 > xy
    assert NEGDEGREVLEX.compare((0, 0), (1, 0)) == 1  # 1 is largest locally
    assert NEGDEGREVLEX.is_local and DEGREVLEX.is_global
    with pytest.raises(ValueError):
        MonomialOrder("bogus")


def test_permuted_order():
    order = MonomialOrder("lex", perm=(1, 0))
    assert P("x + y^5").leading_term(order)[0] == (0, 5)


# -- parsing -----------------------------------------------------------------


def test_parse_rationals_and_precedence():
    assert P("-x^2*3 + 1/2*y") == XY.monomial((2, 0), -3) + XY.monomial((0, 1), Fraction(1, 2))
    assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("--x") == P("x")


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError) as exc:
        P("x y")
    assert exc.value.line == 1 and exc.value.column == 3
    with pytest.raises(ParseError):
        P("2x")


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        P("x + q")


@pytest.mark.parametrize("bad", ["", "x +", "(x", "x^y", "x^2^3", "x ** 2", "3.5*x", "x^-1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_parse_error_position_multiline():
    with pytest.raises(ParseError) as exc:
        P("x +\n  y $")
    assert (exc.value.line, exc.value.column) == (2, 5)


def test_printing():
    assert P("y^2 - x^5 - t*x^3".replace("t*", "")).to_str() == "-x^5 - x^3 + y^2"
    assert P("3*x").to_str() == "3*x"
    assert P("1/2*x").to_str() == "1/2*x"
    assert XY.zero().to_str() == "0"


# -- properties --------------------------------------------------------------


@settings(max_examples=40)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == R3.zero()
    assert p * R3.one() == p


@settings(max_examples=40)
@given(polynomials(), polynomials())
def test_leibniz_rule(p, q):
    for i in range(3):
        d = partial_derivative
        assert d(p * q, i) == p * d(q, i) + q * d(p, i)


@settings(max_examples=30)
@given(polynomials(max_deg=3), polynomials(max_deg=3), shears(3))
def test_shear_is_ring_homomorphism(p, q, M):
    assert apply_shear(p * q, M) == apply_shear(p, M) * apply_shear(q, M)
    assert apply_shear(p + q, M) == apply_shear(p, M) + apply_shear(q, M)


@settings(max_examples=30)
@given(polynomials(max_deg=3), shears(3))
def test_shear_inverse_and_degree(p, M):
    img = apply_shear(p, M)
    assert apply_shear(img, M.inverse()) == p
    assert img.total_degree() == p.total_degree()


@settings(max_examples=40)
@given(polynomials())
def test_parse_print_roundtrip(p):
    assert parse_polynomial(p.to_str(), R3).terms == p.terms


@settings(max_examples=30)
@given(polynomials(max_deg=3), polynomials(max_deg=3))
def test_evaluation_is_a_homomorphism(p, q):
    pt = (Fraction(1, 2), -2, 3)
    assert evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt)
