import os
import sys
from fractions import Fraction

import pytest
from sympy import Integer, Poly, expand, factorial, symbols
from sympy.polys.domains import QQ

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from arith.linear import RowEliminator, nullspace, rank, replay, solve
from arith.matrix import MatrixDV
from arith.parser import parse_matrix, parse_polynomial, parse_polyv
from arith.poly import PolyDV, PolyV, falling, format_rational, scalar_nth_product, shift_v_minus_d
from utils.errors import ParseError, SizeMismatchError

P = parse_polynomial


def test_difference_of_squares():
    assert P("(v + D)") * P("(v - D)") == P("v^2 - D^2")


def test_zero_absorbs():
    assert (P("3*D*v + 1") * PolyDV.zero()).is_zero()


def test_square_of_shift():
    assert P("(v - D)^2") == P("v^2 - 2*D*v + D^2")
    assert P("(v - D)^2") == P("v - D") * P("v - D")


def test_deriv_v():
    assert P("v^3").deriv_v(1) == P("3*v^2")
    assert P("v^2").deriv_v(3).is_zero()
    assert P("D*v^2 + v").deriv_v(1) == P("2*D*v + 1")


def test_shift_v_minus_d():
    assert shift_v_minus_d(PolyV.var()) == P("v - D")
    assert shift_v_minus_d(PolyV.monomial(2)) == P("v^2 - 2*D*v + D^2")
    assert shift_v_minus_d(PolyV.constant(1)) == P("1")


def test_degrees_and_zero():
    x = P("D^2*v + v^3 - 4")
    assert x.d_degree == 2
    assert x.v_degree == 3
    assert PolyDV.zero().d_degree == -1
    assert PolyV().degree == -1


def test_rational_coefficients_print_as_fractions():
    x = P("1/2*v - 3/4*D")
    assert "1/2" in str(x)
    assert "3/4" in str(x)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(8, 4)) == "2"


def test_printing_is_canonical():
    assert str(P("v*2*v")) == "2*v^2"
    assert str(P("v - v")) == "0"
    assert P(str(P("(v - D)^3 + 1/3*D"))) == P("(v - D)^3 + 1/3*D")


def test_falling_factorial():
    assert falling(5, 2) == 20
    assert falling(3, 0) == 1
    assert falling(2, 3) == 0


def test_scalar_nth_product_examples():
    v, v2 = P("v"), P("v^2")
    assert scalar_nth_product(v, v2, 1) == P("2*v^2")
    assert scalar_nth_product(P("D"), v, 1) == P("-v")
    assert scalar_nth_product(P("1"), P("D"), 1) == P("1")
    assert scalar_nth_product(v, v2, 3).is_zero()


def test_scalar_zero_product_sets_d_to_zero():
    a, b = P("D*v + v^2"), P("D + 3")
    assert scalar_nth_product(a, b, 0) == P("v^2") * b


def test_polyv_division():
    q, r = PolyV((1, 0, 1)).divmod(PolyV((1, 1)))
    assert q * PolyV((1, 1)) + r == PolyV((1, 0, 1))
    assert r.degree < 1


def test_parse_polyv_rejects_d():
    assert parse_polyv("v^2 + 1") == PolyV((1, 0, 1))
    with pytest.raises(ParseError):
        parse_polyv("D + v")


def test_parse_error_columns():
    with pytest.raises(ParseError) as info:
        P("v + * 2")
    assert info.value.column == 5
    with pytest.raises(ParseError) as info:
        P("(v + 1")
    assert "unbalanced" in str(info.value)
    with pytest.raises(ParseError) as info:
        P("v + x")
    assert info.value.column == 5


def test_parse_error_at_the_end_of_input():
    with pytest.raises(ParseError) as info:
        P("2*(v+")
    assert info.value.column == 7
    assert "unexpected end of input" in str(info.value)
    with pytest.raises(ParseError) as info:
        P("2*(v+1")
    assert info.value.column == 7
    assert "unbalanced parenthesis" in str(info.value)


def test_parse_matrix():
    m = parse_matrix("[[v, D], [0, 1/2]]")
    assert m.size == 2
    assert m[0, 1] == P("D")
    assert m[1, 1] == PolyDV.constant(Fraction(1, 2))
    assert parse_matrix("v^2").size == 1


def test_parse_matrix_unbalanced_bracket():
    with pytest.raises(ParseError) as info:
        parse_matrix("[[v]")
    assert info.value.column == 5
    assert "unbalanced bracket" in str(info.value)


def test_parse_matrix_not_square():
    with pytest.raises(ParseError):
        parse_matrix("[[v, 1], [0]]")


def test_matrix_size_mismatch():
    with pytest.raises(SizeMismatchError):
        MatrixDV.identity(2) + MatrixDV.identity(3)


def test_matrix_product_and_scale():
    e12 = MatrixDV.unit(2, 0, 1)
    e21 = MatrixDV.unit(2, 1, 0)
    assert e12 @ e21 == MatrixDV.unit(2, 0, 0)
    assert (e12 @ e12).is_zero()
    assert MatrixDV.identity(2).scale(P("v")) == MatrixDV.scalar(2, P("v"))


def test_solve_and_nullspace():
    rows = [({"x": 1, "y": 1}, 3), ({"x": 1, "y": -1}, 1)]
    particular, basis = solve(rows, ["x", "y"])
    assert particular == {"x": 2, "y": 1}
    assert basis == []
    assert nullspace([{"a": 1, "b": 1}], ["a", "b"]) == [{"b": 1, "a": -1}]
    assert rank([{"a": 1}, {"a": 2}, {"b": 1}]) == 2


def test_inconsistency_certificate_replays():
    rows = [({"x": 1, "y": 1}, 1), ({"y": 1}, 0), ({"x": 1}, 2)]
    bad = solve(rows, ["x", "y"])
    lhs, rhs = replay(rows, bad.combination)
    assert lhs == {}
    assert rhs == bad.constant != 0


def test_eliminator_counts_dependent_rows():
    elim = RowEliminator(track=False)
    elim.add_row({1: 1, 2: 1})
    elim.add_row({1: 2, 2: 2})
    assert elim.rank == 1
    assert elim.dependent == 1


def _as_expr(p, D, v):
    return sum((QQ.to_sympy(c) * D ** a * v ** b for a, b, c in p.terms()), Integer(0))


def _lambda_bracket(a, b, n):
    """n! [lam^n] a(-lam, v) b(D + lam, v + lam), straight from the definition"""
    D, v, lam = symbols("D v lam")
    left = _as_expr(a, D, v).subs(D, -lam)
    right = _as_expr(b, D, v).subs({D: D + lam, v: v + lam}, simultaneous=True)
    coeff = Poly(expand(left * right), lam).coeff_monomial(lam ** n)
    return expand(coeff * factorial(n)), (D, v)


@pytest.mark.parametrize("a, b", [
    ("D^2*v + 3*v^2", "D*v^3 - 1/2*v"),
    ("v - D", "D^3 + v^4"),
    ("2*D^3*v^2 - D", "D^2*v^2 + v"),
])
def test_scalar_products_match_the_lambda_bracket(a, b):
    x, y = P(a), P(b)
    for n in range(x.d_degree + y.d_degree + y.v_degree + 2):
        expected, (D, v) = _lambda_bracket(x, y, n)
        assert expand(_as_expr(scalar_nth_product(x, y, n), D, v) - expected) == 0


def test_polynomials_sit_on_sympy_dense_lists():
    x = P("3*D^2*v + 1/2*v^2 - 1")
    assert x.rep == [[QQ(3), QQ(0)], [], [QQ(1, 2), QQ(0), QQ(-1)]]
    assert x.d_coeffs[0] == PolyV((-1, 0, Fraction(1, 2)))
    assert PolyV((1, 2, 3)).rep == [QQ(3), QQ(2), QQ(1)]
    assert PolyDV.zero().rep == [[]]
