from arith.poly import PolyV, PolyDV, deriv_v, shift_v_minus_d, scalar_nth_product, format_rational
from arith.matrix import MatrixDV
from arith.parser import parse_polynomial, parse_polyv, parse_matrix

__all__ = [
    "PolyV",
    "PolyDV",
    "MatrixDV",
    "deriv_v",
    "shift_v_minus_d",
    "scalar_nth_product",
    "format_rational",
    "parse_polynomial",
    "parse_polyv",
    "parse_matrix",
]
