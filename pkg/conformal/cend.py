"""
Cend_n as M_n(Q[D, v]).

An element a = sum_i D^i A_i(v) acts through the lambda-product
a_lambda b = a(-lambda, v) b(D + lambda, v + lambda), and a (n) b is n! times
the coefficient of lambda^n.  Entrywise this is ``scalar_nth_product``.
"""
from math import factorial

from sympy.polys.domains import QQ

from arith.matrix import MatrixDV
from arith.parser import parse_matrix
from arith.poly import PolyDV, PolyV, is_rational, scalar_nth_product, shift_v_minus_d
from utils.errors import PreconditionError, SizeMismatchError
from utils.log import get_logger

logger = get_logger(__name__)


class CendElem:
    """An element of Cend_n; immutable, hashable"""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if not isinstance(matrix, MatrixDV):
            matrix = MatrixDV(matrix)
        self.matrix = matrix

    @classmethod
    def parse(cls, text):
        return cls(parse_matrix(text))

    @classmethod
    def zero(cls, n):
        return cls(MatrixDV.zero(n))

    @classmethod
    def identity(cls, n):
        return cls(MatrixDV.identity(n))

    @classmethod
    def unit(cls, n, i, j, p=1):
        """``p`` at position (i, j), 0-based"""
        return cls(MatrixDV.unit(n, i, j, p))

    @classmethod
    def scalar(cls, n, p):
        return cls(MatrixDV.scalar(n, p))

    @property
    def size(self):
        return self.matrix.size

    @property
    def d_degree(self):
        return self.matrix.d_degree

    @property
    def v_degree(self):
        return self.matrix.v_degree

    def __getitem__(self, ij):
        return self.matrix[ij]

    def entries(self):
        return self.matrix.entries()

    def is_zero(self):
        return self.matrix.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CendElem):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(("CendElem", self.matrix))

    def __add__(self, other):
        return CendElem(self.matrix + other.matrix)

    def __sub__(self, other):
        return CendElem(self.matrix - other.matrix)

    def __neg__(self):
        return CendElem(-self.matrix)

    def scale(self, c):
        """Multiply by a rational, or by a PolyV / PolyDV entrywise"""
        return CendElem(self.matrix.scale(c))

    def __rmul__(self, c):
        if is_rational(c):
            return self.scale(c)
        return NotImplemented

    def __str__(self):
        return str(self.matrix)

    def __repr__(self):
        return f"CendElem({self})"


def _check(a, b):
    if a.size != b.size:
        raise SizeMismatchError(f"Cend_{a.size}", f"Cend_{b.size}")


def nth_product(a, b, n):
    """a (n) b in Cend_n; zero for negative n"""
    _check(a, b)
    size = a.size
    if n < 0:
        return CendElem.zero(size)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = PolyDV.zero()
            for k in range(size):
                x, y = a[i, k], b[k, j]
                if x and y:
                    acc = acc + scalar_nth_product(x, y, n)
            row.append(acc)
        rows.append(row)
    return CendElem(MatrixDV(rows))


def d_action(a):
    """D.a, the left H-module structure"""
    return CendElem(a.matrix.times_d(1))


def locality_bound(a, b):
    """
    An upper bound for N(a, b).

    A term of a (n) b needs i <= n, t <= j and n - i - t <= deg_v B_j, so
    every product with n > deg_D a + deg_D b + deg_v b vanishes.
    """
    _check(a, b)
    if a.is_zero() or b.is_zero():
        return 0
    return a.d_degree + b.d_degree + b.v_degree + 1


def locality(a, b):
    """The exact locality function N(a, b)"""
    bound = locality_bound(a, b)
    for n in range(bound - 1, -1, -1):
        if not nth_product(a, b, n).is_zero():
            return n + 1
    return 0


def brace_product(a, b, n, product=nth_product):
    """{a (n) b} = sum_s (-1)^(n+s)/s! D^s (a (n+s) b)"""
    _check(a, b)
    out = CendElem.zero(a.size)
    if n < 0:
        return out
    for s in range(0, max(locality_bound(a, b) - n, 0) + 1):
        term = product(a, b, n + s)
        if term.is_zero():
            continue
        coef = QQ((-1) ** (n + s), factorial(s))
        out = out + CendElem(term.matrix.times_d(s)).scale(coef)
    return out


def is_idempotent(e):
    if nth_product(e, e, 0) != e:
        return False
    return all(nth_product(e, e, n).is_zero() for n in range(1, locality_bound(e, e) + 1))


def is_unit_on(e, gens):
    """True iff e (0) x = x for every generator; e must be idempotent"""
    if not is_idempotent(e):
        raise PreconditionError("unit-check", "e (n) e = delta_{n,0} e", str(e))
    for x in gens:
        if nth_product(e, x, 0) != x:
            logger.debug("e (0) x != x for x = %s", x)
            return False
    return True


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = PolyV.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def unit_from_polynomial(q):
    """
    The conformal unit Q(v)^{-1} Q(v - D) of Cend_n.

    ``q`` is a PolyV (n = 1) or a D-free MatrixDV / CendElem whose
    determinant is a nonzero constant, so Q(v)^{-1} is polynomial.
    """
    if isinstance(q, PolyV):
        rows = [[q]]
    else:
        m = q.matrix if isinstance(q, CendElem) else q
        if m.d_degree > 0:
            raise PreconditionError("unit-from-polynomial", "Q depends on v only")
        rows = [[x.at_d_zero() for x in row] for row in m.rows]
    n = len(rows)
    det = _det(rows)
    if det.degree != 0:
        raise PreconditionError("unit-from-polynomial", "det Q is a nonzero constant", det.format())
    inv_det = 1 / det.leading()
    inverse = []
    for i in range(n):
        row = []
        for j in range(n):
            if n == 1:
                cof = PolyV.constant(1)
            else:
                minor = [r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j]
                cof = _det(minor).scale((-1) ** (i + j))
            row.append(PolyDV.from_v(cof.scale(inv_det)))
        inverse.append(row)
    shifted = MatrixDV([[shift_v_minus_d(x) for x in row] for row in rows])
    return CendElem(MatrixDV(inverse) @ shifted)
