"""
Realization of Cend_n inside M_n(W) and the inverse interpolation.

Writing a = sum_s ((-D)^s / s!) A_s(v), the element acts on k[t] (x) k^n by

    a(k) = sum_s C(k, s) A_s(p) q^(k - s).
"""
from functools import lru_cache
from math import comb, factorial

from sympy.polys.domains import QQ

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV
from conformal.cend import CendElem, nth_product
from utils.errors import NotConformalError, SizeMismatchError
from utils.log import get_logger
from weyl.algebra import WeylOp, WeylPoly

logger = get_logger(__name__)


@lru_cache(maxsize=1024)
def basis_coefficients(a):
    """[A_0, A_1, ...] as matrices of PolyV; A_s = (-1)^s s! [D^s] a"""
    n = a.size
    out = []
    for s in range(a.d_degree + 1):
        factor = (-1) ** s * factorial(s)
        out.append(tuple(tuple(a[i, j].d_coeff(s).scale(factor) for j in range(n)) for i in range(n)))
    return tuple(out)


def realize(a, k):
    """The operator a(k) in M_n(W)"""
    n = a.size
    rows = [[WeylPoly() for _ in range(n)] for _ in range(n)]
    for s, coeffs in enumerate(basis_coefficients(a)):
        if s > k:
            break
        c = comb(k, s)
        for i in range(n):
            for j in range(n):
                f = coeffs[i][j]
                if f:
                    rows[i][j] = rows[i][j] + WeylPoly.from_p(f.scale(c), k - s)
    return WeylOp(rows)


def cross_check_operator_product(a, b, n, m):
    """a(n) b(m) = sum_s C(n, s) (a (n-s) b)(m + s)"""
    if a.size != b.size:
        raise SizeMismatchError(f"Cend_{a.size}", f"Cend_{b.size}")
    lhs = realize(a, n) * realize(b, m)
    rhs = WeylOp.zero(a.size)
    for s in range(n + 1):
        prod = nth_product(a, b, n - s)
        if not prod.is_zero():
            rhs = rhs + realize(prod, m + s).scale(comb(n, s))
    if lhs != rhs:
        logger.debug("operator product mismatch at n=%d m=%d", n, m)
    return lhs == rhs


class OperatorSequence:
    """b(0), ..., b(N) in M_n(W)"""

    def __init__(self, ops):
        self.ops = list(ops)
        if not self.ops:
            raise NotConformalError("empty operator sequence")
        size = self.ops[0].size
        for op in self.ops:
            if op.size != size:
                raise SizeMismatchError(f"M_{size}(W)", f"M_{op.size}(W)")

    @classmethod
    def of(cls, a, length):
        """The first ``length`` realized operators of a"""
        return cls(realize(a, k) for k in range(length))

    @classmethod
    def powers(cls, first, step, length):
        """b(0) = first, b(n) = step^n for n >= 1"""
        ops = [first]
        cur = WeylOp.identity(first.size)
        for _ in range(1, length):
            cur = cur * step
            ops.append(cur)
        return cls(ops)

    @property
    def size(self):
        return self.ops[0].size

    def __len__(self):
        return len(self.ops)

    def __getitem__(self, k):
        return self.ops[k]

    def translation_defects(self):
        """Indices n >= 1 with [b(n), p] != n b(n-1)"""
        return [
            n for n in range(1, len(self.ops))
            if self.ops[n].commutator_with_p() != self.ops[n - 1].scale(n)
        ]

    def check_translation_invariance(self):
        bad = self.translation_defects()
        if bad:
            raise NotConformalError(f"[b(n), p] != n b(n-1) at n = {bad[0]}")


def interpolate_conformal(seq, size, d_degree, v_degree):
    """
    Recover a with a(k) = b(k) for every k in the sequence

    Args:
        seq: OperatorSequence of length at least d_degree + 2
        size: matrix size n
        d_degree, v_degree: degree window of the answer

    Raises:
        NotConformalError: a remainder is not a polynomial in p, a degree
            leaves the window, or the sequence is not translation-invariant
    """
    if seq.size != size:
        raise SizeMismatchError(f"M_{size}(W)", f"M_{seq.size}(W)")
    if len(seq) < d_degree + 2:
        raise NotConformalError(f"need at least {d_degree + 2} operators, got {len(seq)}")
    seq.check_translation_invariance()
    coeffs = []
    for s in range(len(seq)):
        rem = seq[s]
        for r, a_r in enumerate(coeffs):
            shift = WeylOp([[WeylPoly.from_p(f, s - r).scale(comb(s, r)) for f in row] for row in a_r])
            rem = rem - shift
        for i, j, x in rem.entries():
            if not x.is_p_only():
                raise NotConformalError(f"A_{s} entry ({i + 1},{j + 1}) is not a polynomial in p: {x}")
        a_s = [[rem[i, j].p_part(0) for j in range(size)] for i in range(size)]
        if any(f for row in a_s for f in row):
            if s > d_degree:
                raise NotConformalError(f"nonzero A_{s} beyond D-degree bound {d_degree}")
            if max(f.degree for row in a_s for f in row) > v_degree:
                raise NotConformalError(f"A_{s} exceeds v-degree bound {v_degree}")
        coeffs.append(a_s)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            d_coeffs = [
                coeffs[s][i][j].scale(QQ((-1) ** s, factorial(s)))
                for s in range(min(d_degree + 1, len(coeffs)))
            ]
            row.append(PolyDV(d_coeffs))
        rows.append(row)
    result = CendElem(MatrixDV(rows))
    logger.debug("interpolated %s from %d operators", result, len(seq))
    return result
