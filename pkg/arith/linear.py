"""
Exact linear algebra over Q.

Rows are dicts ``{column: coefficient}`` with an optional right-hand side.
Batch questions (rank, nullspace, solve) go through sympy's ``DomainMatrix``
over ``QQ``.  ``RowEliminator`` accepts rows one at a time, keeps them in
echelon form and tracks, for every stored row, the combination of input
rows it came from, so a streamed system can stop at the first row that
reduces to ``0 = c`` with ``c != 0``.
"""
from dataclasses import dataclass, field

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from arith.poly import ZERO, as_rational
from utils.log import get_logger

logger = get_logger(__name__)


def _axpy(target, coef, source):
    """target += coef * source, dropping zeros"""
    for k, x in source.items():
        val = target.get(k, ZERO) + coef * x
        if val:
            target[k] = val
        else:
            target.pop(k, None)


@dataclass
class Inconsistency:
    """sum(combination[i] * row_i) has zero left side and right side ``constant``"""
    combination: dict
    constant: object


@dataclass
class _Pivot:
    coeffs: dict
    rhs: object
    combination: dict = field(default_factory=dict)


class RowEliminator:
    def __init__(self, track=True):
        self.track = track
        self.pivots = {}
        self.rows_seen = 0
        self.dependent = 0

    @property
    def rank(self):
        return len(self.pivots)

    def _reduce(self, coeffs, rhs, combination):
        while True:
            hits = [c for c in coeffs if c in self.pivots]
            if not hits:
                return coeffs, rhs
            col = min(hits)
            piv = self.pivots[col]
            f = -coeffs[col] / piv.coeffs[col]
            _axpy(coeffs, f, piv.coeffs)
            rhs += f * piv.rhs
            if self.track:
                _axpy(combination, f, piv.combination)

    def add_row(self, coeffs, rhs=0):
        """
        Insert one row; returns an ``Inconsistency`` when it closes a
        contradiction, ``None`` otherwise.
        """
        index = self.rows_seen
        self.rows_seen += 1
        coeffs = {k: as_rational(x) for k, x in coeffs.items() if x}
        rhs = as_rational(rhs)
        combination = {index: QQ.one} if self.track else {}
        coeffs, rhs = self._reduce(coeffs, rhs, combination)
        if not coeffs:
            if rhs:
                return Inconsistency(combination, rhs)
            self.dependent += 1
            return None
        col = min(coeffs)
        self.pivots[col] = _Pivot(coeffs, rhs, combination)
        return None

    def reduce(self, coeffs, rhs=0):
        """Reduce a row against the stored pivots without storing it"""
        coeffs = {k: as_rational(x) for k, x in coeffs.items() if x}
        return self._reduce(coeffs, as_rational(rhs), {})


def _matrix(rows, columns):
    index = {col: i for i, col in enumerate(columns)}
    dense = []
    for coeffs in rows:
        line = [ZERO] * len(columns)
        for col, x in coeffs.items():
            line[index[col]] = as_rational(x)
        dense.append(line)
    return DomainMatrix(dense, (len(dense), len(columns)), QQ)


def _kernel(matrix, width):
    """Nullspace rows, each scaled so that its last nonzero entry is 1"""
    if width == 0:
        return []
    if matrix.shape[0] == 0:
        return [[QQ.one if i == j else ZERO for j in range(width)] for i in range(width)]
    out = []
    for vec in matrix.nullspace().to_list():
        last = next(x for x in reversed(vec) if x)
        out.append([x / last for x in vec])
    return out


def _labelled(vec, columns):
    return {col: x for col, x in zip(columns, vec) if x}


def nullspace(rows, columns):
    """Basis of {x : row . x = 0 for every row}"""
    columns = list(columns)
    return [_labelled(vec, columns) for vec in _kernel(_matrix(rows, columns), len(columns))]


def rank(rows):
    rows = list(rows)
    columns = sorted({col for coeffs in rows for col in coeffs}, key=repr)
    if not rows or not columns:
        return 0
    return _matrix(rows, columns).rank()


def solve(rows, columns):
    """
    Solve a list of (coeffs, rhs) rows.

    Returns ``(particular, basis)`` or an ``Inconsistency`` whose
    combination comes from the left nullspace of the coefficient matrix.
    """
    rows = list(rows)
    columns = list(columns)
    width = len(columns)
    a = _matrix([coeffs for coeffs, _ in rows], columns)
    b = [as_rational(rhs) for _, rhs in rows]
    if rows:
        augmented = DomainMatrix([line + [c] for line, c in zip(a.to_list(), b)], (len(rows), width + 1), QQ)
        reduced, pivots = augmented.rref()
        if width in pivots:
            for y in _kernel(a.transpose(), len(rows)):
                constant = sum((yi * bi for yi, bi in zip(y, b)), ZERO)
                if constant:
                    return Inconsistency({i: yi for i, yi in enumerate(y) if yi}, constant)
        lines = reduced.to_list()
        particular = {columns[col]: lines[r][width] for r, col in enumerate(pivots) if lines[r][width]}
    else:
        particular = {}
    basis = [_labelled(vec, columns) for vec in _kernel(a, width)]
    logger.debug("solve: %d rows, %d columns, %d free", len(rows), width, len(basis))
    return particular, basis


def replay(rows, combination):
    """Apply a row combination; returns (left side, right side)"""
    lhs, rhs = {}, ZERO
    for index, coef in combination.items():
        coeffs, const = rows[index]
        _axpy(lhs, coef, {k: as_rational(x) for k, x in coeffs.items()})
        rhs += coef * as_rational(const)
    return lhs, rhs
