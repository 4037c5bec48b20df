from arith.poly import PolyDV, PolyV, is_rational
from utils.errors import SizeMismatchError


class MatrixDV:
    """Square matrix over Q[D, v]; rows are tuples of PolyDV"""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(_entry(x) for x in row) for row in rows)
        if not rows:
            raise SizeMismatchError("0x0", "positive size")
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise SizeMismatchError(f"{n} rows", f"row of length {len(row)}")
        self.rows = rows
        self._hash = None

    @classmethod
    def zero(cls, n):
        return cls([[PolyDV.zero()] * n for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls.scalar(n, PolyDV.constant(1))

    @classmethod
    def scalar(cls, n, p):
        """p times the identity"""
        p = _entry(p)
        return cls([[p if i == j else PolyDV.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n, i, j, p=1):
        """p in position (i, j), zero elsewhere; indices are 0-based"""
        p = _entry(p)
        return cls([[p if (r, c) == (i, j) else PolyDV.zero() for c in range(n)] for r in range(n)])

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        """Yield (i, j, entry) in row-major order"""
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                yield i, j, x

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    @property
    def d_degree(self):
        return max((x.d_degree for row in self.rows for x in row), default=-1)

    @property
    def v_degree(self):
        return max((x.v_degree for row in self.rows for x in row), default=-1)

    def map(self, fn):
        return MatrixDV([[fn(x) for x in row] for row in self.rows])

    def check_size(self, other):
        if self.size != other.size:
            raise SizeMismatchError(f"{self.size}x{self.size}", f"{other.size}x{other.size}")

    def __eq__(self, other):
        if not isinstance(other, MatrixDV):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("MatrixDV", self.rows))
        return self._hash

    def __add__(self, other):
        self.check_size(other)
        return MatrixDV([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self.check_size(other)
        return MatrixDV([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c):
        if is_rational(c):
            return self.map(lambda x: x.scale(c))
        c = _entry(c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other):
        """Ordinary matrix product with commuting entries"""
        self.check_size(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = PolyDV.zero()
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixDV(out)

    def times_d(self, k=1):
        return self.map(lambda x: x.times_d(k))

    def deriv_v(self, k=1):
        return self.map(lambda x: x.deriv_v(k))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows) + "]"

    def __repr__(self):
        return f"MatrixDV({self})"


def _entry(x):
    if isinstance(x, PolyDV):
        return x
    if isinstance(x, PolyV):
        return PolyDV.from_v(x)
    return PolyDV.constant(x)
