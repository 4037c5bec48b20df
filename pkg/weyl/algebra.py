"""
The Weyl algebra W = Q<p, q | qp - pq = 1> and matrices over it.

Normal form keeps p to the left of q: every monomial is p^i q^j.  The
product of two normal monomials uses

    q^b p^c = sum_k k! C(b, k) C(c, k) p^(c-k) q^(b-k)

while ``rewrite_word`` applies the single rule qp -> pq + 1 literally; the
two must agree on every word.
"""
from functools import lru_cache
from math import comb, factorial

from arith.parser import ExpressionParser, split_matrix
from arith.poly import PolyV, as_rational, format_monomial, is_rational, join_terms
from utils.errors import ParseError, SizeMismatchError


@lru_cache(maxsize=4096)
def _reorder(b, c):
    """q^b p^c in normal form, as a tuple of ((i, j), coeff)"""
    return tuple(
        ((c - k, b - k), factorial(k) * comb(b, k) * comb(c, k))
        for k in range(min(b, c) + 1)
    )


class WeylPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {k: as_rational(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def p(cls):
        return cls.monomial(1, 0)

    @classmethod
    def q(cls):
        return cls.monomial(0, 1)

    @classmethod
    def from_p(cls, f, q_power=0):
        """f(p) q^q_power for a PolyV f"""
        return cls({(i, q_power): c for i, c in enumerate(f.coeffs)})

    @classmethod
    def parse(cls, text, offset=0):
        return ExpressionParser(text, {"p": cls.p(), "q": cls.q()}, cls.constant, offset).parse()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def p_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def q_degree(self):
        return max((j for _, j in self.terms), default=-1)

    def is_p_only(self):
        return all(j == 0 for _, j in self.terms)

    def is_q_only(self):
        return all(i == 0 for i, _ in self.terms)

    def p_part(self, j):
        """The PolyV f with f(p) q^j the q^j-component"""
        width = max((i for i, jj in self.terms if jj == j), default=-1) + 1
        return PolyV(self.terms.get((i, j), 0) for i in range(width))

    def __eq__(self, other):
        if is_rational(other):
            other = WeylPoly.constant(other)
        if not isinstance(other, WeylPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WeylPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_rational(c)
        return WeylPoly({k: c * x for k, x in self.terms.items()})

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        if not isinstance(other, WeylPoly):
            return NotImplemented
        out = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                for (i, j), k in _reorder(b, c):
                    key = (a + i, j + d)
                    out[key] = out.get(key, 0) + x * y * k
        return WeylPoly(out)

    def __rmul__(self, other):
        if is_rational(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        out = WeylPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        ordered = sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))
        return join_terms([format_monomial(c, [("p", i), ("q", j)]) for (i, j), c in ordered])

    def __repr__(self):
        return f"WeylPoly({self})"

    def right_quotient(self, poly):
        """
        u with self = u * Q(p), or None when self is not in W.Q(p).

        Peels off the top q-degree: if self = sum_j f_j(p) q^j then the
        q^J component of u Q(p) is u_J(p) Q(p).
        """
        if poly.is_zero():
            raise ZeroDivisionError("right division by 0")
        qp = WeylPoly.from_p(poly)
        rest = self
        quotient = WeylPoly()
        while rest:
            top = rest.q_degree
            u_top, r = rest.p_part(top).divmod(poly)
            if r:
                return None
            step = WeylPoly.from_p(u_top, top)
            quotient = quotient + step
            rest = rest - step * qp
        return quotient


def _coerce(other):
    if isinstance(other, WeylPoly):
        return other
    if is_rational(other):
        return WeylPoly.constant(other)
    return None


def rewrite_word(terms):
    """
    Normal form by literal rewriting qp -> pq + 1.

    Args:
        terms: iterable of (coefficient, word) with words over "p" and "q"
    """
    pending = {}
    for coef, word in terms:
        if any(ch not in "pq" for ch in word):
            raise ParseError(f"word {word!r} is not over p, q")
        pending[word] = pending.get(word, 0) + as_rational(coef)
    normal = {}
    while pending:
        word, coef = pending.popitem()
        if not coef:
            continue
        at = word.find("qp")
        if at < 0:
            key = (word.count("p"), word.count("q"))
            normal[key] = normal.get(key, 0) + coef
            continue
        for nxt in (word[:at] + "pq" + word[at + 2:], word[:at] + word[at + 2:]):
            pending[nxt] = pending.get(nxt, 0) + coef
    return WeylPoly(normal)


def weyl_normal_form(expr):
    """Normal form of a word list or of an expression string"""
    if isinstance(expr, str):
        return WeylPoly.parse(expr)
    return rewrite_word(expr)


class WeylOp:
    """n x n matrix over W"""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(x if isinstance(x, WeylPoly) else WeylPoly.constant(x) for x in row) for row in rows)
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise SizeMismatchError("square matrix", f"{n} rows")

    @classmethod
    def zero(cls, n):
        return cls([[WeylPoly()] * n for _ in range(n)])

    @classmethod
    def scalar(cls, n, w):
        return cls([[w if i == j else WeylPoly() for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n):
        return cls.scalar(n, WeylPoly.constant(1))

    @classmethod
    def parse(cls, text):
        rows = split_matrix(text)
        return cls([[WeylPoly.parse(chunk, offset) for chunk, offset in row] for row in rows])

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                yield i, j, x

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def _check(self, other):
        if self.size != other.size:
            raise SizeMismatchError(f"M_{self.size}(W)", f"M_{other.size}(W)")

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        self._check(other)
        return WeylOp([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return WeylOp([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return WeylOp([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return WeylOp([[a.scale(c) for a in r] for r in self.rows])

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = WeylPoly()
                for k in range(n):
                    x, y = self.rows[i][k], other.rows[k][j]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return WeylOp(out)

    def __pow__(self, k):
        out = WeylOp.identity(self.size)
        for _ in range(k):
            out = out * self
        return out

    def commutator_with_p(self):
        """[self, p] = self p - p self"""
        p = WeylOp.scalar(self.size, WeylPoly.p())
        return self * p - p * self

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows) + "]"

    def __repr__(self):
        return f"WeylOp({self})"
