"""
Exact polynomials over Q on sympy's dense representation.

``PolyV`` wraps a univariate dense list over ``QQ`` (printed in ``v`` by
default, but the same class carries Q[D] coefficients in the span engine
and Q[t] vectors in the truncated module).  ``PolyDV`` wraps a level-1
dense list in (D, v): one row per D-degree, highest first, each row a
polynomial in v.  Both are immutable and hashable; ``coeffs`` and
``d_coeffs`` expose the coefficients lowest degree first.
"""
from fractions import Fraction
from functools import lru_cache
from math import comb

from sympy.polys.densearith import (
    dmp_add,
    dmp_mul,
    dmp_mul_ground,
    dmp_neg,
    dmp_pow,
    dmp_sub,
    dup_add,
    dup_div,
    dup_lshift,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_sub,
)
from sympy.polys.densebasic import dmp_from_dict, dmp_strip, dmp_zero, dup_strip
from sympy.polys.densetools import dmp_diff, dmp_diff_in, dup_diff, dup_eval, dup_monic
from sympy.polys.domains import QQ, ZZ

ZERO = QQ.zero
ONE = QQ.one


def is_rational(value):
    """Exact scalar accepted wherever a coefficient is expected"""
    return isinstance(value, (int, Fraction)) or QQ.of_type(value) or ZZ.of_type(value)


def as_rational(value):
    """Coerce int, Fraction, "p/q" text or a sympy ground element into QQ"""
    if QQ.of_type(value):
        return value
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if ZZ.of_type(value):
        return QQ(int(value))
    if isinstance(value, str):
        f = Fraction(value)
        return QQ(f.numerator, f.denominator)
    raise TypeError(f"not an exact rational: {value!r}")


def falling(n, k):
    """n (n-1) ... (n-k+1); zero when k > n >= 0"""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def format_rational(value):
    value = as_rational(value)
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def join_terms(terms):
    """Join signed term strings into ``a + b - c`` form"""
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def format_monomial(coeff, powers):
    """``powers`` is a sequence of (name, exponent); exponent 0 entries are dropped"""
    factors = [name if e == 1 else f"{name}^{e}" for name, e in powers if e]
    if not factors:
        return format_rational(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{format_rational(coeff)}*{body}"


class PolyV:
    """Univariate polynomial; ``rep`` is the stripped dense list, leading coefficient first"""

    __slots__ = ("rep", "_hash")

    def __init__(self, coeffs=()):
        self.rep = dup_strip([as_rational(c) for c in reversed(list(coeffs))])
        self._hash = None

    @classmethod
    def _wrap(cls, rep):
        obj = cls.__new__(cls)
        obj.rep = rep
        obj._hash = None
        return obj

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls):
        return _PV_ZERO

    @classmethod
    def constant(cls, c):
        c = as_rational(c)
        return cls._wrap([c] if c else [])

    @classmethod
    def monomial(cls, degree, coeff=1):
        c = as_rational(coeff)
        return cls._wrap([c] + [ZERO] * degree if c else [])

    @classmethod
    def var(cls):
        return cls._wrap([ONE, ZERO])

    # basic data -------------------------------------------------------------
    @property
    def coeffs(self):
        return tuple(reversed(self.rep))

    @property
    def degree(self):
        """-1 for the zero polynomial"""
        return len(self.rep) - 1

    def is_zero(self):
        return not self.rep

    def leading(self):
        return self.rep[0] if self.rep else ZERO

    def coeff(self, k):
        n = len(self.rep)
        return self.rep[n - 1 - k] if 0 <= k < n else ZERO

    def __iter__(self):
        return reversed(self.rep)

    def __len__(self):
        return len(self.rep)

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, PolyV):
            return self.rep == other.rep
        if is_rational(other):
            return self.rep == PolyV.constant(other).rep
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("PolyV", tuple(self.rep)))
        return self._hash

    # ring operations --------------------------------------------------------
    def __add__(self, other):
        other = _coerce_v(other)
        if other is None:
            return NotImplemented
        return PolyV._wrap(dup_add(self.rep, other.rep, QQ))

    __radd__ = __add__

    def __neg__(self):
        return PolyV._wrap(dup_neg(self.rep, QQ))

    def __sub__(self, other):
        other = _coerce_v(other)
        if other is None:
            return NotImplemented
        return PolyV._wrap(dup_sub(self.rep, other.rep, QQ))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        if not isinstance(other, PolyV):
            return NotImplemented
        return PolyV._wrap(dup_mul(self.rep, other.rep, QQ))

    __rmul__ = __mul__

    def scale(self, c):
        return PolyV._wrap(dup_mul_ground(self.rep, as_rational(c), QQ))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        return PolyV._wrap(dup_pow(self.rep, k, QQ))

    def shift_degree(self, k):
        """Multiply by the variable to the k-th power"""
        return PolyV._wrap(dup_lshift(self.rep, k, QQ))

    def deriv(self, k=1):
        if k == 0:
            return self
        return PolyV._wrap(dup_diff(self.rep, k, QQ))

    def evaluate(self, x):
        return dup_eval(self.rep, as_rational(x), QQ)

    def divmod(self, other):
        """Euclidean division over Q"""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = dup_div(self.rep, other.rep, QQ)
        return PolyV._wrap(q), PolyV._wrap(r)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.rep:
            return self
        return PolyV._wrap(dup_monic(self.rep, QQ))

    # printing ---------------------------------------------------------------
    def format(self, var="v"):
        top = len(self.rep) - 1
        terms = [format_monomial(c, [(var, top - i)]) for i, c in enumerate(self.rep) if c]
        return join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"PolyV({self.format()})"


_PV_ZERO = PolyV()


def _coerce_v(other):
    if isinstance(other, PolyV):
        return other
    if is_rational(other):
        return PolyV.constant(other)
    return None


def _is_zero_rep(rep):
    return len(rep) == 1 and not rep[0]


class PolyDV:
    """Element of Q[D, v]; ``d_coeffs[i]`` is the coefficient of D^i"""

    __slots__ = ("rep", "_hash")

    def __init__(self, d_coeffs=()):
        rows = [c.rep if isinstance(c, PolyV) else PolyV.constant(c).rep for c in d_coeffs]
        self.rep = dmp_strip(rows[::-1], 1)
        self._hash = None

    @classmethod
    def _wrap(cls, rep):
        obj = cls.__new__(cls)
        obj.rep = rep
        obj._hash = None
        return obj

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls):
        return _PDV_ZERO

    @classmethod
    def constant(cls, c):
        return cls._wrap([PolyV.constant(c).rep])

    @classmethod
    def from_v(cls, f):
        """Embed a PolyV in v as a D-free polynomial"""
        return cls._wrap([f.rep])

    @classmethod
    def from_d(cls, f):
        """Embed a PolyV read as a polynomial in D"""
        if f.is_zero():
            return _PDV_ZERO
        return cls._wrap([[c] if c else [] for c in f.rep])

    @classmethod
    def monomial(cls, d_degree, v_degree, coeff=1):
        row = PolyV.monomial(v_degree, coeff).rep
        if not row:
            return _PDV_ZERO
        return cls._wrap([row] + [[] for _ in range(d_degree)])

    @classmethod
    def D(cls):
        return cls.monomial(1, 0)

    @classmethod
    def v(cls):
        return cls.monomial(0, 1)

    @classmethod
    def from_terms(cls, terms):
        """Build from an iterable of (d_degree, v_degree, coeff)"""
        table = {}
        for a, b, c in terms:
            table[a, b] = table.get((a, b), ZERO) + as_rational(c)
        return cls._wrap(dmp_from_dict({k: c for k, c in table.items() if c}, 1, QQ))

    # data -------------------------------------------------------------------
    @property
    def d_coeffs(self):
        if _is_zero_rep(self.rep):
            return ()
        return tuple(PolyV._wrap(row) for row in reversed(self.rep))

    @property
    def d_degree(self):
        return -1 if _is_zero_rep(self.rep) else len(self.rep) - 1

    @property
    def v_degree(self):
        return max(len(row) for row in self.rep) - 1

    def is_zero(self):
        return _is_zero_rep(self.rep)

    def __bool__(self):
        return not _is_zero_rep(self.rep)

    def d_coeff(self, i):
        n = len(self.rep)
        return PolyV._wrap(self.rep[n - 1 - i]) if 0 <= i < n else _PV_ZERO

    def coeff(self, d_degree, v_degree):
        return self.d_coeff(d_degree).coeff(v_degree)

    def terms(self):
        """Yield (d_degree, v_degree, coeff) for the nonzero coefficients"""
        top = len(self.rep) - 1
        for a in range(top + 1):
            row = self.rep[top - a]
            width = len(row) - 1
            for b in range(width + 1):
                c = row[width - b]
                if c:
                    yield a, b, c

    def __eq__(self, other):
        if isinstance(other, PolyDV):
            return self.rep == other.rep
        if is_rational(other):
            return self.rep == PolyDV.constant(other).rep
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("PolyDV", tuple(tuple(row) for row in self.rep)))
        return self._hash

    # ring operations --------------------------------------------------------
    def __add__(self, other):
        other = _coerce_dv(other)
        if other is None:
            return NotImplemented
        return PolyDV._wrap(dmp_add(self.rep, other.rep, 1, QQ))

    __radd__ = __add__

    def __neg__(self):
        return PolyDV._wrap(dmp_neg(self.rep, 1, QQ))

    def __sub__(self, other):
        other = _coerce_dv(other)
        if other is None:
            return NotImplemented
        return PolyDV._wrap(dmp_sub(self.rep, other.rep, 1, QQ))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            return self.scale(other)
        if isinstance(other, PolyV):
            if other.is_zero() or self.is_zero():
                return _PDV_ZERO
            return PolyDV._wrap([dup_mul(row, other.rep, QQ) for row in self.rep])
        if not isinstance(other, PolyDV):
            return NotImplemented
        return PolyDV._wrap(dmp_mul(self.rep, other.rep, 1, QQ))

    __rmul__ = __mul__

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return _PDV_ZERO
        return PolyDV._wrap(dmp_mul_ground(self.rep, c, 1, QQ))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        return PolyDV._wrap(dmp_pow(self.rep, k, 1, QQ))

    def times_d(self, k=1):
        """Multiply by D^k (the H-action on a scalar entry)"""
        if k == 0 or self.is_zero():
            return self
        return PolyDV._wrap(self.rep + [[] for _ in range(k)])

    def deriv_v(self, k=1):
        if k == 0:
            return self
        return PolyDV._wrap(dmp_diff_in(self.rep, k, 1, 1, QQ))

    def deriv_d(self, k=1):
        if k == 0:
            return self
        return PolyDV._wrap(dmp_diff(self.rep, k, 1, QQ))

    def at_d_zero(self):
        return self.d_coeff(0)

    # printing ---------------------------------------------------------------
    def __str__(self):
        ordered = sorted(self.terms(), key=lambda t: (-(t[0] + t[1]), -t[1]))
        return join_terms([format_monomial(c, [("D", a), ("v", b)]) for a, b, c in ordered])

    def __repr__(self):
        return f"PolyDV({self})"


_PDV_ZERO = PolyDV._wrap(dmp_zero(1))


def _coerce_dv(other):
    if isinstance(other, PolyDV):
        return other
    if isinstance(other, PolyV):
        return PolyDV.from_v(other)
    if is_rational(other):
        return PolyDV.constant(other)
    return None


def deriv_v(x, k):
    """k-th partial derivative in v"""
    return x.deriv_v(k)


@lru_cache(maxsize=None)
def _binomial_shift(i):
    """(v - D)^i as PolyDV"""
    return PolyDV.from_terms((k, i - k, comb(i, k) * (-1) ** k) for k in range(i + 1))


def shift_v_minus_d(f):
    """f(v - D) expanded in the canonical PolyDV form"""
    out = _PDV_ZERO
    for i, c in enumerate(f.coeffs):
        if c:
            out = out + _binomial_shift(i).scale(c)
    return out


@lru_cache(maxsize=16384)
def taylor(b, k):
    """(d_D + d_v)^k b as a dense rep; zero once k exceeds the total degree"""
    if k == 0:
        return b.rep
    prev = taylor(b, k - 1)
    if _is_zero_rep(prev):
        return prev
    return dmp_add(dmp_diff(prev, 1, 1, QQ), dmp_diff_in(prev, 1, 1, 1, QQ), 1, QQ)


@lru_cache(maxsize=65536)
def scalar_nth_product(a, b, n):
    """
    n-product of two entries of Cend_1 = Q[D, v].

    With a = sum D^i A_i(v) and T = d_D + d_v acting on b,

        a (n) b = sum_{i <= n} (-1)^i n!/(n-i)! A_i T^(n-i) b
    """
    if n < 0 or a.is_zero() or b.is_zero():
        return _PDV_ZERO
    acc = dmp_zero(1)
    top = len(a.rep) - 1
    for i in range(min(n, top) + 1):
        row = a.rep[top - i]
        if not row:
            continue
        t = taylor(b, n - i)
        if _is_zero_rep(t):
            continue
        factor = dup_mul_ground(row, QQ((-1) ** i * falling(n, i)), QQ)
        acc = dmp_add(acc, [dup_mul(factor, r, QQ) for r in t], 1, QQ)
    return PolyDV._wrap(acc)
