"""
The subalgebra C = Q[v - D]{a(f, g)} of Cend_2 with

    a(f, g) = [[v^2 f, v^2 f + v^2 g (v - D)^2], [0, f (v - D)^2]],

its radical (all f = 0) and the homomorphism theta onto Cend_1 (v - D)^2.
"""
import random
from functools import lru_cache
from math import comb

from pydantic import BaseModel, Field

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV, falling, scalar_nth_product, shift_v_minus_d
from conformal.cend import CendElem, locality_bound, nth_product
from conformal.random_elements import random_polyv
from utils.log import get_logger

logger = get_logger(__name__)

V2 = PolyV.monomial(2)


@lru_cache(maxsize=64)
def v_minus_d(k):
    """(v - D)^k as a PolyDV"""
    return shift_v_minus_d(PolyV.monomial(k))


class CxElem:
    """
    sum_k (v - D)^k a(f_k, g_k), stored as {k: (f_k, g_k)}.

    Pairs with f = g = 0 are dropped, so equal elements compare equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, (f, g) in (terms or {}).items():
            f, g = _as_polyv(f), _as_polyv(g)
            if f or g:
                clean[k] = (f, g)
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def a(cls, f, g=0, k=0):
        return cls({k: (f, g)})

    @classmethod
    def radical(cls, g, k=0):
        return cls({k: (0, g)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CxElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, (f, g) in other.terms.items():
            f0, g0 = out.get(k, (PolyV(), PolyV()))
            out[k] = (f0 + f, g0 + g)
        return CxElem(out)

    def __neg__(self):
        return CxElem({k: (-f, -g) for k, (f, g) in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return CxElem({k: (f.scale(c), g.scale(c)) for k, (f, g) in self.terms.items()})

    def times_v(self, h):
        """h(v) x; h(v) a(f, g) = a(hf, hg)"""
        h = _as_polyv(h)
        return CxElem({k: (h * f, h * g) for k, (f, g) in self.terms.items()})

    def prefix(self, k=1):
        """(v - D)^k x"""
        return CxElem({j + k: pair for j, pair in self.terms.items()})

    def f_part(self):
        return {k: f for k, (f, _) in self.terms.items() if f}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (f, g) in self.terms.items():
            pre = "" if k == 0 else ("(v - D)*" if k == 1 else f"(v - D)^{k}*")
            parts.append(f"{pre}a({f}, {g})")
        return " + ".join(parts)

    def __repr__(self):
        return f"CxElem({self})"


def _as_polyv(x):
    return x if isinstance(x, PolyV) else PolyV.constant(x)


def a_matrix(f, g):
    """The 2x2 matrix a(f, g)"""
    f, g = _as_polyv(f), _as_polyv(g)
    top = PolyDV.from_v(V2 * f)
    corner = top + v_minus_d(2) * (V2 * g)
    bottom = v_minus_d(2) * f
    return MatrixDV([[top, corner], [PolyDV.zero(), bottom]])


def cx_embed(x: CxElem):
    out = MatrixDV.zero(2)
    for k, (f, g) in x.terms.items():
        out = out + a_matrix(f, g).scale(v_minus_d(k))
    return CendElem(out)


def pair_product(f1, g1, f2, g2, n):
    """a(f1, g1) (n) a(f2, g2) as (f, g)"""
    vf2 = (V2 * f2).deriv(n)
    f = f1 * vf2
    g = f1 * (V2 * g2).deriv(n) + f1 * f2.deriv(n) + g1 * vf2
    return f, g


def cx_product(x: CxElem, y: CxElem, n):
    """
    x (n) y inside C.

    A prefix (v - D)^k on the left contributes (v + lambda)^k to the
    lambda-product, one on the right passes through unchanged.
    """
    if n < 0:
        return CxElem()
    out = {}
    for k, (f1, g1) in x.terms.items():
        for m, (f2, g2) in y.terms.items():
            for i in range(min(k, n) + 1):
                f, g = pair_product(f1, g1, f2, g2, n - i)
                if not f and not g:
                    continue
                c = falling(n, i) * comb(k, i)
                h = PolyV.monomial(k - i, c)
                f0, g0 = out.get(m, (PolyV(), PolyV()))
                out[m] = (f0 + h * f, g0 + h * g)
    return CxElem(out)


def cx_locality_bound(x, y):
    return locality_bound(cx_embed(x), cx_embed(y))


def cx_radical_membership(x: CxElem):
    """x lies in Rad(C) iff every f_k vanishes"""
    return not x.f_part()


def radical_products_vanish(x: CxElem, y: CxElem):
    """Every n-product of two radical members is zero"""
    return all(cx_product(x, y, n).is_zero() for n in range(cx_locality_bound(x, y)))


def cx_theta(x: CxElem):
    """sum_k f_k(v) (v - D)^(k + 2), an element of Cend_1"""
    out = PolyDV.zero()
    for k, (f, _) in x.terms.items():
        if f:
            out = out + v_minus_d(k + 2) * f
    return out


def theta_image_divisible(p: PolyDV):
    """p = q * (v - D)^2 for some q in Q[D, v]"""
    # double root in D at D = v
    rest = PolyV()
    slope = PolyV()
    for i, coeff in enumerate(p.d_coeffs):
        if coeff:
            rest = rest + coeff * PolyV.monomial(i)
            slope = slope + (coeff * PolyV.monomial(i - 1, i) if i else PolyV())
    return rest.is_zero() and slope.is_zero()


def random_cx(rng, degree=5, prefixes=2):
    terms = {}
    for k in range(rng.randint(1, prefixes + 1)):
        if rng.random() < 0.7:
            terms[k] = (random_polyv(rng, degree), random_polyv(rng, degree))
    return CxElem(terms)


class CxCheckReport(BaseModel):
    name: str
    passed: bool = True
    checked: int = 0
    failures: list[str] = Field(default_factory=list)

    def check(self, ok, label):
        self.checked += 1
        if not ok:
            self.passed = False
            if len(self.failures) < 5:
                self.failures.append(label)
        return ok


def verify_closure(seed=20060126, count=20, degree=5):
    """cx_product agrees with the Cend_2 product under cx_embed, and k[v] C = C"""
    rng = random.Random(seed)
    report = CxCheckReport(name="closure")
    for _ in range(count):
        x, y = random_cx(rng, degree), random_cx(rng, degree)
        ex, ey = cx_embed(x), cx_embed(y)
        for n in range(locality_bound(ex, ey)):
            report.check(cx_embed(cx_product(x, y, n)) == nth_product(ex, ey, n), f"x (n) y for n={n}: {x} | {y}")
        h = random_polyv(rng, 2)
        report.check(cx_embed(x.times_v(h)) == CendElem(ex.matrix.scale(h)), f"h(v) x for h={h}")
    logger.debug("closure: %d checks", report.checked)
    return report


def verify_radical(seed=20060126, count=20, degree=5):
    """Radical members multiply to zero; a(1, 0) is not in the radical and is not nilpotent"""
    rng = random.Random(seed)
    report = CxCheckReport(name="radical")
    for _ in range(count):
        r1 = CxElem({k: (0, g) for k, (_, g) in random_cx(rng, degree).terms.items()})
        r2 = CxElem({k: (0, g) for k, (_, g) in random_cx(rng, degree).terms.items()})
        report.check(cx_radical_membership(r1), f"{r1} in Rad(C)")
        report.check(radical_products_vanish(r1, r2), f"{r1} (n) {r2} = 0")
    unit = CxElem.a(1)
    report.check(not cx_radical_membership(unit), "a(1, 0) not in Rad(C)")
    power = unit
    for _ in range(4):
        power = cx_product(power, unit, 0)
    report.check(not power.is_zero(), "a(1, 0) is not (0)-nilpotent")
    return report


def verify_theta(seed=20060126, count=20, degree=4):
    """theta is multiplicative for every n, its kernel is Rad(C), its image lies in Cend_1 (v - D)^2"""
    rng = random.Random(seed)
    report = CxCheckReport(name="theta")
    for _ in range(count):
        x, y = random_cx(rng, degree), random_cx(rng, degree)
        tx, ty = cx_theta(x), cx_theta(y)
        for n in range(cx_locality_bound(x, y)):
            report.check(cx_theta(cx_product(x, y, n)) == scalar_nth_product(tx, ty, n), f"theta(x (n) y), n={n}")
        report.check(cx_theta(x).is_zero() == cx_radical_membership(x), f"kernel test on {x}")
        report.check(theta_image_divisible(tx), f"theta({x}) divisible by (v - D)^2")
    return report
