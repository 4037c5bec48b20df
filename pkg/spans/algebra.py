"""
Subalgebras, ideals and Pierce corners as bounded spans.
"""
from dataclasses import dataclass, field
from typing import Optional

from conformal.cend import CendElem, brace_product, is_idempotent, locality_bound, nth_product
from spans.hspan import HSpan, intersection_is_zero, span_sum
from utils.errors import DegreeBoundError, IterationCapError, PreconditionError
from utils.log import get_logger

logger = get_logger(__name__)


@dataclass
class SubalgebraPresentation:
    """
    A span that is a subalgebra.  Windows of algebras that are not
    generated in bounded v-degree carry ``closed_under_products = False``.
    """
    span: HSpan
    closed_under_products: bool = False
    bound_used: Optional[int] = None
    name: str = ""

    @classmethod
    def window(cls, generators, v_degree_bound, name=""):
        return cls(HSpan.of(generators, v_degree_bound), False, None, name)

    @property
    def size(self):
        return self.span.size

    @property
    def basis(self):
        return self.span.basis


@dataclass
class IdealPresentation:
    span: HSpan
    nilpotency_index: Optional[int] = None

    @property
    def size(self):
        return self.span.size

    @property
    def basis(self):
        return self.span.basis


@dataclass
class IdealVerdict:
    holds: bool
    witness: Optional[str] = None
    checked: int = 0

    def __bool__(self):
        return self.holds


def _products(x, y):
    for n in range(locality_bound(x, y)):
        p = nth_product(x, y, n)
        if not p.is_zero():
            yield n, p


def close_subalgebra(gens, v_degree_bound, size=None, max_rounds=64):
    """
    Saturate the Q[D]-span of ``gens`` under all n-products.

    D-multiples need no separate treatment: by sesqui-linearity the products
    of D g and g' lie in the span of products of g and g'.

    Raises:
        DegreeBoundError: a product leaves the v-degree window
    """
    gens = list(gens)
    if size is None:
        size = gens[0].size if gens else 1
    span = HSpan(size, v_degree_bound, gens)
    for rounds in range(1, max_rounds + 1):
        basis = span.basis
        fresh = []
        for x in basis:
            for y in basis:
                for n, p in _products(x, y):
                    if p.v_degree > v_degree_bound:
                        raise DegreeBoundError(
                            f"{x} ({n}) {y} has v-degree {p.v_degree} > {v_degree_bound}", str(p), v_degree_bound
                        )
                    if not span.contains(p):
                        span = span.extend([p])
                        fresh.append(p)
        logger.debug("closure round %d: %d new elements, rank %d", rounds, len(fresh), span.rank)
        if not fresh:
            return SubalgebraPresentation(span, True, v_degree_bound)
    raise IterationCapError("close-subalgebra", max_rounds)


def _ideal_relations(x, a):
    """(label, element) pairs that must lie in the ideal"""
    for n in range(max(locality_bound(x, a), locality_bound(a, x))):
        yield f"{x} ({n}) {a}", nth_product(x, a, n)
        yield f"{a} ({n}) {x}", nth_product(a, x, n)
        yield f"{{{a} ({n}) {x}}}", brace_product(a, x, n)
        yield f"{{{x} ({n}) {a}}}", brace_product(x, a, n)


def verify_ideal(ideal, algebra):
    """
    Two-sided ideal test: x (n) a, a (n) x and both brace products must
    reduce into the ideal for algebra generators x and ideal generators a.
    """
    span = ideal.span if isinstance(ideal, IdealPresentation) else ideal
    carrier = algebra.span if isinstance(algebra, SubalgebraPresentation) else algebra
    for a in span.basis:
        if not carrier.contains(a):
            raise PreconditionError("verify-ideal", "ideal is contained in the algebra", str(a))
    checked = 0
    for x in carrier.basis:
        for a in span.basis:
            for label, p in _ideal_relations(x, a):
                checked += 1
                if not span.contains(p):
                    return IdealVerdict(False, f"{label} = {p}", checked)
    return IdealVerdict(True, None, checked)


def product_span(left, right, v_degree_bound=None):
    """Q[D]-span of left (w) right"""
    gens = [p for x in left.basis for y in right.basis for _, p in _products(x, y)]
    bound = left.v_degree_bound if v_degree_bound is None else v_degree_bound
    bound = max([bound] + [g.v_degree for g in gens])
    return HSpan(left.size, bound, gens)


def ideal_powers(ideal, upto, v_degree_bound=None):
    """[I, I^2, ..., I^upto] with I^(k+1) = I (w) I^k"""
    span = ideal.span if isinstance(ideal, IdealPresentation) else ideal
    bound = span.v_degree_bound if v_degree_bound is None else v_degree_bound
    powers = [span.with_bound(max(bound, span.v_degree_bound))]
    while len(powers) < upto:
        powers.append(product_span(span, powers[-1], bound))
    return powers


def nilpotency_index(ideal, cap=16):
    """Smallest m with I^m = 0"""
    span = ideal.span if isinstance(ideal, IdealPresentation) else ideal
    power = span
    for m in range(1, cap + 1):
        if power.is_zero():
            logger.debug("nilpotency index %d", m)
            return m
        power = product_span(span, power)
    raise IterationCapError("nilpotency-index", cap)


@dataclass
class PierceDecomposition:
    idempotent: CendElem
    ee: HSpan
    fe: HSpan
    ef: HSpan
    ff: HSpan
    independent: bool = False
    sums_to_algebra: bool = False
    corners: dict = field(default_factory=dict)

    def spans(self):
        return [self.ee, self.fe, self.ef, self.ff]


def pierce_parts(x, e):
    """The four corner components of x for the idempotent e (they sum to x)"""
    right = brace_product(x, e, 0)
    ee = nth_product(e, right, 0)
    fe = right - ee
    rest = x - right
    ef = nth_product(e, rest, 0)
    ff = rest - ef
    return ee, fe, ef, ff


def pierce_decompose(algebra, e):
    """
    e (0) {C (0) e}, (1-e) (0) {C (0) e}, e (0) {C (0) (1-e)} and
    (1-e) (0) {C (0) (1-e)}
    """
    if not is_idempotent(e):
        raise PreconditionError("pierce", "e (n) e = delta_{n,0} e", str(e))
    span = algebra.span if isinstance(algebra, SubalgebraPresentation) else algebra
    if not e.is_zero() and not span.contains(e):
        raise PreconditionError("pierce", "e lies in the algebra", str(e))
    parts = [[], [], [], []]
    for x in span.basis:
        for bucket, part in zip(parts, pierce_parts(x, e)):
            bucket.append(part)
    bound = max([span.v_degree_bound] + [p.v_degree for bucket in parts for p in bucket])
    ee, fe, ef, ff = (HSpan(span.size, bound, bucket) for bucket in parts)
    total = span_sum(ee, fe, ef, ff)
    independent = total.rank == ee.rank + fe.rank + ef.rank + ff.rank
    widened = span.with_bound(bound)
    sums = total.rank == span.rank and all(widened.contains(b) for b in total.basis) and all(
        total.contains(b) for b in span.basis
    )
    logger.debug("pierce ranks %s", [ee.rank, fe.rank, ef.rank, ff.rank])
    return PierceDecomposition(e, ee, fe, ef, ff, independent, sums)


def corner(algebra, f):
    """f (0) {C (0) f} as a presentation of the same kind as ``algebra``"""
    dec = pierce_decompose(algebra, f)
    closed = algebra.closed_under_products if isinstance(algebra, SubalgebraPresentation) else False
    return SubalgebraPresentation(dec.ee, closed, getattr(algebra, "bound_used", None))


def radical_complement_check(s_span, r_span, c_span):
    """(S n R = 0, S + R = C) by rank and two-way membership"""
    zero_meet = intersection_is_zero(s_span, r_span)
    total = span_sum(s_span, r_span)
    bound = max(total.v_degree_bound, c_span.v_degree_bound)
    total, widened = total.with_bound(bound), c_span.with_bound(bound)
    covers = all(total.contains(b) for b in c_span.basis) and all(widened.contains(b) for b in total.basis)
    return zero_meet, covers


def corner_span(algebra, f):
    """
    The span of f (0) {x (0) f} over algebra generators x.  ``f`` only has
    to be a (0)-idempotent here.
    """
    span = algebra.span if isinstance(algebra, SubalgebraPresentation) else algebra
    parts = [nth_product(f, brace_product(x, f, 0), 0) for x in span.basis]
    bound = max([span.v_degree_bound] + [p.v_degree for p in parts])
    return HSpan(span.size, bound, parts)
