"""
Exhaustive identity checks for a triple (a, b, c) of Cend_n.

Every identity is checked for all n, m up to the largest locality bound of
the pairs involved plus ``margin``.  The checker takes the product as a
parameter so that a deliberately broken table can be fed through it.
"""
from math import comb
from typing import Optional

from pydantic import BaseModel

from conformal.cend import CendElem, brace_product, d_action, locality_bound, nth_product
from utils.log import get_logger

logger = get_logger(__name__)


class IdentityWitness(BaseModel):
    n: int
    m: Optional[int] = None
    lhs: str
    rhs: str


class IdentityResult(BaseModel):
    name: str
    passed: bool
    checked: int
    witness: Optional[IdentityWitness] = None


class IdentityReport(BaseModel):
    size: int
    index_bound: int
    a: str
    b: str
    c: str
    results: list[IdentityResult]

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]


def _sum(terms, size):
    out = CendElem.zero(size)
    for t in terms:
        out = out + t
    return out


def _identities(a, b, c, prod, brace):
    size = a.size
    da, db = d_action(a), d_action(b)

    def sesqui_left(n, m):
        return prod(da, b, n), prod(a, b, n - 1).scale(-n)

    def sesqui_right(n, m):
        return prod(a, db, n), d_action(prod(a, b, n)) + prod(a, b, n - 1).scale(n)

    def brace_sesqui_right(n, m):
        return brace(a, db, n), brace(a, b, n - 1).scale(-n)

    def brace_sesqui_left(n, m):
        return brace(da, b, n), d_action(brace(a, b, n)) + brace(a, b, n - 1).scale(n)

    def associativity(n, m):
        lhs = prod(prod(a, b, n), c, m)
        rhs = _sum((prod(a, prod(b, c, m + s), n - s).scale((-1) ** s * comb(n, s)) for s in range(n + 1)), size)
        return lhs, rhs

    def left_brace(n, m):
        return prod(a, brace(b, c, m), n), brace(prod(a, b, n), c, m)

    def brace_of_product(n, m):
        lhs = brace(a, prod(b, c, m), n)
        rhs = _sum((brace(brace(a, b, m - s), c, n + s).scale((-1) ** s * comb(m, s)) for s in range(m + 1)), size)
        return lhs, rhs

    def brace_of_brace(n, m):
        lhs = brace(a, brace(b, c, m), n)
        rhs = _sum((brace(brace(a, b, n + s), c, m - s).scale((-1) ** s * comb(m, s)) for s in range(m + 1)), size)
        return lhs, rhs

    def brace_then_product(n, m):
        lhs = prod(brace(a, b, n), c, m)
        rhs = _sum((prod(a, prod(b, c, n - s), m + s).scale((-1) ** s * comb(n, s)) for s in range(n + 1)), size)
        return lhs, rhs

    return [
        ("sesqui-linearity (left)", sesqui_left, False),
        ("sesqui-linearity (right)", sesqui_right, False),
        ("brace sesqui-linearity (left)", brace_sesqui_left, False),
        ("brace sesqui-linearity (right)", brace_sesqui_right, False),
        ("associativity", associativity, True),
        ("a(n){b(m)c} = {(a(n)b)(m)c}", left_brace, True),
        ("{a(n)(b(m)c)}", brace_of_product, True),
        ("{a(n){b(m)c}}", brace_of_brace, True),
        ("{a(n)b}(m)c", brace_then_product, True),
    ]


class ProductTable:
    """
    n-products and brace products memoized per (x, y, n).

    Intermediate elements come back as the same objects, so their hashes
    are computed once and nested products hit the table.
    """

    def __init__(self, product=nth_product):
        self.product = product
        self.exact = product is nth_product
        self._products = {}
        self._braces = {}
        self.hits = 0

    def prod(self, x, y, n):
        if n < 0 or (self.exact and n >= locality_bound(x, y)):
            return CendElem.zero(x.size)
        key = (x, y, n)
        out = self._products.get(key)
        if out is None:
            out = self._products[key] = self.product(x, y, n)
        else:
            self.hits += 1
        return out

    def brace(self, x, y, n):
        key = (x, y, n)
        out = self._braces.get(key)
        if out is None:
            out = self._braces[key] = brace_product(x, y, n, product=self.prod)
        else:
            self.hits += 1
        return out

    def __len__(self):
        return len(self._products) + len(self._braces)


def check_conformal_identities(a, b, c, margin=2, product=nth_product):
    """
    Check sesqui-linearity, associativity and the four brace identities

    Args:
        a, b, c: elements of the same Cend_n
        margin: extra indices checked past the locality bounds
        product: the n-product to test (defaults to the real one)

    Returns:
        IdentityReport with the first counterexample of every failed identity
    """
    bound = max(locality_bound(a, b), locality_bound(b, c), locality_bound(a, c)) + margin
    table = ProductTable(product)

    results = []
    for name, check, two_indices in _identities(a, b, c, table.prod, table.brace):
        checked = 0
        witness = None
        for n in range(bound + 1):
            for m in range(bound + 1) if two_indices else [None]:
                lhs, rhs = check(n, m)
                checked += 1
                if lhs != rhs:
                    witness = IdentityWitness(n=n, m=m, lhs=str(lhs), rhs=str(rhs))
                    break
            if witness is not None:
                break
        if witness is not None:
            logger.debug("identity %s fails at n=%s m=%s", name, witness.n, witness.m)
        results.append(IdentityResult(name=name, passed=witness is None, checked=checked, witness=witness))
    logger.debug("identities: %d products computed, %d reused", len(table), table.hits)
    return IdentityReport(size=a.size, index_bound=bound, a=str(a), b=str(b), c=str(c), results=results)


def identity_sweep(triples, margin=2, product=nth_product):
    """One report per triple"""
    return [check_conformal_identities(a, b, c, margin, product) for a, b, c in triples]


def anticommutator_product(a, b, n):
    """A broken table: the 0-product replaced by the matrix anticommutator"""
    if n == 0:
        return CendElem(a.matrix @ b.matrix + b.matrix @ a.matrix)
    return nth_product(a, b, n)
