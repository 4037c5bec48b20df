"""
Q[D]-submodules of Cend_n with a bounded v-degree.

Coordinates: an element with v-degree <= B is a vector over Q[D] indexed by
(i, j, k) for the coefficient of v^k in entry (i, j); columns are ordered
lexicographically by (matrix position, v-degree).
"""
import json
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV
from conformal.cend import CendElem
from spans.echelon import hermite_form, reduce_vector
from utils.errors import DegreeBoundError, SizeMismatchError
from utils.log import get_logger

logger = get_logger(__name__)


def to_vector(x, bound):
    """Flatten an element into Q[D]-coordinates"""
    if x.v_degree > bound:
        raise DegreeBoundError(f"v-degree {x.v_degree} exceeds the window bound {bound}", str(x), bound)
    vec = []
    for _, _, entry in x.entries():
        for k in range(bound + 1):
            vec.append(PolyV(entry.coeff(a, k) for a in range(entry.d_degree + 1)))
    return vec


def from_vector(vec, size, bound):
    rows = []
    width = bound + 1
    for i in range(size):
        row = []
        for j in range(size):
            chunk = vec[(i * size + j) * width:(i * size + j + 1) * width]
            terms = [(a, k, c) for k, f in enumerate(chunk) for a, c in enumerate(f.coeffs) if c]
            row.append(PolyDV.from_terms(terms))
        rows.append(row)
    return CendElem(MatrixDV(rows))


class SpanRecord(BaseModel):
    """A span as written to JSON and YAML documents"""
    size: int
    v_degree_bound: int
    rank: int
    generators: list[str]


@dataclass
class Membership:
    member: bool
    witness: Optional[list] = None
    remainder: Optional[CendElem] = None

    def __bool__(self):
        return self.member


class HSpan:
    """A Q[D]-span of finitely many elements of Cend_n, echelonized eagerly"""

    def __init__(self, size, v_degree_bound, generators=()):
        self.size = size
        self.v_degree_bound = v_degree_bound
        self.generators = list(generators)
        for g in self.generators:
            if g.size != size:
                raise SizeMismatchError(f"Cend_{size}", f"Cend_{g.size}")
            if g.v_degree > v_degree_bound:
                raise DegreeBoundError(
                    f"generator {g} has v-degree {g.v_degree} > {v_degree_bound}", str(g), v_degree_bound
                )
        self.width = size * size * (v_degree_bound + 1)
        self.echelon = hermite_form([to_vector(g, v_degree_bound) for g in self.generators], self.width)
        self._basis = None

    @classmethod
    def of(cls, generators, v_degree_bound=None, size=None):
        """Span with the bound defaulting to the largest generator v-degree"""
        generators = list(generators)
        if size is None:
            if not generators:
                raise ValueError("size is required for an empty span")
            size = generators[0].size
        if v_degree_bound is None:
            v_degree_bound = max((max(g.v_degree, 0) for g in generators), default=0)
        return cls(size, v_degree_bound, generators)

    @property
    def basis(self):
        """Echelon generators as elements"""
        if self._basis is None:
            self._basis = [from_vector(r.entries, self.size, self.v_degree_bound) for r in self.echelon]
        return self._basis

    @property
    def rank(self):
        """Rank over the fraction field Q(D)"""
        return len(self.echelon)

    @property
    def pivots(self):
        return [r.pivot for r in self.echelon]

    def is_zero(self):
        return not self.echelon

    def extend(self, extra, v_degree_bound=None):
        bound = self.v_degree_bound if v_degree_bound is None else v_degree_bound
        return HSpan(self.size, bound, self.basis + list(extra))

    def with_bound(self, v_degree_bound):
        return HSpan(self.size, v_degree_bound, self.basis)

    def contains(self, x):
        """Membership that answers False for elements outside the window"""
        if x.v_degree > self.v_degree_bound:
            return False
        return membership(x, self).member

    def contains_span(self, other):
        return all(self.contains(x) for x in other.basis)

    def record(self):
        return SpanRecord(
            size=self.size, v_degree_bound=self.v_degree_bound, rank=self.rank, generators=[str(b) for b in self.basis]
        )

    def to_dict(self):
        return self.record().model_dump()

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        gens = [CendElem.parse(text) for text in data.get("generators", [])]
        size = data.get("size") or (gens[0].size if gens else 1)
        return cls(size, int(data["v_degree_bound"]), gens)

    def __repr__(self):
        return f"HSpan(size={self.size}, bound={self.v_degree_bound}, rank={self.rank})"


def membership(x, span):
    """
    Decide x in span.

    The witness is the list of Q[D]-coefficients (PolyV in D) of x over
    ``span.generators``.
    """
    if x.size != span.size:
        raise SizeMismatchError(f"Cend_{span.size}", f"Cend_{x.size}")
    vec = to_vector(x, span.v_degree_bound)
    rem, witness = reduce_vector(vec, span.echelon, len(span.generators))
    if all(r.is_zero() for r in rem):
        return Membership(True, witness, None)
    return Membership(False, None, from_vector(rem, span.size, span.v_degree_bound))


def quotient_reduce(x, ideal):
    """Canonical representative of x + ideal"""
    if x.size != ideal.size:
        raise SizeMismatchError(f"Cend_{ideal.size}", f"Cend_{x.size}")
    vec = to_vector(x, ideal.v_degree_bound)
    rem, _ = reduce_vector(vec, ideal.echelon, len(ideal.generators))
    return from_vector(rem, ideal.size, ideal.v_degree_bound)


def span_sum(*spans):
    size = spans[0].size
    bound = max(s.v_degree_bound for s in spans)
    return HSpan(size, bound, [b for s in spans for b in s.basis])


def intersection_is_zero(left, right):
    """S n R = 0 iff rank(S + R) = rank S + rank R"""
    return span_sum(left, right).rank == left.rank + right.rank
