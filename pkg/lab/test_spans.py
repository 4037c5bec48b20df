import os
import sys

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from arith.poly import PolyDV, PolyV
from conformal.cend import CendElem
from spans.algebra import (
    IdealPresentation,
    close_subalgebra,
    corner_span,
    nilpotency_index,
    pierce_decompose,
    radical_complement_check,
    verify_ideal,
)
from spans.echelon import hermite_form
from spans.hspan import HSpan, intersection_is_zero, membership, quotient_reduce, span_sum
from utils.errors import DegreeBoundError, PreconditionError

E = CendElem.parse


def unit(n, i, j, p=1):
    return CendElem.unit(n, i - 1, j - 1, p)


def curr(n):
    return [unit(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def upper(n):
    return [unit(n, i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def strict(n):
    return [unit(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def combine(witness, gens):
    out = CendElem.zero(gens[0].size)
    for c, g in zip(witness, gens):
        out = out + g.scale(PolyDV.from_d(c))
    return out


def test_membership_with_witness():
    g = E("[[1, v], [0, 0]]")
    span = HSpan.of([g], 2)
    result = membership(g.scale(PolyDV.D()), span)
    assert result.member
    assert result.witness == [PolyV.var()]


def test_membership_of_a_combination():
    g1, g2 = E("[[v, 0], [0, 1]]"), E("[[0, D], [v^2, 0]]")
    span = HSpan.of([g1, g2])
    x = g1 + g2.scale(3)
    result = membership(x, span)
    assert result.member
    assert combine(result.witness, span.generators) == x


def test_non_member_has_a_remainder():
    span = HSpan.of([unit(2, 1, 1), unit(2, 1, 2)], 0)
    result = membership(unit(2, 2, 2), span)
    assert not result.member
    assert not result.remainder.is_zero()
    assert HSpan.of([unit(2, 1, 1), unit(2, 1, 2), unit(2, 2, 2)], 0).rank == span.rank + 1


def test_contains_is_false_beyond_the_window():
    span = HSpan.of([E("v")], 1)
    assert span.contains(E("D*v"))
    assert not span.contains(E("v^2"))


def test_generator_outside_the_window_is_rejected():
    with pytest.raises(DegreeBoundError):
        HSpan(1, 1, [E("v^2")])


def test_rank_is_taken_over_q_of_d():
    # D*E11 and E11 are dependent over Q(D) but span different modules
    span = HSpan.of([unit(2, 1, 1, PolyDV.D())], 0)
    assert span.rank == 1
    assert not span.contains(unit(2, 1, 1))
    assert span.contains(unit(2, 1, 1, PolyDV.D() * PolyDV.D()))


def test_hermite_form_is_reduced():
    rows = [[PolyV((0, 1)), PolyV((1,))], [PolyV((1,)), PolyV((0, 0, 1))]]
    echelon = hermite_form(rows, 2)
    assert len(echelon) == 2


def test_curr2_is_closed():
    presentation = close_subalgebra(curr(2), 0)
    assert presentation.closed_under_products
    assert presentation.span.rank == 4


def test_closure_hits_the_degree_bound():
    with pytest.raises(DegreeBoundError):
        close_subalgebra([E("v")], 2)


def test_empty_closure():
    presentation = close_subalgebra([], 0, size=1)
    assert presentation.span.is_zero()


def test_strict_upper_is_an_ideal():
    algebra = close_subalgebra(upper(2), 0)
    ideal = IdealPresentation(HSpan.of(strict(2), 0))
    assert verify_ideal(ideal, algebra)
    assert verify_ideal(IdealPresentation(algebra.span), algebra)


def test_non_ideal_reports_a_witness():
    algebra = close_subalgebra(curr(2), 0)
    verdict = verify_ideal(IdealPresentation(HSpan.of([unit(2, 1, 2)], 0)), algebra)
    assert not verdict
    assert verdict.witness


def test_ideal_must_lie_in_the_algebra():
    algebra = close_subalgebra(upper(2), 0)
    with pytest.raises(PreconditionError):
        verify_ideal(HSpan.of([unit(2, 2, 1)], 0), algebra)


def test_nilpotency_index():
    assert nilpotency_index(HSpan.of(strict(2), 0)) == 2
    assert nilpotency_index(HSpan.of(strict(3), 0)) == 3
    assert nilpotency_index(HSpan(2, 0, [])) == 1


def test_quotient_reduce():
    ideal = HSpan.of(strict(2), 0)
    x = unit(2, 1, 1) + unit(2, 1, 2, PolyDV.D())
    assert quotient_reduce(x, ideal) == unit(2, 1, 1)
    assert quotient_reduce(unit(2, 1, 2, PolyDV.D()), ideal).is_zero()
    y = unit(2, 1, 1) + unit(2, 1, 2, 7)
    assert quotient_reduce(x, ideal) == quotient_reduce(y, ideal)


def test_pierce_decomposition_of_curr2():
    algebra = close_subalgebra(curr(2), 0)
    dec = pierce_decompose(algebra, unit(2, 1, 1))
    assert [s.rank for s in dec.spans()] == [1, 1, 1, 1]
    assert dec.ee.contains(unit(2, 1, 1))
    assert dec.fe.contains(unit(2, 2, 1))
    assert dec.ef.contains(unit(2, 1, 2))
    assert dec.ff.contains(unit(2, 2, 2))
    assert dec.independent and dec.sums_to_algebra


def test_pierce_with_unit_and_zero():
    algebra = close_subalgebra(curr(2), 0)
    dec = pierce_decompose(algebra, CendElem.identity(2))
    assert dec.ee.rank == 4
    assert dec.fe.is_zero() and dec.ef.is_zero() and dec.ff.is_zero()
    dec = pierce_decompose(algebra, CendElem.zero(2))
    assert dec.ff.rank == 4
    assert dec.ee.is_zero()


def test_pierce_needs_an_idempotent():
    algebra = close_subalgebra(curr(2), 0)
    with pytest.raises(PreconditionError):
        pierce_decompose(algebra, unit(2, 1, 2))


def test_corner_span_of_a_diagonal_unit():
    algebra = close_subalgebra(upper(3), 0)
    corner = corner_span(algebra, unit(3, 2, 2))
    assert corner.rank == 1
    assert corner.contains(unit(3, 2, 2))


def test_radical_complement():
    algebra = close_subalgebra(upper(3), 0)
    s = HSpan.of([unit(3, k, k) for k in (1, 2, 3)], 0)
    r = HSpan.of(strict(3), 0)
    assert radical_complement_check(s, r, algebra.span) == (True, True)
    assert intersection_is_zero(s, r)
    assert not intersection_is_zero(span_sum(s, r), r)
    partial = HSpan.of([unit(3, 1, 1)], 0)
    assert radical_complement_check(partial, r, algebra.span) == (True, False)


def test_span_document():
    span = HSpan.of([E("[[v, D], [0, 1]]"), E("[[1, 0], [0, v]]")], 2)
    doc = span.to_dict()
    assert doc["rank"] == 2
    assert doc["v_degree_bound"] == 2
    assert HSpan.from_dict(doc).rank == 2
