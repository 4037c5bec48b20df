import os
import random
import sys

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from arith.poly import PolyV
from conformal.cend import CendElem, nth_product
from conformal.random_elements import random_cend
from utils.errors import ModuleOverflowError, NotConformalError, ParseError
from weyl.algebra import WeylOp, WeylPoly, rewrite_word, weyl_normal_form
from weyl.module import TruncatedModule, act_on_module, check_module_axioms
from weyl.realization import OperatorSequence, cross_check_operator_product, interpolate_conformal, realize
from weyl.tc import tc_fixture_check

W = WeylPoly.parse


def op(w):
    return WeylOp([[w]])


def test_canonical_commutation():
    assert rewrite_word([(1, "qp")]) == W("p*q + 1")
    assert rewrite_word([(1, "qqp")]) == W("p*q^2 + 2*q")
    assert rewrite_word([(1, "pq")]) == W("p*q")
    assert str(rewrite_word([(1, "qqp")])) == "p*q^2 + 2*q"


def test_rewriting_rejects_other_letters():
    with pytest.raises(ParseError):
        rewrite_word([(1, "pxq")])


def test_normal_form_of_expressions():
    assert weyl_normal_form("q*p - p*q") == WeylPoly.constant(1)
    assert weyl_normal_form([(2, "qp"), (-2, "pq")]) == WeylPoly.constant(2)


def test_rewriting_is_confluent():
    rng = random.Random(20)
    for _ in range(40):
        word = "".join(rng.choice("pq") for _ in range(rng.randint(1, 7)))
        letters = [WeylPoly.p() if ch == "p" else WeylPoly.q() for ch in word]
        left = WeylPoly.constant(1)
        for x in letters:
            left = left * x
        right = WeylPoly.constant(1)
        for x in reversed(letters):
            right = x * right
        split = rng.randint(0, len(word))
        middle = rewrite_word([(1, word[:split])]) * rewrite_word([(1, word[split:])])
        assert rewrite_word([(1, word)]) == left == right == middle


def test_realize_examples():
    for k in range(4):
        assert realize(CendElem.parse("v"), k) == op(WeylPoly.monomial(1, k))
    assert realize(CendElem.parse("D"), 0) == WeylOp.zero(1)
    for k in range(1, 4):
        assert realize(CendElem.parse("D"), k) == op(WeylPoly.monomial(0, k - 1, -k))
    assert realize(CendElem.zero(2), 3) == WeylOp.zero(2)


def test_current_units_realize_to_q_powers():
    e12 = CendElem.unit(2, 0, 1)
    got = realize(e12, 2)
    assert got[0, 1] == W("q^2")
    assert got[0, 0].is_zero()


def test_operator_product_cross_check():
    v = CendElem.parse("v")
    assert cross_check_operator_product(v, v, 1, 1)
    assert cross_check_operator_product(v, CendElem.zero(1), 2, 0)


def test_operator_product_on_random_pairs():
    rng = random.Random(5)
    for _ in range(5):
        a = random_cend(rng, 2, 1, 2)
        b = random_cend(rng, 2, 1, 2)
        for n in range(3):
            for m in range(3):
                assert cross_check_operator_product(a, b, n, m)


def test_translation_invariance_of_realized_elements():
    a = CendElem.parse("[[D*v^2 + v, D^2], [1, v^3]]")
    assert OperatorSequence.of(a, 6).translation_defects() == []


def test_broken_sequence_is_rejected():
    p = op(WeylPoly.p())
    seq = OperatorSequence([p, p, p])
    assert seq.translation_defects() == [1, 2]
    with pytest.raises(NotConformalError):
        interpolate_conformal(seq, 1, 1, 1)


def test_interpolate_examples():
    seq = OperatorSequence([op(W("p")), op(W("p*q")), op(W("p*q^2"))])
    assert interpolate_conformal(seq, 1, 1, 1) == CendElem.parse("v")
    zero = OperatorSequence([WeylOp.zero(2)] * 3)
    assert interpolate_conformal(zero, 2, 1, 0).is_zero()
    v2 = CendElem.parse("v^2")
    assert interpolate_conformal(OperatorSequence.of(v2, 3), 1, 1, 2) == v2


def test_interpolate_needs_enough_operators():
    seq = OperatorSequence.of(CendElem.parse("v"), 2)
    with pytest.raises(NotConformalError):
        interpolate_conformal(seq, 1, 1, 1)


def test_interpolate_respects_degree_window():
    seq = OperatorSequence.of(CendElem.parse("D^2*v"), 5)
    with pytest.raises(NotConformalError):
        interpolate_conformal(seq, 1, 1, 1)
    seq = OperatorSequence.of(CendElem.parse("v^3"), 4)
    with pytest.raises(NotConformalError):
        interpolate_conformal(seq, 1, 2, 2)


def test_realize_then_interpolate_recovers_random_elements():
    rng = random.Random(9)
    for _ in range(10):
        a = random_cend(rng, 2, 2, 3)
        seq = OperatorSequence.of(a, 5)
        assert interpolate_conformal(seq, 2, 3, 3) == a


def test_power_sequence_of_a_zero_idempotent():
    # f (0) f = f but f (1) f != 0; b(0) = f(0), b(n) = (f(1) f(0))^n is E11
    f = CendElem.parse("[[1, D], [0, 0]]")
    assert nth_product(f, f, 0) == f
    assert not nth_product(f, f, 1).is_zero()
    first = realize(f, 0)
    seq = OperatorSequence.powers(first, realize(f, 1) * first, 5)
    assert seq.translation_defects() == []
    assert interpolate_conformal(seq, 2, 3, 1) == CendElem.unit(2, 0, 0)


def test_module_action():
    module = TruncatedModule(1, 8)
    t = module.basis(1, 0)
    assert act_on_module(op(WeylPoly.p()), t, module) == module.basis(2, 0)
    assert act_on_module(op(WeylPoly.q()), module.basis(2, 0), module) == module.vector(PolyV((0, 2)))
    assert act_on_module(realize(CendElem.parse("v"), 1), t, module) == t


def test_module_overflow():
    module = TruncatedModule(1, 2)
    with pytest.raises(ModuleOverflowError):
        act_on_module(op(WeylPoly.p()), module.basis(2, 0), module)


def test_module_axioms():
    module = TruncatedModule(2, 16)
    a = CendElem.parse("[[D + v, v^2], [0, D*v]]")
    u = module.vector(PolyV((1, 2)), PolyV((0, 0, 1)))
    for n in range(4):
        check = check_module_axioms(a, u, n, module)
        assert check.sesqui_linear
        assert check.local


def test_tc_fixtures():
    assert tc_fixture_check("curr", max_index=3, n=2).passed
    assert tc_fixture_check("cend-q", max_index=2, q=PolyV.monomial(2)).passed
    assert tc_fixture_check("cend-q", max_index=2, q=PolyV.constant(1)).passed


def test_tc_unknown_fixture():
    with pytest.raises(ValueError):
        tc_fixture_check("nope")
