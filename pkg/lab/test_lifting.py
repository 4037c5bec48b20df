import os
import sys

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../')))

from arith.poly import PolyDV
from config.settings import get_settings
from conformal.cend import CendElem, is_idempotent, nth_product
from lifting.context import PASS, SKIPPED, LiftContext, LiftReport
from lifting.fixtures import FIXTURES, load_fixture, stacked, unit
from lifting.generator import lift_conformal_generator
from lifting.idempotents import lift_idempotent, lift_idempotent_zero, lift_orthogonal_family
from lifting.matrix_units import MatrixUnitSystem, build_matrix_units, verify_cend_relations
from lifting.splitting import resplit, split_radical
from spans.algebra import IdealPresentation, SubalgebraPresentation
from spans.hspan import HSpan
from utils.errors import CendError, PreconditionError, UnitHypothesisError

E = CendElem.parse
D = PolyDV.D()


def context(name):
    return load_fixture(name).context(get_settings())


def standard_units(n):
    return MatrixUnitSystem(n, {(i, j): CendElem.unit(n, i, j) for i in range(n) for j in range(n)})


def test_fixture_registry():
    assert set(FIXTURES) >= {"triangular-3", "curr2-radical", "cend1-dual", "counterexample"}
    with pytest.raises(CendError):
        load_fixture("missing")


def test_triangular_fixture_nilpotency():
    assert context("triangular-3").nu == 3
    assert context("triangular-2").nu == 2
    assert context("curr2").nu == 1


def test_zero_lift_on_triangular_3():
    ctx = context("triangular-3")
    e0 = unit(3, 1, 1) + unit(3, 2, 2) + unit(3, 1, 2)
    report = LiftReport(operation="lift idempotent")
    e = lift_idempotent_zero(ctx, e0, report)
    assert e == unit(3, 1, 1) + unit(3, 2, 2)
    assert report.iterations["lift-idempotent"] == 1
    assert report.passed


def test_zero_lift_keeps_idempotents():
    ctx = context("triangular-3")
    e = unit(3, 1, 1)
    report = LiftReport(operation="lift idempotent")
    assert lift_idempotent_zero(ctx, e, report) == e
    assert report.iterations["lift-idempotent"] == 0
    assert lift_idempotent_zero(ctx, CendElem.zero(3)).is_zero()


def test_zero_lift_precondition():
    ctx = context("triangular-3")
    with pytest.raises(PreconditionError) as info:
        lift_idempotent_zero(ctx, unit(3, 1, 1, 2))
    assert info.value.stage == "lift-idempotent"


def test_full_lift_removes_higher_products():
    ctx = context("triangular-2")
    e0 = unit(2, 1, 1) + unit(2, 1, 2, D)
    assert not is_idempotent(e0)
    h = lift_idempotent(ctx, e0)
    assert h == unit(2, 1, 1)
    assert is_idempotent(h)


def test_orthogonal_family_on_triangular_2():
    ctx = context("triangular-2")
    assert lift_orthogonal_family(ctx, [unit(2, 1, 1), unit(2, 2, 2)]) == [unit(2, 1, 1), unit(2, 2, 2)]


def test_orthogonal_family_on_perturbed_classes():
    fx = load_fixture("triangular-3")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="lift family")
    family = lift_orthogonal_family(ctx, fx.family, report)
    assert family == [
        unit(3, 1, 1) + unit(3, 1, 2),
        unit(3, 2, 2) - unit(3, 1, 2),
        unit(3, 3, 3),
    ]
    assert report.passed
    for i, a in enumerate(family):
        for j, b in enumerate(family):
            for n in range(4):
                expected = a if (i == j and n == 0) else CendElem.zero(3)
                assert nth_product(a, b, n) == expected


def test_family_of_the_unit_class():
    ctx = context("triangular-3")
    (e,) = lift_orthogonal_family(ctx, [CendElem.identity(3)])
    assert is_idempotent(e)
    assert nth_product(e, unit(3, 2, 3), 0) == unit(3, 2, 3)


def test_empty_family():
    assert lift_orthogonal_family(context("triangular-3"), []) == []


def test_family_needs_a_unit():
    fx = load_fixture("annihilator")
    with pytest.raises(PreconditionError):
        lift_orthogonal_family(fx.context(), [unit(2, 1, 1)])


def test_generator_lift_in_cend1_with_zero_ideal():
    v = E("v")
    algebra = SubalgebraPresentation.window([E("1"), v, E("v^2")], 4)
    ctx = LiftContext(algebra, IdealPresentation(HSpan(1, 4, [])), E("1"))
    assert lift_conformal_generator(ctx, v) == v


def test_generator_lift_on_upper_cend2():
    ctx = context("upper-cend2")
    report = LiftReport(operation="lift generator")
    x = lift_conformal_generator(ctx, E("[[v, v^2], [0, v]]"), report)
    assert x == E("[[v, 0], [0, v]]")
    assert report.passed


def test_generator_lift_on_the_dual_numbers():
    fx = load_fixture("cend1-dual")
    x = lift_conformal_generator(fx.context(), fx.generator)
    assert x == E("[[v, D*v], [0, v]]")
    assert nth_product(x, fx.unit, 0) == x
    assert nth_product(fx.unit, x, 1) == fx.unit


def test_generator_precondition():
    ctx = context("upper-cend2")
    with pytest.raises(PreconditionError):
        lift_conformal_generator(ctx, E("[[v, 0], [0, 0]]"))


def test_matrix_units_on_curr2_with_radical():
    fx = load_fixture("curr2-radical")

    def e(i, j, p=1):
        return unit(2, i, j, p)

    report = LiftReport(operation="lift matrix-units")
    units = build_matrix_units(fx.context(), fx.idempotents, fx.preimages, report)
    assert units[0, 0] == stacked(e(1, 1), e(1, 1, D))
    assert units[1, 1] == stacked(e(2, 2), e(2, 2, D))
    assert units[0, 1] == stacked(e(1, 2), e(1, 2, D + 1))
    assert units[1, 0] == stacked(e(2, 1), e(2, 1, D - 1))
    assert units.relation_failures(margin=2) == []
    assert report.passed


def test_matrix_units_with_zero_radical():
    fx = load_fixture("curr2")
    units = build_matrix_units(fx.context(), fx.idempotents, fx.preimages)
    assert units.to_dict() == {f"e{i}{j}": str(unit(2, i, j)) for i in (1, 2) for j in (1, 2)}


def test_single_matrix_unit():
    ctx = context("triangular-3")
    units = build_matrix_units(ctx, [unit(3, 3, 3)], {})
    assert units.elements() == [unit(3, 3, 3)]


def test_cend_relations():
    for n in (2, 3):
        v = CendElem.scalar(n, PolyDV.v())
        assert verify_cend_relations(standard_units(n), v).passed
    assert verify_cend_relations(standard_units(1), E("v")).passed


def test_cend_relations_fail_for_v_squared():
    report = verify_cend_relations(standard_units(2), CendElem.scalar(2, E("v^2")[0, 0]))
    assert not report.passed
    failed = [c.relation for c in report.transcript if c.status == "fail"]
    assert "e11 (n) x = 0 for n >= 2" in failed


def test_split_triangular_3():
    fx = load_fixture("triangular-3")
    ctx = fx.context()
    result = split_radical(ctx, fx.unit_class, fx.blocks)
    assert result.report.passed
    assert result.span.rank == 3
    assert result.unit == CendElem.identity(3)
    # the lifted S is already split: lifting its unit again changes nothing
    report = LiftReport(operation="lift idempotent")
    assert lift_idempotent_zero(ctx, result.unit, report) == result.unit
    assert report.iterations["lift-idempotent"] == 0


def test_split_without_radical():
    fx = load_fixture("curr2")
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert result.span.rank == 4
    assert fx.algebra.span.contains_span(result.span)


def test_split_curr2_with_radical():
    fx = load_fixture("curr2-radical")
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert result.report.passed
    assert result.span.rank == 4
    assert len(result.blocks) == 1


def test_split_finite_algebra_with_annihilating_radical():
    fx = load_fixture("annihilator")
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert result.span.rank == 1
    assert result.span.contains(unit(2, 1, 1))


def test_split_window_verifies_closure_up_to_the_window():
    fx = load_fixture("cend1-dual")
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert result.report.passed
    assert result.generators == [E("[[v, D*v], [0, v]]")]
    assert not [c for c in result.report.transcript if c.status == SKIPPED]
    status = {c.relation: c.status for c in result.report.transcript if c.stage == "verification"}
    assert status["S + R = C up to v-degree 3"] == PASS
    assert status["S closed under products up to v-degree 3"] == PASS


def test_split_counterexample_fails_at_unit_lifting():
    fx = load_fixture("counterexample")
    with pytest.raises(UnitHypothesisError) as info:
        split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert info.value.stage == "unit-lifting"


SPLITTABLE = ["triangular-2", "triangular-3", "curr2", "curr2-radical", "cend1-dual", "annihilator"]


@pytest.mark.parametrize("name", SPLITTABLE)
def test_split_unit_is_the_sum_of_the_diagonal_units(name):
    fx = load_fixture(name)
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    assert result.report.passed
    assert result.span.contains(result.unit)
    total = CendElem.zero(fx.algebra.size)
    for units in result.blocks:
        for e in units.diagonal():
            total = total + e
    assert total == result.unit
    assert is_idempotent(result.unit)


def test_split_unit_on_curr2_with_radical():
    fx = load_fixture("curr2-radical")
    result = split_radical(fx.context(), fx.unit_class, fx.blocks)
    expected = CendElem.identity(4) + unit(4, 1, 3, D) + unit(4, 2, 4, D)
    assert result.unit == expected
    assert fx.context().congruent(result.unit, CendElem.identity(4))


@pytest.mark.parametrize("name", ["triangular-3", "curr2", "curr2-radical"])
def test_splitting_s_again_returns_s(name):
    fx = load_fixture(name)
    ctx = fx.context()
    first = split_radical(ctx, fx.unit_class, fx.blocks)
    again = resplit(ctx, first)
    assert again.report.passed
    assert again.unit == first.unit
    assert again.span.contains_span(first.span)
    assert first.span.contains_span(again.span)


def test_split_record():
    fx = load_fixture("curr2-radical")
    record = split_radical(fx.context(), fx.unit_class, fx.blocks).record()
    assert record.passed
    assert record.rank == 4
    assert [b.kind for b in record.blocks] == ["curr"]
    assert set(record.blocks[0].units) == {"e11", "e12", "e21", "e22"}
    assert record.span.rank == 4
