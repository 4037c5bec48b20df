"""
Splitting off the radical: C = S + R with S semisimple, starting from a
unit of C/R and the block structure of the quotient.
"""
from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel

from conformal.cend import CendElem, brace_product, locality_bound, nth_product
from lifting.context import LiftContext, LiftReport, zero_power
from lifting.generator import lift_conformal_generator
from lifting.idempotents import lift_idempotent, lift_orthogonal_family
from lifting.matrix_units import MatrixUnitSystem, build_matrix_units, verify_cend_relations
from spans.algebra import (
    IdealPresentation,
    SubalgebraPresentation,
    close_subalgebra,
    pierce_decompose,
    radical_complement_check,
)
from spans.hspan import HSpan, SpanRecord, span_sum
from utils.errors import CendError, UnitHypothesisError
from utils.log import get_logger

logger = get_logger(__name__)


@dataclass
class BlockSpec:
    """
    One simple block of C/R: Curr_N ("curr") or Cend_N ("cend").

    ``diagonal`` holds preimages of the diagonal units, ``off_diagonal``
    preimages of e_1j and e_i1 keyed (0, j) and (i, 0).  A Cend block also
    needs a preimage of the generator v in the (1, 1) corner and the number
    of its powers spanned into S.
    """
    kind: str
    diagonal: list
    off_diagonal: dict = field(default_factory=dict)
    generator: Optional[CendElem] = None
    window: int = 3

    @property
    def size(self):
        return len(self.diagonal)

    @property
    def label(self):
        return f"{self.kind.capitalize()}_{self.size}"

    def unit_class(self):
        total = self.diagonal[0]
        for e in self.diagonal[1:]:
            total = total + e
        return total


class BlockRecord(BaseModel):
    kind: str
    size: int
    units: dict[str, str]
    generator: Optional[str] = None


class SplitRecord(BaseModel):
    """JSON form of a splitting"""
    rank: int
    unit: str
    blocks: list[BlockRecord]
    generators: list[str]
    span: SpanRecord
    report: LiftReport
    passed: bool


@dataclass
class SplitResult:
    span: HSpan
    unit: CendElem
    blocks: list
    generators: list
    report: LiftReport
    specs: list = field(default_factory=list)

    def record(self):
        cend = iter(self.generators)
        blocks = []
        for spec, units in zip(self.specs, self.blocks):
            x = next(cend) if spec.kind == "cend" else None
            blocks.append(BlockRecord(
                kind=spec.kind, size=units.size, units=units.to_dict(), generator=None if x is None else str(x)
            ))
        return SplitRecord(
            rank=self.span.rank,
            unit=str(self.unit),
            blocks=blocks,
            generators=[str(x) for x in self.generators],
            span=self.span.record(),
            report=self.report,
            passed=self.report.passed,
        )

    def to_dict(self):
        return self.record().model_dump()

    def lifted_specs(self):
        """Block data read off the lifted matrix units, for splitting S itself"""
        cend = iter(self.generators)
        specs = []
        for spec, units in zip(self.specs, self.blocks):
            off = {}
            for j in range(1, units.size):
                off[0, j] = units[0, j]
                off[j, 0] = units[j, 0]
            x = next(cend) if spec.kind == "cend" else None
            specs.append(BlockSpec(spec.kind, units.diagonal(), off, x, spec.window))
        return specs


def check_unit_hypothesis(ctx, unit_class, report):
    """
    The class must be an idempotent of C/R acting as a unit on both sides.

    Raises:
        UnitHypothesisError: with the first relation that fails modulo R
    """
    stage = "unit-lifting"
    zero = CendElem.zero(ctx.size)
    for n in range(locality_bound(unit_class, unit_class)):
        target = unit_class if n == 0 else zero
        diff = nth_product(unit_class, unit_class, n) - target
        if not ctx.in_ideal(diff):
            report.record(stage, f"u ({n}) u = delta_{{n,0}} u mod R", False, str(diff))
            raise UnitHypothesisError(stage, f"u ({n}) u = delta_{{n,0}} u mod R: C/R has no unit of this class", str(diff))
    report.record(stage, "u (n) u = delta_{n,0} u mod R", True)
    for x in ctx.algebra.basis:
        for label, diff in (
            ("u (0) x = x mod R", nth_product(unit_class, x, 0) - x),
            ("{x (0) u} = x mod R", brace_product(x, unit_class, 0) - x),
        ):
            if not ctx.in_ideal(diff):
                report.record(stage, label, False, str(diff))
                raise UnitHypothesisError(stage, f"{label}: C/R has no unit of this class", str(diff))
    report.record(stage, "u acts as a unit on C mod R", True)


def _cend_block(ctx_b, units, block, report):
    """x = sum e_i1 (0) x_1 (0) e_1i and the powers of x spanned into S"""
    e11 = units[0, 0]
    dec = pierce_decompose(ctx_b.algebra, e11)
    ctx11 = ctx_b.with_algebra(SubalgebraPresentation(dec.ee, ctx_b.algebra.closed_under_products), e11)
    x1 = lift_conformal_generator(ctx11, block.generator, report)
    x = CendElem.zero(ctx_b.size)
    for i in range(units.size):
        x = x + nth_product(nth_product(units[i, 0], x1, 0), units[0, i], 0)
    relations = verify_cend_relations(units, x)
    report.transcript.extend(relations.transcript)
    report.require("cend-relations", "Cend relations on (e_ij, x)", relations.passed)
    gens = []
    for k in range(1, block.window + 1):
        xk = zero_power(x, k)
        gens.extend(nth_product(e, xk, 0) for e in units.elements())
    return x, gens


def _diagonal_sum(systems, size):
    total = CendElem.zero(size)
    for units in systems:
        for e in units.diagonal():
            total = total + e
    return total


def _window_checks(ctx, span, top, report):
    """
    S + R = C and closure of S, both cut at v-degree ``top``: the elements
    of C and the products in S that reach past it are not tested.
    """
    stage = "verification"
    total = span_sum(span, ctx.ideal.span)
    total = total.with_bound(max(total.v_degree_bound, ctx.algebra.span.v_degree_bound))
    inside = [b for b in ctx.algebra.span.basis if b.v_degree <= top]
    missing = next((b for b in inside if not total.contains(b)), None)
    report.require(
        stage, f"S + R = C up to v-degree {top}", missing is None,
        f"{len(inside)} elements of C checked" if missing is None else str(missing),
    )
    checked = beyond = 0
    for x in span.basis:
        for y in span.basis:
            for n in range(locality_bound(x, y)):
                p = nth_product(x, y, n)
                if p.v_degree > top:
                    beyond += 1
                    continue
                checked += 1
                if not span.contains(p):
                    report.require(stage, f"S closed under products up to v-degree {top}", False, f"{x} ({n}) {y} = {p}")
    report.require(
        stage, f"S closed under products up to v-degree {top}", True,
        f"{checked} products checked, {beyond} past the window",
    )


def split_radical(ctx: LiftContext, unit_class: CendElem, blocks, report=None):
    """
    Returns:
        SplitResult with S, its unit (the sum of the diagonal matrix
        units), one MatrixUnitSystem per block and the Cend generators x

    Raises:
        UnitHypothesisError: ``unit_class`` is not a unit of C/R
        PreconditionError, VerificationError: a later stage fails
    """
    report = report or LiftReport(operation="split")
    blocks = list(blocks)

    report.stage("unit-lifting")
    check_unit_hypothesis(ctx, unit_class, report)
    e = lift_idempotent(ctx, unit_class, report)

    report.stage("pierce")
    dec = pierce_decompose(ctx.algebra, e)
    for name, part in (("(1-e) C e", dec.fe), ("e C (1-e)", dec.ef), ("(1-e) C (1-e)", dec.ff)):
        report.require("pierce", f"{name} lies in R", all(ctx.in_ideal(b) for b in part.basis))
    ctx0 = ctx.with_algebra(SubalgebraPresentation(dec.ee, ctx.algebra.closed_under_products), e)

    report.stage("block-idempotents")
    if len(blocks) == 1:
        block_units = [e]
    else:
        block_units = lift_orthogonal_family(ctx0, [b.unit_class() for b in blocks], report)

    systems, cend_gens, s_gens = [], [], []
    for idx, (block, unit) in enumerate(zip(blocks, block_units), start=1):
        report.stage(f"block {idx}: {block.label}")
        if block.size == 1:
            ctx_b = ctx0.with_algebra(ctx0.algebra, unit)
            idems = [unit]
        else:
            part = pierce_decompose(ctx0.algebra, unit)
            ctx_b = ctx0.with_algebra(SubalgebraPresentation(part.ee, ctx0.algebra.closed_under_products), unit)
            idems = lift_orthogonal_family(ctx_b, block.diagonal, report)
        units = build_matrix_units(ctx_b, idems, block.off_diagonal, report)
        systems.append(units)
        s_gens.extend(units.elements())
        if block.kind == "cend":
            if block.generator is None:
                raise CendError(f"{block.label} block needs a generator preimage")
            x, gens = _cend_block(ctx_b, units, block, report)
            cend_gens.append(x)
            s_gens.extend(gens)

    report.stage("verification")
    # the matrix units may differ from e by an element of R
    unit = _diagonal_sum(systems, ctx.size)
    report.require("verification", "sum of e_ii = e mod R", ctx.congruent(unit, e), str(unit))
    span = HSpan.of(s_gens, max([ctx.algebra.span.v_degree_bound] + [g.v_degree for g in s_gens]), ctx.size)
    report.require("verification", "sum of e_ii lies in S", span.contains(unit))
    zero_meet, covers = radical_complement_check(span, ctx.ideal.span, ctx.algebra.span)
    report.require("verification", "S n R = 0", zero_meet, f"rank S = {span.rank}, rank R = {ctx.ideal.span.rank}")
    if ctx.algebra.closed_under_products:
        report.require("verification", "S + R = C", covers)
        closed = close_subalgebra(span.basis, span.v_degree_bound, ctx.size)
        report.require("verification", "S closed under products", closed.span.rank == span.rank)
    else:
        _window_checks(ctx, span, max(g.v_degree for g in s_gens), report)
    report.keep("unit", unit)
    logger.info("split: rank S = %d, rank R = %d", span.rank, ctx.ideal.span.rank)
    return SplitResult(span, unit, systems, cend_gens, report, blocks)


def resplit(ctx: LiftContext, result: SplitResult, report=None):
    """
    Split S again, as an algebra with zero radical and its own matrix units
    as block data.  A splitting is stable when this returns S and its unit.
    """
    algebra = SubalgebraPresentation(result.span, ctx.algebra.closed_under_products, name="S")
    ideal = IdealPresentation(HSpan(ctx.size, result.span.v_degree_bound, []))
    ctx_s = LiftContext(algebra, ideal, result.unit, ctx.interpolation_d_degree, ctx.iteration_cap)
    return split_radical(ctx_s, result.unit, result.lifted_specs(), report or LiftReport(operation="resplit"))
