"""
Idempotent lifting modulo a nilpotent ideal.
"""
from math import ceil, log2

from conformal.cend import CendElem, brace_product, is_idempotent, locality_bound, nth_product
from lifting.context import LiftContext, LiftReport
from spans.algebra import SubalgebraPresentation, corner_span
from utils.errors import IterationCapError, NotConformalError, PreconditionError
from utils.log import get_logger
from weyl.realization import OperatorSequence, interpolate_conformal, realize

logger = get_logger(__name__)


def _star(*factors):
    """Left-nested (0)-product of the factors"""
    out = factors[0]
    for f in factors[1:]:
        out = nth_product(out, f, 0)
    return out


def _orthogonal(a, b):
    """a (n) b = 0 for every n"""
    return all(nth_product(a, b, n).is_zero() for n in range(locality_bound(a, b)))


def lift_idempotent_zero(ctx: LiftContext, e0: CendElem, report=None):
    """
    Lift a (0)-idempotent modulo I to an exact one.

    Iterates e <- 3 e(0)e - 2 e(0)e(0)e; the defect e(0)e - e lands in
    I^(2^k) after k rounds.

    Raises:
        PreconditionError: e0 (0) e0 - e0 is not in I
        IterationCapError: no convergence within ``ctx.iteration_cap`` rounds
    """
    report = report or LiftReport(operation="lift-idempotent")
    stage = "lift-idempotent"
    square = _star(e0, e0)
    report.precondition(stage, "e0 (0) e0 - e0 in I", ctx.in_ideal(square - e0), str(square - e0))
    e = e0
    rounds = 0
    while square != e:
        if rounds >= ctx.iteration_cap:
            raise IterationCapError(stage, ctx.iteration_cap)
        e = 3 * square - 2 * _star(square, e)
        square = _star(e, e)
        rounds += 1
        logger.debug("idempotent lift round %d: %s", rounds, e)
    report.count(stage, rounds)
    bound = ceil(log2(ctx.nu)) if ctx.nu > 1 else 0
    report.record(stage, f"rounds <= ceil(log2 {ctx.nu})", rounds <= bound, f"{rounds} rounds")
    report.require(stage, "e (0) e = e", square == e)
    report.require(stage, "e - e0 in I", ctx.in_ideal(e - e0))
    report.keep("idempotent", e)
    return e


def _idempotent_sequence(f, length):
    """b(0) = f(0), b(n) = (f(1) f(0))^n"""
    first = realize(f, 0)
    return OperatorSequence.powers(first, realize(f, 1) * first, length)


def lift_idempotent(ctx: LiftContext, e0: CendElem, report=None, carrier=None):
    """
    Lift to an idempotent for every n: e (n) e = delta_{n,0} e.

    After the (0)-lift, a remaining defect is removed by interpolating the
    operator sequence b(0) = f(0), b(n) = (f(1)f(0))^n.  When ``carrier`` is
    given, the result is also checked to lie in it.
    """
    report = report or LiftReport(operation="lift-idempotent")
    stage = "lift-idempotent"
    f = lift_idempotent_zero(ctx, e0, report)
    if is_idempotent(f):
        return f
    d = ctx.interpolation_d_degree
    seq = _idempotent_sequence(f, d + 3)
    try:
        h = interpolate_conformal(seq, ctx.size, d, ctx.v_window)
    except NotConformalError as exc:
        report.record(stage, "interpolate b(n) = (f(1)f(0))^n", False, str(exc))
        raise
    logger.debug("full idempotent lift %s -> %s", f, h)
    report.require(stage, "h (n) h = delta_{n,0} h", is_idempotent(h), str(h))
    report.require(stage, "h - e0 in I", ctx.in_ideal(h - e0))
    if carrier is not None:
        if carrier.v_degree_bound >= h.v_degree:
            report.require(stage, "h lies in the corner", carrier.contains(h))
        else:
            report.skip(stage, "h lies in the corner")
    report.keep("idempotent", h)
    return h


def check_family(ctx, family, report, stage="lift-family"):
    """Hypotheses on the classes e_i modulo I"""
    e0 = ctx.unit
    for i, a in enumerate(family):
        for j, b in enumerate(family):
            for n in range(locality_bound(a, b)):
                target = a if (i == j and n == 0) else CendElem.zero(ctx.size)
                diff = nth_product(a, b, n) - target
                report.precondition(stage, f"e{i + 1} ({n}) e{j + 1} = delta e{j + 1} mod I", ctx.in_ideal(diff), str(diff))
        diff = brace_product(a, e0, 0) - a
        report.precondition(stage, f"{{e{i + 1} (0) e0}} = e{i + 1} mod I", ctx.in_ideal(diff), str(diff))


def _zero_family(ctx, family, report):
    """(0)-orthogonal lifts f_i inside successive corners of e0 - f_1 - ... - f_k"""
    e0 = ctx.unit
    lifted = []
    for k, cls in enumerate(family):
        f = e0
        for prev in lifted:
            f = f - prev
        r = nth_product(f, brace_product(cls, f, 0), 0)
        fk = lift_idempotent_zero(ctx, r, report)
        report.count(f"lift-family f{k + 1}", report.iterations.get("lift-idempotent", 0))
        lifted.append(fk)
    for i, fi in enumerate(lifted):
        report.require("lift-family", f"{{f{i + 1} (0) e0}} = f{i + 1}", brace_product(fi, e0, 0) == fi)
        for j, fj in enumerate(lifted):
            target = fj if i == j else CendElem.zero(ctx.size)
            report.require("lift-family", f"f{i + 1} (0) f{j + 1} = delta f{j + 1}", nth_product(fi, fj, 0) == target)
    return lifted


def lift_orthogonal_family(ctx: LiftContext, family, report=None):
    """
    Pairwise orthogonal idempotents e_1, ..., e_N lifting the classes in
    ``family``.

    First every class is (0)-lifted inside the corner of what is left of
    the unit.  Each f_k is then lifted again, for all n, inside its own
    corner f_k (0) {C (0) f_k}.

    Raises:
        PreconditionError: no unit in the context, or a class fails its
            relations modulo I
        VerificationError: the lifted family is not orthogonal
    """
    report = report or LiftReport(operation="lift-family")
    stage = "lift-family"
    if ctx.unit is None:
        raise PreconditionError(stage, "the context carries a unit e0")
    family = list(family)
    if not family:
        return []
    check_family(ctx, family, report)
    fs = _zero_family(ctx, family, report)
    out = []
    for k, fk in enumerate(fs):
        carrier = corner_span(ctx.algebra, fk)
        r = nth_product(fk, brace_product(fk, fk, 0), 0)
        sub_ctx = ctx.with_algebra(SubalgebraPresentation(carrier, ctx.algebra.closed_under_products), ctx.unit)
        ek = lift_idempotent(sub_ctx, r, report, carrier if ctx.algebra.closed_under_products else None)
        report.require(stage, f"e{k + 1} - class in I", ctx.in_ideal(ek - family[k]))
        out.append(ek)
    for i, a in enumerate(out):
        for j, b in enumerate(out):
            if i == j:
                report.require(stage, f"e{i + 1} (n) e{i + 1} = delta_{{n,0}} e{i + 1}", is_idempotent(a))
            else:
                report.require(stage, f"e{i + 1} (n) e{j + 1} = 0", _orthogonal(a, b))
    for k, ek in enumerate(out):
        report.keep(f"e{k + 1}", ek)
    return out
