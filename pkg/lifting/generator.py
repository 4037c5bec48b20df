"""
Lifting the generator of a Cend_1 corner: given e and x0 with
e (1) x0 = e and x0 (0) e = x0 modulo I, find x with both relations exact.
"""
from sympy.polys.domains import QQ

from conformal.cend import CendElem, nth_product
from lifting.context import LiftContext, LiftReport, locality_modulo
from utils.errors import IterationCapError, PreconditionError, VerificationError
from utils.log import get_logger

logger = get_logger(__name__)

STAGE = "lift-generator"


def _stages(nu):
    """Exponents k of the quotients C/I^k visited, ending at I^nu = 0"""
    return list(range(2, max(nu, 2) + 1))


def _lower_locality(ctx, e, x, k, report):
    """Apply x <- x - (x (1) x - x)/n while N(e, x) >= 3 modulo I^k"""
    in_j = lambda y: ctx.in_power(y, k)
    rounds = 0
    current = locality_modulo(e, x, in_j)
    while current >= 3:
        if rounds >= ctx.iteration_cap:
            raise IterationCapError(STAGE, ctx.iteration_cap)
        n = current - 1
        x = x - (nth_product(x, x, 1) - x).scale(QQ(1, n))
        rounds += 1
        lowered = locality_modulo(e, x, in_j)
        logger.debug("I^%d step %d: N(e, x) %d -> %d", k, rounds, current, lowered)
        if lowered >= current:
            report.record(STAGE, f"N(e, x) decreases modulo I^{k}", False, f"{current} -> {lowered}")
            raise VerificationError(f"[{STAGE}] locality did not decrease ({current} -> {lowered})", report)
        current = lowered
    report.count(f"{STAGE} I^{k}", rounds)
    return x


def lift_conformal_generator(ctx: LiftContext, x0: CendElem, report=None):
    """
    Returns:
        x with x - x0 in I, x (0) e = x and e (1) x = e exactly

    Raises:
        PreconditionError: the relations fail already modulo I
        IterationCapError: the locality loop does not terminate
        VerificationError: the final relations fail
    """
    report = report or LiftReport(operation="lift-generator")
    e = ctx.unit
    if e is None:
        raise PreconditionError(STAGE, "the context carries a unit e")
    report.stage(STAGE)
    right = nth_product(x0, e, 0)
    report.precondition(STAGE, "x0 (0) e = x0 mod I", ctx.in_ideal(right - x0), str(right - x0))
    one = nth_product(e, x0, 1) - e
    report.precondition(STAGE, "e (1) x0 = e mod I", ctx.in_ideal(one), str(one))

    x = right
    for k in _stages(ctx.nu):
        x = _lower_locality(ctx, e, x, k, report)
        b = nth_product(e, x, 1) - e
        if not b.is_zero():
            x = x - nth_product(x, b, 0)
        report.record(STAGE, f"x (0) e = x mod I^{k}", ctx.in_power(nth_product(x, e, 0) - x, k))
        report.record(STAGE, f"e (1) x = e mod I^{k}", ctx.in_power(nth_product(e, x, 1) - e, k))

    report.require(STAGE, "x (0) e = x", nth_product(x, e, 0) == x)
    report.require(STAGE, "e (1) x = e", nth_product(e, x, 1) == e)
    report.require(STAGE, "x - x0 in I", ctx.in_ideal(x - x0))
    report.keep("generator", x)
    return x
