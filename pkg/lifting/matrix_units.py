"""
Conformal matrix units and the defining relations of Cend_N.
"""
from dataclasses import dataclass, field

from conformal.cend import CendElem, locality_bound, nth_product
from lifting.context import LiftContext, LiftReport, zero_power
from utils.errors import NotConformalError, SizeMismatchError
from utils.log import get_logger
from weyl.realization import OperatorSequence, interpolate_conformal, realize

logger = get_logger(__name__)

STAGE = "matrix-units"


@dataclass
class MatrixUnitSystem:
    """e_ij, 0-based, with e_ij (n) e_kl = delta_{n,0} delta_{jk} e_il"""
    size: int
    units: dict = field(default_factory=dict)

    def __getitem__(self, ij):
        return self.units[ij]

    def elements(self):
        return [self.units[i, j] for i in range(self.size) for j in range(self.size)]

    def diagonal(self):
        return [self.units[i, i] for i in range(self.size)]

    def relation_failures(self, margin=0):
        """(label, lhs, rhs) for every violated product relation"""
        out = []
        for (i, j), a in sorted(self.units.items()):
            for (k, l), b in sorted(self.units.items()):
                for n in range(locality_bound(a, b) + margin):
                    lhs = nth_product(a, b, n)
                    rhs = self.units[i, l] if n == 0 and j == k else CendElem.zero(a.size)
                    if lhs != rhs:
                        out.append((f"e{i + 1}{j + 1} ({n}) e{k + 1}{l + 1}", lhs, rhs))
        return out

    def to_dict(self):
        return {f"e{i + 1}{j + 1}": str(x) for (i, j), x in sorted(self.units.items())}


def _series(a, nu):
    """b = -a + a(0)a - ... with a + b + a (0) b = 0"""
    b = CendElem.zero(a.size)
    for k in range(1, max(nu, 1) + 1):
        term = zero_power(a, k)
        if term.is_zero():
            break
        b = b + term if k % 2 == 0 else b - term
    return b


def _interpolate_unit(ctx, f_j1, f_1j, report, label):
    """h_j recovered from b(0) = f_j1(0) f_1j(0), b(n) = (f_j1(1) f_1j(0))^n"""
    d = ctx.interpolation_d_degree
    first = realize(f_j1, 0) * realize(f_1j, 0)
    step = realize(f_j1, 1) * realize(f_1j, 0)
    seq = OperatorSequence.powers(first, step, d + 3)
    bound = max(ctx.v_window, f_j1.v_degree + f_1j.v_degree)
    try:
        return interpolate_conformal(seq, ctx.size, d, bound)
    except NotConformalError as exc:
        report.record(STAGE, f"interpolate {label}", False, str(exc))
        raise


def build_matrix_units(ctx: LiftContext, idempotents, preimages, report=None):
    """
    Complete orthogonal idempotents e_1..e_N to a system of matrix units.

    Args:
        ctx: context whose ideal is I
        idempotents: exact, pairwise orthogonal e_1, ..., e_N
        preimages: {(0, j): v_1j, (i, 0): v_i1} for i, j >= 1 (0-based keys)
            lifting the off-diagonal units modulo I

    Raises:
        PreconditionError: v_1i (0) v_i1 - e_1 is not in I
        NotConformalError: the h_j interpolation leaves its window
        VerificationError: the product relations fail
    """
    report = report or LiftReport(operation="matrix-units")
    report.stage(STAGE)
    es = list(idempotents)
    size = len(es)
    system = MatrixUnitSystem(size)
    if size == 0:
        return system
    system.units[0, 0] = es[0]
    if size == 1:
        report.require(STAGE, "e11 (n) e11 = delta_{n,0} e11", not system.relation_failures())
        return system

    e1 = es[0]
    f_1, f_i = {}, {}
    for i in range(1, size):
        if (0, i) not in preimages or (i, 0) not in preimages:
            raise SizeMismatchError(f"{size} x {size} units", f"missing preimage for index {i + 1}")
        v_1i = nth_product(nth_product(e1, preimages[0, i], 0), es[i], 0)
        v_i1 = nth_product(nth_product(es[i], preimages[i, 0], 0), e1, 0)
        a = nth_product(v_1i, v_i1, 0) - e1
        report.precondition(STAGE, f"v1{i + 1} (0) v{i + 1}1 = e1 mod I", ctx.in_ideal(a), str(a))
        b = _series(a, ctx.nu)
        report.require(STAGE, f"a{i + 1} + b{i + 1} + a{i + 1} (0) b{i + 1} = 0", (a + b + nth_product(a, b, 0)).is_zero())
        f_1[i] = v_1i
        f_i[i] = v_i1 + nth_product(v_i1, b, 0)
        report.require(STAGE, f"f1{i + 1} (0) f{i + 1}1 = e1", nth_product(f_1[i], f_i[i], 0) == e1)

    e_1 = {}
    for j in range(1, size):
        h = _interpolate_unit(ctx, f_i[j], f_1[j], report, f"h{j + 1}")
        logger.debug("h%d = %s", j + 1, h)
        report.record(STAGE, f"h{j + 1} - e{j + 1} in I", ctx.in_ideal(h - es[j]))
        e_1[j] = nth_product(f_1[j], h, 0)
        system.units[0, j] = e_1[j]
        system.units[j, 0] = f_i[j]
    for i in range(1, size):
        for j in range(1, size):
            system.units[i, j] = nth_product(f_i[i], e_1[j], 0)

    failures = system.relation_failures()
    for label, lhs, rhs in failures[:1]:
        report.record(STAGE, label, False, f"{lhs} != {rhs}")
    report.require(STAGE, "e_ij (n) e_kl = delta_{n,0} delta_jk e_il", not failures)
    for (i, j), x in sorted(system.units.items()):
        report.keep(f"e{i + 1}{j + 1}", x)
    return system


def verify_cend_relations(units: MatrixUnitSystem, x: CendElem, margin=2, report=None):
    """
    The defining relations of Cend_N on (e_ij, x).  Failures are recorded,
    never raised.
    """
    report = report or LiftReport(operation="verify-cend-relations")
    stage = "cend-relations"
    for e in units.elements():
        if e.size != x.size:
            raise SizeMismatchError(f"Cend_{e.size}", f"Cend_{x.size}")
    for (i, j), e in sorted(units.units.items()):
        name = f"e{i + 1}{j + 1}"
        report.record(stage, f"{name} (0) x = x (0) {name}", nth_product(e, x, 0) == nth_product(x, e, 0))
        report.record(stage, f"{name} (1) x = {name}", nth_product(e, x, 1) == e)
        top = locality_bound(e, x) + margin
        bad = [n for n in range(2, top) if not nth_product(e, x, n).is_zero()]
        report.record(stage, f"{name} (n) x = 0 for n >= 2", not bad, f"n = {bad[0]}" if bad else None)
        top = locality_bound(x, e) + margin
        bad = [n for n in range(1, top) if not nth_product(x, e, n).is_zero()]
        report.record(stage, f"x (n) {name} = 0 for n >= 1", not bad, f"n = {bad[0]}" if bad else None)
    diag = units.diagonal()
    left = CendElem.zero(x.size)
    right = CendElem.zero(x.size)
    for e in diag:
        left = left + nth_product(e, x, 0)
        right = right + nth_product(x, e, 0)
    report.record(stage, "sum e_ii (0) x = x", left == x)
    report.record(stage, "sum x (0) e_ii = x", right == x)
    return report
