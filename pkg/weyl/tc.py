"""
TC-condition checks on the two standard fixtures, at a finite truncation.

* ``curr``: Curr_n = M_n(Q[D]); every realized operator must be p-free,
  i.e. lie in M_n(Q[q]).
* ``cend-q``: Cend_{1,Q} = Cend_1 Q(v - D); every realized operator must lie
  in the left ideal W Q(p).

Both target sets are closed under products, which is checked on the
realized operators as well.
"""
from typing import Optional

from pydantic import BaseModel

from arith.poly import PolyDV, PolyV, shift_v_minus_d
from conformal.cend import CendElem
from utils.log import get_logger
from weyl.algebra import WeylOp, WeylPoly
from weyl.realization import realize

logger = get_logger(__name__)


class TCCheck(BaseModel):
    name: str
    passed: bool
    checked: int
    witness: Optional[str] = None


class TCReport(BaseModel):
    fixture: str
    max_index: int
    checks: list[TCCheck]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def curr_generators(n):
    return [CendElem.unit(n, i, j) for i in range(n) for j in range(n)]


def cend_q_generators(q, v_degree=2):
    """v^i Q(v - D) for i <= v_degree, together with D Q(v - D)"""
    base = shift_v_minus_d(q)
    gens = [CendElem([[PolyDV.monomial(0, i) * base]]) for i in range(v_degree + 1)]
    gens.append(CendElem([[PolyDV.D() * base]]))
    return gens


def _check(name, ops, predicate):
    for label, op in ops:
        if not predicate(op):
            return TCCheck(name=name, passed=False, checked=len(ops), witness=f"{label} = {op}")
    return TCCheck(name=name, passed=True, checked=len(ops))


def tc_fixture_check(fixture, max_index=3, n=2, q=None, v_degree=2):
    """
    Args:
        fixture: "curr" or "cend-q"
        max_index: operators a(k) are realized for k <= max_index
        n: matrix size of Curr_n
        q: the PolyV Q of Cend_{1,Q} (nonzero)
        v_degree: v-degree window of the Cend_{1,Q} generators
    """
    if fixture == "curr":
        gens = curr_generators(n)

        def member(op):
            return all(x.is_q_only() for _, _, x in op.entries())

        target = "M_n(Q[q])"
    elif fixture == "cend-q":
        if q is None or (isinstance(q, PolyV) and q.is_zero()):
            raise ValueError("Cend_{1,Q} needs a nonzero Q")
        gens = cend_q_generators(q, v_degree)

        def member(op):
            return op[0, 0].right_quotient(q) is not None

        target = "W Q(p)"
    else:
        raise ValueError(f"unknown TC fixture {fixture!r}")

    ops = [(f"({g})({k})", realize(g, k)) for g in gens for k in range(max_index + 1)]
    checks = [_check(f"realized operators lie in {target}", ops, member)]
    if fixture == "curr":
        mismatched = []
        for idx, g in enumerate(gens):
            i, j = divmod(idx, n)
            for k in range(max_index + 1):
                expected = [[WeylPoly() for _ in range(n)] for _ in range(n)]
                expected[i][j] = WeylPoly.monomial(0, k)
                op = realize(g, k)
                if op != WeylOp(expected):
                    mismatched.append((f"E_{i + 1}{j + 1}({k})", op))
        checks.append(TCCheck(
            name="realize(E_ij, k) = E_ij q^k",
            passed=not mismatched,
            checked=len(gens) * (max_index + 1),
            witness=f"{mismatched[0][0]} = {mismatched[0][1]}" if mismatched else None,
        ))
    products = [
        (f"{la} * {lb}", a * b)
        for la, a in ops[: 2 * (max_index + 1)]
        for lb, b in ops
    ]
    checks.append(_check(f"products of realized operators lie in {target}", products, member))
    logger.debug("TC fixture %s: %s", fixture, [c.passed for c in checks])
    return TCReport(fixture=fixture, max_index=max_index, checks=checks)
