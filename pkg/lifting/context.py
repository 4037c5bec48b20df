from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, Field

from conformal.cend import CendElem, locality_bound, nth_product
from spans.algebra import IdealPresentation, SubalgebraPresentation, ideal_powers, nilpotency_index
from spans.hspan import HSpan, quotient_reduce
from utils.errors import PreconditionError, VerificationError
from utils.log import get_logger

logger = get_logger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped (window)"


class RelationCheck(BaseModel):
    stage: str
    relation: str
    status: str
    detail: Optional[str] = None


class LiftReport(BaseModel):
    """Transcript of a lifting operation: every relation checked, in order"""
    operation: str
    fixture: Optional[str] = None
    stages: list[str] = Field(default_factory=list)
    iterations: dict[str, int] = Field(default_factory=dict)
    lifted: dict[str, str] = Field(default_factory=dict)
    transcript: list[RelationCheck] = Field(default_factory=list)

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.transcript)

    def stage(self, name):
        self.stages.append(name)
        logger.info("stage: %s", name)

    def count(self, name, value):
        self.iterations[name] = value

    def keep(self, name, element):
        self.lifted[name] = str(element)

    def record(self, stage, relation, ok, detail=None):
        self.transcript.append(RelationCheck(stage=stage, relation=relation, status=PASS if ok else FAIL, detail=detail))
        if not ok:
            logger.debug("[%s] %s failed: %s", stage, relation, detail)
        return ok

    def skip(self, stage, relation):
        self.transcript.append(RelationCheck(stage=stage, relation=relation, status=SKIPPED))

    def require(self, stage, relation, ok, detail=None):
        """Post-condition: record, and raise on failure"""
        if not self.record(stage, relation, ok, detail):
            raise VerificationError(f"[{stage}] {relation} failed" + (f": {detail}" if detail else ""), self)

    def precondition(self, stage, relation, ok, witness=None):
        self.record(stage, relation, ok, witness)
        if not ok:
            raise PreconditionError(stage, relation, witness)


@dataclass
class LiftContext:
    """
    An algebra C with a nilpotent ideal I and optionally a unit e0.

    ``interpolation_d_degree`` is the D-degree window used whenever an
    operator sequence is turned back into an element.
    """
    algebra: SubalgebraPresentation
    ideal: IdealPresentation
    unit: Optional[CendElem] = None
    interpolation_d_degree: int = 3
    iteration_cap: int = 32
    _powers: dict = field(default_factory=dict, repr=False)
    _widened: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.ideal.nilpotency_index is None:
            self.ideal.nilpotency_index = nilpotency_index(self.ideal.span, self.iteration_cap)

    @property
    def size(self):
        return self.algebra.size

    @property
    def nu(self):
        return self.ideal.nilpotency_index

    @property
    def v_window(self):
        return max(self.algebra.span.v_degree_bound, self.ideal.span.v_degree_bound)

    def with_algebra(self, algebra, unit):
        """Same ideal and knobs, new carrier (a corner) and unit"""
        return LiftContext(
            algebra, self.ideal, unit, self.interpolation_d_degree, self.iteration_cap, self._powers, self._widened
        )

    def zero(self):
        return CendElem.zero(self.size)

    def _ideal_span(self, bound):
        span = self.ideal.span
        if bound <= span.v_degree_bound:
            return span
        if bound not in self._widened:
            self._widened[bound] = span.with_bound(bound)
        return self._widened[bound]

    def in_ideal(self, x):
        return x.is_zero() or self.ideal.span.contains(x)

    def reduce(self, x):
        """Canonical representative modulo I"""
        return quotient_reduce(x, self._ideal_span(max(x.v_degree, 0)))

    def congruent(self, x, y):
        return self.in_ideal(x - y)

    def power(self, k):
        """The span I^k; zero from the nilpotency index on"""
        if k >= self.nu:
            return HSpan(self.size, self.ideal.span.v_degree_bound, [])
        if not self._powers:
            for i, span in enumerate(ideal_powers(self.ideal, self.nu), start=1):
                self._powers[i] = span
        return self._powers[k]

    def in_power(self, x, k):
        if x.is_zero():
            return True
        if k >= self.nu:
            return False
        return self.power(k).contains(x)


def locality_modulo(e, x, contains):
    """1 + the largest n with e (n) x outside the ideal J (0 if none)"""
    for n in range(locality_bound(e, x) - 1, -1, -1):
        if not contains(nth_product(e, x, n)):
            return n + 1
    return 0


def zero_power(x, k):
    """x (0) x (0) ... (0) x, k factors"""
    out = x
    for _ in range(k - 1):
        out = nth_product(out, x, 0)
    return out
