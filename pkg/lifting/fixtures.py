"""
Small algebras with a known nilpotent ideal, used by the lift and split
commands and by the test-suite.
"""
from dataclasses import dataclass, field
from typing import Optional

from arith.matrix import MatrixDV
from arith.poly import PolyDV, PolyV
from config.settings import get_settings
from conformal.cend import CendElem
from counterexample.algebra import CxElem, cx_embed
from lifting.context import LiftContext
from lifting.splitting import BlockSpec
from spans.algebra import IdealPresentation, SubalgebraPresentation, close_subalgebra
from spans.hspan import HSpan
from utils.errors import CendError

parse = CendElem.parse


def unit(n, i, j, p=1):
    """E_ij (1-based) with entry p"""
    return CendElem.unit(n, i - 1, j - 1, p)


def stacked(a, b):
    """[[a, b], [0, a]] as an element of Cend_2n"""
    n = a.size
    zero = PolyDV.zero()
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n:
                row.append(a[i, j] if j < n else b[i, j - n])
            else:
                row.append(a[i - n, j - n] if j >= n else zero)
        rows.append(row)
    return CendElem(MatrixDV(rows))


@dataclass
class LiftFixture:
    """
    An algebra C, its ideal, and sample inputs for every lifting
    operation that makes sense on it.
    """
    name: str
    description: str
    algebra: SubalgebraPresentation
    ideal: IdealPresentation
    unit: Optional[CendElem] = None
    unit_class: Optional[CendElem] = None
    blocks: list = field(default_factory=list)
    idempotent: Optional[CendElem] = None
    family: list = field(default_factory=list)
    generator: Optional[CendElem] = None
    idempotents: list = field(default_factory=list)
    preimages: dict = field(default_factory=dict)

    def context(self, settings=None, interpolation_d_degree=3):
        settings = settings or get_settings()
        return LiftContext(self.algebra, self.ideal, self.unit, interpolation_d_degree, settings.iteration_cap)

    def supports(self, operation):
        return {
            "idempotent": self.idempotent is not None,
            "family": bool(self.family),
            "generator": self.generator is not None,
            "matrix-units": bool(self.idempotents),
            "split": self.unit_class is not None,
        }[operation]


def _closed(gens, bound, size, name):
    presentation = close_subalgebra(gens, bound, size)
    presentation.name = name
    return presentation


def _ideal(gens, bound, size):
    return IdealPresentation(HSpan(size, bound, gens))


def triangular(n=3):
    """Upper-triangular constant currents T_n with R = strictly upper part"""
    gens = [unit(n, i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    strict = [unit(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    ident = CendElem.identity(n)
    D = PolyDV.D()
    fixture = LiftFixture(
        name=f"triangular-{n}",
        description=f"T_{n}: upper-triangular Curr_{n} span, R = strictly upper part",
        algebra=_closed(gens, 0, n, f"T_{n}"),
        ideal=_ideal(strict, 0, n),
        unit=ident,
    )
    if n == 2:
        fixture.idempotent = unit(2, 1, 1) + unit(2, 1, 2, D)
        fixture.family = [unit(2, 1, 1), unit(2, 2, 2)]
        fixture.unit_class = ident
        fixture.blocks = [BlockSpec("curr", [unit(2, 1, 1)]), BlockSpec("curr", [unit(2, 2, 2)])]
    else:
        classes = [unit(n, 1, 1) + unit(n, 1, 2), unit(n, 2, 2) + unit(n, 2, 3, D)]
        classes += [unit(n, k, k) for k in range(3, n + 1)]
        fixture.idempotent = unit(n, 1, 1) + unit(n, 2, 2) + unit(n, 1, 2)
        fixture.family = classes
        fixture.unit_class = ident + unit(n, 1, 2)
        fixture.blocks = [BlockSpec("curr", [c]) for c in classes]
    return fixture


def curr2():
    """Curr_2 itself, R = 0"""
    gens = [unit(2, i, j) for i in (1, 2) for j in (1, 2)]
    e11, e22 = unit(2, 1, 1), unit(2, 2, 2)
    preimages = {(0, 1): unit(2, 1, 2), (1, 0): unit(2, 2, 1)}
    return LiftFixture(
        name="curr2",
        description="Curr_2 with zero radical",
        algebra=_closed(gens, 0, 2, "Curr_2"),
        ideal=_ideal([], 0, 2),
        unit=CendElem.identity(2),
        unit_class=CendElem.identity(2),
        blocks=[BlockSpec("curr", [e11, e22], preimages)],
        family=[e11, e22],
        idempotents=[e11, e22],
        preimages=preimages,
    )


def curr2_radical():
    """
    [[A, B], [0, A]] in Cend_4 with A, B in Curr_2; R = {[[0, B], [0, 0]]}
    and C/R = Curr_2.
    """
    D = PolyDV.D()
    zero = CendElem.zero(2)

    def e(i, j, p=1):
        return unit(2, i, j, p)

    gens = [stacked(e(i, j), zero) for i in (1, 2) for j in (1, 2)]
    radical = [stacked(zero, e(i, j)) for i in (1, 2) for j in (1, 2)]
    diagonal = [stacked(e(1, 1), e(1, 1, D)), stacked(e(2, 2), zero)]
    preimages = {(0, 1): stacked(e(1, 2), e(1, 2)), (1, 0): stacked(e(2, 1), e(2, 1, D))}
    return LiftFixture(
        name="curr2-radical",
        description="Curr_2 + nilpotent current ideal in Cend_4, C/R = Curr_2",
        algebra=_closed(gens + radical, 0, 4, "Curr_2 + R"),
        ideal=_ideal(radical, 0, 4),
        unit=CendElem.identity(4),
        unit_class=CendElem.identity(4),
        blocks=[BlockSpec("curr", diagonal, preimages)],
        family=diagonal,
        idempotents=diagonal,
        preimages=preimages,
    )


def upper_cend2(bound=4):
    """Window of upper-triangular Cend_2 with I = Cend_1 E_12 (I^2 = 0)"""
    v = PolyDV.v()
    gens = [unit(2, i, j, v ** k) for (i, j) in ((1, 1), (1, 2), (2, 2)) for k in range(bound + 1)]
    strict = [unit(2, 1, 2, v ** k) for k in range(bound + 1)]
    return LiftFixture(
        name="upper-cend2",
        description="upper-triangular Cend_2 window, I = strictly upper part",
        algebra=SubalgebraPresentation.window(gens, bound, "upper Cend_2"),
        ideal=_ideal(strict, bound, 2),
        unit=CendElem.identity(2),
        generator=parse("[[v, v^2], [0, v]]"),
    )


def cend1_dual(bound=6, window=3):
    """Cend_1 (x) Q[eps]/eps^2 as [[a, b], [0, a]] in Cend_2; R = eps part"""
    v = PolyDV.v()
    one = CendElem.identity(1)
    zero = CendElem.zero(1)
    gens = [stacked(one.scale(v ** k), zero) for k in range(bound + 1)]
    radical = [stacked(zero, one.scale(v ** k)) for k in range(bound + 1)]
    u = parse("[[1, D], [0, 1]]")
    x0 = parse("[[v, v^2], [0, v]]")
    return LiftFixture(
        name="cend1-dual",
        description="Cend_1 with a square-zero radical, C/R = Cend_1",
        algebra=SubalgebraPresentation.window(gens + radical, bound, "Cend_1[eps]"),
        ideal=_ideal(radical, bound, 2),
        unit=u,
        unit_class=u,
        blocks=[BlockSpec("cend", [u], generator=x0, window=window)],
        generator=x0,
    )


def annihilator():
    """C = span{E11, E12}, R = span{E12} with R (n) C = 0"""
    e11, e12 = unit(2, 1, 1), unit(2, 1, 2)
    return LiftFixture(
        name="annihilator",
        description="finite algebra whose radical annihilates C from the left",
        algebra=_closed([e11, e12], 0, 2, "span(E11, E12)"),
        ideal=_ideal([e12], 0, 2),
        unit=None,
        unit_class=e11,
        blocks=[BlockSpec("curr", [e11])],
    )


def counterexample(degree=2, prefixes=1):
    """
    Window of Q[v - D]{a(f, g)}; a(1, 0) is the only candidate unit and
    it is not idempotent modulo the radical.
    """
    cs = [CxElem.a(PolyV.monomial(i), 0, k) for i in range(degree + 1) for k in range(prefixes + 1)]
    rs = [CxElem.radical(PolyV.monomial(i), k) for i in range(degree + 1) for k in range(prefixes + 1)]
    gens = [cx_embed(x) for x in cs + rs]
    radical = [cx_embed(x) for x in rs]
    bound = max(g.v_degree for g in gens) + 4
    return LiftFixture(
        name="counterexample",
        description="truncated Q[v - D]{a(f, g)}: C/R has no unit",
        algebra=SubalgebraPresentation.window(gens, bound, "C"),
        ideal=_ideal(radical, bound, 2),
        unit_class=cx_embed(CxElem.a(1)),
        blocks=[BlockSpec("cend", [cx_embed(CxElem.a(1))], generator=cx_embed(CxElem.a(PolyV.var())))],
    )


FIXTURES = {
    "triangular-2": lambda: triangular(2),
    "triangular-3": lambda: triangular(3),
    "curr2": curr2,
    "curr2-radical": curr2_radical,
    "upper-cend2": upper_cend2,
    "cend1-dual": cend1_dual,
    "annihilator": annihilator,
    "counterexample": counterexample,
}


def load_fixture(name):
    try:
        return FIXTURES[name]()
    except KeyError:
        raise CendError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
