"""
A splitting S of C would give a linear map psi: Q[v] -> Q[D, v] with

    psi(f1 (n) v^2 f2) = f1 (n) f2 + psi(f1) (n) v^2 + f1 (n) v^2 psi(f2)

(f1, f2 read in Cend_1, v^2 acting on the right factor).  This module
solves the constraint forced on psi(1), propagates it to psi(f), and
certifies that the full system has no solution in a finite window.
"""
from pydantic import BaseModel, Field
from sympy.polys.domains import QQ

from arith.linear import RowEliminator, nullspace, rank
from arith.parser import parse_polynomial
from arith.poly import ZERO, PolyDV, PolyV, as_rational, falling, format_rational, scalar_nth_product
from config.settings import get_settings
from counterexample.algebra import v_minus_d
from utils.errors import FeasibleSystemError, PreconditionError
from utils.log import get_logger

logger = get_logger(__name__)

V2 = PolyDV.monomial(0, 2)


def _mono(k):
    return PolyDV.monomial(0, k)


def _rows_of(poly_by_column):
    """{column: PolyDV} -> one row {column: coeff} per (D, v) monomial"""
    rows = {}
    for col, poly in poly_by_column.items():
        for a, b, c in poly.terms():
            row = rows.setdefault((a, b), {})
            row[col] = row.get(col, 0) + c
    return rows


def _vector(poly):
    return {(a, b): c for a, b, c in poly.terms()}


class PsiAnsatz(BaseModel):
    """Solutions psi(1) = sum_k a_k(v) (v - D)^k with deg a_k <= K, k <= K"""
    degree_bound: int
    unknowns: int
    dimension: int
    basis: list[str] = Field(default_factory=list)
    forced_form: bool = False

    def elements(self):
        return [parse_polynomial(text) for text in self.basis]


def forced_residual(psi1):
    """psi(1) (2) v^2 + 1 (2) v^2 psi(1) - 2 psi(1); zero for admissible psi(1)"""
    one = PolyDV.constant(1)
    return scalar_nth_product(psi1, V2, 2) + scalar_nth_product(one, V2 * psi1, 2) - psi1.scale(2)


def cx_forced_psi(K):
    """
    Solve psi(1 (2) v^2) = 2 psi(1) on the ansatz.

    The solution space must be spanned by (v - D)^k - v^k, 1 <= k <= K.
    """
    if K < 1:
        raise PreconditionError("forced-psi", "K >= 1")
    columns = [(k, j) for k in range(K + 1) for j in range(K + 1)]
    residuals = {col: forced_residual(v_minus_d(col[0]) * PolyV.monomial(col[1])) for col in columns}
    rows = list(_rows_of(residuals).values())
    basis = []
    for vec in nullspace(rows, columns):
        poly = PolyDV.zero()
        for (k, j), c in vec.items():
            poly = poly + (v_minus_d(k) * PolyV.monomial(j)).scale(c)
        basis.append(poly)
    expected = [v_minus_d(k) - _mono(k) for k in range(1, K + 1)]
    got = [_vector(p) for p in basis]
    want = [_vector(p) for p in expected]
    forced = rank(got) == rank(want) == rank(got + want) == K
    logger.debug("forced psi(1), K=%d: dimension %d, forced form %s", K, len(basis), forced)
    return PsiAnsatz(
        degree_bound=K,
        unknowns=len(columns),
        dimension=len(basis),
        basis=[str(p) for p in basis],
        forced_form=forced,
    )


def forced_constant_check(K):
    """2a = (v^2 a)'' with deg a <= K has only constant solutions"""
    rows = {}
    for j in range(K + 1):
        lhs = PolyV.monomial(j, 2) - PolyV.monomial(j + 2).deriv(2)
        for b, c in enumerate(lhs.coeffs):
            if c:
                rows.setdefault(b, {})[j] = c
    basis = nullspace(list(rows.values()), list(range(K + 1)))
    return len(basis) == 1 and set(basis[0]) == {0}


class PsiStep(BaseModel):
    degree: int
    value: str
    matches: bool


def cx_propagate_psi(psi1, f):
    """
    psi(f) from psi(1), through psi(v g) = (psi(g) (1) v^2 + g (1) v^2 psi(1)) / 2.

    Returns:
        (psi(f), steps) where each step checks psi(v^d) = v^d psi(1)
    """
    f = f if isinstance(f, PolyV) else PolyV.constant(f)
    values = [psi1]
    steps = [PsiStep(degree=0, value=str(psi1), matches=True)]
    for d in range(max(f.degree, 0)):
        g = _mono(d)
        nxt = (scalar_nth_product(values[-1], V2, 1) + scalar_nth_product(g, V2 * psi1, 1)).scale(QQ(1, 2))
        values.append(nxt)
        steps.append(PsiStep(degree=d + 1, value=str(nxt), matches=nxt == _mono(d + 1) * psi1))
    out = PolyDV.zero()
    for i, c in enumerate(f.coeffs):
        if c:
            out = out + values[i].scale(c)
    return out, steps


class WitnessReplay(BaseModel):
    """f1 = 1, f2 = v, n = 1 against psi(f) = f psi(1)"""
    lhs: str
    rhs: str
    discrepancy: str


def witness_replay(psi1):
    one = PolyDV.constant(1)
    psi_v = _mono(1) * psi1
    lhs = (_mono(2) * psi1).scale(3)
    rhs = (
        scalar_nth_product(one, _mono(1), 1)
        + scalar_nth_product(psi1, _mono(3), 1)
        + scalar_nth_product(one, V2 * psi_v, 1)
    )
    return WitnessReplay(lhs=str(lhs), rhs=str(rhs), discrepancy=str(rhs - lhs))


class CertificateRow(BaseModel):
    tag: str
    coefficient: str
    coeffs: dict[str, str]
    rhs: str


class ObstructionCertificate(BaseModel):
    """
    A rational combination of rows whose left sides cancel while the right
    sides add up to ``constant``.
    """
    degree_bound: int
    unknowns: int
    rows_streamed: int
    rank: int
    combination: list[CertificateRow] = Field(default_factory=list)
    constant: str
    witness: WitnessReplay

    def replay(self):
        """(left side, right side) of the combination"""
        lhs, rhs = {}, ZERO
        for row in self.combination:
            coef = as_rational(row.coefficient)
            for col, c in row.coeffs.items():
                val = lhs.get(col, 0) + coef * as_rational(c)
                if val:
                    lhs[col] = val
                else:
                    lhs.pop(col, None)
            rhs += coef * as_rational(row.rhs)
        return lhs, rhs

    def verify(self):
        lhs, rhs = self.replay()
        return not lhs and rhs == as_rational(self.constant) and rhs != 0


def _columns(K, d_degree, slack):
    return [(i, d, j) for i in range(2 * K + 3) for d in range(d_degree + 1) for j in range(i + slack + 1)]


def _instance(alpha, beta, n, d_degree, slack, homogeneous):
    """
    Rows of one instance f1 = v^alpha, f2 = v^beta:

        falling(beta+2, n) psi(v^(alpha+beta+2-n)) - psi(v^alpha) (n) v^(beta+2)
            - v^alpha (n) v^2 psi(v^beta) = v^alpha (n) v^beta
    """
    f1, f2 = _mono(alpha), _mono(beta + 2)
    per_column = {}

    def add(col, poly):
        if poly:
            per_column[col] = per_column.get(col, PolyDV.zero()) + poly

    c = falling(beta + 2, n)
    for d in range(d_degree + 1):
        if c:
            i = alpha + beta + 2 - n
            for j in range(i + slack + 1):
                add((i, d, j), PolyDV.monomial(d, j, c))
        for j in range(alpha + slack + 1):
            add((alpha, d, j), -scalar_nth_product(PolyDV.monomial(d, j), f2, n))
        for j in range(beta + slack + 1):
            add((beta, d, j), -scalar_nth_product(f1, V2 * PolyDV.monomial(d, j), n))
    rows = _rows_of(per_column)
    if not homogeneous:
        for a, b, value in scalar_nth_product(f1, _mono(beta), n).terms():
            rows.setdefault((a, b), {})
            rows[(a, b)]["rhs"] = value
    for mono, row in sorted(rows.items()):
        rhs = row.pop("rhs", 0)
        yield f"f1=v^{alpha} f2=v^{beta} n={n} [D^{mono[0]} v^{mono[1]}]", row, rhs


def stream_rows(K, d_degree, slack, homogeneous=False):
    """Rows ordered by (alpha + beta, beta, n)"""
    for total in range(2 * K + 1):
        for beta in range(max(0, total - K), min(total, K) + 1):
            alpha = total - beta
            for n in range(beta + 2 + slack + d_degree + 1):
                yield from _instance(alpha, beta, n, d_degree, slack, homogeneous)


def _solve(K, d_degree, slack, homogeneous):
    elim = RowEliminator(track=True)
    seen = []
    for tag, row, rhs in stream_rows(K, d_degree, slack, homogeneous):
        seen.append((tag, row, rhs))
        bad = elim.add_row(row, rhs)
        if bad is not None:
            return elim, seen, bad
    return elim, seen, None


def cx_obstruction(K, d_degree=None, slack=None):
    """
    Certificate that no psi in the window satisfies every instance with
    f1, f2 of degree <= K.

    Raises:
        FeasibleSystemError: the rows admit a solution
    """
    if K < 1:
        raise PreconditionError("obstruction", "K >= 1")
    settings = get_settings()
    d_degree = settings.psi_d_degree if d_degree is None else d_degree
    slack = settings.psi_v_slack if slack is None else slack
    elim, seen, bad = _solve(K, d_degree, slack, False)
    if bad is None:
        raise FeasibleSystemError(f"the window K={K} admits a splitting map psi")
    scale = 1 / bad.constant
    combination = []
    for index, coef in sorted(bad.combination.items()):
        tag, row, rhs = seen[index]
        combination.append(
            CertificateRow(
                tag=tag,
                coefficient=format_rational(coef * scale),
                coeffs={f"psi(v^{i})[D^{d} v^{j}]": format_rational(c) for (i, d, j), c in sorted(row.items())},
                rhs=format_rational(rhs),
            )
        )
    psi1 = v_minus_d(1) - _mono(1)
    cert = ObstructionCertificate(
        degree_bound=K,
        unknowns=len(_columns(K, d_degree, slack)),
        rows_streamed=len(seen),
        rank=elim.rank,
        combination=combination,
        constant="1",
        witness=witness_replay(psi1),
    )
    logger.info("K=%d: contradiction after %d rows, %d rows combined", K, len(seen), len(combination))
    return cert


def homogeneous_control(K, d_degree=None, slack=None):
    """Without the f1 (n) f2 term the system is solvable (psi = 0)"""
    settings = get_settings()
    d_degree = settings.psi_d_degree if d_degree is None else d_degree
    slack = settings.psi_v_slack if slack is None else slack
    _, _, bad = _solve(K, d_degree, slack, True)
    return bad is None


class SweepEntry(BaseModel):
    degree_bound: int
    infeasible: bool
    rows_streamed: int
    combined: int
    verified: bool


def cx_sweep(max_k=None):
    max_k = get_settings().sweep_max_k if max_k is None else max_k
    out = []
    for K in range(1, max_k + 1):
        cert = cx_obstruction(K)
        out.append(
            SweepEntry(
                degree_bound=K,
                infeasible=True,
                rows_streamed=cert.rows_streamed,
                combined=len(cert.combination),
                verified=cert.verify(),
            )
        )
    return out
