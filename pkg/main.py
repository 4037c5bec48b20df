"""
cend: exact n-products, realizations, lifts and the counterexample suite
for associative conformal algebras inside Cend_n = M_n(Q[D, v]).
"""
import json
import random
import re
from dataclasses import dataclass
from functools import wraps
from pathlib import Path
from typing import List, Optional

import typer
import yaml
from pydantic import ValidationError

from arith.parser import parse_polyv
from config.settings import Settings, get_settings, use_settings
from conformal.cend import CendElem, brace_product, locality, locality_bound, nth_product
from conformal.identities import IdentityReport, anticommutator_product, identity_sweep
from conformal.random_elements import random_cend, random_triples
from counterexample.algebra import CxCheckReport, verify_closure, verify_radical, verify_theta
from counterexample.psi import ObstructionCertificate, PsiAnsatz, SweepEntry, cx_forced_psi, cx_obstruction, cx_sweep
from lifting.context import LiftReport
from lifting.fixtures import FIXTURES, load_fixture
from lifting.generator import lift_conformal_generator
from lifting.idempotents import lift_idempotent, lift_idempotent_zero, lift_orthogonal_family
from lifting.matrix_units import build_matrix_units
from lifting.splitting import SplitRecord, split_radical
from spans.algebra import close_subalgebra
from spans.hspan import HSpan, membership, quotient_reduce
from utils import display
from utils.errors import CendError, VerificationError
from utils.log import configure_logging, get_logger
from utils.notes import export_transcript
from weyl.algebra import WeylOp, rewrite_word, weyl_normal_form
from weyl.realization import OperatorSequence, cross_check_operator_product, interpolate_conformal, realize
from weyl.tc import TCReport, tc_fixture_check

logger = get_logger("cli")

app = typer.Typer(no_args_is_help=True, add_completion=False, help=__doc__)
lift_app = typer.Typer(no_args_is_help=True, help="Lift idempotents, generators and matrix units modulo a nilpotent ideal")
cx_app = typer.Typer(no_args_is_help=True, help="The algebra Q[v - D]{a(f, g)} whose radical does not split")
app.add_typer(lift_app, name="lift")
app.add_typer(cx_app, name="counterexample")

SCHEMAS = {
    "lift-report": LiftReport,
    "identity-report": IdentityReport,
    "obstruction-certificate": ObstructionCertificate,
    "psi-ansatz": PsiAnsatz,
    "sweep-entry": SweepEntry,
    "counterexample-check": CxCheckReport,
    "tc-report": TCReport,
    "split-result": SplitRecord,
}


@dataclass
class CliState:
    json: bool = False
    export: Optional[Path] = None


state = CliState()


def handle_errors(fn):
    """Turn domain errors into 'Error: ...' and the matching exit code"""
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except VerificationError as exc:
            report = exc.transcript
            if isinstance(report, LiftReport):
                if state.json:
                    typer.echo(_dumps(report.model_dump()))
                else:
                    display.show_lift_report(report)
            display.show_error(str(exc))
            raise typer.Exit(exc.exit_code)
        except CendError as exc:
            display.show_error(str(exc))
            raise typer.Exit(exc.exit_code)
        except ValidationError as exc:
            display.show_error(str(exc))
            raise typer.Exit(2)
    return wrapper


def _dumps(payload):
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def emit(command, payload, human, passed=None, options=None):
    """
    Print the result in the selected format, export it on request, and
    exit 1 when a verdict failed.
    """
    if state.json:
        typer.echo(_dumps(payload))
    else:
        human()
    if state.export is not None:
        export_transcript(state.export, command, payload, passed, options)
    if passed is False:
        raise typer.Exit(1)


# --- element input ------------------------------------------------------------

def _load_document(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise typer.BadParameter(f"cannot read {path}: {exc.strerror}") from None
    if path.endswith((".yaml", ".yml", ".json")):
        return yaml.safe_load(text)
    return text.strip()


def read_elements(raw):
    """Inline element strings or @path references, in order"""
    out = []
    for item in raw:
        doc = _load_document(item[1:]) if item.startswith("@") else item
        if isinstance(doc, dict):
            doc = doc.get("generators", [])
        if isinstance(doc, str):
            doc = [doc]
        out.extend(CendElem.parse(str(text)) for text in doc)
    return out


def read_element(raw):
    items = read_elements([raw])
    if len(items) != 1:
        raise typer.BadParameter(f"{raw} holds {len(items)} elements, expected one")
    return items[0]


def read_span(raw, bound):
    """A span document ({v_degree_bound, generators}) or a list of generators"""
    if len(raw) == 1 and raw[0].startswith("@"):
        doc = _load_document(raw[0][1:])
        if isinstance(doc, dict) and "v_degree_bound" in doc:
            if bound is not None:
                doc = dict(doc, v_degree_bound=bound)
            return HSpan.from_dict(doc)
    gens = read_elements(raw)
    if not gens:
        raise typer.BadParameter("a span needs at least one generator")
    return HSpan.of(gens, bound)


# --- global options -----------------------------------------------------------

@app.callback()
def main(
    json_output: bool = typer.Option(False, "--json", help="Print results as JSON"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for randomized inputs"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr"),
    export: Optional[Path] = typer.Option(None, "--export", help="Also write a markdown transcript into DIR"),
):
    try:
        settings = Settings.from_env(seed=seed, log_level="DEBUG" if verbose else None)
    except ValidationError as exc:
        display.show_error(str(exc))
        raise typer.Exit(2)
    use_settings(settings)
    configure_logging(settings.log_level)
    state.json = json_output
    state.export = export


# --- conformal core -----------------------------------------------------------

@app.command()
@handle_errors
def product(
    a: str = typer.Argument(..., help="Element or @file"),
    b: str = typer.Argument(..., help="Element or @file"),
    n: int = typer.Option(0, "--n", min=0, help="Product index"),
):
    """a (n) b"""
    x, y = read_element(a), read_element(b)
    out = nth_product(x, y, n)
    emit(f"product n={n}", {"n": n, "a": str(x), "b": str(y), "product": str(out)}, lambda: display.show_value(out))


@app.command()
@handle_errors
def brace(
    a: str = typer.Argument(...),
    b: str = typer.Argument(...),
    n: int = typer.Option(0, "--n", min=0),
):
    """{a (n) b}"""
    x, y = read_element(a), read_element(b)
    out = brace_product(x, y, n)
    emit(f"brace n={n}", {"n": n, "a": str(x), "b": str(y), "brace": str(out)}, lambda: display.show_value(out))


@app.command("locality")
@handle_errors
def locality_cmd(a: str = typer.Argument(...), b: str = typer.Argument(...)):
    """Exact N(a, b) and the a-priori bound"""
    x, y = read_element(a), read_element(b)
    exact, bound = locality(x, y), locality_bound(x, y)

    def human():
        display.show_element("N(a, b)", exact)
        display.show_element("bound", bound)

    emit("locality", {"a": str(x), "b": str(y), "locality": exact, "bound": bound}, human)


@app.command()
@handle_errors
def identities(
    elements: Optional[List[str]] = typer.Argument(None, help="a b c; random triples when omitted"),
    count: int = typer.Option(5, "--count", min=1, help="Random triples when no elements are given"),
    size: Optional[int] = typer.Option(None, "--size", min=1),
    margin: Optional[int] = typer.Option(None, "--margin", min=0),
    broken: bool = typer.Option(False, "--broken", help="Use the anticommutator in place of the 0-product"),
):
    """Sesqui-linearity, associativity and the brace identities"""
    settings = get_settings()
    margin = settings.check_margin if margin is None else margin
    prod = anticommutator_product if broken else nth_product
    elements = elements or []
    if elements:
        triple = read_elements(elements)
        if len(triple) != 3:
            raise typer.BadParameter(f"expected three elements, got {len(triple)}")
        triples = [tuple(triple)]
    else:
        triples = list(random_triples(
            settings.seed, count, size or settings.random_size, settings.random_d_degree, settings.random_v_degree
        ))
    reports = identity_sweep(triples, margin, prod)
    passed = all(r.passed for r in reports)

    def human():
        for r in reports:
            display.show_identity_report(r)

    payload = {"passed": passed, "reports": [r.model_dump() for r in reports]}
    emit("identities", payload, human, passed, {"margin": margin, "broken": broken})


@app.command("random")
@handle_errors
def random_cmd(
    size: Optional[int] = typer.Option(None, "--size", min=1),
    count: int = typer.Option(1, "--count", min=1),
    d_degree: Optional[int] = typer.Option(None, "--d-degree", min=0),
    v_degree: Optional[int] = typer.Option(None, "--v-degree", min=0),
):
    """Reproducible random elements (seeded by --seed)"""
    settings = get_settings()
    rng = random.Random(settings.seed)
    size = size or settings.random_size
    d = settings.random_d_degree if d_degree is None else d_degree
    v = settings.random_v_degree if v_degree is None else v_degree
    out = [random_cend(rng, size, d, v) for _ in range(count)]

    def human():
        for x in out:
            display.show_value(x)

    emit("random", {"seed": settings.seed, "elements": [str(x) for x in out]}, human)


# --- Weyl realization ---------------------------------------------------------

@app.command("realize")
@handle_errors
def realize_cmd(a: str = typer.Argument(...), k: int = typer.Option(0, "--k", min=0)):
    """The operator a(k) in M_n(W)"""
    x = read_element(a)
    op = realize(x, k)
    emit(f"realize k={k}", {"a": str(x), "k": k, "operator": str(op)}, lambda: display.show_value(op))


@app.command()
@handle_errors
def crosscheck(
    a: str = typer.Argument(...),
    b: str = typer.Argument(...),
    n: int = typer.Option(0, "--n", min=0),
    m: int = typer.Option(0, "--m", min=0),
):
    """a(n) b(m) = sum_s C(n, s) (a (n-s) b)(m + s)"""
    x, y = read_element(a), read_element(b)
    ok = cross_check_operator_product(x, y, n, m)
    rows = [(f"a({n}) b({m}) operator product", ok, None)]
    emit(f"crosscheck n={n} m={m}", {"a": str(x), "b": str(y), "n": n, "m": m, "passed": ok},
         lambda: display.show_checks("Operator product", rows), ok)


@app.command("normal-form")
@handle_errors
def normal_form(word: str = typer.Argument(..., help="A word over p, q or a Weyl expression")):
    """Normal form sum c p^i q^j"""
    compact = word.replace(" ", "")
    out = rewrite_word([(1, compact)]) if re.fullmatch(r"[pq]+", compact) else weyl_normal_form(word)
    emit("normal-form", {"input": word, "normal_form": str(out)}, lambda: display.show_value(out))


@app.command()
@handle_errors
def interpolate(
    ops: List[str] = typer.Argument(..., help="b(0) b(1) ... as Weyl matrices"),
    size: int = typer.Option(1, "--size", min=1),
    d_degree: int = typer.Option(..., "--d-degree", min=0),
    v_degree: int = typer.Option(..., "--v-degree", min=0),
):
    """Recover a with a(k) = b(k)"""
    seq = OperatorSequence(WeylOp.parse(text) for text in ops)
    out = interpolate_conformal(seq, size, d_degree, v_degree)
    emit("interpolate", {"operators": len(seq), "element": str(out)}, lambda: display.show_value(out))


@app.command("tc")
@handle_errors
def tc_cmd(
    fixture: str = typer.Argument(..., help="curr or cend-q"),
    q: str = typer.Option("v", "--q", help="Q(v) for cend-q"),
    n: int = typer.Option(2, "--n", min=1),
    max_index: int = typer.Option(3, "--max-index", min=0),
):
    """TC-condition on a standard fixture"""
    if fixture not in ("curr", "cend-q"):
        raise typer.BadParameter(f"unknown TC fixture {fixture!r}")
    report = tc_fixture_check(fixture, max_index, n, parse_polyv(q))
    rows = [(c.name, c.passed, c.witness) for c in report.checks]
    emit(f"tc {fixture}", report.model_dump(), lambda: display.show_checks(f"TC-condition: {fixture}", rows),
         report.passed)


# --- spans --------------------------------------------------------------------

@app.command()
@handle_errors
def span(
    gens: List[str] = typer.Argument(..., help="Generators, or one @file span document"),
    bound: Optional[int] = typer.Option(None, "--bound", min=0, help="v-degree bound"),
    member: Optional[str] = typer.Option(None, "--member", help="Decide membership of an element"),
    close: bool = typer.Option(False, "--close", help="Close under all n-products"),
    reduce: Optional[str] = typer.Option(None, "--reduce", help="Normal form modulo the span"),
):
    """Echelon basis, membership, closure and reduction"""
    s = read_span(gens, bound)
    payload = {"span": s.to_dict()}
    passed = None
    if close:
        s = close_subalgebra(s.basis, s.v_degree_bound, s.size).span
        payload["closure"] = s.to_dict()
    if member is not None:
        x = read_element(member)
        result = membership(x, s) if x.v_degree <= s.v_degree_bound else None
        passed = bool(result)
        payload["member"] = {
            "element": str(x),
            "member": passed,
            "witness": [c.format("D") for c in result.witness] if passed else None,
        }
    if reduce is not None:
        x = read_element(reduce)
        payload["reduced"] = str(quotient_reduce(x, s.with_bound(max(s.v_degree_bound, x.v_degree))))

    def human():
        display.show_span(s, "Closure" if close else "Span")
        if member is not None:
            display.show_element("member", "yes" if passed else "no")
            if passed:
                display.show_element("coefficients", ", ".join(payload["member"]["witness"]))
        if reduce is not None:
            display.show_element("reduced", payload["reduced"])

    emit("span", payload, human)


# --- lifting ------------------------------------------------------------------

def _fixture(name, operation):
    fixture = load_fixture(name)
    if not fixture.supports(operation):
        raise typer.BadParameter(f"fixture {name!r} has no {operation} input")
    return fixture


def _emit_report(command, report, extra=None, human_extra=None):
    payload = report.model_dump()
    payload["passed"] = report.passed
    payload.update(extra or {})

    def human():
        display.show_lift_report(report)
        if human_extra:
            human_extra()

    emit(command, payload, human, report.passed)


@lift_app.command("idempotent")
@handle_errors
def lift_idempotent_cmd(
    fixture: str = typer.Argument(..., help=", ".join(FIXTURES)),
    zero_only: bool = typer.Option(False, "--zero-only", help="Stop after the (0)-product lift"),
):
    """Lift an idempotent of C/I to an idempotent of C"""
    fx = _fixture(fixture, "idempotent")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="lift idempotent", fixture=fx.name)
    if zero_only:
        lift_idempotent_zero(ctx, fx.idempotent, report)
    else:
        lift_idempotent(ctx, fx.idempotent, report)
    _emit_report(f"lift idempotent {fx.name}", report)


@lift_app.command("family")
@handle_errors
def lift_family_cmd(fixture: str = typer.Argument(..., help=", ".join(FIXTURES))):
    """Lift pairwise orthogonal idempotents"""
    fx = _fixture(fixture, "family")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="lift family", fixture=fx.name)
    lift_orthogonal_family(ctx, fx.family, report)
    _emit_report(f"lift family {fx.name}", report)


@lift_app.command("generator")
@handle_errors
def lift_generator_cmd(fixture: str = typer.Argument(..., help=", ".join(FIXTURES))):
    """Lift the generator v of a Cend_1 quotient"""
    fx = _fixture(fixture, "generator")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="lift generator", fixture=fx.name)
    lift_conformal_generator(ctx, fx.generator, report)
    _emit_report(f"lift generator {fx.name}", report)


@lift_app.command("matrix-units")
@handle_errors
def lift_units_cmd(fixture: str = typer.Argument(..., help=", ".join(FIXTURES))):
    """Complete lifted idempotents to conformal matrix units"""
    fx = _fixture(fixture, "matrix-units")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="lift matrix-units", fixture=fx.name)
    units = build_matrix_units(ctx, fx.idempotents, fx.preimages, report)
    _emit_report(f"lift matrix-units {fx.name}", report, {"units": units.to_dict()}, lambda: display.show_units(units))


@app.command()
@handle_errors
def split(fixture: str = typer.Argument(..., help=", ".join(FIXTURES))):
    """C = S + R with S a lifted copy of C/R"""
    fx = _fixture(fixture, "split")
    ctx = fx.context(get_settings())
    report = LiftReport(operation="split", fixture=fx.name)
    try:
        result = split_radical(ctx, fx.unit_class, fx.blocks, report)
    except CendError as exc:
        if not state.json and not isinstance(exc, VerificationError):
            display.show_lift_report(report)
        raise
    payload = result.to_dict()

    def human():
        display.show_lift_report(report)
        for idx, units in enumerate(result.blocks, start=1):
            display.show_units(units, f"Block {idx} matrix units")
        display.show_span(result.span, "S")

    emit(f"split {fx.name}", payload, human, report.passed)


# --- counterexample -----------------------------------------------------------

def _cx_check(name, fn, count, degree):
    report = fn(seed=get_settings().seed, count=count, degree=degree)
    emit(f"counterexample {name}", report.model_dump(), lambda: display.show_cx_report(report), report.passed,
         {"count": count, "degree": degree})


@cx_app.command("verify-closure")
@handle_errors
def cx_closure(count: int = typer.Option(20, "--count", min=1), degree: int = typer.Option(5, "--degree", min=0)):
    """The product law on a(f, g) against the product in Cend_2"""
    _cx_check("verify-closure", verify_closure, count, degree)


@cx_app.command("verify-radical")
@handle_errors
def cx_radical(count: int = typer.Option(20, "--count", min=1), degree: int = typer.Option(5, "--degree", min=0)):
    """Radical membership and nilpotency"""
    _cx_check("verify-radical", verify_radical, count, degree)


@cx_app.command("verify-theta")
@handle_errors
def cx_theta_cmd(count: int = typer.Option(20, "--count", min=1), degree: int = typer.Option(4, "--degree", min=0)):
    """theta is a homomorphism onto Cend_1 (v - D)^2 with kernel Rad(C)"""
    _cx_check("verify-theta", verify_theta, count, degree)


@cx_app.command("forced-psi")
@handle_errors
def cx_forced(k: int = typer.Option(2, "--K", min=1, help="Degree bound of the ansatz")):
    """The constraint on psi(1)"""
    ansatz = cx_forced_psi(k)
    emit(f"counterexample forced-psi K={k}", ansatz.model_dump(), lambda: display.show_psi(ansatz), ansatz.forced_form)


@cx_app.command("obstruction")
@handle_errors
def cx_obstruction_cmd(
    k: int = typer.Option(1, "--K", min=1, help="Degree bound of f1, f2"),
    d_degree: Optional[int] = typer.Option(None, "--d-degree", min=0),
    slack: Optional[int] = typer.Option(None, "--slack", min=0),
):
    """Certificate that no splitting map psi exists in the window"""
    cert = cx_obstruction(k, d_degree, slack)
    payload = cert.model_dump()
    payload["verified"] = cert.verify()
    emit(f"counterexample obstruction K={k}", payload, lambda: display.show_certificate(cert), payload["verified"])


@cx_app.command("sweep")
@handle_errors
def cx_sweep_cmd(max_k: Optional[int] = typer.Option(None, "--max-k", min=1)):
    """Obstruction certificates for K = 1 .. max-k"""
    entries = cx_sweep(max_k)
    passed = all(e.infeasible and e.verified for e in entries)
    emit("counterexample sweep", {"entries": [e.model_dump() for e in entries]},
         lambda: display.show_sweep(entries), passed)


# --- schemas ------------------------------------------------------------------

@app.command()
@handle_errors
def schemas(directory: Path = typer.Argument(..., help="Output directory")):
    """Write the JSON schemas of every report model"""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMAS.items():
        path = directory / f"{name}.schema.json"
        path.write_text(_dumps(model.model_json_schema()) + "\n", encoding="utf-8")
        written.append(str(path))
    emit("schemas", {"written": written}, lambda: [display.show_value(p) for p in written])


if __name__ == "__main__":
    app()
