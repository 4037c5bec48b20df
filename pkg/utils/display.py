from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.tree import Tree

# Initialize Rich consoles; results on stdout, errors on stderr
console = Console(highlight=False, soft_wrap=True)
error_console = Console(stderr=True, highlight=False)

STATUS_STYLE = {"pass": "green", "fail": "bold red", "skipped (window)": "yellow"}


def mark(ok):
    return "[green]pass[/green]" if ok else "[bold red]FAIL[/bold red]"


def show_error(message):
    """Print an error the way every command reports it"""
    error_console.print(f"[bold red]Error:[/bold red] {escape(message)}", markup=True, highlight=False)


def show_element(label, element):
    console.print(f"[cyan]{label}:[/cyan] {escape(str(element))}")


def show_value(value):
    """Bare result line, e.g. a product"""
    console.print(str(value), markup=False)


def show_identity_report(report):
    """Display an IdentityReport as a table, one row per identity"""
    table = Table(title=f"Identities in Cend_{report.size} (n, m <= {report.index_bound})")
    table.add_column("Identity", style="cyan")
    table.add_column("Checked", justify="right")
    table.add_column("Status")
    table.add_column("Witness", overflow="fold")
    for r in report.results:
        witness = ""
        if r.witness is not None:
            idx = f"n={r.witness.n}" + (f", m={r.witness.m}" if r.witness.m is not None else "")
            witness = escape(f"{idx}: {r.witness.lhs} != {r.witness.rhs}")
        table.add_row(r.name, str(r.checked), mark(r.passed), witness)
    console.print(table)


def show_checks(title, rows):
    """rows: (label, ok, detail)"""
    table = Table(title=title)
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Detail", overflow="fold")
    for label, ok, detail in rows:
        table.add_row(escape(label), mark(ok), escape(detail or ""))
    console.print(table)


def show_span(span, title="Span"):
    tree = Tree(f"[bold cyan]{title}[/bold cyan] (Cend_{span.size}, deg_v <= {span.v_degree_bound}, rank {span.rank})")
    for b in span.basis:
        tree.add(escape(str(b)))
    console.print(tree)


def show_lift_report(report):
    """Stages as a tree with every relation checked under its stage"""
    title = f"[bold cyan]{report.operation}[/bold cyan]"
    if report.fixture:
        title += f" on {report.fixture}"
    tree = Tree(title)
    nodes = {}
    for name in report.stages:
        nodes[name] = tree.add(f"[magenta]{name}[/magenta]")
    for check in report.transcript:
        node = nodes.get(check.stage)
        if node is None:
            node = nodes[check.stage] = tree.add(f"[magenta]{check.stage}[/magenta]")
        style = STATUS_STYLE.get(check.status, "white")
        line = f"[{style}]{check.status}[/{style}] {escape(check.relation)}"
        if check.detail:
            line += f" [dim]({escape(check.detail)})[/dim]"
        node.add(line)
    if report.iterations:
        counts = tree.add("[cyan]iterations[/cyan]")
        for name, value in report.iterations.items():
            counts.add(f"{name}: {value}")
    console.print(tree)
    if report.lifted:
        table = Table(title="Lifted elements")
        table.add_column("Name", style="cyan")
        table.add_column("Element", overflow="fold")
        for name, value in report.lifted.items():
            table.add_row(name, escape(value))
        console.print(table)


def show_units(units, title="Matrix units"):
    table = Table(title=title)
    table.add_column("Unit", style="cyan")
    table.add_column("Element", overflow="fold")
    for name, value in units.to_dict().items():
        table.add_row(name, escape(value))
    console.print(table)


def show_certificate(cert):
    """Obstruction certificate: the combination and the witness replay"""
    console.print(Panel(
        f"K = {cert.degree_bound}, {cert.unknowns} unknowns, {cert.rows_streamed} rows streamed, rank {cert.rank}\n"
        f"{len(cert.combination)} rows combine to 0 = {cert.constant}",
        title="[bold green]Obstruction certificate[/bold green]",
        border_style="green",
        expand=False,
    ))
    table = Table(title="Combination")
    table.add_column("Coefficient", justify="right", style="green")
    table.add_column("Row", style="cyan", overflow="fold")
    table.add_column("rhs", justify="right")
    for row in cert.combination:
        table.add_row(row.coefficient, escape(row.tag), row.rhs)
    console.print(table)
    w = cert.witness
    tree = Tree("[cyan]Witness replay (f1 = 1, f2 = v, n = 1)[/cyan]")
    tree.add(escape(f"lhs: {w.lhs}"))
    tree.add(escape(f"rhs: {w.rhs}"))
    tree.add(escape(f"discrepancy: {w.discrepancy}"))
    console.print(tree)


def show_sweep(entries):
    table = Table(title="Obstruction sweep")
    table.add_column("K", justify="right", style="cyan")
    table.add_column("Infeasible")
    table.add_column("Rows streamed", justify="right")
    table.add_column("Rows combined", justify="right")
    table.add_column("Certificate")
    for e in entries:
        table.add_row(str(e.degree_bound), mark(e.infeasible), str(e.rows_streamed), str(e.combined), mark(e.verified))
    console.print(table)


def show_cx_report(report):
    rows = [(f"{report.name}: {report.checked} checks", report.passed, "; ".join(report.failures))]
    show_checks(f"Counterexample: {report.name}", rows)


def show_psi(ansatz):
    tree = Tree(
        f"[bold cyan]psi(1) on the ansatz, K = {ansatz.degree_bound}[/bold cyan] "
        f"({ansatz.unknowns} unknowns, dimension {ansatz.dimension})"
    )
    for b in ansatz.basis:
        tree.add(escape(b))
    tree.add(f"spanned by (v - D)^k - v^k: {mark(ansatz.forced_form)}")
    console.print(tree)
