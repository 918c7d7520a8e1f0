"""
Command-line front end: enumeration, multiplication, model action tables,
per-class dimension reports, verification runs and diagram rendering.

Exit codes: 0 on success, 1 when a verification run reports a failure,
2 on usage errors (click's default).
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .algebra import spectrum
from .diagrams import (
    ALL_TAGS,
    Diagram,
    Family,
    Node,
    a_rank,
    compose,
    enumerate_filtered,
    family,
    format_diagram,
    is_member,
    parse,
)
from .model import model_act, model_basis
from .scalars import parse_rational
from .specht import all_specht_modules, format_label
from .verify import check_gelfand, sample_deltas

_FAMILY_CHOICES = list(ALL_TAGS)


def _build_family(tag: str, wall: str | None, n: int | None) -> Family:
    wall_pair = None
    if wall is not None:
        try:
            a, b = (int(x) for x in wall.split(","))
        except ValueError:
            raise click.UsageError(f"--wall expects A,B, got {wall!r}")
        wall_pair = (a, b)
    try:
        fam = family(tag, wall_pair)
        if n is not None:
            fam.check_n(n)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    return fam


def _parse_diagram(text: str, n: int, fam: Family | None = None) -> Diagram:
    try:
        diag = parse(text, n)
    except ValueError as exc:
        raise click.ClickException(f"bad diagram {text!r}: {exc}")
    if fam is not None and not is_member(fam, diag):
        raise click.ClickException(f"[{format_diagram(diag)}] is not a member of {fam}")
    return diag


def _vertical_lines(n: int, skip: set[int]) -> list[list[int]]:
    return [[i, n + i] for i in range(n) if i + 1 not in skip]


def _transposition_diagram(n: int, i: int) -> Diagram:
    parts = _vertical_lines(n, {i, i + 1})
    parts += [[i - 1, n + i], [i, n + i - 1]]
    return Diagram(n, parts)


def _singleton_diagram(n: int, i: int) -> Diagram:
    parts = _vertical_lines(n, {i})
    parts += [[i - 1], [n + i - 1]]
    return Diagram(n, parts)


def _arc_diagram(n: int, i: int) -> Diagram:
    parts = _vertical_lines(n, {i, i + 1})
    parts += [[i - 1, i], [n + i - 1, n + i]]
    return Diagram(n, parts)


def _join_diagram(n: int, i: int) -> Diagram:
    parts = _vertical_lines(n, {i, i + 1})
    parts += [[i - 1, i, n + i - 1, n + i]]
    return Diagram(n, parts)


def default_generators(fam: Family, n: int) -> list[Diagram]:
    """The documented display generators: adjacent swaps, then singleton
    makers, then arc/join contractions, as the family allows."""
    gens: list[Diagram] = []
    if fam.tag in ("p", "b", "pb"):
        gens += [_transposition_diagram(n, i) for i in range(1, n)]
    if fam.tag in ("wb", "wpb"):
        a = fam.wall[0]
        gens += [_transposition_diagram(n, i) for i in range(1, n) if i != a]
    if fam.tag == "p":
        gens.append(_singleton_diagram(n, 1))
    if fam.tag == "pb":
        gens.append(_singleton_diagram(n, 1))
    if fam.tag in ("motzkin", "ptl", "wptl"):
        gens += [_singleton_diagram(n, i) for i in range(1, n + 1)]
    if fam.tag == "wpb":
        a = fam.wall[0]
        gens.append(_singleton_diagram(n, 1))
        gens.append(_singleton_diagram(n, a + 1))
    if fam.tag in ("b", "pb"):
        gens.append(_arc_diagram(n, 1))
    if fam.tag in ("tl", "motzkin"):
        gens += [_arc_diagram(n, i) for i in range(1, n)]
    if fam.tag == "p":
        gens.append(_join_diagram(n, 1))
    if fam.tag == "ptl":
        gens += [_join_diagram(n, i) for i in range(1, n)]
    if fam.is_walled:
        gens.append(_arc_diagram(n, fam.wall[0]))
    return gens


@click.group()
def main():
    """Exact-arithmetic diagram algebras: bases, products, modules, checks."""


_family_option = click.option(
    "--family", "tag", type=click.Choice(_FAMILY_CHOICES), required=True, help="Diagram family."
)
_n_option = click.option("--n", "n", type=int, required=True, help="Number of strands.")
_wall_option = click.option("--wall", type=str, default=None, help="Wall sides A,B (walled families).")


@main.command("enumerate")
@_family_option
@_n_option
@_wall_option
@click.option("--rank", "rank_filter", type=int, default=None, help="Keep only this rank.")
@click.option("--a-rank", "a_rank_filter", type=int, default=None, help="Keep only this a-rank (walled).")
def cmd_enumerate(tag, n, wall, rank_filter, a_rank_filter):
    """List the basis diagrams in canonical text form."""
    fam = _build_family(tag, wall, n)
    try:
        members = enumerate_filtered(fam, n, rank_filter, a_rank_filter)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    for d in members:
        click.echo(format_diagram(d))


@main.command("multiply")
@_family_option
@_n_option
@_wall_option
@click.argument("left")
@click.argument("right")
def cmd_multiply(tag, n, wall, left, right):
    """Multiply two basis diagrams; prints the loop factor and the product."""
    fam = _build_family(tag, wall, n)
    x = _parse_diagram(left, n, fam)
    y = _parse_diagram(right, n, fam)
    product, closed = compose(x, y)
    coeff = "1" if closed == 0 else f"d^{closed}"
    click.echo(f"{coeff} * [{format_diagram(product)}]")


def _model_table_data(fam: Family, n: int, generators: list[Diagram]):
    basis = model_basis(fam, n)
    labels = {d: f"i{idx + 1}" for idx, d in enumerate(basis.elements)}
    rows = []
    for g in generators:
        row = []
        for iota in basis.elements:
            vec = model_act(fam, g, iota)
            if vec.is_zero():
                row.append("0")
            else:
                (target, coeff), = vec.coords
                text = str(coeff)
                if text == "1":
                    row.append(labels[target])
                elif text == "-1":
                    row.append("-" + labels[target])
                else:
                    row.append(f"{text}*{labels[target]}")
        rows.append(row)
    return basis, rows


@main.command("model-table")
@_family_option
@_n_option
@_wall_option
@click.option("--generators", "gen_text", type=str, default=None,
              help="Semicolon-separated diagrams to use as table rows.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def cmd_model_table(tag, n, wall, gen_text, fmt):
    """Action of the family's generators on the self-dual basis."""
    fam = _build_family(tag, wall, n)
    if gen_text:
        generators = [_parse_diagram(chunk.strip(), n, fam) for chunk in gen_text.split(";")]
    else:
        generators = default_generators(fam, n)
    basis, rows = _model_table_data(fam, n, generators)
    if fmt == "json":
        payload = {
            "family": fam.tag,
            "n": n,
            "wall": list(fam.wall) if fam.wall else None,
            "basis": [format_diagram(d) for d in basis.elements],
            "generators": [format_diagram(g) for g in generators],
            "table": rows,
        }
        click.echo(json.dumps(payload, indent=2))
        return
    click.echo(f"model action table  family={fam} n={n}")
    click.echo("basis:")
    for idx, d in enumerate(basis.elements):
        click.echo(f"  i{idx + 1} = {format_diagram(d)}")
    click.echo("generators:")
    for idx, g in enumerate(generators):
        click.echo(f"  g{idx + 1} = {format_diagram(g)}")
    click.echo("table (generator rows acting on basis columns):")
    width = max([6] + [len(cell) for row in rows for cell in row])
    header = "gen   " + "  ".join(f"i{idx + 1}".ljust(width) for idx in range(basis.dim))
    click.echo(header.rstrip())
    for idx, row in enumerate(rows):
        line = f"g{idx + 1}".ljust(6) + "  ".join(cell.ljust(width) for cell in row)
        click.echo(line.rstrip())


@main.command("dims")
@_family_option
@_n_option
@_wall_option
def cmd_dims(tag, n, wall):
    """Per-class report: rank, class counts, endpoint group, module dimensions."""
    fam = _build_family(tag, wall, n)
    basis = model_basis(fam, n)
    modules = all_specht_modules(fam, n)
    click.echo(f"family={fam} n={n}")
    for record in spectrum(fam, n):
        lo, hi = basis.block_of(record.j)
        dims = [
            f"{format_label(sm.label)}:{sm.dim}" for sm in modules if sm.j == record.j
        ]
        a_part = f" a-rank {record.j.a_rank}" if record.j.a_rank is not None else ""
        click.echo(
            f"  rank {record.j.rank}{a_part}: q={record.q} G={record.group} "
            f"selfdual={hi - lo} modules [{', '.join(dims)}]"
        )


@main.command("verify")
@_family_option
@_n_option
@_wall_option
@click.option("--delta", "delta_text", type=str, default=None, help="Rational value P/Q of the loop parameter.")
@click.option("--seed", type=int, default=2024, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def cmd_verify(tag, n, wall, delta_text, seed, fmt):
    """Run the verification checks and report pass/fail per check."""
    fam = _build_family(tag, wall, n)
    if delta_text is not None:
        try:
            delta = parse_rational(delta_text)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        if delta == 0:
            raise click.UsageError("the loop parameter must be nonzero")
        deltas = [delta]
    else:
        deltas = sample_deltas(n, seed)
    report = check_gelfand(fam, n, deltas, seed=seed, include_module_axioms=n <= 3)
    if fmt == "json":
        click.echo(report.to_json())
    else:
        for c in report.checks:
            click.echo(f"{c.status:4s} {c.name} :: {c.details}")
        click.echo(f"overall: {'pass' if report.passed else 'fail'}")
    sys.exit(0 if report.passed else 1)


def _render_svg(diag: Diagram) -> str:
    n = diag.n
    height = 30 * n + 30
    left_x, right_x = 30, 150
    def pos(code: int) -> tuple[int, int]:
        node = Node.from_code(code, n)
        x = left_x if node.primed else right_x
        return x, 30 * node.index
    lines = []
    for part in diag.parts:
        chain = sorted(part)
        for a, b in zip(chain, chain[1:]):
            (x1, y1), (x2, y2) = pos(a), pos(b)
            if x1 == x2:
                bend = x1 + (25 if x1 == left_x else -25)
                lines.append(
                    f'<path d="M {x1} {y1} Q {bend} {(y1 + y2) // 2} {x2} {y2}" '
                    'fill="none" stroke="black"/>'
                )
            else:
                lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
    dots = []
    for code in range(2 * n):
        x, y = pos(code)
        dots.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
        anchor = x - 18 if x == left_x else x + 8
        dots.append(f'<text x="{anchor}" y="{y + 4}" font-size="12">{Node.from_code(code, n)}</text>')
    body = "\n".join(lines + dots)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="200" height="{height}">\n'
        f"{body}\n</svg>"
    )


def _render_tikz(diag: Diagram) -> str:
    n = diag.n
    out = ["\\begin{tikzpicture}[every node/.style={circle,fill,inner sep=1pt}]"]
    def coords(code: int) -> tuple[float, float]:
        node = Node.from_code(code, n)
        x = 0.0 if node.primed else 2.0
        return x, -0.6 * node.index
    for code in range(2 * n):
        x, y = coords(code)
        node = Node.from_code(code, n)
        side = "left" if node.primed else "right"
        out.append(f"  \\node (n{code}) at ({x},{y}) [label={side}:{{${node}$}}] {{}};")
    for part in diag.parts:
        chain = sorted(part)
        for a, b in zip(chain, chain[1:]):
            xa, _ = coords(a)
            xb, _ = coords(b)
            if xa == xb:
                bend = "bend left=40" if xa == 0.0 else "bend right=40"
                out.append(f"  \\draw (n{a}) to[{bend}] (n{b});")
            else:
                out.append(f"  \\draw (n{a}) -- (n{b});")
    out.append("\\end{tikzpicture}")
    return "\n".join(out)


@main.command("render")
@click.argument("diagram_text")
@click.option("--n", "n", type=int, default=None, help="Strand count (default: largest index used).")
@click.option("--format", "fmt", type=click.Choice(["svg", "tikz"]), default="svg")
def cmd_render(diagram_text, n, fmt):
    """Emit drawing code for one diagram (unprimed column right, primed left)."""
    if n is None:
        import re

        indices = [int(m.group(1)) for m in re.finditer(r"(\d+)", diagram_text)]
        if not indices:
            raise click.ClickException("cannot infer n from an empty diagram")
        n = max(indices)
    diag = _parse_diagram(diagram_text, n)
    click.echo(_render_svg(diag) if fmt == "svg" else _render_tikz(diag))


if __name__ == "__main__":
    main()
