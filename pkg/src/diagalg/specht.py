"""
Cell modules and Specht modules of the diagram families, delivered as
explicit action matrices over exact polynomial scalars.

A cell module is the span of one left-equivalence class, with basis-diagram
action ``tau . rho = d^closed * (tau stacked over rho)`` truncated to the
class. The class used is the one containing a fixed self-dual idempotent of
the given rank. Specht modules tensor a cell module with a simple module of
the endpoint group over that group's algebra; since the cell module is free
over the group, the tensor product is assembled directly on coset
representatives (lexicographically minimal diagram per right class).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Optional

from .algebra import (
    GroupDescriptor,
    JClassId,
    Label,
    group_descriptor,
    j_class,
    left_class_of,
    left_key,
    right_key,
    spectrum,
)
from .diagrams import (
    Diagram,
    Family,
    compose,
    enumerate_diagrams,
    format_diagram,
    is_member,
    pi_of,
    propagating_parts,
    star,
)
from .scalars import DeltaPoly
from .symgroup import Permutation

# One sparse action matrix: {(row, col): coefficient}.
SparseMatrix = dict[tuple[int, int], DeltaPoly]


class RepMatrices:
    """Per-basis-diagram action matrices of one module over a diagram family."""

    def __init__(
        self,
        fam: Family,
        n: int,
        dim: int,
        entries: dict[Diagram, SparseMatrix],
        blocks: Optional[tuple[tuple[int, int], ...]] = None,
    ):
        self.family = fam
        self.n = n
        self.dim = dim
        self.entries = entries
        self.blocks = blocks

    def matrix(self, diag: Diagram) -> list[list[DeltaPoly]]:
        dense = [[DeltaPoly.zero()] * self.dim for _ in range(self.dim)]
        for (r, c), coeff in self.entries[diag].items():
            dense[r][c] = coeff
        return dense

    def evaluated(self, delta: Fraction) -> dict[Diagram, dict[tuple[int, int], Fraction]]:
        out: dict[Diagram, dict[tuple[int, int], Fraction]] = {}
        for diag, sparse in self.entries.items():
            cells = {}
            for pos, coeff in sparse.items():
                value = coeff.evaluate(delta)
                if value:
                    cells[pos] = value
            out[diag] = cells
        return out


def rank_idempotent(fam: Family, j: JClassId) -> Diagram:
    """The fixed self-dual, stack-idempotent diagram anchoring one class.

    Identity lines fill the first k columns (for walled families: the leftmost
    columns on the left of the wall and the rightmost on the right), and the
    remaining columns are closed off in the family's cheapest self-dual way:
    one big block for partition-type families, nested arcs for matching-type
    families, singletons when singletons are allowed.
    """
    fam.check_n(j.n)
    if fam != j.family:
        raise ValueError("class identifier belongs to a different family")
    n, k = j.n, j.rank
    if not 0 <= k <= n:
        raise ValueError(f"rank {k} out of range for n={n}")

    parts: list[list[int]]
    if fam.tag in ("p", "ptl"):
        if k == 0:
            parts = [list(range(n)), list(range(n, 2 * n))]
        else:
            parts = [[i, n + i] for i in range(k - 1)]
            parts.append(list(range(k - 1, n)) + list(range(n + k - 1, 2 * n)))
    elif fam.tag in ("b", "tl"):
        if (n - k) % 2:
            raise ValueError(f"rank {k} has the wrong parity for n={n}")
        parts = [[i, n + i] for i in range(k)]
        for i in range(k, n, 2):
            parts.append([i, i + 1])
            parts.append([n + i, n + i + 1])
    elif fam.tag in ("pb", "motzkin"):
        parts = [[i, n + i] for i in range(k)]
        parts.extend([c] for i in range(k, n) for c in (i, n + i))
    else:
        a, b = fam.wall
        if fam.tracks_a_rank:
            if j.a_rank is None:
                raise ValueError("walled families with singletons need an a-rank")
            ka = j.a_rank
            kb = k - ka
            if not (0 <= ka <= a and 0 <= kb <= b):
                raise ValueError(f"(rank, a-rank) = ({k}, {ka}) not realizable in {fam}")
            parts = [[i, n + i] for i in range(ka)]
            parts += [[n - 1 - i, 2 * n - 1 - i] for i in range(kb)]
            used = set(range(ka)) | set(range(n - kb, n))
            parts.extend([c] for i in range(n) if i not in used for c in (i, n + i))
        else:
            ka2 = k + a - b
            if ka2 % 2 or not 0 <= ka2 // 2 <= min(a, k):
                raise ValueError(f"rank {k} not realizable in {fam}")
            ka = ka2 // 2
            kb = k - ka
            parts = [[i, n + i] for i in range(ka)]
            parts += [[n - 1 - i, 2 * n - 1 - i] for i in range(kb)]
            # Nested arcs hugging the wall keep the planar variants planar.
            for i in range(a - ka):
                parts.append([a - 1 - i, a + i])
                parts.append([n + a - 1 - i, n + a + i])
    diag = Diagram(n, parts)
    if not is_member(fam, diag):
        raise ValueError(f"rank {k} is not realizable in {fam}")
    assert star(diag) == diag
    assert compose(diag, diag).product == diag
    assert j_class(diag, fam) == j
    return diag


def line_attachment(rho: Diagram) -> Permutation:
    """Attachment map of the propagating lines: unprimed position -> primed position.

    This is exactly the line-matching permutation of the diagram; the alias
    emphasizes the role it plays in the right endpoint-group action.
    """
    return pi_of(rho)


def reattach_lines(rho: Diagram, g: Permutation) -> Diagram:
    """Twist the propagating lines: line i keeps its unprimed block and takes
    the primed block formerly attached to line g(i)."""
    n = rho.n
    lines = propagating_parts(rho)
    if g.size != len(lines):
        raise ValueError(f"expected an element of S_{len(lines)}")
    fixed = [list(p) for p in rho.parts if not (p[0] < n <= p[-1])]
    tops = [[c for c in part if c < n] for part in lines]
    bottoms = [[c for c in part if c >= n] for part in lines]
    new_lines = [tops[i] + bottoms[g(i + 1) - 1] for i in range(len(lines))]
    return Diagram(n, fixed + new_lines)


@dataclass
class CellModule:
    """The span of one left class with the truncated stacking action."""

    family: Family
    n: int
    j: JClassId
    basis: tuple[Diagram, ...]
    anchor: Diagram
    group: GroupDescriptor
    # Per algebra-basis diagram, one column map: column -> (row, d-exponent) or None.
    columns: dict[Diagram, tuple[Optional[tuple[int, int]], ...]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, tau: Diagram) -> list[list[DeltaPoly]]:
        dense = [[DeltaPoly.zero()] * self.dim for _ in range(self.dim)]
        for col, hit in enumerate(self.columns[tau]):
            if hit is not None:
                row, exp = hit
                dense[row][col] = DeltaPoly.delta(exp)
        return dense

    def rep(self) -> RepMatrices:
        entries = {
            tau: {
                (hit[0], col): DeltaPoly.delta(hit[1])
                for col, hit in enumerate(cols)
                if hit is not None
            }
            for tau, cols in self.columns.items()
        }
        return RepMatrices(self.family, self.n, self.dim, entries)


def cell_module(fam: Family, n: int, j: JClassId, seed: Diagram | None = None) -> CellModule:
    """Build the cell module anchored at the rank idempotent (or at ``seed``)."""
    if seed is None:
        return _anchored_cell_module(fam, n, j)
    return _build_cell_module(fam, n, j, seed)


@cache
def _anchored_cell_module(fam: Family, n: int, j: JClassId) -> CellModule:
    return _build_cell_module(fam, n, j, rank_idempotent(fam, j))


def _build_cell_module(fam: Family, n: int, j: JClassId, anchor: Diagram) -> CellModule:
    if j_class(anchor, fam) != j:
        raise ValueError("seed diagram lies in a different two-sided class")
    basis = left_class_of(anchor, fam)
    index = {d: i for i, d in enumerate(basis)}
    columns: dict[Diagram, tuple[Optional[tuple[int, int]], ...]] = {}
    for tau in enumerate_diagrams(fam, n):
        col: list[Optional[tuple[int, int]]] = []
        for rho in basis:
            product, closed = compose(tau, rho)
            row = index.get(product)
            col.append(None if row is None else (row, closed))
        columns[tau] = tuple(col)
    return CellModule(fam, n, j, basis, anchor, group_descriptor(fam, j), columns)


def right_G_action(cm: CellModule, g: Permutation) -> list[list[Fraction]]:
    """Matrix of the right endpoint-group action; a permutation of the basis."""
    if not cm.group.contains(g, cm.j.rank):
        raise ValueError(f"{g!r} is not in the endpoint group {cm.group}")
    index = {d: i for i, d in enumerate(cm.basis)}
    mat = [[Fraction(0)] * cm.dim for _ in range(cm.dim)]
    for col, rho in enumerate(cm.basis):
        mat[index[reattach_lines(rho, g)]][col] = Fraction(1)
    return mat


def _orbit_data(cm: CellModule) -> tuple[tuple[int, ...], list[tuple[int, Permutation]]]:
    """Representative basis indices per right class, and (rep, twist) per element."""
    by_orbit: dict[tuple, list[int]] = {}
    for i, d in enumerate(cm.basis):
        by_orbit.setdefault(right_key(d), []).append(i)
    reps: list[int] = []
    rep_of: dict[tuple, int] = {}
    for key, members in by_orbit.items():
        rep_of[key] = min(members, key=lambda i: cm.basis[i].parts)
    for key in sorted(rep_of, key=lambda key: cm.basis[rep_of[key]].parts):
        reps.append(rep_of[key])
    rep_position = {rep: m for m, rep in enumerate(reps)}

    decomposition: list[tuple[int, Permutation]] = []
    for d in cm.basis:
        rep_index = rep_of[right_key(d)]
        t_rep = line_attachment(cm.basis[rep_index])
        twist = t_rep.inverse() * line_attachment(d)
        assert reattach_lines(cm.basis[rep_index], twist) == d
        decomposition.append((rep_position[rep_index], twist))
    return tuple(reps), decomposition


@dataclass
class SpechtModule:
    """Cell module tensored with one simple module of the endpoint group."""

    family: Family
    n: int
    j: JClassId
    label: Label
    dim: int
    cell: CellModule
    rep_indices: tuple[int, ...]
    entries: dict[Diagram, SparseMatrix] = field(repr=False)

    def matrix(self, tau: Diagram) -> list[list[DeltaPoly]]:
        dense = [[DeltaPoly.zero()] * self.dim for _ in range(self.dim)]
        for (r, c), coeff in self.entries[tau].items():
            dense[r][c] = coeff
        return dense

    def rep(self) -> RepMatrices:
        return RepMatrices(self.family, self.n, self.dim, self.entries)


def specht_module(
    fam: Family,
    n: int,
    j: JClassId,
    label: Label,
    seed: Diagram | None = None,
) -> SpechtModule:
    cm = cell_module(fam, n, j, seed=seed)
    group = cm.group
    if label not in group.labels():
        raise ValueError(f"{label} does not label a simple module of {group}")
    fdim = group.label_dim(label)
    group_rep = group.rep(label)
    reps, decomposition = _orbit_data(cm)
    q = len(reps)
    dim = q * fdim

    entries: dict[Diagram, SparseMatrix] = {}
    for tau, cols in cm.columns.items():
        sparse: SparseMatrix = {}
        for m, rep_index in enumerate(reps):
            hit = cols[rep_index]
            if hit is None:
                continue
            target_row, exp = hit
            m2, twist = decomposition[target_row]
            if group_rep is None:
                sparse[(m2, m)] = DeltaPoly.delta(exp)
            else:
                gmat = group_rep.matrix(twist)
                for r in range(fdim):
                    for c in range(fdim):
                        if gmat[r][c]:
                            sparse[(m2 * fdim + r, m * fdim + c)] = DeltaPoly.delta(exp, gmat[r][c])
        entries[tau] = sparse
    return SpechtModule(fam, n, j, label, dim, cm, reps, entries)


@cache
def all_specht_modules(fam: Family, n: int) -> tuple[SpechtModule, ...]:
    """Every Specht module of the family at size n, in spectrum order."""
    modules = []
    for record in spectrum(fam, n):
        for label in record.group.labels():
            modules.append(specht_module(fam, n, record.j, label))
    return tuple(modules)


def format_label(label: Label) -> str:
    if not label:
        return "triv"
    return " x ".join("(" + ",".join(map(str, lam)) + ")" for lam in label)
