"""
The self-dual-diagram module: basis of star-fixed diagrams and the signed
conjugation action of the whole family on it.

A basis diagram tau sends the vector at a self-dual diagram iota to
``sign * d^closed * v_target`` with ``target = tau . iota . star(tau)``,
provided stacking tau onto iota keeps the rank (and, for walled families with
singletons, the a-rank); otherwise to zero. The sign comes from the
inversion statistic of the induced line permutations, so every action value
is a signed monomial in d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .algebra import JClassId, j_class, spectrum
from .diagrams import (
    Diagram,
    Family,
    a_rank,
    compose,
    enumerate_diagrams,
    format_diagram,
    is_member,
    is_self_dual,
    pi_of,
    rank,
    star,
)
from .scalars import DeltaPoly
from .specht import RepMatrices
from .symgroup import inv_stat

# A nonzero action value: (sign, d-exponent, target diagram).
Monomial = tuple[int, int, Diagram]


@dataclass(frozen=True)
class ModelBasis:
    """Self-dual diagrams of a family, grouped by two-sided class."""

    family: Family
    n: int
    elements: tuple[Diagram, ...]
    groups: tuple[tuple[JClassId, tuple[int, int]], ...]  # class -> index range

    @property
    def dim(self) -> int:
        return len(self.elements)

    def index(self, iota: Diagram) -> int:
        return self._index[iota]

    @property
    def _index(self) -> dict[Diagram, int]:
        return _basis_index(self.family, self.n)

    def block_of(self, j: JClassId) -> tuple[int, int]:
        for jj, span in self.groups:
            if jj == j:
                return span
        raise KeyError(j)


@cache
def model_basis(fam: Family, n: int) -> ModelBasis:
    """All star-fixed members, ordered by the spectrum's class order."""
    fam.check_n(n)
    selfdual = [d for d in enumerate_diagrams(fam, n) if is_self_dual(d)]
    elements: list[Diagram] = []
    groups: list[tuple[JClassId, tuple[int, int]]] = []
    for record in spectrum(fam, n):
        block = sorted(
            (d for d in selfdual if j_class(d, fam) == record.j),
            key=Diagram.sort_key,
        )
        start = len(elements)
        elements.extend(block)
        groups.append((record.j, (start, len(elements))))
    return ModelBasis(fam, n, tuple(elements), tuple(groups))


@cache
def _basis_index(fam: Family, n: int) -> dict[Diagram, int]:
    return {d: i for i, d in enumerate(model_basis(fam, n).elements)}


@dataclass(frozen=True)
class ModelVector:
    """A finite combination of self-dual basis diagrams."""

    family: Family
    n: int
    coords: tuple[tuple[Diagram, DeltaPoly], ...]

    def as_dict(self) -> dict[Diagram, DeltaPoly]:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __repr__(self) -> str:
        if not self.coords:
            return "ModelVector(0)"
        bits = [f"({coeff}) v[{format_diagram(d)}]" for d, coeff in self.coords]
        return " + ".join(bits)


def act_monomial(fam: Family, tau: Diagram, iota: Diagram) -> Monomial | None:
    """The raw action value, or None on the zero branch.

    The zero branch fires when stacking tau onto iota drops the rank; walled
    families with singletons also compare the a-rank, which keeps the action
    inside one two-sided block.
    """
    stacked, closed = compose(tau, iota)
    if rank(stacked) != rank(iota):
        return None
    if fam.tracks_a_rank:
        a = fam.wall[0]
        if a_rank(stacked, a) != a_rank(iota, a):
            return None
    pi_iota = pi_of(iota)
    exponent = inv_stat(pi_of(stacked) * pi_iota, pi_iota)
    sign = -1 if exponent % 2 else 1
    target, _ = compose(stacked, star(tau))
    return sign, closed, target


@cache
def _act_cached(fam: Family, tau: Diagram, iota: Diagram) -> Monomial | None:
    return act_monomial(fam, tau, iota)


def model_act(fam: Family, tau: Diagram, iota: Diagram) -> ModelVector:
    """Action of a basis diagram on the vector at a self-dual diagram."""
    if not is_member(fam, tau):
        raise ValueError(f"[{format_diagram(tau)}] is not a member of {fam}")
    if not is_self_dual(iota) or not is_member(fam, iota):
        raise ValueError(f"[{format_diagram(iota)}] is not a self-dual member of {fam}")
    hit = act_monomial(fam, tau, iota)
    if hit is None:
        return ModelVector(fam, tau.n, ())
    sign, closed, target = hit
    return ModelVector(fam, tau.n, ((target, DeltaPoly.delta(closed, sign)),))


@cache
def model_matrices(fam: Family, n: int) -> RepMatrices:
    """One matrix per basis diagram, block-diagonal over the class grouping."""
    basis = model_basis(fam, n)
    index = _basis_index(fam, n)
    entries = {}
    for tau in enumerate_diagrams(fam, n):
        sparse = {}
        for col, iota in enumerate(basis.elements):
            hit = _act_cached(fam, tau, iota)
            if hit is not None:
                sign, closed, target = hit
                sparse[(index[target], col)] = DeltaPoly.delta(closed, sign)
        entries[tau] = sparse
    return RepMatrices(fam, n, basis.dim, entries, blocks=tuple(span for _, span in basis.groups))
