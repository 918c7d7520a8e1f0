"""
Linear combinations of diagrams, the d-twisted product, and the two-sided
class structure (left/right/two-sided equivalence, class counts and the
groups acting on line endpoints).

The product of basis diagrams is ``d^closed * stacked`` extended bilinearly.
Left-equivalent diagrams share the unprimed restriction and the one-row
unprimed parts; two-sided classes are classified by rank (and by a-rank for
the two walled families that admit singletons).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Mapping

from .diagrams import (
    Diagram,
    Family,
    a_rank,
    compose,
    enumerate_diagrams,
    format_diagram,
    is_member,
    rank,
    star,
)
from .scalars import DeltaPoly
from .symgroup import IntPartition, Permutation, involutions, partitions, product_rep, specht_rep, syt_count

# A simple-module label: () for trivial groups, (lam,) for one symmetric
# group, (lam1, lam2) for a two-block product.
Label = tuple[IntPartition, ...]


@dataclass(frozen=True)
class JClassId:
    """Identifier of a two-sided class: rank, plus a-rank where it matters."""

    family: Family
    n: int
    rank: int
    a_rank: int | None = None

    def __post_init__(self):
        if self.family.tracks_a_rank != (self.a_rank is not None):
            raise ValueError("a_rank is tracked exactly for the walled families with singletons")

    def __str__(self) -> str:
        if self.a_rank is not None:
            return f"rank {self.rank} (a-rank {self.a_rank})"
        return f"rank {self.rank}"


@dataclass(frozen=True)
class GroupDescriptor:
    """The group permuting unprimed line endpoints inside one two-sided class."""

    kind: str                 # "symmetric" | "product" | "trivial"
    degrees: tuple[int, ...]  # (k,) or (k1, k2) or ()

    def order(self) -> int:
        out = 1
        for k in self.degrees:
            fact = 1
            for i in range(2, k + 1):
                fact *= i
            out *= fact
        return out

    def involution_count(self) -> int:
        out = 1
        for k in self.degrees:
            out *= len(involutions(k))
        return out

    def labels(self) -> tuple[Label, ...]:
        """Labels of the simple modules: tuples of partitions, one per factor."""
        if self.kind == "trivial":
            return ((),)
        pools = [partitions(k) for k in self.degrees]
        if len(pools) == 1:
            return tuple((lam,) for lam in pools[0])
        return tuple((l1, l2) for l1 in pools[0] for l2 in pools[1])

    def label_dim(self, label: Label) -> int:
        out = 1
        for lam in label:
            out *= syt_count(lam)
        return out

    def rep(self, label: Label):
        """Concrete matrices for one simple module (None for a trivial group)."""
        if self.kind == "trivial":
            return None
        if self.kind == "symmetric":
            (lam,) = label
            return specht_rep(lam)
        lam1, lam2 = label
        return product_rep(lam1, lam2)

    def contains(self, g: Permutation, total_rank: int) -> bool:
        """Is g, as an element of S_rank, inside this group?"""
        if g.size != total_rank:
            return False
        if self.kind == "trivial":
            return g.is_identity()
        if self.kind == "product":
            k1 = self.degrees[0]
            return all(g(i) <= k1 for i in range(1, k1 + 1))
        return True

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "{e}"
        if self.kind == "symmetric":
            return f"S_{self.degrees[0]}"
        return f"S_{self.degrees[0]} x S_{self.degrees[1]}"


def group_descriptor(fam: Family, j: JClassId) -> GroupDescriptor:
    """The endpoint group of a two-sided class, per family kind."""
    if fam.tag in ("p", "b", "pb"):
        return GroupDescriptor("symmetric", (j.rank,))
    if fam.tag in ("wb", "wpb"):
        ka = j.a_rank if j.a_rank is not None else _forced_a_rank(fam, j)
        return GroupDescriptor("product", (ka, j.rank - ka))
    return GroupDescriptor("trivial", ())


def _forced_a_rank(fam: Family, j: JClassId) -> int:
    # Without singletons the wall forces the split: a - k_a crossings match b - k_b.
    a, b = fam.wall
    ka2 = j.rank + a - b
    if ka2 % 2 or not 0 <= ka2 // 2 <= min(a, j.rank):
        raise ValueError(f"rank {j.rank} is not realizable in {fam}")
    return ka2 // 2


def j_class(rho: Diagram, fam: Family) -> JClassId:
    fam.check_n(rho.n)
    if fam.tracks_a_rank:
        return JClassId(fam, rho.n, rank(rho), a_rank(rho, fam.wall[0]))
    return JClassId(fam, rho.n, rank(rho))


def left_key(rho: Diagram):
    """Left-equivalence invariant: unprimed restriction with one-row flags."""
    n = rho.n
    return tuple(
        sorted(
            (tuple(c for c in part if c < n), part[-1] < n)
            for part in rho.parts
            if part[0] < n
        )
    )


def right_key(rho: Diagram):
    return left_key(star(rho))


def left_equivalent(tau: Diagram, rho: Diagram) -> bool:
    """Same unprimed restriction and the same unprimed-only parts."""
    if tau.n != rho.n:
        raise ValueError("size mismatch")
    return left_key(tau) == left_key(rho)


def right_equivalent(tau: Diagram, rho: Diagram) -> bool:
    if tau.n != rho.n:
        raise ValueError("size mismatch")
    return right_key(tau) == right_key(rho)


def left_class_of(rho: Diagram, fam: Family) -> tuple[Diagram, ...]:
    """All family members left-equivalent to rho, in canonical order."""
    key = left_key(rho)
    return tuple(d for d in enumerate_diagrams(fam, rho.n) if left_key(d) == key)


@dataclass(frozen=True)
class JClassRecord:
    j: JClassId
    q: int                      # number of right classes in the two-sided class
    group: GroupDescriptor
    size: int                   # number of diagrams in the two-sided class


@cache
def spectrum(fam: Family, n: int) -> tuple[JClassRecord, ...]:
    """Two-sided classes with their right-class counts and endpoint groups.

    Ordered by decreasing rank, then decreasing a-rank. The counts come from
    explicit grouping of the basis, not from closed formulas.
    """
    fam.check_n(n)
    by_j: dict[JClassId, list[Diagram]] = {}
    for d in enumerate_diagrams(fam, n):
        by_j.setdefault(j_class(d, fam), []).append(d)
    records = []
    for j, members in by_j.items():
        right_classes = {right_key(d) for d in members}
        records.append(JClassRecord(j, len(right_classes), group_descriptor(fam, j), len(members)))
    records.sort(key=lambda r: (-r.j.rank, -(r.j.a_rank or 0)))
    return tuple(records)


def algebra_dimension_identity(fam: Family, n: int) -> tuple[int, int]:
    """(actual dimension, sum over classes of q^2 * sum of squared label dims)."""
    actual = len(enumerate_diagrams(fam, n))
    predicted = 0
    for rec in spectrum(fam, n):
        inner = sum(rec.group.label_dim(label) ** 2 for label in rec.group.labels())
        predicted += rec.q * rec.q * inner
    return actual, predicted


class AlgebraElement:
    """A finite rational-polynomial combination of basis diagrams."""

    __slots__ = ("family", "n", "terms")

    def __init__(self, fam: Family, n: int, terms: Mapping[Diagram, DeltaPoly] | Iterable[tuple[Diagram, DeltaPoly]] = ()):
        fam.check_n(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned: dict[Diagram, DeltaPoly] = {}
        for diag, coeff in items:
            if diag.n != n:
                raise ValueError(f"diagram on {diag.n} strands in an algebra with n={n}")
            if not is_member(fam, diag):
                raise ValueError(f"[{format_diagram(diag)}] is not a member of {fam}")
            if not isinstance(coeff, DeltaPoly):
                coeff = DeltaPoly.constant(coeff)
            if coeff:
                acc = cleaned.get(diag)
                total = coeff if acc is None else acc + coeff
                if total:
                    cleaned[diag] = total
                else:
                    cleaned.pop(diag, None)
        self.family = fam
        self.n = n
        self.terms = cleaned

    @classmethod
    def from_diagram(cls, fam: Family, diag: Diagram, coeff: DeltaPoly | int = 1) -> AlgebraElement:
        return cls(fam, diag.n, [(diag, DeltaPoly.constant(coeff) if isinstance(coeff, (int, Fraction)) else coeff)])

    @classmethod
    def identity(cls, fam: Family, n: int) -> AlgebraElement:
        return cls.from_diagram(fam, Diagram.identity(n))

    def _check_compatible(self, other: AlgebraElement) -> None:
        if self.family != other.family or self.n != other.n:
            raise ValueError(
                f"mixing elements of {self.family} (n={self.n}) and {other.family} (n={other.n})"
            )

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check_compatible(other)
        terms = dict(self.terms)
        for diag, coeff in other.terms.items():
            terms[diag] = terms.get(diag, DeltaPoly.zero()) + coeff
        return AlgebraElement(self.family, self.n, terms)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.family, self.n, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, coeff: DeltaPoly | Fraction | int) -> AlgebraElement:
        if not isinstance(coeff, DeltaPoly):
            coeff = DeltaPoly.constant(coeff)
        return AlgebraElement(self.family, self.n, {d: c * coeff for d, c in self.terms.items()})

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of ``x * y = d^closed * stacked``."""
        self._check_compatible(other)
        terms: dict[Diagram, DeltaPoly] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                product, closed = compose(d1, d2)
                contribution = c1 * c2 * DeltaPoly.delta(closed)
                acc = terms.get(product)
                terms[product] = contribution if acc is None else acc + contribution
        return AlgebraElement(self.family, self.n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.family == other.family
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgebraElement(0)"
        bits = [f"({coeff}) [{format_diagram(d)}]" for d, coeff in sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())]
        return " + ".join(bits)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def identity(fam: Family, n: int) -> AlgebraElement:
    return AlgebraElement.identity(fam, n)
