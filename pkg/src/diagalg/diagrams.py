"""
Set-partition diagrams on two rows of n points and their stacking calculus.

A diagram is a partition of the 2n nodes 1..n (unprimed) and 1'..n' (primed).
Nodes are stored as integer codes: unprimed i is ``i-1`` and primed i' is
``n+i-1``, so the code order realizes the total node order
1 < 2 < ... < n < 1' < ... < n'. Parts are kept canonical (nodes sorted within
a part, parts sorted by their minimum), which makes diagram equality
structural and diagrams hashable.

Stacking convention for ``compose(tau, rho)``: rho sits below tau, the
unprimed row of tau is glued to the primed row of rho, and the result keeps
rho's unprimed row and tau's primed row. On permutation diagrams (parts
``{i, p(i)'}``) this is function composition with the right factor applied
first. ``closed`` counts the connected components confined to the glued
middle row, including isolated middle nodes.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .symgroup import Permutation


@dataclass(frozen=True)
class Node:
    """One endpoint: an index in 1..n, primed or not."""

    index: int
    primed: bool

    def code(self, n: int) -> int:
        if not 1 <= self.index <= n:
            raise ValueError(f"node index {self.index} out of range 1..{n}")
        return self.index - 1 + (n if self.primed else 0)

    @classmethod
    def from_code(cls, code: int, n: int) -> Node:
        if not 0 <= code < 2 * n:
            raise ValueError(f"node code {code} out of range for n={n}")
        return cls(code % n + 1, code >= n)

    @property
    def sort_key(self) -> tuple[bool, int]:
        return (self.primed, self.index)

    def __str__(self) -> str:
        return f"{self.index}'" if self.primed else str(self.index)


class Diagram:
    """A set partition of the 2n nodes, in canonical form (value semantics)."""

    __slots__ = ("n", "parts", "_hash")

    def __init__(self, n: int, parts: Iterable[Iterable[int]]):
        if n < 1:
            raise ValueError("n must be a positive integer")
        canonical = tuple(sorted(tuple(sorted(part)) for part in parts))
        seen: list[int] = []
        for part in canonical:
            if not part:
                raise ValueError("empty part")
            seen.extend(part)
        if sorted(seen) != list(range(2 * n)):
            raise ValueError(f"parts do not partition the {2 * n} nodes")
        self.n = n
        self.parts = canonical
        self._hash = hash((n, canonical))

    @classmethod
    def identity(cls, n: int) -> Diagram:
        return cls(n, ((i, n + i) for i in range(n)))

    @classmethod
    def from_permutation(cls, perm: Permutation) -> Diagram:
        """The diagram with parts {i, p(i)'}; composing these mirrors composing p's."""
        n = perm.size
        return cls(n, ((i - 1, n + perm(i) - 1) for i in range(1, n + 1)))

    @classmethod
    def from_nodes(cls, n: int, parts: Iterable[Iterable[Node]]) -> Diagram:
        return cls(n, ((node.code(n) for node in part) for part in parts))

    def part_of(self, code: int) -> tuple[int, ...]:
        for part in self.parts:
            if code in part:
                return part
        raise KeyError(code)

    def nodes_of_part(self, part: tuple[int, ...]) -> list[Node]:
        return [Node.from_code(c, self.n) for c in part]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Diagram)
            and self.n == other.n
            and self.parts == other.parts
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_diagram(self)

    def __repr__(self) -> str:
        return f"Diagram({self.n}, {format_diagram(self)!r})"

    def sort_key(self) -> tuple:
        """Canonical listing order: coarser diagrams first, then by parts."""
        return (len(self.parts), self.parts)


class ComposeResult(NamedTuple):
    product: Diagram
    closed: int


_TOKEN_RE = re.compile(r"(\d+)('?)")


def parse(text: str, n: int) -> Diagram:
    """Parse ``"1 2 4' | 3 5 | 4 2' 3' 5' | 1'"`` into a canonical diagram.

    Every node of 1..n and 1'..n' must appear exactly once.
    """
    parts: list[list[int]] = []
    seen: set[int] = set()
    for chunk in text.split("|"):
        tokens = chunk.split()
        if not tokens:
            raise ValueError(f"empty part in {text!r}")
        part: list[int] = []
        for token in tokens:
            m = _TOKEN_RE.fullmatch(token)
            if m is None:
                raise ValueError(f"bad node token {token!r}")
            node = Node(int(m.group(1)), m.group(2) == "'")
            code = node.code(n)
            if code in seen:
                raise ValueError(f"duplicate node {node}")
            seen.add(code)
            part.append(code)
        parts.append(part)
    if len(seen) != 2 * n:
        missing = [str(Node.from_code(c, n)) for c in range(2 * n) if c not in seen]
        raise ValueError(f"missing nodes: {', '.join(missing)}")
    return Diagram(n, parts)


def format_diagram(d: Diagram) -> str:
    return " | ".join(
        " ".join(str(Node.from_code(code, d.n)) for code in part) for part in d.parts
    )


def compose(tau: Diagram, rho: Diagram) -> ComposeResult:
    """Stack rho under tau; return the glued diagram and the closed middle count.

    Union-find over 3n slots: rho's unprimed nodes are slots 0..n-1, the glued
    middle row is slots n..2n-1, tau's primed nodes are slots 2n..3n-1.
    """
    if tau.n != rho.n:
        raise ValueError(f"cannot compose diagrams with n={tau.n} and n={rho.n}")
    n = tau.n
    parent = list(range(3 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for part in rho.parts:            # rho node code c lives at slot c
        first = part[0]
        for code in part[1:]:
            union(first, code)
    for part in tau.parts:            # tau node code c lives at slot c + n
        first = part[0] + n
        for code in part[1:]:
            union(first, code + n)

    classes: dict[int, list[int]] = {}
    for slot in range(3 * n):
        classes.setdefault(find(slot), []).append(slot)

    closed = 0
    parts: list[list[int]] = []
    for members in classes.values():
        outer = [s if s < n else s - n for s in members if s < n or s >= 2 * n]
        if outer:
            parts.append(outer)
        else:
            closed += 1
    return ComposeResult(Diagram(n, parts), closed)


def star(rho: Diagram) -> Diagram:
    """Swap the primed and unprimed rows (reflection through the vertical axis)."""
    n = rho.n
    return Diagram(n, (((c + n) % (2 * n) for c in part) for part in rho.parts))


def rank(rho: Diagram) -> int:
    """Number of propagating lines (parts meeting both rows)."""
    n = rho.n
    return sum(1 for part in rho.parts if part[0] < n <= part[-1])


def a_rank(rho: Diagram, a: int) -> int:
    """Number of propagating lines whose nodes all have index <= a."""
    n = rho.n
    if not 1 <= a < n:
        raise ValueError(f"a must satisfy 1 <= a < n, got a={a}, n={n}")
    count = 0
    for part in rho.parts:
        if part[0] < n <= part[-1] and all(c % n < a for c in part):
            count += 1
    return count


def is_self_dual(rho: Diagram) -> bool:
    return star(rho) == rho


def _boundary_position(code: int, n: int) -> int:
    """Cyclic boundary order 1, 2, ..., n, n', (n-1)', ..., 1'."""
    return code if code < n else 3 * n - code - 1


def _parts_cross(pos_x: Sequence[int], pos_y: Sequence[int]) -> bool:
    merged = sorted((p, 0) for p in pos_x) + sorted((p, 1) for p in pos_y)
    merged.sort()
    switches = 0
    last = merged[0][1]
    for _, owner in merged[1:]:
        if owner != last:
            switches += 1
            last = owner
    return switches >= 3


def is_planar(rho: Diagram) -> bool:
    """No two parts interleave in the cyclic boundary order."""
    n = rho.n
    positions = [sorted(_boundary_position(c, n) for c in part) for part in rho.parts]
    for px, py in itertools.combinations(positions, 2):
        if _parts_cross(px, py):
            return False
    return True


# ---------------------------------------------------------------------------
# Families

PARTITION = "p"
BRAUER = "b"
PARTIAL_BRAUER = "pb"
TEMPERLEY_LIEB = "tl"
MOTZKIN = "motzkin"
PLANAR_PARTITION = "ptl"
WALLED_BRAUER = "wb"
WALLED_PARTIAL_BRAUER = "wpb"
WALLED_TEMPERLEY_LIEB = "wtl"
WALLED_MOTZKIN = "wptl"

ALL_TAGS = (
    PARTITION,
    BRAUER,
    PARTIAL_BRAUER,
    TEMPERLEY_LIEB,
    MOTZKIN,
    PLANAR_PARTITION,
    WALLED_BRAUER,
    WALLED_PARTIAL_BRAUER,
    WALLED_TEMPERLEY_LIEB,
    WALLED_MOTZKIN,
)

WALLED_TAGS = (WALLED_BRAUER, WALLED_PARTIAL_BRAUER, WALLED_TEMPERLEY_LIEB, WALLED_MOTZKIN)

# Families whose diagrams have all parts of size exactly two / at most two.
_MATCHING_TAGS = (BRAUER, TEMPERLEY_LIEB, WALLED_BRAUER, WALLED_TEMPERLEY_LIEB)
_PARTIAL_TAGS = (PARTIAL_BRAUER, MOTZKIN, WALLED_PARTIAL_BRAUER, WALLED_MOTZKIN)
_PLANAR_TAGS = (TEMPERLEY_LIEB, MOTZKIN, PLANAR_PARTITION, WALLED_TEMPERLEY_LIEB, WALLED_MOTZKIN)


@dataclass(frozen=True)
class Family:
    """One of the ten diagram families; walled families carry the wall (a, b)."""

    tag: str
    wall: tuple[int, int] | None = None

    def __post_init__(self):
        if self.tag not in ALL_TAGS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        if self.is_walled:
            if self.wall is None:
                raise ValueError(f"family {self.tag!r} needs a wall (a, b)")
            a, b = self.wall
            if a < 1 or b < 1:
                raise ValueError(f"wall sides must be positive, got {self.wall}")
        elif self.wall is not None:
            raise ValueError(f"family {self.tag!r} does not take a wall")

    @property
    def is_walled(self) -> bool:
        return self.tag in WALLED_TAGS

    @property
    def tracks_a_rank(self) -> bool:
        """Walled families with singletons split two-sided classes by the a-rank too."""
        return self.tag in (WALLED_PARTIAL_BRAUER, WALLED_MOTZKIN)

    def check_n(self, n: int) -> None:
        if self.is_walled:
            a, b = self.wall
            if a + b != n:
                raise ValueError(f"wall {self.wall} does not match n={n}")

    def __str__(self) -> str:
        if self.is_walled:
            return f"{self.tag}[{self.wall[0]},{self.wall[1]}]"
        return self.tag


def family(tag: str, wall: tuple[int, int] | None = None) -> Family:
    return Family(tag.lower(), wall)


def _wall_ok(rho: Diagram, a: int) -> bool:
    n = rho.n
    for part in rho.parts:
        unprimed = [c for c in part if c < n]
        primed = [c for c in part if c >= n]
        if unprimed and primed:
            # Propagating lines stay on one side of the wall.
            sides = {c % n < a for c in part}
            if len(sides) != 1:
                return False
        elif len(part) > 1:
            # Non-singleton one-row parts must cross the wall.
            if len({c % n < a for c in part}) != 2:
                return False
    return True


def is_member(fam: Family, rho: Diagram) -> bool:
    """Does the diagram satisfy the family's defining conditions?"""
    fam.check_n(rho.n)
    if fam.tag in _MATCHING_TAGS and any(len(p) != 2 for p in rho.parts):
        return False
    if fam.tag in _PARTIAL_TAGS and any(len(p) > 2 for p in rho.parts):
        return False
    if fam.tag in _PLANAR_TAGS and not is_planar(rho):
        return False
    if fam.is_walled and not _wall_ok(rho, fam.wall[0]):
        return False
    return True


def set_partitions(m: int) -> Iterator[list[list[int]]]:
    """All set partitions of {0..m-1} via restricted growth strings."""
    if m == 0:
        yield []
        return
    labels = [0] * m

    def grow(i: int, top: int) -> Iterator[list[list[int]]]:
        if i == m:
            blocks: list[list[int]] = [[] for _ in range(top + 1)]
            for item, lab in enumerate(labels):
                blocks[lab].append(item)
            yield blocks
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from grow(i + 1, max(top, lab))

    yield from grow(1, 0)


def _partial_matchings(codes: tuple[int, ...], allow_singletons: bool) -> Iterator[list[list[int]]]:
    if not codes:
        yield []
        return
    first, rest = codes[0], codes[1:]
    if allow_singletons:
        for sub in _partial_matchings(rest, allow_singletons):
            yield [[first]] + sub
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for sub in _partial_matchings(remaining, allow_singletons):
            yield [[first, partner]] + sub


@cache
def enumerate_diagrams(fam: Family, n: int) -> tuple[Diagram, ...]:
    """All members of the family on n strands, in canonical listing order.

    Matching-type families use a direct pairing generator; the rest filter the
    full set-partition list. The two routes are cross-checked in the tests.
    """
    fam.check_n(n)
    if fam.tag in _MATCHING_TAGS or fam.tag in _PARTIAL_TAGS:
        allow_singletons = fam.tag in _PARTIAL_TAGS
        candidates = (
            Diagram(n, blocks)
            for blocks in _partial_matchings(tuple(range(2 * n)), allow_singletons)
        )
    else:
        candidates = (Diagram(n, blocks) for blocks in set_partitions(2 * n))
    members = [d for d in candidates if is_member(fam, d)]
    members.sort(key=Diagram.sort_key)
    return tuple(members)


def enumerate_filtered(
    fam: Family,
    n: int,
    rank_filter: int | None = None,
    a_rank_filter: int | None = None,
) -> tuple[Diagram, ...]:
    """Family members optionally restricted by rank (and a-rank for walled families)."""
    members = enumerate_diagrams(fam, n)
    if rank_filter is not None:
        members = tuple(d for d in members if rank(d) == rank_filter)
    if a_rank_filter is not None:
        if not fam.is_walled:
            raise ValueError("a-rank filter only applies to walled families")
        a = fam.wall[0]
        members = tuple(d for d in members if a_rank(d, a) == a_rank_filter)
    return members


def propagating_parts(rho: Diagram) -> list[tuple[int, ...]]:
    """Propagating lines ordered by the minimum of their unprimed block."""
    n = rho.n
    lines = [p for p in rho.parts if p[0] < n <= p[-1]]
    lines.sort(key=lambda p: p[0])
    return lines


def pi_of(tau: Diagram) -> Permutation:
    """The line-matching permutation of a diagram of rank k.

    Number the propagating lines 1..k by the minima of their unprimed blocks;
    pi(i) is the position of line i's primed block among all primed blocks
    ordered by their minima. On the diagram of a permutation p (parts
    {i, p(i)'}) this recovers p itself, which is what makes the signed
    conjugation action restrict to the plain symmetric-group model on the
    top-rank block.
    """
    n = tau.n
    lines = propagating_parts(tau)
    primed_mins = [min(c for c in part if c >= n) for part in lines]
    order = sorted(range(len(lines)), key=lambda i: primed_mins[i])
    images = [0] * len(lines)
    for position, line_index in enumerate(order, start=1):
        images[line_index] = position
    return Permutation(images)
