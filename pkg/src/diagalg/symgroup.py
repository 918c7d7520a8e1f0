"""
Symmetric-group combinatorics: permutations, the signed conjugation action on
involutions, integer partitions, standard Young tableaux and explicit
irreducible representation matrices.

The representation used everywhere is Young's natural (polytabloid)
representation: the basis is indexed by standard tableaux, matrix entries are
rational integers obtained by Garnir straightening, and no square roots ever
appear.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cache
from typing import Iterator, Sequence

IntPartition = tuple[int, ...]

Matrix = list[list[Fraction]]


class Permutation:
    """A bijection of {1..k}, stored as the tuple of images.

    Composition is ``(p * q)(i) == p(q(i))``: the right factor acts first.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(range(1, k + 1))

    @classmethod
    def transposition(cls, k: int, i: int, j: int) -> Permutation:
        images = list(range(1, k + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.size != other.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def is_involution(self) -> bool:
        return all(self.images[j - 1] == i for i, j in enumerate(self.images, start=1))

    def adjacent_word(self) -> tuple[int, ...]:
        """A word (i1, ..., im) with ``self == s_i1 * s_i2 * ... * s_im``."""
        images = list(self.images)
        swaps: list[int] = []
        # Bubble toward the identity; each step right-multiplies by s_i.
        while True:
            for i in range(len(images) - 1):
                if images[i] > images[i + 1]:
                    images[i], images[i + 1] = images[i + 1], images[i]
                    swaps.append(i + 1)
                    break
            else:
                break
        return tuple(reversed(swaps))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def inv_stat(pi: Permutation, s: Permutation) -> int:
    """Count pairs i < j with s(i) = j and pi(i) > pi(j).

    ``s`` must be an involution; the count supplies the sign of the signed
    conjugation action of ``pi`` on the basis vector indexed by ``s``.
    """
    if pi.size != s.size:
        raise ValueError("size mismatch")
    if not s.is_involution():
        raise ValueError(f"{s!r} is not an involution")
    count = 0
    for i in range(1, s.size + 1):
        j = s(i)
        if i < j and pi(i) > pi(j):
            count += 1
    return count


def sym_model_action(pi: Permutation, s: Permutation) -> tuple[int, Permutation]:
    """Signed conjugation: ``(sign, pi * s * pi^-1)`` with ``sign = (-1)^inv_stat(pi, s)``."""
    sign = -1 if inv_stat(pi, s) % 2 else 1
    return sign, pi * s * pi.inverse()


@cache
def all_permutations(k: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(1, k + 1)))


@cache
def involutions(k: int) -> tuple[Permutation, ...]:
    """All involutions in S_k (identity included), sorted by image tuples."""
    def build(points: tuple[int, ...]) -> Iterator[dict[int, int]]:
        if not points:
            yield {}
            return
        first, rest = points[0], points[1:]
        for sub in build(rest):
            yield {first: first, **sub}
        for idx, partner in enumerate(rest):
            remaining = rest[:idx] + rest[idx + 1:]
            for sub in build(remaining):
                yield {first: partner, partner: first, **sub}

    found = [Permutation(tuple(m[i] for i in range(1, k + 1)))
             for m in build(tuple(range(1, k + 1)))]
    return tuple(sorted(found))


def sym_model_matrices(k: int) -> tuple[tuple[Permutation, ...], list[tuple[list[int], list[int]]]]:
    """Signed-permutation matrices of the adjacent transpositions on involutions.

    Returns the involution basis and, per generator s_1..s_{k-1}, a pair
    ``(targets, signs)`` with column j mapping to ``signs[j]`` at row
    ``targets[j]``.
    """
    basis = involutions(k)
    index = {s: i for i, s in enumerate(basis)}
    columns = []
    for i in range(1, k):
        gen = Permutation.transposition(k, i, i + 1)
        targets, signs = [], []
        for s in basis:
            sign, target = sym_model_action(gen, s)
            targets.append(index[target])
            signs.append(sign)
        columns.append((targets, signs))
    return basis, columns


@cache
def partitions(k: int) -> tuple[IntPartition, ...]:
    """All partitions of k, in descending lexicographic order."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def gen(remaining: int, largest: int) -> Iterator[IntPartition]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(k, k))


def _check_partition(lam: IntPartition) -> None:
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {lam}")


def _conjugate(lam: IntPartition) -> list[int]:
    if not lam:
        return []
    return [sum(1 for part in lam if part > c) for c in range(lam[0])]


def hook_lengths(lam: IntPartition) -> list[list[int]]:
    cols = _conjugate(lam)
    return [[lam[r] - c + cols[c] - r - 1 for c in range(lam[r])] for r in range(len(lam))]


def syt_count(lam: IntPartition) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    _check_partition(lam)
    n = sum(lam)
    hooks = 1
    for row in hook_lengths(lam):
        for h in row:
            hooks *= h
    count, rem = divmod(_factorial(n), hooks)
    assert rem == 0
    return count


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


Tableau = tuple[tuple[int, ...], ...]


@cache
def standard_tableaux(lam: IntPartition) -> tuple[Tableau, ...]:
    """All standard tableaux of shape lam, sorted by row-reading word."""
    _check_partition(lam)
    n = sum(lam)
    if n == 0:
        return ((),)

    results: list[Tableau] = []
    rows: list[list[int]] = [[] for _ in lam]

    def place(value: int) -> None:
        if value > n:
            results.append(tuple(tuple(row) for row in rows))
            return
        for r, row in enumerate(rows):
            if len(row) >= lam[r]:
                continue
            if r > 0 and len(rows[r - 1]) <= len(row):
                continue
            row.append(value)
            place(value + 1)
            row.pop()

    place(1)
    return tuple(sorted(results, key=lambda t: tuple(itertools.chain(*t))))


def _column_sets(tab: Tableau) -> list[list[int]]:
    ncols = len(tab[0]) if tab else 0
    return [[row[c] for row in tab if len(row) > c] for c in range(ncols)]


def _from_columns(cols: Sequence[Sequence[int]], shape: IntPartition) -> Tableau:
    return tuple(tuple(cols[c][r] for c in range(shape[r])) for r in range(len(shape)))


def _sort_columns(tab: Tableau) -> tuple[Tableau, int]:
    """Sort every column increasingly; return the new tableau and the sign picked up."""
    sign = 1
    sorted_cols = []
    for col in _column_sets(tab):
        target = sorted(col)
        work = list(col)
        for i, want in enumerate(target):
            j = work.index(want)
            if j != i:
                work[i], work[j] = work[j], work[i]
                sign = -sign
        sorted_cols.append(target)
    shape = tuple(len(row) for row in tab)
    return _from_columns(sorted_cols, shape), sign


def _first_row_descent(tab: Tableau) -> tuple[int, int] | None:
    for r, row in enumerate(tab):
        for c in range(len(row) - 1):
            if row[c] > row[c + 1]:
                return r, c
    return None


def _cycle_sign(old: Sequence[int], new: Sequence[int]) -> int:
    """Sign of the value permutation sending placement ``old`` to ``new`` slotwise."""
    mapping = dict(zip(old, new))
    seen: set[int] = set()
    sign = 1
    for start in old:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = mapping[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Straightener:
    """Expands an arbitrary filling into the standard polytabloid basis.

    Column-sorts first; if a row descent remains, applies a Garnir move on the
    offending pair of column segments and recurses. Memoized per shape.
    """

    def __init__(self, lam: IntPartition):
        self.lam = lam
        self.standard = standard_tableaux(lam)
        self.index = {t: i for i, t in enumerate(self.standard)}
        self._memo: dict[Tableau, dict[int, Fraction]] = {}

    def expand(self, tab: Tableau) -> dict[int, Fraction]:
        cached = self._memo.get(tab)
        if cached is not None:
            return cached
        sorted_tab, sign = _sort_columns(tab)
        if sorted_tab in self.index:
            result = {self.index[sorted_tab]: Fraction(sign)}
            self._memo[tab] = result
            return result

        descent = _first_row_descent(sorted_tab)
        assert descent is not None, "non-standard column-sorted tableau must have a row descent"
        r, c = descent
        cols = _column_sets(sorted_tab)
        bottom = cols[c][r:]          # column c, from the descent row down
        top = cols[c + 1][: r + 1]    # column c+1, down to the descent row
        pool = sorted(bottom + top)
        old_placement = bottom + top

        result: dict[int, Fraction] = {}
        for chosen in itertools.combinations(pool, len(bottom)):
            new_bottom = list(chosen)
            new_top = [v for v in pool if v not in chosen]
            if new_bottom == bottom:
                continue  # the identity coset contributes the tableau itself
            move_sign = _cycle_sign(old_placement, new_bottom + new_top)
            new_cols = [list(col) for col in cols]
            new_cols[c][r:] = new_bottom
            new_cols[c + 1][: r + 1] = new_top
            rewritten = _from_columns(new_cols, self.lam)
            for idx, coeff in self.expand(rewritten).items():
                value = result.get(idx, Fraction(0)) - move_sign * coeff
                if value:
                    result[idx] = value
                else:
                    result.pop(idx, None)

        if sign < 0:
            result = {idx: -coeff for idx, coeff in result.items()}
        self._memo[tab] = result
        return result


def _apply_to_values(perm: Permutation, tab: Tableau) -> Tableau:
    return tuple(tuple(perm(v) for v in row) for row in tab)


class SymRep:
    """Young's natural representation of S_k for one partition shape."""

    def __init__(self, lam: IntPartition):
        _check_partition(lam)
        self.lam = lam
        self.k = sum(lam)
        self.tableaux = standard_tableaux(lam)
        self.dim = len(self.tableaux)
        straighten = _Straightener(lam)
        self.generators: dict[int, Matrix] = {}
        for i in range(1, self.k):
            gen = Permutation.transposition(self.k, i, i + 1)
            mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for col, tab in enumerate(self.tableaux):
                for row, coeff in straighten.expand(_apply_to_values(gen, tab)).items():
                    mat[row][col] = coeff
            self.generators[i] = mat
        self._matrix_cache: dict[Permutation, Matrix] = {}

    def matrix(self, perm: Permutation) -> Matrix:
        if perm.size != self.k:
            raise ValueError(f"expected an element of S_{self.k}")
        cached = self._matrix_cache.get(perm)
        if cached is not None:
            return cached
        mat = _identity_matrix(self.dim)
        for i in perm.adjacent_word():
            mat = _mat_mul(mat, self.generators[i])
        self._matrix_cache[perm] = mat
        return mat

    def __repr__(self) -> str:
        return f"SymRep(lam={self.lam}, dim={self.dim})"


class ProductRep:
    """Outer tensor product of two representations of S_k1 and S_k2.

    Elements act through S_{k1+k2} permutations that preserve the two blocks
    {1..k1} and {k1+1..k1+k2}.
    """

    def __init__(self, left: SymRep, right: SymRep):
        self.left = left
        self.right = right
        self.k = left.k + right.k
        self.dim = left.dim * right.dim
        self._matrix_cache: dict[Permutation, Matrix] = {}

    def _split(self, perm: Permutation) -> tuple[Permutation, Permutation]:
        k1 = self.left.k
        head = perm.images[:k1]
        tail = perm.images[k1:]
        if sorted(head) != list(range(1, k1 + 1)):
            raise ValueError(f"{perm!r} does not preserve the block split at {k1}")
        return Permutation(head), Permutation(tuple(v - k1 for v in tail))

    def matrix(self, perm: Permutation) -> Matrix:
        if perm.size != self.k:
            raise ValueError(f"expected an element of S_{self.k}")
        cached = self._matrix_cache.get(perm)
        if cached is not None:
            return cached
        g1, g2 = self._split(perm)
        mat = _kronecker(self.left.matrix(g1), self.right.matrix(g2))
        self._matrix_cache[perm] = mat
        return mat

    def __repr__(self) -> str:
        return f"ProductRep({self.left.lam}, {self.right.lam})"


@cache
def specht_rep(lam: IntPartition) -> SymRep:
    """The natural representation of S_k on standard tableaux of shape lam."""
    return SymRep(lam)


def product_rep(lam1: IntPartition, lam2: IntPartition) -> ProductRep:
    return ProductRep(specht_rep(lam1), specht_rep(lam2))


def _identity_matrix(n: int) -> Matrix:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for k in range(m):
            coeff = arow[k]
            if coeff:
                brow = b[k]
                for j in range(p):
                    if brow[j]:
                        orow[j] += coeff * brow[j]
    return out


def _kronecker(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    out = [[Fraction(0)] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(na):
            if a[i][j]:
                for r in range(nb):
                    for c in range(nb):
                        if b[r][c]:
                            out[i * nb + r][j * nb + c] = a[i][j] * b[r][c]
    return out
