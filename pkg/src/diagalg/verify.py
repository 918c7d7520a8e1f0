"""
Exact-linear-algebra verification harness.

Everything here runs over Fractions: reduced row echelon forms, nullspaces,
commutant and intertwiner dimensions of the module matrices, the symbolic
module-axiom sweep, and the aggregated per-family report. Randomness only
chooses aggregation coefficients that speed the kernel computations up; every
returned dimension is re-verified against each basis constraint, so the
results do not depend on the random choices.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .algebra import spectrum
from .diagrams import Diagram, Family, compose, enumerate_diagrams, format_diagram
from .model import act_monomial, model_basis, model_matrices
from .specht import RepMatrices, all_specht_modules, format_label
from .symgroup import sym_model_matrices

Vector = list[Fraction]
Matrix = list[list[Fraction]]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Exact Gauss-Jordan elimination

def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank, exact over the rationals."""
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return [], 0
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = _ONE / rows[pivot_row][col]
        rows[pivot_row] = [v * inv for v in rows[pivot_row]]
        lead = rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], lead)]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivot_row


class _IntEchelon:
    """Row echelon accumulator over the integers, for exact kernel extraction.

    Incoming rows are cleared against the stored pivot rows by
    cross-multiplication and divided by their gcd, which keeps entries small
    without ever leaving exact arithmetic.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row), sorted

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row: list[int]) -> bool:
        """Reduce and insert; returns True if the rank grew."""
        for pivot_col, pivot_row in self.rows:
            lead = row[pivot_col]
            if lead:
                factor = pivot_row[pivot_col]
                row = [a * factor - b * lead for a, b in zip(row, pivot_row)]
                row = _normalize_int_row(row)
        pivot_col = next((c for c, v in enumerate(row) if v), None)
        if pivot_col is None:
            return False
        if row[pivot_col] < 0:
            row = [-v for v in row]
        self.rows.append((pivot_col, row))
        self.rows.sort(key=lambda item: item[0])
        return True

    def kernel(self) -> list[Vector]:
        pivot_cols = {pc for pc, _ in self.rows}
        basis: list[Vector] = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            vec: list[Fraction] = [_ZERO] * self.ncols
            vec[free] = _ONE
            for pivot_col, row in reversed(self.rows):
                if pivot_col >= free:
                    continue
                acc = sum((row[j] * vec[j] for j in range(pivot_col + 1, self.ncols) if row[j] and vec[j]), _ZERO)
                if acc:
                    vec[pivot_col] = -acc / row[pivot_col]
            basis.append(vec)
        return basis


def _normalize_int_row(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _integerize(row: Sequence[Fraction]) -> list[int]:
    scale = 1
    for v in row:
        if v:
            d = v.denominator
            scale = scale // gcd(scale, d) * d
    return [int(v * scale) for v in row]


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of the right kernel of the matrix (ncols unknowns)."""
    echelon = _IntEchelon(ncols)
    for row in matrix:
        if any(row):
            echelon.add(_integerize(row))
            if echelon.rank == ncols:
                return []
    return echelon.kernel()


class SolutionSpace:
    """A shrinking subspace of R^dim cut out by successive linear constraints."""

    def __init__(self, dim: int, basis: list[Vector] | None = None):
        self.dim = dim
        self.basis = basis  # None means the full space

    @property
    def dimension(self) -> int:
        return self.dim if self.basis is None else len(self.basis)

    def vectors(self) -> list[Vector]:
        if self.basis is None:
            return [[_ONE if i == j else _ZERO for i in range(self.dim)] for j in range(self.dim)]
        return self.basis

    def impose(self, apply_map: Callable[[Vector], Vector]) -> None:
        """Intersect with the kernel of a linear map given by its action on vectors."""
        if self.dimension == 0:
            return
        current = self.vectors()
        images = [apply_map(v) for v in current]
        if all(not any(img) for img in images):
            if self.basis is None:
                self.basis = current
            return
        # Rows index the output coordinates, columns the current basis.
        nrows = len(images[0])
        rows = [[images[j][i] for j in range(len(current))] for i in range(nrows)]
        rows = [row for row in rows if any(row)]
        combos = nullspace(rows, len(current))
        self.basis = [
            _combine(current, combo, self.dim) for combo in combos
        ]


def _combine(vectors: list[Vector], coeffs: Vector, dim: int) -> Vector:
    out = [_ZERO] * dim
    for coeff, vec in zip(coeffs, vectors):
        if coeff:
            for i, v in enumerate(vec):
                if v:
                    out[i] += coeff * v
    return out


# ---------------------------------------------------------------------------
# Commutant and intertwiner dimensions

Sparse = dict[tuple[int, int], Fraction]


def _residual(T: Vector, m1: Sparse, m2: Sparse, d1: int, d2: int) -> Vector:
    """Flattened T*M1 - M2*T for T stored row-major as d2 x d1."""
    out = [_ZERO] * (d2 * d1)
    for (c, j), v in m1.items():
        for i in range(d2):
            t = T[i * d1 + c]
            if t:
                out[i * d1 + j] += t * v
    for (i, r), v in m2.items():
        for j in range(d1):
            t = T[r * d1 + j]
            if t:
                out[i * d1 + j] -= v * t
    return out


def _aggregate(mats: list[Sparse], coeffs: list[Fraction]) -> Sparse:
    out: Sparse = {}
    for coeff, mat in zip(coeffs, mats):
        for pos, v in mat.items():
            acc = out.get(pos, _ZERO) + coeff * v
            if acc:
                out[pos] = acc
            else:
                out.pop(pos, None)
    return out


def _sylvester_rows(m1: Sparse, m2: Sparse, d1: int, d2: int):
    """Rows (over the d2*d1 unknowns of T, row-major) of T*M1 - M2*T = 0."""
    bycol1: dict[int, list[tuple[int, Fraction]]] = {}
    for (c, j), v in m1.items():
        bycol1.setdefault(j, []).append((c, v))
    byrow2: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, r), v in m2.items():
        byrow2.setdefault(i, []).append((r, v))
    for i in range(d2):
        right = byrow2.get(i, ())
        for j in range(d1):
            row: dict[int, Fraction] = {}
            for c, v in bycol1.get(j, ()):
                row[i * d1 + c] = row.get(i * d1 + c, _ZERO) + v
            for r, v in right:
                idx = r * d1 + j
                row[idx] = row.get(idx, _ZERO) - v
            if row:
                yield row


def _pair_intertwiner_dim(
    mats1: list[Sparse], mats2: list[Sparse], d1: int, d2: int, rng: random.Random
) -> int:
    """dim { T (d2 x d1) : T M1(t) == M2(t) T for every index t }.

    An aggregated Sylvester constraint (plus a couple of individual ones)
    collapses the space in one elimination; the final space is then verified
    against every constraint, so the aggregation never affects the result.
    """
    if d1 == 0 or d2 == 0:
        return 0
    size = d1 * d2
    echelon = _IntEchelon(size)
    coeffs = [Fraction(rng.randint(1, 127)) for _ in mats1]
    seeds = [(_aggregate(mats1, coeffs), _aggregate(mats2, coeffs))]
    if mats1:
        picks = {rng.randrange(len(mats1)) for _ in range(2)}
        seeds.extend((mats1[p], mats2[p]) for p in picks)
    dense = [_ZERO] * size
    for m1, m2 in seeds:
        for sparse_row in _sylvester_rows(m1, m2, d1, d2):
            for idx in sparse_row:
                dense[idx] = sparse_row[idx]
            echelon.add(_integerize(dense))
            for idx in sparse_row:
                dense[idx] = _ZERO
            if echelon.rank == size:
                return 0
    space = SolutionSpace(size, echelon.kernel())
    for m1, m2 in zip(mats1, mats2):
        if space.dimension == 0:
            break
        space.impose(lambda T, m1=m1, m2=m2: _residual(T, m1, m2, d1, d2))
    return space.dimension


def _validated_blocks(rep: RepMatrices, evaluated: dict[Diagram, Sparse]) -> tuple[tuple[int, int], ...]:
    blocks = rep.blocks
    if not blocks:
        return ((0, rep.dim),)
    starts = [b[0] for b in blocks]
    def block_of(i: int) -> int:
        lo, hi = 0, len(blocks) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if starts[mid] <= i:
                lo = mid
            else:
                hi = mid - 1
        return lo
    for sparse in evaluated.values():
        for (r, c) in sparse:
            if block_of(r) != block_of(c):
                return ((0, rep.dim),)   # grouping not respected: fall back
    return blocks


def _restrict(evaluated: dict[Diagram, Sparse], keys: Sequence[Diagram], span: tuple[int, int]) -> list[Sparse]:
    lo, hi = span
    out = []
    for key in keys:
        out.append(
            {(r - lo, c - lo): v for (r, c), v in evaluated[key].items() if lo <= r < hi}
        )
    return out


def commutant_dim(rep: RepMatrices, delta: Fraction, seed: int = 0) -> int:
    """Dimension of the matrices commuting with every basis action at ``delta``.

    When the representation is block-diagonal the computation splits into
    independent block-to-block intertwiner problems; the split is validated
    against the evaluated matrices first, so the total is exact either way.
    """
    evaluated = rep.evaluated(Fraction(delta))
    keys = sorted(evaluated, key=Diagram.sort_key)
    blocks = _validated_blocks(rep, evaluated)
    rng = random.Random(seed or 0xD1A6)
    total = 0
    per_block = {span: _restrict(evaluated, keys, span) for span in blocks}
    for span_p in blocks:
        for span_q in blocks:
            d1 = span_p[1] - span_p[0]
            d2 = span_q[1] - span_q[0]
            total += _pair_intertwiner_dim(per_block[span_p], per_block[span_q], d1, d2, rng)
    return total


def intertwiner_dim(rep1: RepMatrices, rep2: RepMatrices, delta: Fraction, seed: int = 0) -> int:
    """dim { T : T M1(tau) == M2(tau) T }, maps from rep1 into rep2."""
    if rep1.family != rep2.family or rep1.n != rep2.n:
        raise ValueError("representations live over different diagram bases")
    ev1 = rep1.evaluated(Fraction(delta))
    ev2 = rep2.evaluated(Fraction(delta))
    keys = sorted(ev1, key=Diagram.sort_key)
    if sorted(ev2, key=Diagram.sort_key) != keys:
        raise ValueError("representations disagree on the diagram basis")
    blocks2 = _validated_blocks(rep2, ev2)
    mats1 = _restrict(ev1, keys, (0, rep1.dim))
    rng = random.Random(seed or 0xD1A6)
    total = 0
    for span in blocks2:
        mats2 = _restrict(ev2, keys, span)
        total += _pair_intertwiner_dim(mats1, mats2, rep1.dim, span[1] - span[0], rng)
    return total


def sym_model_commutant_dim(k: int) -> int:
    """Commutant dimension of the signed conjugation action of S_k on involutions.

    The generator matrices are signed permutations, so the commutant equations
    only ever tie two matrix entries together (or force one to vanish); the
    dimension is the number of sign-consistent components of that relation
    graph. Exact, no elimination needed.
    """
    basis, gens = sym_model_matrices(k)
    d = len(basis)
    size = d * d
    parent = list(range(size))
    sign_to_parent = [1] * size
    bad = [False] * size

    def find(x: int) -> tuple[int, int]:
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        sign = 1
        for node in reversed(path):
            sign *= sign_to_parent[node]
            parent[node] = x
            sign_to_parent[node] = sign
        return x, 1 if not path else sign_to_parent[path[0]]

    def union(u: int, v: int, rel: int) -> None:
        ru, su = find(u)
        rv, sv = find(v)
        if ru == rv:
            if su != rel * sv:
                bad[ru] = True
            return
        parent[rv] = ru
        sign_to_parent[rv] = su * rel * sv  # so that sign(v) = su * rel
        if bad[rv]:
            bad[ru] = True

    for targets, signs in gens:
        inverse = [0] * d
        for j, t in enumerate(targets):
            inverse[t] = j
        for a in range(d):
            ia = inverse[a]
            for b in range(d):
                # X[a, t(b)] * s_b == s_ia * X[ia, b]
                union(a * d + targets[b], ia * d + b, signs[ia] * signs[b])

    roots = set()
    for x in range(size):
        r, _ = find(x)
        roots.add(r)
    return sum(1 for r in roots if not bad[r])


# ---------------------------------------------------------------------------
# Symbolic sweeps and the report

@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def check_module_axioms(fam: Family, n: int) -> CheckResult:
    """Exhaustive (x*y).v == x.(y.v) sweep over basis pairs, symbolic in d.

    Every single action value is a signed monomial, so the two sides are
    compared as exact (sign, exponent, target) triples.
    """
    basis = enumerate_diagrams(fam, n)
    iotas = model_basis(fam, n).elements
    act: dict[tuple[Diagram, Diagram], tuple[int, int, Diagram] | None] = {}
    for tau in basis:
        for iota in iotas:
            act[(tau, iota)] = act_monomial(fam, tau, iota)

    for tau in basis:
        for rho in basis:
            product, closed = compose(tau, rho)
            for iota in iotas:
                left = act[(product, iota)]
                lhs = None if left is None else (left[0], left[1] + closed, left[2])
                inner = act[(rho, iota)]
                if inner is None:
                    rhs = None
                else:
                    outer = act[(tau, inner[2])]
                    rhs = None if outer is None else (
                        inner[0] * outer[0], inner[1] + outer[1], outer[2]
                    )
                if lhs != rhs:
                    witness = (
                        f"x=[{format_diagram(tau)}], y=[{format_diagram(rho)}], "
                        f"v=[{format_diagram(iota)}]: {lhs} != {rhs}"
                    )
                    return CheckResult(f"module-axioms[{fam}, n={n}]", False, witness)
    return CheckResult(
        f"module-axioms[{fam}, n={n}]",
        True,
        f"{len(basis)}^2 pairs x {len(iotas)} basis vectors",
    )


def simple_count(fam: Family, n: int) -> int:
    return sum(len(rec.group.labels()) for rec in spectrum(fam, n))


def check_dimension_identities(fam: Family, n: int) -> CheckResult:
    """Per-class self-dual counts and the squared-dimension count of the family."""
    name = f"dimension-identities[{fam}, n={n}]"
    basis = enumerate_diagrams(fam, n)
    mb = model_basis(fam, n)
    for record in spectrum(fam, n):
        lo, hi = mb.block_of(record.j)
        expected = record.q * record.group.involution_count()
        if hi - lo != expected:
            return CheckResult(
                name, False,
                f"{record.j}: {hi - lo} self-dual diagrams, expected q*involutions = {expected}",
            )
    total = sum(
        rec.q ** 2 * sum(rec.group.label_dim(label) ** 2 for label in rec.group.labels())
        for rec in spectrum(fam, n)
    )
    if total != len(basis):
        return CheckResult(
            name, False, f"sum of squared module dimensions {total} != dim {len(basis)}"
        )
    return CheckResult(name, True, f"dim {len(basis)} accounted for by {simple_count(fam, n)} simples")


def check_two_sided_classification(fam: Family, n: int) -> CheckResult:
    """Cross-check rank(+a-rank) classes against two-sided reachability.

    The reachable set {x . t . y} of basis diagrams determines the two-sided
    span exactly (each product is a single scaled diagram and d is nonzero),
    so equality of reachable sets is equality of two-sided ideals. Cubic in
    the basis size; meant for n <= 2.
    """
    from .algebra import j_class  # local import to keep module top light

    name = f"two-sided-classification[{fam}, n={n}]"
    basis = enumerate_diagrams(fam, n)
    ideals: dict[Diagram, frozenset[Diagram]] = {}
    for t in basis:
        reach = set()
        for x in basis:
            xt = compose(x, t).product
            for y in basis:
                reach.add(compose(xt, y).product)
        ideals[t] = frozenset(reach)
    for t in basis:
        for u in basis:
            same_class = j_class(t, fam) == j_class(u, fam)
            same_ideal = ideals[t] == ideals[u]
            if same_class != same_ideal:
                return CheckResult(
                    name, False,
                    f"[{format_diagram(t)}] vs [{format_diagram(u)}]: "
                    f"class-equal={same_class}, ideal-equal={same_ideal}",
                )
    return CheckResult(name, True, f"{len(basis)} diagrams, full pairwise comparison")


def sample_deltas(n: int, seed: int, count: int = 3) -> list[Fraction]:
    """Seeded generic rational samples p/q, avoiding small integer values."""
    rng = random.Random(seed)
    out: list[Fraction] = []
    while len(out) < count:
        value = Fraction(rng.randint(2, 50), rng.randint(2, 50))
        if value.denominator == 1 and value <= 2 * n:
            continue
        if value in out:
            continue
        out.append(value)
    return out


@dataclass
class Report:
    family: Family
    n: int
    delta_samples: list[Fraction]
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "family": self.family.tag,
            "n": self.n,
            "wall": list(self.family.wall) if self.family.wall else None,
            "delta_samples": [str(d) for d in self.delta_samples],
            "seed": self.seed,
            "checks": [
                {"name": c.name, "status": c.status, "details": c.details}
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def check_gelfand(
    fam: Family,
    n: int,
    deltas: Iterable[Fraction] | None = None,
    seed: int = 2024,
    include_module_axioms: bool = False,
) -> Report:
    """Aggregate verification: counting identities, completeness and
    multiplicity-freeness of the self-dual module at sampled generic values."""
    fam.check_n(n)
    deltas = list(deltas) if deltas is not None else sample_deltas(n, seed)
    for d in deltas:
        if d == 0:
            raise ValueError("the loop parameter must be nonzero")
    report = Report(fam, n, deltas, seed)
    report.checks.append(check_dimension_identities(fam, n))
    if include_module_axioms:
        report.checks.append(check_module_axioms(fam, n))
    if n <= 2:
        report.checks.append(check_two_sided_classification(fam, n))

    expected_simples = simple_count(fam, n)
    model = model_matrices(fam, n)
    modules = all_specht_modules(fam, n)
    for delta in deltas:
        found = commutant_dim(model, delta, seed=seed)
        report.checks.append(
            CheckResult(
                f"model-commutant[{fam}, n={n}, d={delta}]",
                found == expected_simples,
                f"commutant dimension {found}, simple count {expected_simples}",
            )
        )
        failures = []
        for sm in modules:
            tag = f"{sm.j}, {format_label(sm.label)}"
            into_model = intertwiner_dim(sm.rep(), model, delta, seed=seed)
            if into_model != 1:
                failures.append(f"intertwiner({tag} -> model) = {into_model}")
            own = commutant_dim(sm.rep(), delta, seed=seed)
            if own != 1:
                failures.append(f"commutant({tag}) = {own}")
        report.checks.append(
            CheckResult(
                f"specht-multiplicity[{fam}, n={n}, d={delta}]",
                not failures,
                "; ".join(failures) if failures else f"{len(modules)} modules, all multiplicity one",
            )
        )
    return report
