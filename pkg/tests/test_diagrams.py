import itertools
import random

import pytest

from diagalg.diagrams import (
    ALL_TAGS,
    Diagram,
    a_rank,
    compose,
    enumerate_diagrams,
    enumerate_filtered,
    family,
    format_diagram,
    is_member,
    is_planar,
    is_self_dual,
    parse,
    pi_of,
    rank,
    set_partitions,
    star,
)
from diagalg.symgroup import Permutation

# One concrete diagram exercised throughout: the five-strand example with a
# nested part structure and line permutation (1 2).
FIG_EXAMPLE = "1 2 4' | 3 5 | 4 2' 3' 5' | 1'"


def all_families(max_n):
    out = []
    for tag in ALL_TAGS:
        if tag in ("wb", "wpb", "wtl", "wptl"):
            for n in range(2, max_n + 1):
                for a in range(1, n):
                    out.append((family(tag, (a, n - a)), n))
        else:
            for n in range(1, max_n + 1):
                out.append((family(tag), n))
    return out


# ---------------------------------------------------------------------------
# Parsing and printing

def test_parse_identity():
    assert parse("1 1' | 2 2'", 2) == Diagram.identity(2)


def test_parse_five_strand_example():
    d = parse(FIG_EXAMPLE, 5)
    assert rank(d) == 2
    assert format_diagram(d) == FIG_EXAMPLE
    assert parse(format_diagram(d), 5) == d


def test_parse_errors():
    with pytest.raises(ValueError, match="duplicate"):
        parse("1 1' | 1 2'", 2)
    with pytest.raises(ValueError, match="missing"):
        parse("1 1'", 2)
    with pytest.raises(ValueError, match="out of range"):
        parse("1 1' | 2 2' | 3 3'", 2)
    with pytest.raises(ValueError):
        parse("1 x | 2 2' | 1'", 2)


# ---------------------------------------------------------------------------
# Composition

def iota(name, n=2):
    table = {
        "i1": "1 1' | 2 2'",
        "i2": "1 2' | 2 1'",
        "i3": "2 2' | 1 | 1'",
        "i4": "1 1' | 2 | 2'",
        "i5": "1 2 | 1' 2'",
        "i6": "1 | 2 | 1' | 2'",
    }
    return parse(table[name], n)


def test_identity_is_neutral():
    rng = random.Random(11)
    for fam, n in all_families(3):
        basis = enumerate_diagrams(fam, n)
        for d in rng.sample(basis, min(5, len(basis))):
            assert compose(Diagram.identity(n), d) == (d, 0)
            assert compose(d, Diagram.identity(n)) == (d, 0)


def test_compose_small_examples():
    assert compose(iota("i3"), iota("i6")) == (iota("i6"), 1)
    assert compose(iota("i5"), iota("i5")) == (iota("i5"), 1)
    # An isolated middle node counts as a closed component.
    assert compose(iota("i3"), iota("i3")) == (iota("i3"), 1)
    assert compose(iota("i4"), iota("i4")) == (iota("i4"), 1)


def test_compose_requires_equal_n():
    with pytest.raises(ValueError):
        compose(Diagram.identity(2), Diagram.identity(3))


def test_composed_five_strand_stack():
    # Two five-strand diagrams whose stack closes exactly one middle loop;
    # the expected product was read off by drawing the stack.
    tau = parse("1 3 | 2 1' 3' 4' | 4 5 5' | 2'", 5)
    rho = parse("1 2' 4' | 2 4 | 3 5' | 1' 3' | 5", 5)
    expected = parse("1 3 1' 3' 4' 5' | 2 4 | 5 | 2'", 5)
    assert compose(tau, rho) == (expected, 1)


def _closure_oracle(tau, rho):
    """Transitive-closure recomputation of the stack on 3n labeled nodes."""
    n = tau.n
    size = 3 * n
    adj = [set() for _ in range(size)]
    def link(u, v):
        adj[u].add(v)
        adj[v].add(u)
    for part in rho.parts:
        for a, b in itertools.combinations(part, 2):
            link(a, b)
    for part in tau.parts:
        for a, b in itertools.combinations(part, 2):
            link(a + n, b + n)
    seen = [False] * size
    components = []
    for start in range(size):
        if seen[start]:
            continue
        stack, comp = [start], set()
        seen[start] = True
        while stack:
            u = stack.pop()
            comp.add(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        components.append(comp)
    closed = sum(1 for comp in components if all(n <= u < 2 * n for u in comp))
    parts = []
    for comp in components:
        outer = [u if u < n else u - n for u in comp if u < n or u >= 2 * n]
        if outer:
            parts.append(outer)
    return Diagram(n, parts), closed


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_compose_matches_closure_oracle(tag):
    fam = family(tag, (2, 1)) if tag in ("wb", "wpb", "wtl", "wptl") else family(tag)
    n = 3
    basis = enumerate_diagrams(fam, n)
    rng = random.Random(hash(tag) & 0xFFFF)
    for _ in range(200):
        tau, rho = rng.choice(basis), rng.choice(basis)
        assert compose(tau, rho) == _closure_oracle(tau, rho)


# ---------------------------------------------------------------------------
# Rank, a-rank, star

def test_rank_examples():
    assert rank(Diagram.identity(4)) == 4
    assert rank(parse(FIG_EXAMPLE, 5)) == 2
    assert rank(iota("i5")) == 0


def test_a_rank_examples():
    assert a_rank(Diagram.identity(4), 2) == 2
    assert a_rank(iota("i2"), 1) == 0
    assert a_rank(parse("1 1' | 2 2' | 3 3'", 3), 2) == 2
    with pytest.raises(ValueError):
        a_rank(Diagram.identity(3), 3)


def test_star_examples():
    assert star(Diagram.identity(3)) == Diagram.identity(3)
    assert star(parse(FIG_EXAMPLE, 5)) == parse("1 | 2 3 5 4' | 4 1' 2' | 3' 5'", 5)
    rng = random.Random(5)
    basis = enumerate_diagrams(family("p"), 3)
    for d in rng.sample(basis, 25):
        assert star(star(d)) == d


def test_star_is_an_anti_map_for_compose():
    rng = random.Random(19)
    basis = enumerate_diagrams(family("p"), 3)
    for _ in range(150):
        tau, rho = rng.choice(basis), rng.choice(basis)
        forward = compose(tau, rho)
        backward = compose(star(rho), star(tau))
        assert star(forward.product) == backward.product
        assert forward.closed == backward.closed


def test_rank_never_grows_under_composition():
    rng = random.Random(23)
    basis = enumerate_diagrams(family("p"), 3)
    for _ in range(150):
        tau, rho = rng.choice(basis), rng.choice(basis)
        assert rank(compose(tau, rho).product) <= min(rank(tau), rank(rho))


# ---------------------------------------------------------------------------
# Membership, planarity, self-duality

def test_membership_examples():
    assert is_member(family("b"), iota("i2"))
    assert not is_member(family("tl"), iota("i2"))
    assert not is_member(family("pb"), parse(FIG_EXAMPLE, 5))


def test_planarity_examples():
    assert is_planar(Diagram.identity(4))
    assert not is_planar(iota("i2"))
    planar_matchings = [d for d in enumerate_diagrams(family("b"), 3) if is_planar(d)]
    assert len(planar_matchings) == 5


def test_self_duality():
    assert is_self_dual(Diagram.identity(3))
    selfdual_pb2 = [d for d in enumerate_diagrams(family("pb"), 2) if is_self_dual(d)]
    assert len(selfdual_pb2) == 6
    selfdual_b2 = [d for d in enumerate_diagrams(family("b"), 2) if is_self_dual(d)]
    assert len(selfdual_b2) == 3


def test_walled_membership():
    wb = family("wb", (1, 1))
    members = enumerate_diagrams(wb, 2)
    assert [format_diagram(d) for d in members] == ["1 2 | 1' 2'", "1 1' | 2 2'"]
    # Propagating lines crossing the wall are excluded.
    assert not is_member(wb, iota("i2"))


# ---------------------------------------------------------------------------
# Enumeration

def test_enumeration_counts():
    assert len(enumerate_diagrams(family("pb"), 2)) == 10
    assert len(enumerate_diagrams(family("b"), 3)) == 15
    assert len(enumerate_diagrams(family("p"), 2)) == 15
    assert len(enumerate_diagrams(family("tl"), 3)) == 5
    assert len(enumerate_diagrams(family("motzkin"), 2)) == 9
    assert len(enumerate_diagrams(family("ptl"), 2)) == 14


@pytest.mark.parametrize("fam,n", all_families(3))
def test_enumeration_matches_partition_filter(fam, n):
    via_filter = sorted(
        (d for blocks in set_partitions(2 * n) for d in [Diagram(n, blocks)] if is_member(fam, d)),
        key=Diagram.sort_key,
    )
    assert list(enumerate_diagrams(fam, n)) == via_filter


def test_rank_filter():
    # TL_3 splits as 1 diagram of rank 3 plus 4 of rank 1.
    assert len(enumerate_filtered(family("tl"), 3, rank_filter=1)) == 4
    assert len(enumerate_filtered(family("tl"), 3, rank_filter=3)) == 1
    wpb = family("wpb", (1, 1))
    only = enumerate_filtered(wpb, 2, rank_filter=1, a_rank_filter=1)
    assert all(rank(d) == 1 and a_rank(d, 1) == 1 for d in only)
    with pytest.raises(ValueError):
        enumerate_filtered(family("b"), 2, a_rank_filter=0)


def test_closure_under_compose_and_star():
    for fam, n in all_families(2):
        basis = set(enumerate_diagrams(fam, n))
        for tau in basis:
            assert star(tau) in basis
            for rho in basis:
                assert compose(tau, rho).product in basis


# ---------------------------------------------------------------------------
# Line permutations

def test_pi_of_examples():
    assert pi_of(parse(FIG_EXAMPLE, 5)) == Permutation([2, 1])
    tau = parse("1 3 | 2 1' 3' 4' | 4 5 5' | 2'", 5)
    assert pi_of(tau) == Permutation.identity(2)
    assert pi_of(Diagram.identity(4)) == Permutation.identity(4)


def test_pi_of_permutation_diagrams():
    for images in itertools.permutations(range(1, 5)):
        p = Permutation(images)
        assert pi_of(Diagram.from_permutation(p)) == p


def test_pi_of_self_dual_is_involution():
    for fam, n in all_families(3):
        for d in enumerate_diagrams(fam, n):
            if is_self_dual(d):
                assert pi_of(d).is_involution()


def test_brauer_rank_parity():
    for n in (2, 3, 4):
        for d in enumerate_diagrams(family("b"), n):
            assert (rank(d) - n) % 2 == 0


# ---------------------------------------------------------------------------
# Associativity and the exponent identity, via the regular action

@pytest.mark.parametrize("fam,n", all_families(3))
def test_stacking_is_associative_with_consistent_exponents(fam, n):
    """(x.y).z == x.(y.z) and the closed counts match on every triple.

    Checking the regular action columnwise covers all |basis|^3 triples with
    |basis|^2 stack computations.
    """
    basis = enumerate_diagrams(fam, n)
    index = {d: i for i, d in enumerate(basis)}
    size = len(basis)
    targets, exponents = {}, {}
    for tau in basis:
        tgt, exp = [0] * size, [0] * size
        for col, rho in enumerate(basis):
            product, closed = compose(tau, rho)
            tgt[col] = index[product]
            exp[col] = closed
        targets[tau] = tgt
        exponents[tau] = exp
    for tau in basis:
        tgt_tau, exp_tau = targets[tau], exponents[tau]
        for rho in basis:
            product, closed = compose(tau, rho)
            tgt_rho, exp_rho = targets[rho], exponents[rho]
            tgt_prod, exp_prod = targets[product], exponents[product]
            for col in range(size):
                mid = tgt_rho[col]
                assert tgt_tau[mid] == tgt_prod[col]
                assert exp_rho[col] + exp_tau[mid] == closed + exp_prod[col]
