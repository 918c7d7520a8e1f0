import itertools
import random
from fractions import Fraction

import pytest

from diagalg.algebra import j_class, spectrum
from diagalg.diagrams import (
    ALL_TAGS,
    Diagram,
    compose,
    enumerate_diagrams,
    family,
    format_diagram,
    is_self_dual,
    parse,
    pi_of,
    rank,
    star,
)
from diagalg.model import act_monomial, model_act, model_basis, model_matrices
from diagalg.scalars import DeltaPoly
from diagalg.symgroup import Permutation, sym_model_action

PB = family("pb")


def walled_or_plain(tag, n):
    if tag in ("wb", "wpb", "wtl", "wptl"):
        return [family(tag, (a, n - a)) for a in range(1, n)] if n >= 2 else []
    return [family(tag)]


def families_up_to(max_n):
    return [(fam, n) for tag in ALL_TAGS for n in range(1, max_n + 1)
            for fam in walled_or_plain(tag, n)]


def test_model_basis_pb2_matches_reference_order():
    mb = model_basis(PB, 2)
    assert [format_diagram(d) for d in mb.elements] == [
        "1 1' | 2 2'",
        "1 2' | 2 1'",
        "1 | 2 2' | 1'",
        "1 1' | 2 | 2'",
        "1 2 | 1' 2'",
        "1 | 2 | 1' | 2'",
    ]
    assert [hi - lo for _, (lo, hi) in mb.groups] == [2, 2, 2]


def test_model_basis_counts():
    assert model_basis(family("b"), 2).dim == 3
    assert model_basis(family("b"), 3).dim == 7
    assert model_basis(family("tl"), 3).dim == 3


@pytest.mark.parametrize("fam,n", families_up_to(4))
def test_selfdual_count_per_class_is_q_times_involutions(fam, n):
    mb = model_basis(fam, n)
    for rec in spectrum(fam, n):
        lo, hi = mb.block_of(rec.j)
        assert hi - lo == rec.q * rec.group.involution_count()
    assert mb.dim == sum(rec.q * rec.group.involution_count() for rec in spectrum(fam, n))


def pb2_element(name):
    table = {
        "i1": "1 1' | 2 2'",
        "i2": "1 2' | 2 1'",
        "i3": "1 | 2 2' | 1'",
        "i4": "1 1' | 2 | 2'",
        "i5": "1 2 | 1' 2'",
        "i6": "1 | 2 | 1' | 2'",
    }
    return parse(table[name], 2)


def expect(vec, name, coeff):
    assert dict(vec.coords) == {pb2_element(name): coeff}


def test_model_act_reference_rows():
    alpha, beta, gamma = (pb2_element(k) for k in ("i2", "i3", "i5"))
    one = DeltaPoly.one()
    d = DeltaPoly.delta()

    expect(model_act(PB, alpha, pb2_element("i1")), "i1", one)
    expect(model_act(PB, alpha, pb2_element("i2")), "i2", -one)
    expect(model_act(PB, alpha, pb2_element("i3")), "i4", one)
    expect(model_act(PB, alpha, pb2_element("i4")), "i3", one)
    expect(model_act(PB, alpha, pb2_element("i5")), "i5", one)
    expect(model_act(PB, alpha, pb2_element("i6")), "i6", one)

    assert model_act(PB, beta, pb2_element("i1")).is_zero()
    assert model_act(PB, beta, pb2_element("i2")).is_zero()
    expect(model_act(PB, beta, pb2_element("i3")), "i3", d)
    assert model_act(PB, beta, pb2_element("i4")).is_zero()
    expect(model_act(PB, beta, pb2_element("i5")), "i6", one)
    expect(model_act(PB, beta, pb2_element("i6")), "i6", d)

    assert model_act(PB, gamma, pb2_element("i1")).is_zero()
    assert model_act(PB, gamma, pb2_element("i2")).is_zero()
    assert model_act(PB, gamma, pb2_element("i3")).is_zero()
    assert model_act(PB, gamma, pb2_element("i4")).is_zero()
    expect(model_act(PB, gamma, pb2_element("i5")), "i5", d)
    expect(model_act(PB, gamma, pb2_element("i6")), "i5", d)


def test_model_act_identity():
    for fam, n in [(PB, 2), (family("tl"), 3)]:
        for iota in model_basis(fam, n).elements:
            vec = model_act(fam, Diagram.identity(n), iota)
            assert dict(vec.coords) == {iota: DeltaPoly.one()}


def test_model_act_validates_membership():
    with pytest.raises(ValueError):
        model_act(family("tl"), pb2_element("i2"), pb2_element("i1"))
    with pytest.raises(ValueError):
        model_act(PB, pb2_element("i1"), parse("1 2 | 1' | 2'", 2))  # not self-dual


@pytest.mark.parametrize("fam,n", families_up_to(3))
def test_model_targets_stay_in_their_class_and_self_dual(fam, n):
    basis = enumerate_diagrams(fam, n)
    for iota in model_basis(fam, n).elements:
        j = j_class(iota, fam)
        for tau in basis:
            hit = act_monomial(fam, tau, iota)
            if hit is not None:
                _, _, target = hit
                assert star(target) == target
                assert j_class(target, fam) == j


def test_model_matrices_block_structure_and_multiplicativity():
    rep = model_matrices(PB, 2)
    basis = enumerate_diagrams(PB, 2)
    assert rep.dim == 6 and rep.blocks == ((0, 2), (2, 4), (4, 6))
    mats = {tau: rep.matrix(tau) for tau in basis}
    assert mats[Diagram.identity(2)] == [
        [DeltaPoly.one() if i == j else DeltaPoly.zero() for j in range(6)] for i in range(6)
    ]
    for tau, rho in itertools.product(basis, repeat=2):
        product, closed = compose(tau, rho)
        size = rep.dim
        lhs = [[sum((mats[tau][i][k] * mats[rho][k][j] for k in range(size)), DeltaPoly.zero())
                for j in range(size)] for i in range(size)]
        rhs = [[mats[product][i][j] * DeltaPoly.delta(closed) for j in range(size)]
               for i in range(size)]
        assert lhs == rhs


def test_rank_n_block_restricts_to_the_permutation_model():
    """On permutation diagrams the action is the signed conjugation model."""
    for k in (3, 4):
        fam = family("p")
        perm_diagrams = {p: Diagram.from_permutation(p) for p in
                         (Permutation(images) for images in itertools.permutations(range(1, k + 1)))}
        for p, tau in perm_diagrams.items():
            for s, iota in perm_diagrams.items():
                if not s.is_involution():
                    continue
                sign, target = sym_model_action(p, s)
                hit = act_monomial(fam, tau, iota)
                assert hit == (sign, 0, perm_diagrams[target])


def test_permutation_level_conjugation_identity():
    """The sign bookkeeping of consecutive actions composes: the line
    permutation of a double stack factors through the intermediate target."""
    fam = family("p")
    basis = enumerate_diagrams(fam, 3)
    iotas = model_basis(fam, 3).elements
    rng = random.Random(17)
    checked = 0
    while checked < 400:
        tau, rho = rng.choice(basis), rng.choice(basis)
        iota = rng.choice(iotas)
        rho_iota = compose(rho, iota).product
        total = compose(tau, rho_iota).product
        if rank(total) != rank(iota):
            continue
        conj = compose(rho_iota, star(rho)).product
        lhs = pi_of(total) * pi_of(iota)
        rhs = (pi_of(compose(tau, conj).product) * pi_of(conj)) * (pi_of(rho_iota) * pi_of(iota))
        assert lhs == rhs
        checked += 1
