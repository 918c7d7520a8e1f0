import json
import random
from fractions import Fraction

import pytest

from diagalg.diagrams import enumerate_diagrams, family
from diagalg.model import act_monomial, model_basis, model_matrices
from diagalg.diagrams import compose
from diagalg.specht import RepMatrices, all_specht_modules
from diagalg.scalars import DeltaPoly
from diagalg.verify import (
    CheckResult,
    check_gelfand,
    check_module_axioms,
    check_two_sided_classification,
    commutant_dim,
    intertwiner_dim,
    nullspace,
    rref,
    sample_deltas,
    sym_model_commutant_dim,
)

F = Fraction
PB = family("pb")


def test_rref_identity_and_zero():
    eye = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    reduced, rank = rref(eye)
    assert rank == 4 and reduced == eye
    zero = [[F(0)] * 3 for _ in range(3)]
    assert rref(zero)[1] == 0


def test_rref_repeated_row_drops_rank():
    rng = random.Random(9)
    m = [[F(rng.randint(-5, 5)) for _ in range(5)] for _ in range(4)]
    m.append(list(m[0]))
    _, rank = rref(m)
    assert rank <= 4


def test_nullspace_agrees_with_rref():
    rng = random.Random(13)
    for _ in range(20):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[F(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
        basis = nullspace(m, cols)
        _, rank = rref(m)
        assert len(basis) == cols - rank
        for vec in basis:
            for row in m:
                assert sum(a * b for a, b in zip(row, vec)) == 0


def one_dim_rep():
    basis = enumerate_diagrams(PB, 2)
    entries = {tau: {(0, 0): DeltaPoly.one()} for tau in basis}
    return RepMatrices(PB, 2, 1, entries)


def test_commutant_of_one_dim_rep():
    assert commutant_dim(one_dim_rep(), F(7, 3)) == 1


def test_intertwiner_contains_identity():
    rep = model_matrices(PB, 2)
    assert intertwiner_dim(rep, rep, F(7, 3)) >= 1


def test_intertwiner_rejects_mismatched_bases():
    with pytest.raises(ValueError):
        intertwiner_dim(model_matrices(PB, 2), model_matrices(family("b"), 2), F(7, 3))


def test_commutant_matches_reference_values():
    assert commutant_dim(model_matrices(PB, 2), F(7, 3)) == 4
    assert commutant_dim(model_matrices(family("tl"), 3), F(7, 3)) == 2


def test_distinct_simples_do_not_intertwine():
    b3 = family("b")
    mods = {(sm.j.rank, sm.label): sm for sm in all_specht_modules(b3, 3)}
    top = mods[(3, ((3,),))]
    low = mods[(1, ((1,),))]
    assert intertwiner_dim(top.rep(), low.rep(), F(7, 3)) == 0


def test_sym_model_commutant_counts_partitions():
    assert [sym_model_commutant_dim(k) for k in range(1, 6)] == [1, 2, 3, 5, 7]


def test_sym_model_commutant_agrees_with_generic_path():
    """Cross-check the signed-component count against matrix elimination."""
    from diagalg.symgroup import sym_model_matrices

    for k in (2, 3, 4):
        basis, gens = sym_model_matrices(k)
        d = len(basis)
        rows = []
        for targets, signs in gens:
            mat = [[F(0)] * d for _ in range(d)]
            for col, (t, s) in enumerate(zip(targets, signs)):
                mat[t][col] = F(s)
            for i in range(d):
                for j in range(d):
                    row = [F(0)] * (d * d)
                    for c in range(d):
                        row[i * d + c] += mat[c][j]
                        row[c * d + j] -= mat[i][c]
                    rows.append(row)
        assert len(nullspace(rows, d * d)) == sym_model_commutant_dim(k)


def test_module_axioms_pass_on_small_families():
    assert check_module_axioms(PB, 2).passed
    assert check_module_axioms(family("p"), 2).passed


def test_module_axioms_catch_a_flipped_sign():
    """Inverting the sign convention must break associativity with a witness."""
    fam, n = PB, 2
    basis = enumerate_diagrams(fam, n)
    iotas = model_basis(fam, n).elements

    def flipped(tau, iota):
        hit = act_monomial(fam, tau, iota)
        if hit is None:
            return None
        sign, exp, target = hit
        return -sign, exp, target

    witness = None
    for tau in basis:
        for rho in basis:
            product, closed = compose(tau, rho)
            for iota in iotas:
                left = flipped(product, iota)
                lhs = None if left is None else (left[0], left[1] + closed, left[2])
                inner = flipped(rho, iota)
                if inner is None:
                    rhs = None
                else:
                    outer = flipped(tau, inner[2])
                    rhs = None if outer is None else (
                        inner[0] * outer[0], inner[1] + outer[1], outer[2])
                if lhs != rhs:
                    witness = (tau, rho, iota, lhs, rhs)
                    break
            if witness:
                break
        if witness:
            break
    assert witness is not None


def test_two_sided_classification_oracle():
    for fam, n in [(PB, 2), (family("p"), 2), (family("wtl", (1, 1)), 2),
                   (family("b"), 2), (family("wpb", (1, 1)), 2)]:
        assert check_two_sided_classification(fam, n).passed


def test_sample_deltas_reproducible_and_generic():
    a = sample_deltas(3, seed=99)
    b = sample_deltas(3, seed=99)
    assert a == b and len(a) == 3
    for value in a:
        assert value != 0
        assert not (value.denominator == 1 and value <= 6)


def test_check_gelfand_reports():
    report = check_gelfand(family("tl"), 3, [F(7, 3)])
    assert report.passed
    names = [c.name for c in report.checks]
    assert any("model-commutant" in name for name in names)
    payload = json.loads(report.to_json())
    assert list(payload) == ["family", "n", "wall", "delta_samples", "seed", "checks"]
    assert payload["delta_samples"] == ["7/3"]
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_check_gelfand_b3_counts():
    report = check_gelfand(family("b"), 3, [F(7, 3)])
    assert report.passed
    commutant = next(c for c in report.checks if "model-commutant" in c.name)
    assert "4" in commutant.details
    assert model_basis(family("b"), 3).dim == 7


def test_check_result_status_strings():
    assert CheckResult("x", True).status == "pass"
    assert CheckResult("x", False, "w").status == "fail"
