from fractions import Fraction

import pytest
from hypothesis import assume, given

from oyang.errors import DegenerateArgument, PoleCollision
from oyang.rmatrix import (CONVENTIONS, TensorOperator, a_m_properties, check_fused_rtt, check_fusion,
                           check_hermite_ops, check_ybe, fused, r_beta, r_hom, r_split_scalar_parts,
                           triple_product_table)

from strategies import rationals


def all_pass(records):
    bad = [r for r in records if not r.passed]
    assert not bad, bad[:3]
    return records


@given(a=rationals, b=rationals, c=rationals)
def test_ybe_homogeneous(a, b, c):
    assume(len({a, b, c}) == 3)
    all_pass(check_ybe("hom", 2, [(a, b, c)]))


@given(a=rationals, b=rationals, c=rationals)
def test_ybe_beta(a, b, c):
    assume(len({a, b, c}) == 3)
    all_pass(check_ybe("beta", 2, [(a, b, c)]))


def test_ybe_perturbed_fails():
    assert not check_ybe("beta", 2, [(1, 3, 7)], perturb=Fraction(1, 11))[0].passed


def test_degenerate_arguments():
    with pytest.raises(DegenerateArgument):
        r_beta(2, 2, 1, 2, 3, 3)
    with pytest.raises(DegenerateArgument):
        r_hom(2, 2, 1, 2, 0)
    with pytest.raises(PoleCollision):
        check_ybe("beta", 2, [(1, 1, 2)])


@pytest.mark.parametrize("m", [2, 3])
def test_antisymmetrizer(m):
    assert all(a_m_properties(2, m).values())


def test_fusion_gives_antisymmetrizer():
    for m in (2, 3):
        recs = all_pass(check_fusion(1, 2, m, 5))
    assert any("control" in r.id for r in recs)
    assert fused(2, [Fraction(5), Fraction(4)]) == TensorOperator.antisym(2, 2)


def test_fused_rtt():
    all_pass(check_fused_rtt(2, 3, [7, 3, -2]))
    assert not check_fused_rtt(2, 3, [7, 3, -2], perturb=Fraction(1, 3))[0].passed


def test_permutation_operator():
    P = TensorOperator.perm(2, 2, 1, 2)
    assert P * P == TensorOperator.identity(2, 2)
    assert P.entry((0, 1), (1, 0)) == 1


def test_hermite_r_split_under_difference_convention():
    recs = all_pass(check_hermite_ops(test_degree=2))
    real = [r for r in recs if r.id == "r-split[difference]"]
    assert real and real[0].passed
    tables = [r for r in recs if r.id.endswith(":table")]
    assert tables and all(r.note for r in tables)


def test_triple_product_table_has_every_convention():
    # frozen outcome: no convention makes the triple-product identity hold
    table = triple_product_table(test_degree=2)
    assert set(table) == set(CONVENTIONS)
    assert not any(table.values())


def test_scalar_parts_poles():
    lhs, rhs = r_split_scalar_parts(3, 2)
    assert lhs == rhs
    with pytest.raises(PoleCollision):
        r_split_scalar_parts(2, 2)
