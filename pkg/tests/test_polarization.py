from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oyang.errors import ClosureViolation, JacobiViolation
from oyang.linalg import commutator
from oyang.polarization import (SL2_DISPLAY, D, D_tilde, LieAlgebraSC, abelian, build_ternary, catalog_algebra,
                                check_polarized_suite, check_sl2_span, check_ternary_table,
                                check_trace_and_epsilon, check_yt_suite, direct_sum, epsilon, from_matrices, gl,
                                levi_sum, pair, rtt_polar_residuals, sl, sl2_coefficient_matrix, unit, yt_rank)

from strategies import matrices

CATALOG = ["A1", "A2.1", "A3.1", "A3.2", "A3.3", "A3.4", "A3.5", "sl2", "sl2std", "so3", "A4.1", "A4.2",
           "A4.5", "A5.7", "A5.13"]


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_satisfies_jacobi(name):
    g = catalog_algebra(name)
    assert g.dim == int(name[1]) if name.startswith("A") else g.dim == 3


def test_jacobi_violation_detected():
    with pytest.raises(JacobiViolation):
        LieAlgebraSC("bad", 3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})


def test_closure_violation_detected():
    with pytest.raises(ClosureViolation):
        from_matrices("bad", [unit(2, 0, 1), unit(2, 1, 0)])


def test_frozen_signatures():
    # gl(3): derived algebra sl(3), center = scalars, Killing form degenerate on the center
    assert gl(3).signature() == (9, (9, 8), (9, 8), 1, 8)
    assert sl(3).signature() == (8, (8,), (8,), 0, 8)
    assert catalog_algebra("A4.1").signature() == (4, (4, 2, 0), (4, 2, 1, 0), 1, 0)


@pytest.mark.parametrize("name,dim", [("sl2", 9), ("so3", 9), ("A3.2", 6), ("A2.1", 2), ("A4.1", 8)])
def test_ternary_dimensions(name, dim):
    T = build_ternary(catalog_algebra(name))
    assert T.algebra.dim == dim
    assert T.formula_mismatches == 0


def test_sl2_plus_a1_ternary_is_12_dimensional():
    assert build_ternary(direct_sum(catalog_algebra("sl2"), catalog_algebra("A1"))).algebra.dim == 12


def test_sl2_ternary_has_gl3_signature():
    assert build_ternary(catalog_algebra("sl2")).signature == gl(3).signature()


@pytest.mark.parametrize("name", ["A2.1", "A3.1", "A3.2", "A3.5", "sl2", "A4.1"])
def test_ternary_dimension_is_derived_dim_times_dim(name):
    # the span is the matrices whose rows lie in [g, g]
    g = catalog_algebra(name)
    k = g.derived_series()[1] if len(g.derived_series()) > 1 else g.dim
    assert build_ternary(g).algebra.dim == k * g.dim


def test_abelian_ternary_is_zero():
    assert build_ternary(abelian(3)).algebra.dim == 0


def test_levi_sum_is_a_lie_algebra():
    L = levi_sum(2, catalog_algebra("A3.3"), 1)
    assert L.dim == 6
    assert L.signature() != direct_sum(sl(2), catalog_algebra("A3.3")).signature()


def test_ternary_table_lines():
    recs = check_ternary_table()
    assert len(recs) == 6 and all(r.passed for r in recs)
    levi_only = [r.params["line"] for r in recs if "validating reading: levi" in r.note]
    assert levi_only == [3, 5, 6]


def test_ternary_table_negative_control():
    assert not all(r.passed for r in check_ternary_table(perturb=Fraction(1, 2)))


square2 = matrices(2, st.integers(-3, 3))


@settings(max_examples=25)
@given(A=square2, B=square2)
def test_trace_identity_orientation(A, B):
    dA, dB = D(2, A), D(2, B)
    assert dA * dB - dB * dA == D(2, commutator(B, A))


@settings(max_examples=25)
@given(A=square2, B=square2)
def test_epsilon_closed_form(A, B):
    assert epsilon(2, A, B) == D(2, commutator(B, A))
    assert epsilon(2, A, B) == -epsilon(2, B, A)


@settings(max_examples=15)
@given(A=square2, B=square2, idx=st.tuples(*[st.integers(1, 2)] * 4))
def test_first_order_relation(A, B, idx):
    i, j, k, l = idx
    x, y = D_tilde(2, i, j, A), D_tilde(2, k, l, B)
    assert x * y - y * x == D_tilde(2, k, j, B) * pair(A, i, l) - D_tilde(2, i, l, A) * pair(B, k, j)


def test_epsilon_is_not_symmetric():
    E12, E21 = [[0, 1], [0, 0]], [[0, 0], [1, 0]]
    assert epsilon(2, E12, E21) != epsilon(2, E21, E12)


def test_matrix_form_index_placement():
    A, B = [[1, 2], [0, -1]], [[0, 1], [3, 2]]
    r1, r2 = rtt_polar_residuals(2, A, B, 5, 3, transposed=True)
    assert r1.is_zero() and r2.is_zero()
    r1, _ = rtt_polar_residuals(2, A, B, 5, 3, transposed=False)
    assert not r1.is_zero()


def test_polarized_suite_small():
    recs = check_polarized_suite(2, [[1, 2], [0, -1]], [[0, 1], [3, 2]], 1, 3)
    failing = {r.id for r in recs if not r.passed}
    assert failing == {"epsilon-symmetry"}


def test_trace_homomorphism():
    recs = {r.id: r for r in check_trace_and_epsilon(catalog_algebra("sl2"))}
    assert recs["trace-homomorphism:sl2"].passed
    assert recs["trace-in-ternary:sl2"].passed
    assert recs["epsilon-closed-form:sl2"].passed
    assert not recs["epsilon-symmetry:sl2"].passed


def test_yt_small():
    recs = check_yt_suite(catalog_algebra("sl2"), 1, ["1", "1/2"], [(5, 3)])
    assert all(r.passed for r in recs)


def test_yt_rank_independent_of_h():
    g = catalog_algebra("sl2")
    assert yt_rank(g, 2, Fraction(1)) == yt_rank(g, 2, Fraction(1, 100)) == 18


def test_sl2_display():
    assert SL2_DISPLAY[(1, 2)] == [(1, 3)]
    comp = sl2_coefficient_matrix()
    assert comp[(1, 2)] == [(1, 3)]
    assert all(r.passed for r in check_sl2_span())
