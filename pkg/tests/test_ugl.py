"""PBW normal ordering, checked against the action E_ij -> x_i d/dx_j on polynomials."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oyang.errors import PoleCollision, RankMismatch
from oyang.ugl import (EntryExpr, PBWElement, TensorPBW, commutator, coproduct_eval, matrix_power_entry,
                       monomial_factors)

from strategies import letters, words

X = sympy.symbols("x1:4")


def act(el: PBWElement, f):
    """Apply a PBW element through the differential representation."""
    out = 0
    for mono, c in el.terms.items():
        g = f
        for i, j, k in reversed(monomial_factors(el.n, mono)):
            for _ in range(k):
                g = X[i - 1] * sympy.diff(g, X[j - 1])
        out += sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * g
    return sympy.expand(out)


def word_el(n, w):
    el = PBWElement.one(n)
    for i, j in w:
        el = el * PBWElement.gen(n, i, j)
    return el


def word_act(n, w, f):
    for i, j in reversed(w):
        f = X[i - 1] * sympy.diff(f, X[j - 1])
    return sympy.expand(f)


PROBES = {2: [X[0] ** 3 * X[1] ** 2, X[0] * X[1] ** 4 + X[1]],
          3: [X[0] ** 2 * X[1] * X[2] ** 2, X[2] ** 3 + X[0] * X[1]]}


def E(n, i, j):
    return PBWElement.gen(n, i, j)


def test_frozen_normal_forms():
    # hand-derived from [E_ij, E_kl] = d_jk E_il - d_li E_kj
    assert str(E(2, 1, 2) * E(2, 2, 1)) == "E21E12 + E11 - E22"
    assert str(E(2, 2, 1) * E(2, 1, 2)) == "E21E12"
    assert str(matrix_power_entry(2, 2, 1, 1)) == "E11^2 + E21E12 + E11 - E22"


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_product_matches_operator_composition(n, data):
    w1 = data.draw(words(n, 3))
    w2 = data.draw(words(n, 3))
    prod = word_el(n, w1) * word_el(n, w2)
    for f in PROBES[n]:
        assert act(prod, f) == word_act(n, w1 + w2, f)


@given(a=letters(3), b=letters(3))
def test_commutation_relation(a, b):
    (i, j), (k, l) = a, b
    lhs = commutator(E(3, i, j), E(3, k, l))
    rhs = PBWElement.zero(3)
    if j == k:
        rhs = rhs + E(3, i, l)
    if l == i:
        rhs = rhs - E(3, k, j)
    assert lhs == rhs


@given(w1=words(2, 3), w2=words(2, 3), w3=words(2, 2))
def test_associativity(w1, w2, w3):
    x, y, z = word_el(2, w1), word_el(2, w2), word_el(2, w3)
    assert (x * y) * z == x * (y * z)


@given(w=words(3, 4))
def test_normal_form_is_idempotent(w):
    el = word_el(3, w)
    again = PBWElement.zero(3)
    for mono, c in el.terms.items():
        again = again + PBWElement(3, {mono: 1}) * c
    assert again == el


def test_power_entries_follow_matrix_product():
    n = 2
    for r in range(1, 4):
        for i in (1, 2):
            for j in (1, 2):
                expected = sum((matrix_power_entry(n, r, i, k) * E(n, k, j) for k in (1, 2)), PBWElement.zero(n))
                assert matrix_power_entry(n, r + 1, i, j) == expected


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        E(2, 1, 1) + E(3, 1, 1)


def test_entry_expr_evaluates_like_pbw():
    n = 2
    e = EntryExpr.gen(n, 1, 1, 2) * EntryExpr.gen(n, 2, 2, 1) - EntryExpr.gen(n, 2, 2, 1) * EntryExpr.gen(n, 1, 1, 2)
    direct = commutator(E(n, 1, 2), matrix_power_entry(n, 2, 2, 1))
    assert e.evaluate() == direct
    assert not EntryExpr.gen(n, -1, 1, 1)
    assert EntryExpr.gen(n, 0, 1, 1).evaluate() == PBWElement.one(n)
    assert not EntryExpr.gen(n, 0, 1, 2)


def test_tensor_square_is_a_product_algebra():
    a, b = E(2, 1, 2), E(2, 2, 1)
    x = TensorPBW.pure(a, PBWElement.one(2))
    y = TensorPBW.pure(b, PBWElement.one(2))
    assert x * y - y * x == TensorPBW.pure(commutator(a, b), PBWElement.one(2))
    z = TensorPBW.pure(PBWElement.one(2), b)
    assert x * z == z * x


def test_coproduct_of_evaluation():
    s = Fraction(5)
    rows = coproduct_eval(2, s)

    def t(i, k):
        x = E(2, i, k) * (1 / s)
        return x + 1 if i == k else x

    for i in (1, 2):
        for j in (1, 2):
            assert rows[i - 1][j - 1] == TensorPBW.pure(t(i, 1), t(1, j)) + TensorPBW.pure(t(i, 2), t(2, j))
    with pytest.raises(PoleCollision):
        coproduct_eval(2, 0)
