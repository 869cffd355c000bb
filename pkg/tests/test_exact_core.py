from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oyang.errors import IncomposableLeadingTerm, PoleCollision, WindowViolation
from oyang.exact_core import (WU, WV, LaurentWeylOp, RatFunc, TruncSeries, UPoly, evaluate_at, l_apply, rat,
                              series_compose, weyl_apply)

from strategies import nonzero_rationals, rationals

coeff_lists = st.lists(rationals, min_size=1, max_size=5)


def test_rat_parses_and_refuses_floats():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 ") == -4
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat(True)
    with pytest.raises((ValueError, ZeroDivisionError)):
        rat("1/0")


@given(a=coeff_lists, b=coeff_lists, x=rationals)
def test_upoly_is_a_ring_hom_under_evaluation(a, b, x):
    p, q = UPoly(a), UPoly(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(a=coeff_lists, b=coeff_lists.filter(lambda c: any(c)))
def test_upoly_divmod(a, b):
    p, q = UPoly(a), UPoly(b)
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert not rem or rem.degree < q.degree


def test_ratfunc_cancels_and_evaluates():
    s = RatFunc.var()
    f = (s * s - 1) / (s - 1)
    assert f == s + 1
    assert f.at(3) == 4
    with pytest.raises((PoleCollision, ZeroDivisionError)):
        (1 / s).at(0)


@given(c=st.lists(rationals, min_size=1, max_size=6), lead=nonzero_rationals)
def test_series_inverse(c, lead):
    N = 6
    f = TruncSeries({0: lead, **{k + 1: v for k, v in enumerate(c)}}, N, lo=0)
    one = (f * f.inverse()).truncate(N)
    assert one == TruncSeries({0: Fraction(1)}, N, lo=0)


def test_series_window_violation():
    with pytest.raises(WindowViolation):
        TruncSeries({5: 1}, 3)


@given(c=st.lists(rationals, min_size=1, max_size=5))
def test_derivative_matches_sympy(c):
    u = sympy.Symbol("u")
    f = TruncSeries({k: v for k, v in enumerate(c)}, len(c) - 1, lo=0, exact=True)
    expr = sum(sympy.Rational(v.numerator, v.denominator) * u ** (-k) for k, v in enumerate(c))
    d = sympy.expand(sympy.diff(expr, u))
    mine = sum(sympy.Rational(v.numerator, v.denominator) * u ** (-k) for k, v in f.derivative_u().coeffs.items())
    assert sympy.expand(mine - d) == 0


def test_compose_with_u_plus_constant():
    # 1/u composed with u + 1 is 1/(u+1) = t - t^2 + t^3 - ...
    f = TruncSeries({1: Fraction(1)}, 1, lo=1, exact=True)
    phi = TruncSeries({-1: Fraction(1), 0: Fraction(1)}, 0, lo=-1, exact=True)
    g = series_compose(f, phi, 5)
    assert [g.coeff(k) for k in range(1, 6)] == [1, -1, 1, -1, 1]


def test_compose_refuses_bad_leading_term():
    f = TruncSeries({1: Fraction(1)}, 4, lo=0)
    with pytest.raises(IncomposableLeadingTerm):
        series_compose(f, TruncSeries({0: Fraction(1)}, 3, lo=0), 3)
    with pytest.raises(IncomposableLeadingTerm):
        series_compose(f, TruncSeries({1: Fraction(2)}, 4, lo=0), 3)


def test_l_apply_scales_coefficients():
    f = TruncSeries({0: 1, 1: 2, 2: 3}, 2, lo=0)
    g = l_apply(lambda k: k + 1, f)
    assert [g.coeff(k) for k in range(3)] == [1, 4, 9]


def test_weyl_operator_matches_direct_differentiation():
    op = LaurentWeylOp.mul(WU + 1 / WU) - LaurentWeylOp.d(0)
    f = WU ** 3 * WV
    assert weyl_apply(op, f) == (WU + 1 / WU) * f - 3 * WU ** 2 * WV
    comp = op * op
    assert weyl_apply(comp, f) == weyl_apply(op, weyl_apply(op, f))


def test_evaluate_at_pole():
    assert evaluate_at(WU / WV, (2, 3)) == Fraction(2, 3)
    with pytest.raises(PoleCollision):
        evaluate_at(1 / (WU - WV), (1, 1))
