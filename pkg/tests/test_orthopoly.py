from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oyang.errors import BadParam
from oyang.exact_core import UPoly
from oyang.orthopoly import (RecurrenceFamily, identity, inverse_triangle, kernel_check, make_family,
                             matmul, poly_triangle, shift_family, w_pair)

from strategies import rationals

FAMILIES = [make_family("monomial"), make_family("hermite"), make_family("dickson", alpha=1, beta=2),
            make_family("dickson", alpha=0, beta=1), make_family("nonorthogonal", a=2)]


def test_hermite_rows():
    # monic Hermite: He_4 = x^4 - 6x^2 + 3
    tri = poly_triangle(make_family("hermite"), 4)
    assert tri[4] == (3, 0, -6, 0, 1)
    assert tri[3] == (0, -3, 0, 1)


def test_dickson_rows():
    tri = poly_triangle(make_family("dickson", alpha=0, beta=1), 3)
    assert tri[2] == (-1, 0, 1)
    assert tri[3] == (0, -2, 0, 1)


def test_hermite_inverse_rows():
    # x^2 = He_2 + 1, x^4 = He_4 + 6 He_2 + 3
    q = inverse_triangle(make_family("hermite"), 4)
    assert q[2] == (1, 0, 1)
    assert q[4] == (3, 0, 6, 0, 1)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_w_times_inverse(fam):
    W, Wi = w_pair(fam, 12)
    assert matmul(W, Wi) == identity(13)
    assert matmul(Wi, W) == identity(13)


@given(a=st.lists(rationals, min_size=9, max_size=9), b=st.lists(rationals, min_size=9, max_size=9))
def test_inverse_triangle_for_random_recurrences(a, b):
    fam = RecurrenceFamily("random", lambda m: a[m], lambda m: b[m])
    M = 7
    p, q = poly_triangle(fam, M), inverse_triangle(fam, M)
    for r in range(M + 1):
        acc = UPoly()
        for l, c in enumerate(q[r]):
            acc = acc + p.poly(l) * c
        assert acc == UPoly((0,) * r + (1,))


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label())
def test_kernel_identity(fam):
    res = kernel_check(fam, 9, [0, 1, Fraction(-2, 3)])
    assert all(r["ok"] for r in res)


def test_shift_family():
    fam = shift_family(make_family("hermite"), 2)
    assert fam.b(0) == 0 and fam.b(1) == 3


def test_bad_params():
    with pytest.raises(BadParam):
        make_family("dickson", beta=0)
    with pytest.raises(BadParam):
        make_family("legendre")
    with pytest.raises(BadParam):
        inverse_triangle(make_family("pochhammer", q=2), 3)
    with pytest.raises(TypeError):
        make_family("dickson", beta=0.5)
