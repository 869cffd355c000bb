from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oyang.errors import BadParam
from oyang.orthopoly import RecurrenceFamily, make_family
from oyang.relations import (base_residual, check_base_identity, check_cd, check_omega, check_oy_relations,
                             check_pochhammer, check_q_one_limit, check_series_relation, check_w_machinery,
                             family_rows, oy_residual)

from strategies import rationals


def all_pass(records):
    bad = [r for r in records if not r.passed]
    assert not bad, bad[:3]
    return records


def test_base_identity_small_grid():
    recs = all_pass(check_base_identity(2, 2, 2))
    assert len(recs) == 3 * 3 * 16


@given(r=st.integers(0, 3), s=st.integers(0, 3), idx=st.tuples(*[st.integers(1, 3)] * 4))
def test_base_identity_random_points(r, s, idx):
    assert not base_residual(3, r, s, *idx).evaluate()


def test_base_identity_perturbed_fails():
    recs = check_base_identity(2, 1, 1, perturb=Fraction(1, 7))
    assert any(not r.passed for r in recs)
    failing = next(r for r in recs if not r.passed)
    assert failing.witness and "E" in failing.witness


@settings(max_examples=12)
@given(a=st.lists(rationals, min_size=8, max_size=8), b=st.lists(rationals, min_size=8, max_size=8),
       r=st.integers(0, 3), s=st.integers(0, 3), idx=st.tuples(*[st.integers(1, 2)] * 4))
def test_oy_relation_for_any_recurrence(a, b, r, s, idx):
    fam = RecurrenceFamily("random", lambda m: a[m], lambda m: b[m])
    rows = {0: family_rows(fam, max(r, s) + 1)}
    assert not oy_residual(fam, 2, r, s, *idx).evaluate(rows)


@pytest.mark.parametrize("fam", [make_family("hermite"), make_family("dickson", alpha=2, beta=1),
                                 make_family("nonorthogonal", a=2)], ids=lambda f: f.label())
def test_oy_relations(fam):
    all_pass(check_oy_relations(fam, 2, 2, 2))
    assert any(not r.passed for r in check_oy_relations(fam, 2, 1, 1, perturb=Fraction(1, 3)))


def test_oy_relations_need_three_terms():
    with pytest.raises(BadParam):
        check_oy_relations(make_family("pochhammer", q=2), 2, 1, 1)


def test_w_machinery():
    all_pass(check_w_machinery(make_family("hermite"), 12))
    assert any(not r.passed for r in check_w_machinery(make_family("hermite"), 6, perturb=Fraction(1, 5)))


def test_series_relation():
    all_pass(check_series_relation(make_family("dickson", alpha=1, beta=2), 2, 3))


def test_omega_commutes():
    all_pass(check_omega(make_family("hermite"), 2, 3))
    assert any(not r.passed for r in check_omega(make_family("hermite"), 2, 2, perturb=Fraction(1, 2)))


def test_pochhammer_and_q_one_limit():
    all_pass(check_pochhammer(Fraction(1, 2), 2, 2, 2, 4))
    all_pass(check_q_one_limit(2, 2, 2))


def test_christoffel_darboux_adjudication_records():
    recs = all_pass(check_cd(make_family("hermite"), 2, 1, 1))
    adj = [r for r in recs if "adjudication" in r.id]
    assert adj and all(r.note for r in adj)
