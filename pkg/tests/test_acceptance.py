"""Acceptance criteria, one test per criterion.

Each test prints a ``criterion k: PASS`` or ``criterion k: FAIL`` line.  The
full ``all`` report is produced once per session through the console entry
point, then reused.
"""
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from oyang.cli import RunConfig, run
from oyang.polarization import build_ternary, catalog_algebra, direct_sum, gl
from oyang.rmatrix import check_ybe

pytestmark = pytest.mark.acceptance


def _oyang(*argv, out):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "oyang.cli", "check", *argv, "--out", str(out)],
                          capture_output=True, text=True)
    return proc.returncode, time.perf_counter() - t0, out.read_text()


@pytest.fixture(scope="session")
def full(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    code, secs, text = _oyang("--suite", "all", "--seed", "0", out=d / "all.json")
    return {"code": code, "seconds": secs, "text": text, "report": json.loads(text), "dir": d}


@contextmanager
def criterion(k, capsys):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}")


def checks(report, suite, prefix=""):
    return [c for c in report["checks"] if c["suite"] == suite and c["id"].startswith(prefix)]


def all_pass(recs):
    assert recs, "no records"
    bad = [c["id"] for c in recs if c["status"] != "pass"]
    assert not bad, bad[:5]


def test_criterion_01_base_identity(full, capsys):
    with criterion(1, capsys):
        recs = checks(full["report"], "base")
        all_pass(recs)
        assert {c["params"]["n"] for c in recs} == {1, 2, 3}
        assert max(c["params"]["r"] for c in recs) == 4 and max(c["params"]["s"] for c in recs) == 4
        # every index tuple at every grid point
        assert len(recs) == sum(n ** 4 for n in (1, 2, 3)) * 25
        t0 = time.perf_counter()
        run(RunConfig(suite="base"))
        assert time.perf_counter() - t0 < 60


def test_criterion_02_oy_relations(full, capsys):
    with criterion(2, capsys):
        recs = [c for c in checks(full["report"], "oy") if "ijkl" in c["id"]]
        all_pass(recs)
        fams = {c["params"]["family"] for c in recs}
        dickson = {f"dickson(alpha={a},beta={b})" for a in (0, 1, 2) for b in (1, 2)}
        assert fams == {"monomial", "hermite", "nonorthogonal(a=2)"} | dickson
        for f in fams:
            mine = [c for c in recs if c["params"]["family"] == f]
            assert {c["params"]["n"] for c in mine} == {1, 2}
            assert max(c["params"]["r"] for c in mine) == 4


def test_criterion_03_w_machinery(full, capsys):
    with criterion(3, capsys):
        inv = checks(full["report"], "oy", "W:")
        ker = checks(full["report"], "oy", "kernel:")
        all_pass(inv)
        all_pass(ker)
        # W is triangular, so W W^-1 = Id at M = 12 covers every smaller M
        assert all(c["params"]["M"] == 12 for c in inv)
        assert len(inv) == 2 * 9
        assert all(c["params"]["order"] == 8 and len(c["params"]["z"]) == 3 for c in ker)


def test_criterion_04_omega(full, capsys):
    with criterion(4, capsys):
        recs = checks(full["report"], "omega")
        all_pass(recs)
        assert {c["params"]["family"].split("(")[0] for c in recs} == {"hermite", "dickson"}


def test_criterion_05_christoffel_darboux(full, capsys):
    with criterion(5, capsys):
        recs = checks(full["report"], "cd")
        all_pass(recs)
        adj = [c for c in recs if "adjudication" in c["id"]]
        # lemma and two corollary adjudications per family, each naming the reading that passes
        assert len(adj) == 6 and all(c.get("note") for c in adj)
        assert any(":cor_s" in c["id"] for c in recs)


def test_criterion_06_dickson(full, capsys):
    with criterion(6, capsys):
        rtt = checks(full["report"], "dickson-rtt")
        all_pass(rtt)
        assert sorted(c["params"]["n"] for c in rtt).count(2) == 5
        assert sorted(c["params"]["n"] for c in rtt).count(3) == 5
        all_pass(checks(full["report"], "dickson-comm"))
        ev = checks(full["report"], "eval-auto")
        all_pass(ev)
        for kind in ("eval-series", "embedding", "f-twist", "conjugation"):
            assert any(c["id"].startswith(kind) for c in ev), kind


def test_criterion_07_phi(full, capsys):
    with criterion(7, capsys):
        rep = full["report"]
        all_pass(checks(rep, "phi", "coefficients"))
        eq = checks(rep, "phi", "equation")
        all_pass(eq)
        assert {c["params"]["branch"] for c in eq} == {"plus", "minus"}
        assert all(c["params"]["N"] == 8 for c in eq)
        grp = checks(rep, "phi", "group:plus")
        all_pass(grp)
        assert len({(c["params"]["c"], c["params"]["d"]) for c in grp}) == 3


def test_criterion_08_ybe_and_fusion(full, capsys):
    from fractions import Fraction
    with criterion(8, capsys):
        rep = full["report"]
        ybe = checks(rep, "ybe")
        all_pass(ybe)
        assert len(checks(rep, "ybe", "hom")) == 10 and len(checks(rep, "ybe", "beta")) == 10
        fus = checks(rep, "fusion")
        all_pass(fus)
        assert {c["params"]["m"] for c in fus if not c["id"].startswith("fusion-control")} == {2, 3}
        all_pass(checks(rep, "fused-rtt"))
        assert not check_ybe("beta", 2, [(1, 3, 7)], perturb=Fraction(1, 11))[0].passed
        assert not check_ybe("hom", 2, [(1, 3, 7)], perturb=Fraction(1, 11))[0].passed


def test_criterion_09_qdet(full, capsys):
    with criterion(9, capsys):
        rep = full["report"]
        all_pass(checks(rep, "qdet"))
        assert len(checks(rep, "qdet", "closed-form")) >= 10
        assert {c["params"]["n"] for c in checks(rep, "qdet", "centrality")} == {2, 3}
        assert checks(rep, "qdet", "minors")
        pairs = {(c["params"]["s_u"], c["params"]["s_v"]) for c in checks(rep, "qdet", "minor-commutator")
                 if c["params"]["n"] == 2}
        assert len(pairs) >= 5
        assert len(checks(rep, "qdet", "comultiplicative")) >= 3


def test_criterion_10_pochhammer(full, capsys):
    with criterion(10, capsys):
        recs = checks(full["report"], "pochhammer")
        all_pass(recs)
        qs = {c["params"].get("q") for c in recs if "q" in c["params"]}
        assert {"2", "1/2", "3"} <= qs
        assert any(c["id"].startswith("q->1") for c in recs)


def test_criterion_11_hermite_operators(full, capsys):
    with criterion(11, capsys):
        recs = checks(full["report"], "hermite-ops")
        all_pass(recs)
        assert [c for c in recs if c["id"] == "r-split[difference]"]
        table = [c for c in recs if c["id"].startswith("triple-product[") and c["id"].endswith(":table")
                 and "hat" not in c["id"]]
        assert len(table) == 4 and all(c.get("note") for c in table)


POLARIZED_OK = ("polarized:", "first-order", "trace:", "derivative-form", "epsilon-closed-form", "matrix-form")


def test_criterion_12_polarization_without_epsilon_symmetry(full):
    rep = full["report"]
    recs = [c for c in checks(rep, "polarized") if c["id"].startswith(POLARIZED_OK)]
    all_pass(recs)
    assert {c["params"]["n"] for c in recs} == {2, 3}
    assert max(c["params"]["r"] for c in recs if "r" in c["params"]) == 3


@pytest.mark.xfail(strict=True, reason="epsilon(A,B) = D([B,A]) is antisymmetric, so the symmetry claim fails")
def test_criterion_12_polarization(full, capsys):
    with criterion(12, capsys):
        all_pass(checks(full["report"], "polarized"))
        all_pass(checks(full["report"], "trace-epsilon", "epsilon-symmetry"))


def test_criterion_13_ternary_table(full, capsys):
    with criterion(13, capsys):
        rep = full["report"]
        lines = checks(rep, "ternary-table")
        all_pass(lines)
        assert len(lines) == 6
        all_pass(checks(rep, "ternary"))
        T = build_ternary(catalog_algebra("sl2"))
        assert T.algebra.dim == 9 and T.signature == gl(3).signature()
        assert build_ternary(direct_sum(catalog_algebra("sl2"), catalog_algebra("A1"))).algebra.dim == 12
        span = checks(rep, "sl2-span")
        all_pass(span)
        assert any(c["id"] == "displayed-matrix" for c in span)


def test_criterion_14_yt(full, capsys):
    with criterion(14, capsys):
        rep = full["report"]
        pt = checks(rep, "yt", "pt:")
        all_pass(pt)
        assert len(pt) == 16
        all_pass(checks(rep, "yt", "h0-current-algebra"))
        ev = checks(rep, "yt", "evaluation")
        all_pass(ev)
        assert len(ev) == 5
        rs = checks(rep, "yt", "rank-stability")
        all_pass(rs)
        assert set(rs[0]["params"]["ranks"]) == {"1", "1/2", "1/100"}


def test_criterion_15_engineering(full, capsys):
    with criterion(15, capsys):
        assert full["seconds"] < 600
        d = full["dir"]
        _, _, again = _oyang("--suite", "all", "--seed", "0", out=d / "again.json")
        assert again == full["text"]
        code, _, neg = _oyang("--suite", "all", "--seed", "0", "--negative-controls", out=d / "neg.json")
        neg = json.loads(neg)
        assert code == 0
        assert all(v["failed"] for v in neg["negative_controls"].values())
        # suites that already fail unperturbed must fail strictly more under the control
        base = full["report"]["summary"]["by_suite"]
        for suite, counts in neg["summary"]["by_suite"].items():
            assert counts["fail"] > base[suite]["fail"], suite
