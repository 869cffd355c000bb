"""Identity suites in the realization t^(r)_ij = (p_r(E))_ij inside U(gl_n).

Every relation is first assembled formally over generator symbols (EntryExpr)
and then normal ordered. A record passes iff the normal-ordered difference of
the two sides is exactly zero; otherwise that difference is the witness.

`perturb` is the negative-control hook: it rescales the right-hand side by
(1 + perturb), which must make a correct suite fail.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable

from .errors import BadParam
from .exact_core import TruncSeries, l_apply, rat
from .exact_core import UPoly
from .orthopoly import (RecurrenceFamily, family_polys, identity, inverse_triangle, kernel_check,
                        make_family, matmul, poly_triangle, w_pair)
from .records import CheckRecord, Timer, record
from .ugl import EntryExpr, ecomm


def family_rows(fam: RecurrenceFamily, M: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(p[k] for k in range(m + 1)) for m, p in enumerate(family_polys(fam, M)))


def indices(n: int, k: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(1, n + 1), repeat=k)


def _T(n, r, i, j):
    return EntryExpr.gen(n, r, i, j)


# ------------------------------------------------------------- base and OY

def base_residual(n, r, s, i, j, k, l, perturb=0) -> EntryExpr:
    T = lambda a, x, y: _T(n, a, x, y)
    lhs = ecomm(T(r + 1, i, j), T(s, k, l)) - ecomm(T(r, i, j), T(s + 1, k, l))
    rhs = T(r, k, j) * T(s, i, l) - T(s, k, j) * T(r, i, l)
    return lhs - rhs * (1 + perturb)


def check_base_identity(n: int, rmax: int, smax: int, perturb=0) -> list[CheckRecord]:
    """[t^(r+1)_ij, t^(s)_kl] - [t^(r)_ij, t^(s+1)_kl] = t^(r)_kj t^(s)_il - t^(s)_kj t^(r)_il with t = E^r."""
    out = []
    for r in range(rmax + 1):
        for s in range(smax + 1):
            for i, j, k, l in indices(n, 4):
                tm = Timer()
                diff = base_residual(n, r, s, i, j, k, l, perturb).evaluate()
                out.append(record("base", f"r={r},s={s},ijkl={i}{j}{k}{l}",
                                  {"n": n, "r": r, "s": s, "i": i, "j": j, "k": k, "l": l}, diff, tm))
    return out


def oy_residual(fam: RecurrenceFamily, n, r, s, i, j, k, l, perturb=0) -> EntryExpr:
    T = lambda a, x, y: _T(n, a, x, y)

    def D(a, x, y):
        return T(a + 1, x, y) + T(a, x, y) * fam.a_at(a) + T(a - 1, x, y) * fam.b(a)

    lhs = ecomm(D(r, i, j), T(s, k, l)) - ecomm(T(r, i, j), D(s, k, l))
    rhs = T(r, k, j) * T(s, i, l) - T(s, k, j) * T(r, i, l)
    return lhs - rhs * (1 + perturb)


def check_oy_relations(fam: RecurrenceFamily, n: int, rmax: int, smax: int,
                       perturb=0, suite: str = "oy") -> list[CheckRecord]:
    if not fam.is_three_term:
        raise BadParam("OY relations need a three-term family")
    rows = {0: family_rows(fam, max(rmax, smax) + 1)}
    out = []
    for r in range(rmax + 1):
        for s in range(smax + 1):
            for i, j, k, l in indices(n, 4):
                tm = Timer()
                diff = oy_residual(fam, n, r, s, i, j, k, l, perturb).evaluate(rows)
                out.append(record(suite, f"{fam.label()}:r={r},s={s},ijkl={i}{j}{k}{l}",
                                  {"family": fam.label(), "n": n, "r": r, "s": s,
                                   "i": i, "j": j, "k": k, "l": l}, diff, tm))
    return out


def check_w_machinery(fam: RecurrenceFamily, M: int, z_samples=(0, 1, "1/2"), kernel_order: int = 8,
                      perturb=0, suite: str = "oy") -> list[CheckRecord]:
    """W W^-1 = W^-1 W = Id, x^r = sum_l q^r_l p_l(x) for r <= M, and the kernel identity."""
    P = 1 + rat(perturb)
    base = {"family": fam.label(), "M": M}
    out = []
    tm = Timer()
    W, Wi = w_pair(fam, M)
    Id = identity(M + 1)
    scaled = [[v * P for v in row] for row in Id]
    bad = None
    for name, prod in (("W W^-1", matmul(W, Wi)), ("W^-1 W", matmul(Wi, W))):
        if prod != scaled:
            bad = bad or f"{name} differs from the identity"
    out.append(record(suite, f"W:{fam.label()}:M={M}:inverse", base, bad, tm))

    tm = Timer()
    p_tri, q_tri = poly_triangle(fam, M), inverse_triangle(fam, M)
    bad = None
    for r in range(M + 1):
        acc = UPoly()
        for l, c in enumerate(q_tri[r]):
            acc = acc + p_tri.poly(l) * c
        target = UPoly((0,) * r + (P,))
        if acc != target:
            bad = f"r={r}: {acc} != x^{r}"
            break
    out.append(record(suite, f"W:{fam.label()}:M={M}:coefficients", base, bad, tm))

    tm = Timer()
    results = kernel_check(fam, kernel_order + 1, z_samples)
    bad = [f"z={rs['z']}: {rs['residual']}" for rs in results if not rs["ok"]]
    out.append(record(suite, f"kernel:{fam.label()}:order={kernel_order}",
                      dict(base, z=[rat(z) for z in z_samples], order=kernel_order), "; ".join(bad), tm))
    return out


# ---------------------------------------------------------- series form

def t_series(n: int, i: int, j: int, N: int, leg: int = 0, legs: int = 1) -> TruncSeries:
    """T_ij(u) = delta_ij + sum_{r=1}^N t^(r)_ij u^-r over generator symbols, known to order N."""
    return TruncSeries({r: EntryExpr.gen(n, r, i, j, legs, leg) for r in range(N + 1)}, N, lo=0)


def bi_product(F: TruncSeries, G: TruncSeries, u_first: bool = True) -> TruncSeries:
    """F(u) G(v) as a series in u of series in v; u_first=False gives G(v) F(u)."""
    if u_first:
        return F.map(lambda a: G.map(lambda b: a * b))
    return F.map(lambda a: G.map(lambda b: b * a))


def bi_commutator(F: TruncSeries, G: TruncSeries) -> TruncSeries:
    return F.map(lambda a: G.map(lambda b: a * b - b * a))


def l_operator(F: TruncSeries, a: Callable[[int], Fraction], sb: Callable[[int], Fraction]) -> TruncSeries:
    """(u + L^a_u + u^-1 L^{s(b)}_u) F."""
    return F.shift(-1) + l_apply(a, F) + l_apply(sb, F).shift(1)


def bi_coeff(F: TruncSeries, r: int, s: int):
    inner = F.coeffs.get(r)
    if inner is None:
        return 0
    return inner.coeffs.get(s, 0)


def series_residual(Tu, Tv, ijkl, a, sb, perturb=0) -> TruncSeries:
    """LHS - RHS of the generating-function relation for one index tuple.

    Tu(i, j) and Tv(i, j) return the u- and v-series of the realization.
    """
    i, j, k, l = ijkl
    comm = bi_commutator(Tu(i, j), Tv(k, l))
    lhs = l_operator(comm, a, sb) - comm.map(lambda G: l_operator(G, a, sb))
    rhs = bi_product(Tu(k, j), Tv(i, l)) - bi_product(Tu(i, l), Tv(k, j), u_first=False)
    return lhs - rhs.map(lambda G: G * (1 + perturb))


def check_series_relation(fam: RecurrenceFamily, n: int, N: int, perturb=0,
                          suite: str = "series") -> list[CheckRecord]:
    """Generating-function form, coefficient of u^-r v^-s for r + s <= N - 1.

    Each coefficient must coincide formally with the OY residual at (r, s)
    and normal order to zero.
    """
    rows = {0: family_rows(fam, N + 1)}
    a, sb = fam.a_at, (lambda k: fam.b(k + 1))
    cache: dict = {}

    def T(i, j):
        if (i, j) not in cache:
            cache[i, j] = t_series(n, i, j, N)
        return cache[i, j]

    out = []
    for ijkl in indices(n, 4):
        res = series_residual(T, T, ijkl, a, sb, perturb)
        for r in range(N):
            for s in range(N - r):
                tm = Timer()
                c = bi_coeff(res, r, s)
                c = c if isinstance(c, EntryExpr) else EntryExpr.scalar(n, c)
                formal = oy_residual(fam, n, r, s, *ijkl, perturb)
                if c != formal:
                    diff = f"series coefficient differs from the OY residual: {(c - formal).evaluate(rows)}"
                    if diff.endswith(": 0"):
                        diff = "series coefficient differs formally from the OY residual"
                else:
                    diff = c.evaluate(rows)
                out.append(record(suite, f"{fam.label()}:r={r},s={s},ijkl={''.join(map(str, ijkl))}",
                                  {"family": fam.label(), "n": n, "r": r, "s": s,
                                   "ijkl": list(ijkl)}, diff, tm))
    return out


# ---------------------------------------------------------------- omega

def check_omega(fam: RecurrenceFamily, n: int, N: int, perturb=0, suite: str = "omega") -> list[CheckRecord]:
    """[omega^(r), omega^(s)] = 0 with omega^(r) = sum_i t^(r)_ii."""
    rows = {0: family_rows(fam, N)} if fam.is_three_term else None
    out = []
    omega = [sum((_T(n, r, i, i) for i in range(1, n + 1)), EntryExpr(n)) for r in range(N + 1)]
    for r in range(N + 1):
        for s in range(N + 1):
            tm = Timer()
            expr = ecomm(omega[r], omega[s]) - omega[r] * omega[s] * perturb
            out.append(record(suite, f"{fam.label()}:r={r},s={s}",
                              {"family": fam.label(), "n": n, "r": r, "s": s}, expr.evaluate(rows), tm))
    return out


# ---------------------------------------------------------- q-Pochhammer

def pochhammer_residual(q, n, r, s, i, j, k, l, perturb=0) -> EntryExpr:
    q = Fraction(q)
    M = lambda a, x, y: _T(n, a, x, y)
    qr, qs = q ** (-r), q ** (-s)
    lhs = (ecomm(M(r, i, j), M(s, k, l)) * (qr - qs) + ecomm(M(r, i, j), M(s + 1, k, l)) * qs
           - ecomm(M(r + 1, i, j), M(s, k, l)) * qr)
    rhs = M(r, k, j) * M(s, i, l) - M(s, k, j) * M(r, i, l)
    return lhs - rhs * (1 + perturb)


def _poch_rows(q, M):
    return family_rows(make_family("pochhammer", q=q), M)


def check_pochhammer(q, n: int, rmax: int, smax: int, N: int, deg: int = 2,
                     perturb=0, suite: str = "pochhammer") -> list[CheckRecord]:
    q = rat(q)
    if q == 0:
        raise BadParam("q must be nonzero")
    out: list[CheckRecord] = []
    tag = f"q={q}"
    rows = {0: _poch_rows(q, max(rmax, smax, N) + deg + 2)}
    # recurrence x P_r = (P_r - P_{r+1}) / q^r
    tm = Timer()
    fam = make_family("pochhammer", q=q)
    polys = family_polys(fam, max(rmax, smax) + 1)
    bad = [r for r in range(len(polys) - 1)
           if polys[r] * polys[1].__class__.x() != (polys[r] - polys[r + 1]) * (q ** (-r))]
    out.append(record(suite, f"{tag}:recurrence", {"q": q}, f"fails at r={bad}" if bad else None, tm))

    # first form on the grid
    for r in range(rmax + 1):
        for s in range(smax + 1):
            for i, j, k, l in indices(n, 4):
                tm = Timer()
                diff = pochhammer_residual(q, n, r, s, i, j, k, l, perturb).evaluate(rows)
                out.append(record(suite, f"{tag}:P1:r={r},s={s},ijkl={i}{j}{k}{l}",
                                  {"q": q, "n": n, "r": r, "s": s, "i": i, "j": j, "k": k, "l": l}, diff, tm))

    # series form: coefficient (r, s) equals the first-form residual
    cache: dict = {}

    def m(i, j):
        if (i, j) not in cache:
            cache[i, j] = t_series(n, i, j, N)
        return cache[i, j]

    one_minus_qu = TruncSeries({0: Fraction(1), -1: -q}, 0, lo=-1, exact=True)
    for ijkl in indices(n, 4):
        i, j, k, l = ijkl
        tm = Timer()
        res = poch_series_residual(m, m, ijkl, q, q, one_minus_qu, one_minus_qu, perturb)
        problems = []
        for r in range(N):
            for s in range(N - r):
                c = bi_coeff(res, r, s)
                c = c if isinstance(c, EntryExpr) else EntryExpr.scalar(n, c)
                if c != pochhammer_residual(q, n, r, s, *ijkl, perturb):
                    problems.append(f"(r={r},s={s}) differs formally")
                else:
                    v = c.evaluate(rows)
                    if v:
                        problems.append(f"(r={r},s={s}): {v}")
        out.append(record(suite, f"{tag}:P2:ijkl={i}{j}{k}{l}", {"q": q, "n": n, "N": N, "ijkl": list(ijkl)},
                          "; ".join(problems), tm))

    # rescaled form with mt(u) = (1 - u) m(u) / P_deg(u)
    g = rescale_factor(q, deg, N + deg + 2)
    mt_cache: dict = {}

    def mt(i, j):
        if (i, j) not in mt_cache:
            mt_cache[i, j] = (m(i, j) * g).truncate(N)
        return mt_cache[i, j]

    qd = q ** deg
    one_minus_qdu = TruncSeries({0: Fraction(1), -1: -qd}, 0, lo=-1, exact=True)
    for ijkl in indices(n, 4):
        i, j, k, l = ijkl
        tm = Timer()
        res = poch_series_residual(mt, mt, ijkl, q, q, one_minus_qdu, one_minus_qdu, perturb)
        problems = []
        top = N - 1
        for r in range(top + 1):
            for s in range(top + 1 - r):
                c = bi_coeff(res, r, s)
                if isinstance(c, EntryExpr):
                    v = c.evaluate(rows)
                    if v:
                        problems.append(f"(r={r},s={s}): {v}")
                elif c:
                    problems.append(f"(r={r},s={s}): {c}")
        out.append(record(suite, f"{tag}:P3(deg={deg}):ijkl={i}{j}{k}{l}",
                          {"q": q, "n": n, "N": N, "deg": deg, "ijkl": list(ijkl)}, "; ".join(problems), tm))
    return out


def rescale_factor(q, deg: int, order: int) -> TruncSeries:
    """(1 - u) / (u; q)_deg as a series in 1/u."""
    P = TruncSeries({0: Fraction(1)}, 0, lo=0, exact=True)
    for k in range(deg):
        P = P * TruncSeries({0: Fraction(1), -1: -(Fraction(q) ** k)}, 0, lo=-1, exact=True)
    inv = P.truncate(order).inverse()
    return TruncSeries({0: Fraction(1), -1: Fraction(-1)}, 0, lo=-1, exact=True) * inv


def poch_series_residual(Fu, Fv, ijkl, q_u, q_v, cu: TruncSeries, cv: TruncSeries, perturb=0) -> TruncSeries:
    """cu(u)[F_ij(qu), F_kl(v)] - cv(v)[F_ij(u), F_kl(qv)] - (F_kj(u)F_il(v) - F_kj(v)F_il(u))."""
    i, j, k, l = ijkl
    first = bi_commutator(Fu(i, j).scale_var(q_u), Fv(k, l))
    first = _left_u(cu, first)
    second = bi_commutator(Fu(i, j), Fv(k, l).scale_var(q_v))
    second = second.map(lambda G: _left_u(cv, G))
    rhs = bi_product(Fu(k, j), Fv(i, l)) - bi_product(Fu(i, l), Fv(k, j), u_first=False)
    return first - second - rhs.map(lambda G: G * (1 + perturb))


def _left_u(c: TruncSeries, F: TruncSeries) -> TruncSeries:
    """Scalar series c times F, with c's rational coefficients on the left."""
    out = None
    for k, a in c.coeffs.items():
        term = F.shift(k).map(lambda G, a=a: a * G)
        out = term if out is None else out + term
    return out


def check_q_one_limit(n: int, rmax: int, smax: int, perturb=0, suite: str = "pochhammer") -> list[CheckRecord]:
    """At q = 1, m^(r) -> (-1)^r t^(r) carries the first form onto (-1)^(r+s) times the base identity.

    Checked formally over symbols, then the q = 1 realization is run and its
    pass/fail pattern compared with the base suite.
    """
    out = []
    rows1 = {0: _poch_rows(Fraction(1), max(rmax, smax) + 1)}
    for r in range(rmax + 1):
        for s in range(smax + 1):
            for i, j, k, l in indices(n, 4):
                tm = Timer()
                pres = pochhammer_residual(1, n, r, s, i, j, k, l, perturb)
                sub = pres.substitute(lambda sym, leg: EntryExpr(n, 1, {((sym,),): (-1) ** sym[0]}))
                base = base_residual(n, r, s, i, j, k, l) * ((-1) ** (r + s))
                diff = None
                if sub != base:
                    diff = f"substituted residual differs: {(sub - base).evaluate()}"
                else:
                    v_p = pres.evaluate(rows1)
                    v_b = base_residual(n, r, s, i, j, k, l).evaluate()
                    if bool(v_p) != bool(v_b):
                        diff = f"q=1 realization {v_p} vs base {v_b}"
                out.append(record(suite, f"q->1:r={r},s={s},ijkl={i}{j}{k}{l}",
                                  {"n": n, "r": r, "s": s, "i": i, "j": j, "k": k, "l": l}, diff, tm))
    return out


# -------------------------------------------------- Christoffel-Darboux

def _cd_weights(fam: RecurrenceFamily, n_sum: int) -> list[Fraction]:
    w = [Fraction(1)]
    for m in range(1, n_sum + 2):
        b = fam.b(m)
        if b == 0:
            raise BadParam(f"b_{m} = 0: Christoffel-Darboux weights are undefined")
        w.append(w[-1] / b)
    return w


class CDAlgebra:
    """Two OY copies in the tensor square: tilde on leg 0, hat on leg 1.

    twisted=True realizes the hat copy through X_ij = -E_ji, which keeps the
    relations but separates the two readings of the sums.
    """

    def __init__(self, fam: RecurrenceFamily, n: int, twisted: bool, reading: str):
        self.fam, self.n = fam, n
        self.hat_kind = 1 if twisted else 0
        self.reading = reading
        self.w_kind = self.hat_kind if reading == "hat" else 0

    def tt(self, r, i, j):
        return EntryExpr.gen(self.n, r, i, j, legs=2, leg=0)

    def th(self, r, i, j):
        return EntryExpr.gen(self.n, r, i, j, legs=2, leg=1, kind=self.hat_kind)

    def tw(self, r, i, j):
        """Second-leg factor of the sums written with a tilde."""
        return EntryExpr.gen(self.n, r, i, j, legs=2, leg=1, kind=self.w_kind)

    def A(self, s, al, be, ep, ka):
        return self.tt(s, al, be) - self.th(s, ep, ka)

    def Z(self, nn, w, i, j, k, l, p=0, q=0):
        acc = EntryExpr(self.n, 2)
        for m in range(1, nn + 1):
            acc = acc + self.tt(m + p, i, j) * self.th(m + q, k, l) * w[m]
        return acc

    def zero(self):
        return EntryExpr(self.n, 2)


def cd_lemma(C: CDAlgebra, w, s, nn, idx, perturb=0) -> EntryExpr:
    al, be, ep, ka, i, j, k, l = idx
    fam = C.fam
    A = lambda x: C.A(x, al, be, ep, ka)
    Z = lambda a, b, c, d: C.Z(nn, w, a, b, c, d)
    lhs = ecomm(A(s + 1) + A(s) * fam.a_at(s) + A(s - 1) * fam.b(s), Z(i, j, k, l))
    asum = C.zero()
    xsum = C.zero()
    for m in range(1, nn + 1):
        asum = asum + C.tt(m, i, j) * C.tw(m, k, l) * (fam.a_at(m) * w[m])
    for m in range(1, nn):
        xsum = xsum + (C.tt(m + 1, i, j) * C.tw(m, k, l) + C.tt(m, i, j) * C.tw(m + 1, k, l)) * w[m]
    rhs = (ecomm(A(s), asum) + ecomm(A(s), xsum)
           + ecomm(C.tt(s, al, be), C.tt(nn + 1, i, j) * C.th(nn, k, l)) * w[nn]
           - ecomm(C.th(s, ep, ka), C.tt(nn, i, j) * C.th(nn + 1, k, l)) * w[nn]
           + _cd_tail(C, s, Z, idx))
    return lhs - rhs * (1 + perturb)


def _cd_tail(C: CDAlgebra, s, Z, idx):
    al, be, ep, ka, i, j, k, l = idx
    return (C.tt(s, i, be) * Z(al, j, k, l) - Z(i, be, k, l) * C.tt(s, al, j)
            + Z(i, j, k, ka) * C.th(s, ep, l) - C.th(s, k, ka) * Z(i, j, ep, l))


def cd_cor_s0(C: CDAlgebra, w, nn, idx, perturb=0) -> EntryExpr:
    al, be, ep, ka, i, j, k, l = idx
    Z = lambda a, b, c, d: C.Z(nn, w, a, b, c, d)
    d = lambda x, y: int(x == y)
    lhs = ecomm(C.A(1, al, be, ep, ka), Z(i, j, k, l))
    rhs = Z(al, j, k, l) * d(i, be) - Z(i, be, k, l) * d(al, j) + Z(i, j, k, ka) * d(ep, l) - Z(i, j, ep, l) * d(k, ka)
    return lhs - rhs * (1 + perturb)


def cd_cor2(C: CDAlgebra, w, s, nn, idx, particular=False, perturb=0) -> EntryExpr:
    al, be, ep, ka, i, j, k, l = idx
    fam = C.fam
    A = lambda x: C.A(x, al, be, ep, ka)
    Z = lambda a, b, c, d: C.Z(nn, w, a, b, c, d)
    xsum = C.zero()
    for m in range(1, nn):
        xsum = xsum + (C.tt(m + 1, i, j) * C.tw(m, k, l) + C.tt(m, i, j) * C.tw(m + 1, k, l)) * w[m]
    top = (ecomm(C.tt(s, al, be), C.tt(nn + 1, i, j) * C.th(nn, k, l))
           - ecomm(C.th(s, ep, ka), C.tt(nn, i, j) * C.th(nn + 1, k, l))) * w[nn]
    if particular:
        lhs = ecomm(A(s + 1) - A(s) + A(s - 1) * fam.b(s), Z(i, j, k, l))
        rhs = top + ecomm(A(s), xsum)
    else:
        lhs = ecomm(A(s + 1) + A(s - 1) * fam.b(s), Z(i, j, k, l))
        rhs = top + ecomm(A(s), xsum) + _cd_tail(C, s, Z, idx)
    return lhs - rhs * (1 + perturb)


def cd_cheb(C: CDAlgebra, b, s, nn, p, q, idx, particular=False, perturb=0) -> EntryExpr:
    al, be, ep, ka, i, j, k, l = idx
    b = Fraction(b)
    A = lambda x: C.A(x, al, be, ep, ka)
    wb = [b ** (-m) for m in range(nn + 2)]
    Zpq = lambda nn_, p_, q_, a, bb, c, d: C.Z(nn_, wb, a, bb, c, d, p_, q_)
    Z = lambda a, bb, c, d: Zpq(nn, p, q, a, bb, c, d)
    top = (ecomm(C.tt(s, al, be), C.tt(nn + p + 1, i, j) * C.th(nn + q, k, l))
           - ecomm(C.th(s, ep, ka), C.tt(nn + p, i, j) * C.th(nn + q + 1, k, l))) * wb[nn]
    low = (ecomm(C.tt(s, al, be), C.tt(p, i, j) * C.th(q + 1, k, l))
           - ecomm(C.th(s, ep, ka), C.tt(p + 1, i, j) * C.th(q, k, l)))
    mid = ecomm(A(s), Zpq(nn - 1, p + 1, q, i, j, k, l) + Zpq(nn - 1, p, q + 1, i, j, k, l))
    if particular:
        lhs = ecomm(A(s + 1) - A(s) + A(s - 1) * b, Z(i, j, k, l))
        rhs = top + low + mid
    else:
        lhs = ecomm(A(s + 1) + A(s - 1) * b, Z(i, j, k, l))
        rhs = top + low + mid + _cd_tail(C, s, Z, idx)
    return lhs - rhs * (1 + perturb)


def _constant(seq, start: int, upto: int) -> Fraction | None:
    vals = {seq(m) for m in range(start, upto + 1)}
    return vals.pop() if len(vals) == 1 else None


def check_cd(fam: RecurrenceFamily, N_gl: int, n_sum: int, smax: int, perturb=0,
             pq_values=(0, 1), suite: str = "cd") -> list[CheckRecord]:
    """The quantum Christoffel-Darboux lemma and its corollaries in the tensor square.

    Each identity is run with a plain and a twisted hat copy. With the plain
    copy both readings of the sums written with a tilde on the second leg give
    the same expression. With the twisted copy they differ: every instance is
    recorded for the hat reading, and the tilde reading is tallied into one
    adjudication record per identity.
    """
    top = n_sum + smax + max(pq_values) + 3
    w = _cd_weights(fam, top)
    rows = family_rows(fam, top + 1)
    ev_rows = {0: rows, 1: rows}
    a_const = _constant(fam.a_at, 0, top)
    b_const = _constant(fam.b, 1, top)
    out: list[CheckRecord] = []
    label = fam.label()
    tally: dict[tuple[str, str], list[int]] = {}
    first_fail: dict[tuple[str, str], str] = {}

    def emit(kind, reading, name, params, expr, tm):
        val = expr.evaluate(ev_rows)
        slot = tally.setdefault((kind, reading), [0, 0])
        slot[1] += 1
        if not val:
            slot[0] += 1
        else:
            first_fail.setdefault((kind, reading), f"{name}: {val}")
        if reading != "tilde":
            out.append(record(suite, f"{label}:{name}", dict(params, family=label), val, tm))

    for twisted in (False, True):
        cop = "twisted" if twisted else "plain"
        for reading in (("hat", "tilde") if twisted else ("hat",)):
            C = CDAlgebra(fam, N_gl, twisted, reading)
            for nn in range(1, n_sum + 1):
                for idx in indices(N_gl, 8):
                    tag = "".join(map(str, idx))
                    base_p = {"N_gl": N_gl, "n": nn, "copy": cop, "reading": reading, "idx": list(idx)}
                    for s in range(smax + 1):
                        tm = Timer()
                        emit(f"lemma[{cop}]", reading, f"lemma[{cop},{reading}]:n={nn},s={s},idx={tag}",
                             dict(base_p, s=s), cd_lemma(C, w, s, nn, idx, perturb), tm)
                    if reading == "hat":
                        tm = Timer()
                        emit(f"cor_s0[{cop}]", reading, f"cor_s0[{cop}]:n={nn},idx={tag}", base_p,
                             cd_cor_s0(C, w, nn, idx, perturb), tm)
                    if a_const is not None:
                        for s in range(smax + 1):
                            tm = Timer()
                            emit(f"cor2[{cop}]", reading, f"cor2[{cop},{reading}]:n={nn},s={s},idx={tag}",
                                 dict(base_p, s=s), cd_cor2(C, w, s, nn, idx, False, perturb), tm)
                            if idx[:4] == idx[4:]:
                                tm = Timer()
                                emit(f"cor2_diag[{cop}]", reading,
                                     f"cor2_diag[{cop},{reading}]:n={nn},s={s},idx={tag}",
                                     dict(base_p, s=s), cd_cor2(C, w, s, nn, idx, True, perturb), tm)
                    if a_const is not None and b_const is not None and reading == "hat":
                        for s in range(smax + 1):
                            for p in pq_values:
                                for q in pq_values:
                                    tm = Timer()
                                    emit(f"cheb[{cop}]", reading,
                                         f"cheb[{cop}]:n={nn},s={s},p={p},q={q},idx={tag}",
                                         dict(base_p, s=s, p=p, q=q),
                                         cd_cheb(C, b_const, s, nn, p, q, idx, False, perturb), tm)
                                    if idx[:4] == idx[4:]:
                                        tm = Timer()
                                        emit(f"cheb_diag[{cop}]", reading,
                                             f"cheb_diag[{cop}]:n={nn},s={s},p={p},q={q},idx={tag}",
                                             dict(base_p, s=s, p=p, q=q),
                                             cd_cheb(C, b_const, s, nn, p, q, idx, True, perturb), tm)

    for (kind, reading), (ok, total) in sorted(tally.items()):
        if reading != "tilde":
            continue
        hat_ok, hat_total = tally[kind, "hat"]
        summary = (f"hat reading {hat_ok}/{hat_total} pass; tilde reading {ok}/{total} pass; "
                   f"validating reading: "
                   + ", ".join(r for r, good in (("hat", hat_ok == hat_total), ("tilde", ok == total)) if good))
        validated = hat_ok == hat_total or ok == total
        witness = None if validated else "neither reading validates; " + summary + "; " + first_fail[kind, "hat"]
        out.append(CheckRecord(suite, f"{label}:{kind.split('[')[0]}-reading-adjudication",
                               {"family": label, "N_gl": N_gl, "n_sum": n_sum, "smax": smax},
                               "pass" if validated else "fail", witness, None, summary))
    return out
