"""Three-term recurrence families and their coefficient triangles.

p_{m+1}(x) = (x - a_m) p_m(x) - b_m p_{m-1}(x), p_0 = 1, p_{-1} = 0, b_0 = 0.

The triangle of p_m coefficients is W; the triangle of q^r_l with
x^r = sum_l q^r_l p_l(x) is its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BadParam
from .exact_core import TruncSeries, UPoly, l_apply, rat

Coeff = Callable[[int], Fraction]


@dataclass(frozen=True)
class RecurrenceFamily:
    name: str
    a: Coeff
    b_raw: Coeff
    is_three_term: bool = True
    params: tuple = ()
    q: Fraction | None = None
    orthogonal: bool = True

    def b(self, m: int) -> Fraction:
        return Fraction(0) if m <= 0 else Fraction(self.b_raw(m))

    def a_at(self, m: int) -> Fraction:
        return Fraction(self.a(m))

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"


def make_family(kind: str, **params) -> RecurrenceFamily:
    """Build a named family. Parameters are exact rationals (or "p/q" strings)."""
    p = {k: rat(v) for k, v in params.items()}
    if kind == "monomial":
        return RecurrenceFamily("monomial", lambda m: Fraction(0), lambda m: Fraction(0), orthogonal=False)
    if kind == "hermite":
        return RecurrenceFamily("hermite", lambda m: Fraction(0), lambda m: Fraction(m))
    if kind == "dickson":
        alpha = p.get("alpha", Fraction(0))
        beta = p.get("beta", Fraction(1))
        if beta == 0:
            raise BadParam("Dickson family needs beta != 0")
        return RecurrenceFamily("dickson", lambda m: alpha, lambda m: beta,
                                params=(("alpha", alpha), ("beta", beta)))
    if kind == "nonorthogonal":
        a = p.get("a", Fraction(2))
        return RecurrenceFamily("nonorthogonal", lambda m: a if m % 2 == 0 else -a,
                                lambda m: Fraction(0), params=(("a", a),), orthogonal=False)
    if kind == "pochhammer":
        q = p.get("q", Fraction(2))
        if q == 0:
            raise BadParam("q-Pochhammer family needs q != 0")
        return RecurrenceFamily("pochhammer", lambda m: Fraction(0), lambda m: Fraction(0),
                                is_three_term=False, params=(("q", q),), q=q, orthogonal=False)
    raise BadParam(f"unknown family kind {kind!r}")


def shift_family(fam: RecurrenceFamily, m: int) -> RecurrenceFamily:
    """Associated family: a'_k = a_{k+m}, b'_k = b_{k+m}, b'_0 = 0."""
    if m < 0:
        raise BadParam("shift must be non-negative")
    if not fam.is_three_term:
        raise BadParam("only three-term families can be shifted")
    if m == 0:
        return fam
    a, b = fam.a, fam.b_raw
    return RecurrenceFamily(f"{fam.name}>>{m}", lambda k: a(k + m), lambda k: b(k + m),
                            params=fam.params + (("shift", m),), orthogonal=fam.orthogonal)


def pochhammer_poly(q: Fraction, r: int) -> UPoly:
    """(x; q)_r = prod_{k<r} (1 - x q^k)."""
    out = UPoly((1,))
    for k in range(r):
        out = out * UPoly((1, -(Fraction(q) ** k)))
    return out


def family_polys(fam: RecurrenceFamily, M: int) -> list[UPoly]:
    if M < 0:
        raise BadParam("M must be non-negative")
    if not fam.is_three_term:
        return [pochhammer_poly(fam.q, r) for r in range(M + 1)]
    x = UPoly.x()
    out = [UPoly((1,))]
    prev = UPoly()
    for m in range(M):
        nxt = (x - fam.a_at(m)) * out[m] - prev * fam.b(m)
        prev = out[m]
        out.append(nxt)
    return out


@dataclass(frozen=True)
class CoeffTriangle:
    rows: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, m: int) -> tuple[Fraction, ...]:
        return self.rows[m]

    def __len__(self):
        return len(self.rows)

    def poly(self, m: int) -> UPoly:
        return UPoly(self.rows[m])


def poly_triangle(fam: RecurrenceFamily, M: int) -> CoeffTriangle:
    polys = family_polys(fam, M)
    rows = tuple(tuple(p[k] for k in range(m + 1)) for m, p in enumerate(polys))
    if fam.is_three_term:
        _verify_recurrence(fam, rows)
    return CoeffTriangle(rows)


def _verify_recurrence(fam: RecurrenceFamily, rows) -> None:
    x = UPoly.x()
    for m in range(len(rows) - 1):
        prev = UPoly(rows[m - 1]) if m >= 1 else UPoly()
        if UPoly(rows[m + 1]) != (x - fam.a_at(m)) * UPoly(rows[m]) - prev * fam.b(m):
            raise AssertionError(f"row {m + 1} breaks the recurrence")
        if rows[m + 1][-1] != 1 or len(rows[m + 1]) != m + 2:
            raise AssertionError(f"row {m + 1} is not monic of degree {m + 1}")


def inverse_triangle(fam: RecurrenceFamily, M: int) -> CoeffTriangle:
    """Rows q^r with x^r = sum_l q^r_l p_l, built by the q-recurrence and cross-checked."""
    if not fam.is_three_term:
        raise BadParam("inverse triangle needs a three-term family")
    rows: list[list[Fraction]] = [[Fraction(1)]]
    for r in range(M):
        q = rows[r]

        def g(m):
            return q[m] if 0 <= m <= r else Fraction(0)

        rows.append([g(m - 1) + fam.a_at(m) * g(m) + fam.b(m + 1) * g(m + 1) for m in range(r + 2)])
    solved = _solve_inverse(poly_triangle(fam, M))
    out = tuple(tuple(r) for r in rows)
    if out != solved:
        bad = next(r for r in range(M + 1) if out[r] != solved[r])
        raise AssertionError(f"q-recurrence and back-substitution disagree at row {bad}")
    return CoeffTriangle(out)


def _solve_inverse(tri: CoeffTriangle) -> tuple[tuple[Fraction, ...], ...]:
    """Back-substitution for x^r = sum_l q_l p_l, top degree first."""
    out = []
    for r in range(len(tri)):
        rem = [Fraction(0)] * r + [Fraction(1)]
        q = [Fraction(0)] * (r + 1)
        for l in range(r, -1, -1):
            c = rem[l]
            q[l] = c
            if c:
                for k, v in enumerate(tri[l]):
                    rem[k] -= c * v
        out.append(tuple(q))
    return tuple(out)


def _triangle_matrix(tri: CoeffTriangle, M: int) -> list[list[Fraction]]:
    """Upper triangular matrix with W[l][m] = coefficient of x^l in row m."""
    W = [[Fraction(0)] * (M + 1) for _ in range(M + 1)]
    for m in range(M + 1):
        for l, v in enumerate(tri[m]):
            W[l][m] = v
    return W


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def w_pair(fam: RecurrenceFamily, M: int):
    """(W, W^-1) as (M+1)x(M+1) upper unitriangular matrices."""
    return (_triangle_matrix(poly_triangle(fam, M), M),
            _triangle_matrix(inverse_triangle(fam, M), M))


def kernel_series(fam: RecurrenceFamily, z, M: int) -> TruncSeries:
    """K(z, 1/u) = sum_{l<=M} p_l(z) u^-l, known to order M."""
    z = rat(z)
    polys = family_polys(fam, M)
    return TruncSeries({l: p(z) for l, p in enumerate(polys)}, M, lo=0)


def kernel_check(fam: RecurrenceFamily, M: int, z_samples: Sequence) -> list[dict]:
    """(u + L^a + u^-1 L^{s(b)}) K = z K + u at each z, coefficients of u^-k for k < M."""
    if M < 2:
        raise BadParam("kernel check needs M >= 2")
    out = []
    for z in z_samples:
        z = rat(z)
        K = kernel_series(fam, z, M)
        lhs = K.shift(-1) + l_apply(fam.a_at, K) + l_apply(lambda k: fam.b(k + 1), K).shift(1)
        rhs = K * z + TruncSeries.u()
        diff = (lhs - rhs).truncate(M - 1)
        out.append({"z": z, "ok": not diff.coeffs,
                    "residual": {k: v for k, v in diff.coeffs.items()}})
    return out
