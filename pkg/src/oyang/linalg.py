"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = list
Mat = list


def rref(rows: Sequence[Sequence]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def row_basis(rows: Sequence[Sequence]) -> Mat:
    """A basis of the row span, in reduced echelon form."""
    return rref(rows)[0]


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Mat:
    """Basis of {x : A x = 0}."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        out.append(v)
    return out


class Coordinates:
    """Coordinates of vectors with respect to a fixed independent list."""

    def __init__(self, basis: Sequence[Sequence]):
        self.basis = [[Fraction(x) for x in b] for b in basis]
        self.dim = len(self.basis)
        if rank(self.basis) != self.dim:
            raise ValueError("basis vectors are dependent")
        # rref of [B^T | I] style: solve via the echelon form of the basis rows
        n = len(self.basis[0]) if self.basis else 0
        aug = [b + [Fraction(int(i == j)) for j in range(self.dim)] for i, b in enumerate(self.basis)]
        R, piv = rref(aug)
        self._rows = R
        self._piv = piv
        self._n = n

    def coords(self, v: Sequence) -> list[Fraction] | None:
        """c with sum c_i basis_i = v, or None when v is outside the span."""
        v = [Fraction(x) for x in v]
        rem = list(v) + [Fraction(0)] * self.dim
        for row, p in zip(self._rows, self._piv):
            if p >= self._n:
                break
            f = rem[p]
            if f:
                rem = [x - f * y for x, y in zip(rem, row)]
        if any(rem[:self._n]):
            return None
        return [-x for x in rem[self._n:]]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Mat:
    k = len(B)
    m = len(B[0]) if B else 0
    return [[sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)] for i in range(len(A))]


def commutator(A, B) -> Mat:
    AB, BA = matmul(A, B), matmul(B, A)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(AB, BA)]


def flatten(M: Sequence[Sequence]) -> list:
    return [x for row in M for x in row]


def unflatten(v: Sequence, n: int) -> Mat:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def zeros(m: int, n: int | None = None) -> Mat:
    return [[Fraction(0)] * (m if n is None else n) for _ in range(m)]


def transpose(M: Sequence[Sequence]) -> Mat:
    return [list(r) for r in zip(*M)]
