"""Polarized ternary relations, ternary Lie algebras and the ternary Yangian.

Pairing convention: <A e_i, f_k> is the k-th component of A e_i, i.e. A[k][i].
Generators are realized in U(gl_n) through t^(r) = E^r, so

    G^(r)_ij(A) = sum_k A[k][i] t^(r)_jk,    D~_ij(A) = G^(1)_ij(A),
    D(A) = sum_i D~_ii(A) = sum_{i,k} A[k][i] E_ik.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .errors import ClosureViolation, JacobiViolation, RankMismatch
from .exact_core import TruncSeries, rat
from .linalg import Coordinates, commutator, flatten, matmul, nullspace, rank, row_basis, transpose, zeros
from .records import CheckRecord, Timer, record
from .rmatrix import TensorOperator
from .relations import indices
from .ugl import EntryExpr, PBWElement

Matrix = list


def pair(A: Sequence[Sequence], i: int, k: int) -> Fraction:
    """<A e_i, f_k> with 1-based indices."""
    return Fraction(A[k - 1][i - 1])


# ------------------------------------------------------- Lie algebras

@dataclass
class LieAlgebraSC:
    """[e_i, e_j] = sum_k c[(i, j)][k] e_k, 0-based, stored for i < j."""

    name: str
    dim: int
    sc: dict = field(default_factory=dict)
    labels: tuple = ()

    def __post_init__(self):
        full: dict = {}
        for (i, j), row in self.sc.items():
            row = {k: Fraction(v) for k, v in row.items() if v}
            if i == j:
                if row:
                    raise JacobiViolation(f"{self.name}: [e{i + 1}, e{i + 1}] must vanish")
                continue
            for key, sign in (((i, j), 1), ((j, i), -1)):
                tgt = full.setdefault(key, {})
                for k, v in row.items():
                    tgt[k] = tgt.get(k, 0) + sign * v
        self.sc = {key: {k: v for k, v in row.items() if v} for key, row in full.items()}
        self.sc = {k: v for k, v in self.sc.items() if v}
        if not self.labels:
            self.labels = tuple(f"e{i + 1}" for i in range(self.dim))
        self._check_jacobi()

    def bracket_basis(self, i: int, j: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for k, c in self.sc.get((i, j), {}).items():
            v[k] = c
        return v

    def bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j), row in self.sc.items():
            c = x[i] * y[j]
            if c:
                for k, v in row.items():
                    out[k] += c * v
        return out

    def ad(self, i: int) -> Matrix:
        """ad(e_i) as a matrix: column j holds the coordinates of [e_i, e_j]."""
        M = zeros(self.dim)
        for j in range(self.dim):
            for k, v in self.sc.get((i, j), {}).items():
                M[k][j] = v
        return M

    def ad_vec(self, x: Sequence) -> Matrix:
        M = zeros(self.dim)
        for i, c in enumerate(x):
            if c:
                A = self.ad(i)
                M = [[a + c * b for a, b in zip(r, s)] for r, s in zip(M, A)]
        return M

    def _check_jacobi(self):
        e = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        for a, b, c in itertools.combinations(range(self.dim), 3):
            x, y, z = e[a], e[b], e[c]
            s = [p + q + r for p, q, r in zip(self.bracket(x, self.bracket(y, z)),
                                               self.bracket(y, self.bracket(z, x)),
                                               self.bracket(z, self.bracket(x, y)))]
            if any(s):
                raise JacobiViolation(f"{self.name}: Jacobi fails on (e{a + 1}, e{b + 1}, e{c + 1})")

    # ----- invariants
    def span_brackets(self, X: Sequence[Sequence], Y: Sequence[Sequence]) -> list:
        vecs = [self.bracket(x, y) for x in X for y in Y]
        return row_basis(vecs) if vecs else []

    def derived_series(self) -> tuple[int, ...]:
        S = row_basis([[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)])
        dims = [len(S)]
        while True:
            S = self.span_brackets(S, S)
            if len(S) == dims[-1]:
                return tuple(dims)
            dims.append(len(S))

    def lower_central_series(self) -> tuple[int, ...]:
        L = [[Fraction(int(i == j)) for j in range(self.dim)] for i in range(self.dim)]
        S = row_basis(L)
        dims = [len(S)]
        while True:
            S = self.span_brackets(L, S)
            if len(S) == dims[-1]:
                return tuple(dims)
            dims.append(len(S))

    def center_dim(self) -> int:
        # x is central iff sum_i x_i c_{ij}^k = 0 for all j, k
        rows = []
        for j in range(self.dim):
            for k in range(self.dim):
                rows.append([self.sc.get((i, j), {}).get(k, Fraction(0)) for i in range(self.dim)])
        return len(nullspace(rows, self.dim))

    def killing_rank(self) -> int:
        ads = [self.ad(i) for i in range(self.dim)]
        r = range(self.dim)
        K = [[sum(ads[i][p][q] * ads[j][q][p] for p in r for q in r) for j in r] for i in r]
        return rank(K) if self.dim else 0

    def signature(self) -> tuple:
        if self.dim == 0:
            return (0, (0,), (0,), 0, 0)
        return (self.dim, self.derived_series(), self.lower_central_series(), self.center_dim(), self.killing_rank())

    def change_basis(self, P: Sequence[Sequence]) -> "LieAlgebraSC":
        """New basis e'_i = sum_k P[k][i] e_k (P invertible)."""
        cols = transpose([[Fraction(x) for x in r] for r in P])
        C = Coordinates(cols)
        sc = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = C.coords(self.bracket(cols[i], cols[j]))
                sc[(i, j)] = {k: c for k, c in enumerate(v) if c}
        return LieAlgebraSC(self.name + "'", self.dim, sc)


def signature_dict(sig: tuple) -> dict:
    return {"dim": sig[0], "derived": list(sig[1]), "lower_central": list(sig[2]),
            "center": sig[3], "killing_rank": sig[4]}


def from_matrices(name: str, mats: Sequence[Matrix]) -> LieAlgebraSC:
    """Structure constants of the matrix Lie algebra spanned by mats (must be independent and closed)."""
    C = Coordinates([flatten(m) for m in mats])
    sc = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            v = C.coords(flatten(commutator(mats[i], mats[j])))
            if v is None:
                raise ClosureViolation(f"{name}: commutator of basis {i + 1}, {j + 1} leaves the span")
            sc[(i, j)] = {k: c for k, c in enumerate(v) if c}
    return LieAlgebraSC(name, len(mats), sc)


def unit(n: int, i: int, j: int) -> Matrix:
    M = zeros(n)
    M[i][j] = Fraction(1)
    return M


def gl(n: int) -> LieAlgebraSC:
    return from_matrices(f"gl({n})", [unit(n, i, j) for i in range(n) for j in range(n)])


def sl(n: int) -> LieAlgebraSC:
    mats = [unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        M = zeros(n)
        M[i][i], M[i + 1][i + 1] = Fraction(1), Fraction(-1)
        mats.append(M)
    return from_matrices(f"sl({n})", mats)


def direct_sum(*algs: LieAlgebraSC) -> LieAlgebraSC:
    sc, off = {}, 0
    for g in algs:
        for (i, j), row in g.sc.items():
            if i < j:
                sc[(i + off, j + off)] = {k + off: v for k, v in row.items()}
        off += g.dim
    return LieAlgebraSC("+".join(g.name for g in algs), off, sc)


def levi_sum(k: int, radical: LieAlgebraSC, blocks: int) -> LieAlgebraSC:
    """sl(k) acting on the first k*blocks radical basis vectors by copies of the standard representation."""
    s = sl(k)
    smats = _sl_matrices(k)
    d = s.dim + radical.dim
    sc: dict = {}
    for (i, j), row in s.sc.items():
        if i < j:
            sc[(i, j)] = dict(row)
    for (i, j), row in radical.sc.items():
        if i < j:
            sc[(i + s.dim, j + s.dim)] = {t + s.dim: v for t, v in row.items()}
    for a, M in enumerate(smats):
        for blk in range(blocks):
            for col in range(k):
                tgt = {}
                for r in range(k):
                    if M[r][col]:
                        tgt[s.dim + blk * k + r] = M[r][col]
                if tgt:
                    sc[(a, s.dim + blk * k + col)] = tgt
    return LieAlgebraSC(f"sl({k})|x{radical.name}", d, sc)


def _sl_matrices(n: int) -> list[Matrix]:
    mats = [unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        M = zeros(n)
        M[i][i], M[i + 1][i + 1] = Fraction(1), Fraction(-1)
        mats.append(M)
    return mats


# ------------------------------------------------------------ catalog

_COEF = re.compile(r"^(-?)(?:(\d+(?:/\d+)?)\*)?([A-Za-z]\w*|\d+(?:/\d+)?)$")


def _coef(tok: str, params: dict) -> Fraction:
    m = _COEF.match(tok.strip())
    if not m:
        raise ValueError(f"bad coefficient {tok!r}")
    sign, factor, base = m.groups()
    val = params[base] if base in params else Fraction(base)
    if factor:
        val = val * Fraction(factor)
    return -val if sign else val


def load_catalog() -> dict[str, dict]:
    """Parse the bundled catalog into {name: {"dim", "params", "lines"}}."""
    text = resources.files("oyang").joinpath("data/lie_catalog.txt").read_text()
    out: dict = {}
    cur = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("version"):
            continue
        if line.startswith("name "):
            cur = {"dim": 0, "params": {}, "lines": []}
            out[line[5:].strip()] = cur
        elif line.startswith("dim "):
            cur["dim"] = int(line[4:])
        elif line.startswith("params "):
            for kv in line[7:].split():
                k, v = kv.split("=")
                cur["params"][k] = Fraction(v)
        else:
            lhs, rhs = line.split(":")
            i, j = (int(x) - 1 for x in lhs.split())
            terms = []
            for part in rhs.split(","):
                c, k = part.split()
                terms.append((c, int(k) - 1))
            cur["lines"].append((i, j, terms))
    return out


_CATALOG: dict | None = None


def catalog_algebra(name: str, **params) -> LieAlgebraSC:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = load_catalog()
    if name not in _CATALOG:
        raise KeyError(f"{name!r} is not in the catalog")
    entry = _CATALOG[name]
    p = dict(entry["params"])
    p.update({k: rat(v) for k, v in params.items()})
    sc: dict = {}
    for i, j, terms in entry["lines"]:
        row = sc.setdefault((i, j), {})
        for c, k in terms:
            row[k] = row.get(k, 0) + _coef(c, p)
    label = name + ("" if not entry["params"] else "(" + ",".join(f"{k}={v}" for k, v in p.items()) + ")")
    return LieAlgebraSC(label, entry["dim"], sc)


def abelian(d: int) -> LieAlgebraSC:
    return LieAlgebraSC(f"ab{d}", d, {})


# ----------------------------------------------------- ternary algebra

@dataclass
class TernaryAlgebra:
    source: str
    N: int
    basis: list            # N x N matrices spanning the algebra
    algebra: LieAlgebraSC  # structure constants in that basis
    formula_mismatches: int
    signature: tuple


def ternary_generator(g: LieAlgebraSC, i: int, j: int, a: Sequence) -> Matrix:
    """x_ij(a) = sum_k <[a, e_i], e_k> x_j d_k, a matrix unit with 1 in row j, column k (0-based i, j)."""
    adA = g.ad_vec(a)
    M = zeros(g.dim)
    for k in range(g.dim):
        M[j][k] = adA[k][i]
    return M


def build_ternary(g: LieAlgebraSC, perturb=0) -> TernaryAlgebra:
    """Span of all x_ij(e_a), its structure constants, and a count of generator
    pairs violating the bracket formula (with its right side scaled by 1 + perturb)."""
    d = g.dim
    e = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    gens = {(i, j, a): ternary_generator(g, i, j, e[a]) for i in range(d) for j in range(d) for a in range(d)}
    basis_vecs = row_basis([flatten(m) for m in gens.values()])
    basis = [[list(v[r * d:(r + 1) * d]) for r in range(d)] for v in basis_vecs]
    if basis:
        alg = from_matrices(f"{g.name}^tern", basis)
    else:
        alg = LieAlgebraSC(f"{g.name}^tern", 0, {})
    # the bracket formula on generator pairs, checked against the matrix commutator
    ads = [g.ad(a) for a in range(d)]
    scale = 1 + rat(perturb)
    bad = 0
    for (i, j, a), X in gens.items():
        for (k, l, b), Y in gens.items():
            # X and Y are supported on rows j and l, so the commutator is cheap
            lhs = zeros(d)
            for c in range(d):
                lhs[j][c] += X[j][l] * Y[l][c]
                lhs[l][c] -= Y[l][j] * X[j][c]
            p, q = pair(ads[a], i + 1, l + 1) * scale, pair(ads[b], k + 1, j + 1) * scale
            rhs = [[p * y - q * x for x, y in zip(rx, ry)]
                   for rx, ry in zip(gens[(i, l, a)], gens[(k, j, b)])]
            if lhs != rhs:
                bad += 1
    return TernaryAlgebra(g.name, d, basis, alg, bad, alg.signature())


# Table lines: sources and the stated target; "levi" is the semidirect reading
# where the simple part acts on the abelian ideal by copies of the standard representation.
def ternary_table_lines(a=-1, b=1, b4=1) -> list[dict]:
    A = catalog_algebra
    return [
        {"line": 1, "sources": [A("A2.1")], "direct": A("A2.1"), "levi": A("A2.1")},
        {"line": 2, "sources": [direct_sum(A("A2.1"), A("A1")), A("A3.1")], "direct": A("A3.3"),
         "levi": A("A3.3")},
        {"line": 3, "sources": [A("A3.2"), A("A3.3"), A("A3.4", a=a), A("A3.5", b=b)],
         "direct": direct_sum(A("sl2"), A("A3.3")), "levi": levi_sum(2, A("A3.3"), 1)},
        {"line": 4, "sources": [A("sl2"), A("so3")], "direct": gl(3), "levi": gl(3)},
        {"line": 5, "sources": [direct_sum(A("sl2"), A("A1")), direct_sum(A("so3"), A("A1")), A("A4.2", b=b4)],
         "direct": direct_sum(sl(3), A("A4.5", a=1, b=1, c=1)), "levi": levi_sum(3, A("A4.5", a=1, b=1, c=1), 1)},
        {"line": 6, "sources": [A("A4.1")],
         "direct": direct_sum(A("sl2"), A("A5.7", a=1, b=1, c=1)),
         "levi": levi_sum(2, A("A5.7", a=1, b=1, c=1), 2),
         "alt_direct": direct_sum(A("sl2"), A("A5.13", a=1, b=1, c=0)),
         "alt_levi": levi_sum(2, A("A5.13", a=1, b=1, c=0), 2)},
    ]


def check_ternary_table(a=-1, b=1, b4=1, perturb=0, suite: str = "ternary-table") -> list[CheckRecord]:
    """Each source's ternary algebra against the stated target, by invariant signature.

    The stated target is read two ways: as a direct sum, and as a Levi
    decomposition (simple part acting on the radical). A line passes when
    every source matches the target under one reading; the note says which.
    A nonzero perturb pairs every line with the next line's targets.
    """
    out = []
    lines = ternary_table_lines(a, b, b4)
    targets = lines[1:] + lines[:1] if perturb else lines
    for line, tline in zip(lines, targets):
        tm = Timer()
        sigs = {}
        for g in line["sources"]:
            sigs[g.name] = build_ternary(g).signature
        readings = {}
        for key in ("direct", "levi", "alt_direct", "alt_levi"):
            if key in tline:
                tgt = tline[key].signature()
                readings[key] = (tgt, all(s == tgt for s in sigs.values()))
        ok = [k for k, (_, good) in readings.items() if good]
        distinct = set(sigs.values())
        note = "; ".join(f"{k}: {'match' if good else 'mismatch'} {signature_dict(t)}"
                         for k, (t, good) in readings.items())
        wit = None
        if len(distinct) != 1:
            wit = "sources have different ternary signatures: " + ", ".join(
                f"{k} {signature_dict(v)}" for k, v in sigs.items())
        elif not ok:
            wit = f"no reading matches; computed {signature_dict(next(iter(distinct)))}"
        params = {"line": line["line"], "sources": list(sigs), "target": line["direct"].name,
                  "computed": signature_dict(next(iter(distinct)))}
        out.append(record(suite, f"line{line['line']}", params, wit, tm,
                          note=f"validating reading: {', '.join(ok) or 'none'}; {note}"))
    return out


def check_ternary_builds(algs: Iterable[LieAlgebraSC], perturb=0, suite: str = "ternary") -> list[CheckRecord]:
    """Closure, the bracket formula on all generator pairs, and basis-change invariance."""
    out = []
    rng = random.Random(7)
    for g in algs:
        tm = Timer()
        T = build_ternary(g, perturb)
        out.append(record(suite, f"bracket-formula:{g.name}", {"algebra": g.name, "dim": T.algebra.dim},
                          f"{T.formula_mismatches} generator pairs disagree" if T.formula_mismatches else None, tm,
                          note=f"signature {signature_dict(T.signature)}"))
        tm = Timer()
        P = _random_invertible(g.dim, rng)
        g2 = g.change_basis(P)
        same = build_ternary(g2).signature == T.signature and g2.signature() == g.signature()
        out.append(record(suite, f"basis-change:{g.name}", {"algebra": g.name},
                          None if same else "signature changed under a change of basis", tm))
    return out


def _random_invertible(d: int, rng: random.Random) -> Matrix:
    while True:
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        if rank(P) == d:
            return P


# ------------------------------------------------------ polarized relations

def G(n: int, r: int, i: int, j: int, A: Sequence[Sequence], leg: int = 0, legs: int = 1) -> EntryExpr:
    """G^(r)_ij(A) = sum_k <A e_i, f_k> t^(r)_jk (1-based indices)."""
    acc = EntryExpr(n, legs)
    for k in range(1, n + 1):
        c = pair(A, i, k)
        if c:
            acc = acc + EntryExpr.gen(n, r, j, k, legs, leg) * c
    return acc


def D_tilde(n: int, i: int, j: int, A) -> PBWElement:
    acc = PBWElement.zero(n)
    for k in range(1, n + 1):
        c = pair(A, i, k)
        if c:
            acc = acc + PBWElement.gen(n, j, k) * c
    return acc


def D(n: int, A) -> PBWElement:
    return sum((D_tilde(n, i, i, A) for i in range(1, n + 1)), PBWElement.zero(n))


def epsilon(n: int, A, B) -> PBWElement:
    """sum_{k,l} <A e_k, f_l> D~_lk(B) - sum_m D~_mm(AB)."""
    acc = PBWElement.zero(n)
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            c = pair(A, k, l)
            if c:
                acc = acc + D_tilde(n, l, k, B) * c
    AB = matmul(A, B)
    return acc - sum((D_tilde(n, m, m, AB) for m in range(1, n + 1)), PBWElement.zero(n))


def _check_square(n: int, *mats):
    for M in mats:
        if len(M) != n or any(len(r) != n for r in M):
            raise RankMismatch(f"expected {n}x{n} matrices")


def x_eval(n: int, i: int, j: int, A, u) -> PBWElement:
    """Evaluation image of G_ij(A, u): <A e_i, f_j> + D~_ij(A)/u."""
    return D_tilde(n, i, j, A) * (1 / Fraction(u)) + pair(A, i, j)


def _X_leg(n: int, leg: int, A, u, transposed: bool) -> TensorOperator:
    mat = [[x_eval(n, (b if transposed else a) + 1, (a if transposed else b) + 1, A, u) for b in range(n)]
           for a in range(n)]
    return TensorOperator.leg(n, 2, leg, mat)


def rtt_polar_residuals(n: int, A, B, u, v, transposed: bool) -> tuple[TensorOperator, TensorOperator]:
    """The two displayed matrix equalities, LHS - RHS each."""
    u, v = Fraction(u), Fraction(v)
    I = TensorOperator.identity(n, 2)
    P = TensorOperator.perm(n, 2, 1, 2)
    R = I - P * (1 / (u - v))
    X1Au, X2Bv = _X_leg(n, 1, A, u, transposed), _X_leg(n, 2, B, v, transposed)
    X1Bu, X2Av = _X_leg(n, 1, B, u, transposed), _X_leg(n, 2, A, v, transposed)
    left = R * X1Au * X2Bv
    mid = X2Bv * X1Au * R + (X2Bv * X1Au - X2Av * X1Bu) * P * (1 / (u - v))
    right = X2Av * X1Bu * R + X2Bv * X1Au - X2Av * X1Bu
    return left - mid, mid - right


def check_polarized_suite(n_gl: int, A, B, rmax: int, N: int, uv_samples: Sequence = ((5, 3), (7, -2)),
                          perturb=0, suite: str = "polarized") -> list[CheckRecord]:
    n = n_gl
    A = [[rat(x) for x in r] for r in A]
    B = [[rat(x) for x in r] for r in B]
    _check_square(n, A, B)
    P = 1 + rat(perturb)
    base = {"n": n, "A": A, "B": B}
    out: list[CheckRecord] = []

    # (a) coefficient form of the polarized ternary relation
    for r in range(rmax + 1):
        for s in range(rmax + 1):
            tm = Timer()
            bad = None
            for i, j, k, l in indices(n, 4):
                lhs = (G(n, r + 1, i, j, A) * G(n, s, k, l, B) - G(n, s, k, l, B) * G(n, r + 1, i, j, A)
                       - G(n, r, i, j, A) * G(n, s + 1, k, l, B) + G(n, s + 1, k, l, B) * G(n, r, i, j, A))
                rhs = G(n, r, i, l, A) * G(n, s, k, j, B) - G(n, s, i, l, A) * G(n, r, k, j, B)
                val = (lhs - rhs * P).evaluate()
                if val:
                    bad = f"ijkl={i}{j}{k}{l}: {val}"
                    break
            out.append(record(suite, f"polarized:r={r},s={s}", dict(base, r=r, s=s), bad, tm))

    # (b) first-order form
    tm = Timer()
    bad = None
    for i, j, k, l in indices(n, 4):
        x, y = D_tilde(n, i, j, A), D_tilde(n, k, l, B)
        val = x * y - y * x - (D_tilde(n, k, j, B) * pair(A, i, l) - D_tilde(n, i, l, A) * pair(B, k, j)) * P
        if val:
            bad = f"ijkl={i}{j}{k}{l}: {val}"
            break
    out.append(record(suite, "first-order", base, bad, tm))

    # (c) trace identity with the orientation D([B,A])
    tm = Timer()
    dA, dB = D(n, A), D(n, B)
    BA = commutator(B, A)
    val = dA * dB - dB * dA - D(n, BA) * P
    other = dA * dB - dB * dA - D(n, commutator(A, B))
    out.append(record(suite, "trace:[D(A),D(B)]=D([B,A])", base, val, tm,
                      note="the opposite orientation D([A,B]) " + ("also holds" if not other else "fails")))

    # (d) equal-argument form with formal d/du
    tm = Timer()
    bad = None

    def Gs(i, j, M):
        return TruncSeries({r: G(n, r, i, j, M) for r in range(N + 1)}, N, lo=0)

    for i, j, k, l in indices(n, 4):
        x, y = Gs(i, j, A), Gs(k, l, B)
        lhs = (x * y - y * x).truncate(N)
        rhs = (Gs(i, l, A).derivative_u() * Gs(k, j, B) - Gs(i, l, A) * Gs(k, j, B).derivative_u()).truncate(N)
        diff = lhs - rhs.map(lambda c: c * P)
        for kk, c in sorted(diff.coeffs.items()):
            val = c.evaluate()
            if val:
                bad = f"ijkl={i}{j}{k}{l}, u^-{kk}: {val}"
                break
        if bad:
            break
    out.append(record(suite, f"derivative-form:N={N}", dict(base, N=N), bad, tm))

    # (e) symmetry of epsilon, and what it actually equals
    tm = Timer()
    eAB, eBA = epsilon(n, A, B), epsilon(n, B, A)
    out.append(record(suite, "epsilon-symmetry", base, eAB - eBA * P, tm,
                      note="claimed symmetric; see epsilon-closed-form"))
    tm = Timer()
    out.append(record(suite, "epsilon-closed-form", base, eAB - D(n, BA) * P, tm,
                      note="epsilon(A,B) = D([B,A]), antisymmetric"))

    # (f) matrix form at sample points, under both index placements
    for u, v in uv_samples:
        tm = Timer()
        outcome = {}
        for transposed in (False, True):
            r1, r2 = rtt_polar_residuals(n, A, B, u, v, transposed)
            if perturb:
                r1 = r1 + TensorOperator.identity(n, 2) * rat(perturb)
                r2 = r2 + TensorOperator.identity(n, 2) * rat(perturb)
            outcome[transposed] = (r1.is_zero(), r2.is_zero())
        ok = [("X[i][j] = x_ji" if t else "X[i][j] = x_ij") for t, (a, b) in outcome.items() if a and b]
        out.append(record(suite, f"matrix-form:(u,v)=({u},{v})", dict(base, u=rat(u), v=rat(v)),
                          None if ok else f"neither index placement validates: {outcome}", tm,
                          note="first equality: " + ", ".join(
                              f"{'x_ji' if t else 'x_ij'} {'holds' if a else 'fails'}" for t, (a, _) in outcome.items())
                               + "; second equality holds: " + str(all(b for _, b in outcome.values()))
                               + f"; validating placement: {', '.join(ok) or 'none'}"))
    return out


def check_trace_and_epsilon(g: LieAlgebraSC, perturb=0, suite: str = "trace-epsilon") -> list[CheckRecord]:
    """epsilon on a basis grid, then -tr(x) as a Lie homomorphism into the ternary algebra."""
    d = g.dim
    ads = [g.ad(a) for a in range(d)]
    P = 1 + rat(perturb)
    out = []
    tm = Timer()
    bad = []
    closed = None
    for a in range(d):
        for b in range(d):
            eab, eba = epsilon(d, ads[a], ads[b]), epsilon(d, ads[b], ads[a])
            if eab != eba * P:
                bad.append((a + 1, b + 1))
            if eab != D(d, commutator(ads[b], ads[a])) * P:
                closed = closed or f"(e{a + 1}, e{b + 1})"
    out.append(record(suite, f"epsilon-symmetry:{g.name}", {"algebra": g.name},
                      f"asymmetric on {len(bad)} basis pairs, first {bad[0]}" if bad else None, tm,
                      note="claimed symmetric; see epsilon-closed-form"))
    out.append(record(suite, f"epsilon-closed-form:{g.name}", {"algebra": g.name}, closed, tm,
                      note="epsilon(a,b) = D([ad b, ad a])"))

    def tr_x(x: Sequence) -> Matrix:
        A = g.ad_vec(x)
        return [[-v for v in r] for r in _tr_matrix(g, A)]

    e = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    tm = Timer()
    wit = None
    for a in range(d):
        for b in range(d):
            lhs = tr_x(g.bracket(e[a], e[b]))
            rhs = commutator(tr_x(e[a]), tr_x(e[b]))
            if lhs != [[x * P for x in r] for r in rhs]:
                wit = wit or f"(e{a + 1}, e{b + 1})"
    images = [flatten(tr_x(e[a])) for a in range(d)]
    ker = d - rank(images) if d else 0
    out.append(record(suite, f"trace-homomorphism:{g.name}", {"algebra": g.name}, wit, tm,
                      note=f"kernel dimension of tr(x): {ker}"))
    # images lie in the ternary algebra
    tm = Timer()
    T = build_ternary(g)
    if T.basis:
        C = Coordinates([flatten(m) for m in T.basis])
        inside = all(C.coords(v) is not None for v in images)
    else:
        inside = not any(any(v) for v in images)
    out.append(record(suite, f"trace-in-ternary:{g.name}", {"algebra": g.name},
                      None if inside else "tr(x)(a) outside the ternary algebra", tm))
    return out


def _tr_matrix(g: LieAlgebraSC, adA: Matrix) -> Matrix:
    """sum_l x_ll(a) for a with ad matrix adA."""
    d = g.dim
    M = zeros(d)
    for l in range(d):
        for k in range(d):
            M[l][k] += adA[k][l]
    return M


# -------------------------------------------------------- ternary Yangian

def check_yt_suite(g: LieAlgebraSC, rmax: int, h_values: Sequence, uv_samples: Sequence = ((5, 3),),
                   perturb=0, suite: str = "yt", full_grid: bool = True) -> list[CheckRecord]:
    d = g.dim
    ads = [g.ad(a) for a in range(d)]
    Pp = 1 + rat(perturb)
    out: list[CheckRecord] = []
    base = {"algebra": g.name, "rmax": rmax}

    def X(r, i, j, a):
        return G(d, r, i, j, ads[a])

    def psi(a, i, j):
        return pair(ads[a], i, j)

    quads = list(indices(d, 4))
    ab = [(a, b) for a in range(d) for b in range(d)]

    # (a) the coefficient form of the relation, r, s from 0
    for r in range(rmax + 1):
        for s in range(rmax + 1):
            tm = Timer()
            bad = None
            for a, b in ab:
                for i, j, k, l in quads:
                    rhs = EntryExpr(d)
                    for m in range(1, min(r, s) + 1):
                        rhs = rhs + (X(m - 1, i, l, a) * X(r + s - m, k, j, b)
                                     - X(r + s - m, i, l, a) * X(m - 1, k, j, b))
                    x, y = X(r, i, j, a), X(s, k, l, b)
                    val = (x * y - y * x - rhs * Pp).evaluate()
                    if val:
                        bad = f"a=e{a + 1}, b=e{b + 1}, ijkl={i}{j}{k}{l}: {val}"
                        break
                if bad:
                    break
            out.append(record(suite, f"pt:{g.name}:r={r},s={s}", dict(base, r=r, s=s), bad, tm))

    # (b) the h-rescaled relation at each h, and its h^0 part against the ternary bracket
    for h in h_values:
        h = rat(h)
        tm = Timer()
        bad = None
        for r in range(1, rmax + 1):
            for s in range(1, rmax + 1):
                def Xt(p, i, j, a):
                    return X(p, i, j, a) * (h ** (p - 1))
                for a, b in ab:
                    for i, j, k, l in quads:
                        x, y = Xt(r, i, j, a), Xt(s, k, l, b)
                        rhs = (Xt(r + s - 1, k, j, b) * psi(a, i, l) - Xt(r + s - 1, i, l, a) * psi(b, k, j))
                        for m in range(1, min(r, s)):
                            rhs = rhs + (Xt(m, i, l, a) * Xt(r + s - 1 - m, k, j, b)
                                         - Xt(r + s - 1 - m, i, l, a) * Xt(m, k, j, b)) * h
                        val = (x * y - y * x - rhs * Pp).evaluate()
                        if val:
                            bad = f"r={r}, s={s}, a=e{a + 1}, b=e{b + 1}, ijkl={i}{j}{k}{l}"
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        out.append(record(suite, f"rescaled:{g.name}:h={h}", dict(base, h=h), bad, tm))
    tm = Timer()
    T = build_ternary(g)
    e = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    gens = {(i, j, a): ternary_generator(g, i, j, e[a]) for i in range(d) for j in range(d) for a in range(d)}
    bad = None
    if T.basis:
        C = Coordinates([flatten(m) for m in T.basis])
        for (i, j, a), Xm in gens.items():
            for (k, l, b), Ym in gens.items():
                lhs = C.coords(flatten(commutator(Xm, Ym)))
                cx, cy = C.coords(flatten(Xm)), C.coords(flatten(Ym))
                # bracket of the coordinate vectors through the ternary structure constants
                sc = T.algebra.bracket(cx, cy)
                h0 = [psi(a, i + 1, l + 1) * p - psi(b, k + 1, j + 1) * q
                      for p, q in zip(C.coords(flatten(gens[(k, j, b)])), C.coords(flatten(gens[(i, l, a)])))]
                if not (lhs == sc == [x * Pp for x in h0]):
                    bad = f"x_{i + 1}{j + 1}(e{a + 1}), x_{k + 1}{l + 1}(e{b + 1})"
                    break
            if bad:
                break
    out.append(record(suite, f"h0-current-algebra:{g.name}", base, bad, tm,
                      note=f"ternary algebra dimension {T.algebra.dim}; degrees add as (r-1)+(s-1)"))

    # (c) module action, r = 1
    tm = Timer()
    bad = None
    for s in range(rmax + 1):
        for a, b in ab:
            for i, j, k, l in quads:
                x, y = X(1, i, j, a), X(s, k, l, b)
                rhs = X(s, k, j, b) * psi(a, i, l) - X(s, i, l, a) * psi(b, k, j)
                val = (x * y - y * x - rhs * Pp).evaluate()
                if val:
                    bad = bad or f"s={s}, a=e{a + 1}, b=e{b + 1}, ijkl={i}{j}{k}{l}"
    out.append(record(suite, f"module-action:{g.name}", base, bad, tm))

    # (d) evaluation map at sample points
    for u, v in uv_samples:
        u, v = rat(u), rat(v)
        tm = Timer()
        bad = None
        xs = {}

        def xe(i, j, a, w):
            key = (i, j, a, w)
            if key not in xs:
                xs[key] = x_eval(d, i, j, ads[a], w)
            return xs[key]

        for a, b in ab:
            for i, j, k, l in quads:
                x, y = xe(i, j, a, u), xe(k, l, b, v)
                lhs = (x * y - y * x) * (u - v)
                rhs = xe(i, l, a, u) * xe(k, j, b, v) - xe(i, l, a, v) * xe(k, j, b, u)
                if lhs != rhs * Pp:
                    bad = f"a=e{a + 1}, b=e{b + 1}, ijkl={i}{j}{k}{l}"
                    break
            if bad:
                break
        out.append(record(suite, f"evaluation:{g.name}:(u,v)=({u},{v})", dict(base, u=u, v=v), bad, tm))

    # rank of the rescaled generators for each h
    tm = Timer()
    ranks = {str(rat(h)): yt_rank(g, rmax, rat(h)) for h in h_values}
    stable = len(set(ranks.values())) == 1
    out.append(record(suite, f"rank-stability:{g.name}", dict(base, ranks=ranks),
                      None if stable and not perturb else f"ranks {ranks}" if not stable else "perturbed", tm))
    return out


def yt_rank(g: LieAlgebraSC, rmax: int, h: Fraction) -> int:
    """Rank of {h^(r-1) G^(r)_ij(ad e_k)} inside span{t^(r)_ab}, r = 1..rmax."""
    d = g.dim
    ads = [g.ad(a) for a in range(d)]
    vecs = []
    for r in range(1, rmax + 1):
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for a in range(d):
                    v = [Fraction(0)] * (rmax * d * d)
                    for m in range(1, d + 1):
                        c = pair(ads[a], i, m)
                        if c:
                            v[(r - 1) * d * d + (j - 1) * d + (m - 1)] = c * h ** (r - 1)
                    vecs.append(v)
    return rank(vecs)


# ----------------------------------------------------------- sl(2) example

# displayed matrix for g^(r)_{.j}(e_.): entry (row, col) -> [(coef, m)] meaning coef * t^(r)_{jm}
SL2_DISPLAY = {
    (1, 1): [], (1, 2): [(1, 3)], (1, 3): [(-2, 1)],
    (2, 1): [(-1, 3)], (2, 2): [], (2, 3): [(2, 2)],
    (3, 1): [(2, 1)], (3, 2): [(-2, 2)], (3, 3): [],
}


def sl2_coefficient_matrix() -> dict:
    """Computed g_ij(e_k) as {(k, i): [(coef, m)]}, the row being the algebra element."""
    g = catalog_algebra("sl2std")
    out = {}
    for k in range(1, 4):
        A = g.ad(k - 1)
        for i in range(1, 4):
            out[(k, i)] = [(pair(A, i, m), m) for m in range(1, 4) if pair(A, i, m)]
    return out


def check_sl2_span(rmax: int = 3, perturb=0, suite: str = "sl2-span") -> list[CheckRecord]:
    tm = Timer()
    comp = sl2_coefficient_matrix()
    P = 1 + rat(perturb)

    def norm(L, f=1):
        return sorted((Fraction(c) * f, m) for c, m in L)

    diff = [key for key in SL2_DISPLAY if norm(SL2_DISPLAY[key], P) != norm(comp[key])]
    out = [record(suite, "displayed-matrix", {"convention": "row = algebra element e_k, column = index i"},
                  f"entries differ at {diff}" if diff else None, tm)]
    g = catalog_algebra("sl2std")
    for r in range(1, rmax + 1):
        tm = Timer()
        rk = yt_rank(g, r, Fraction(1)) - yt_rank(g, r - 1, Fraction(1))
        out.append(record(suite, f"span-rank:r={r}", {"r": r, "rank": rk},
                          None if rk == 9 else f"rank {rk}, expected 9", tm))
    return out
