"""Normal ordering in U(gl_n) and the tensor square U(gl_n) x U(gl_n).

Matrix units are stored as integer letters. Letter ids run opposite to the
lexicographic order of (i, j), so a sorted letter tuple lists its factors
with the larger index pair first: E21E12 rather than E12E21. Any fixed
order gives a PBW basis; this one makes printed normal forms read the
usual way.

Coefficients are plain Python numbers (int or Fraction) in all hot paths.
Elements accept any coefficient ring that supports +, * and a zero test,
which is how rational functions of s ride along in the Dickson module.
"""
from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Mapping

from .errors import PoleCollision, RankMismatch

# (E^{r+1})_ij = sum_k (E^r)_ik E_kj; fixed by the base identity test.
POWER_CONVENTION = "left-to-right"

Mono = tuple  # sorted tuple of letter ids


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


def _small(c):
    """Integral Fractions become ints, which keeps hot loops on machine arithmetic."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Engine:
    """Straightening engine for one rank n, with memoized products."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n
        N = n * n
        self.size = N
        self._gen_cache: dict[tuple[Mono, int], dict] = {}
        self._power: dict[tuple[int, int, int], dict] = {}
        self._words: dict[tuple, dict] = {}
        self.br: dict[tuple[int, int], dict] = {}
        for a in range(N):
            i, j = self.pair(a)
            for b in range(N):
                k, l = self.pair(b)
                d: dict[int, int] = {}
                if j == k:
                    d[self.letter(i, l)] = d.get(self.letter(i, l), 0) + 1
                if l == i:
                    d[self.letter(k, j)] = d.get(self.letter(k, j), 0) - 1
                self.br[a, b] = _clean(d)

    # letters use 0-based (i, j) internally
    def letter(self, i: int, j: int) -> int:
        return self.size - 1 - (i * self.n + j)

    def pair(self, a: int) -> tuple[int, int]:
        return divmod(self.size - 1 - a, self.n)

    def mul_gen(self, m: Mono, g: int) -> dict:
        key = (m, g)
        r = self._gen_cache.get(key)
        if r is not None:
            return r
        k = bisect_right(m, g)
        if k == len(m):
            r = {m + (g,): 1}
        else:
            A, B = m[:k], m[k:]
            acc: dict = {A + (g,) + B: 1}
            for t, b in enumerate(B):
                br = self.br[b, g]
                if not br:
                    continue
                prefix, suffix = A + B[:t], B[t + 1:]
                for h, c in br.items():
                    el = self.mul_gen(prefix, h)
                    for letter in suffix:
                        el = self.times_gen(el, letter)
                    for mm, cc in el.items():
                        acc[mm] = acc.get(mm, 0) + c * cc
            r = _clean(acc)
        self._gen_cache[key] = r
        return r

    def times_gen(self, el: Mapping, g: int) -> dict:
        out: dict = {}
        for m, c in el.items():
            for mm, cc in self.mul_gen(m, g).items():
                out[mm] = out.get(mm, 0) + c * cc
        return _clean(out)

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for m, c in y.items():
            el = x
            for g in m:
                el = self.times_gen(el, g)
            for mm, cc in el.items():
                out[mm] = out.get(mm, 0) + cc * c
        return _clean(out)

    def power(self, r: int, i: int, j: int, kind: int = 0) -> dict:
        """(E^r)_ij as a raw term dict, 0-based indices.

        kind=1 gives (X^r)_ij for the twisted generators X_ij = -E_ji, another
        realization of gl_n inside the same algebra.
        """
        key = (r, i, j, kind)
        hit = self._power.get(key)
        if hit is not None:
            return hit
        if r == 0:
            val = {(): 1} if i == j else {}
        else:
            acc: dict = {}
            sign = -1 if kind else 1
            for k in range(self.n):
                g = self.letter(j, k) if kind else self.letter(k, j)
                for m, c in self.times_gen(self.power(r - 1, i, k, kind), g).items():
                    acc[m] = acc.get(m, 0) + sign * c
            val = _clean(acc)
        self._power[key] = val
        return val

    def word(self, w: tuple) -> dict:
        """Product of power entries (a, i, j, kind) listed in w, memoized by prefix."""
        if not w:
            return {(): 1}
        hit = self._words.get(w)
        if hit is not None:
            return hit
        if len(w) == 1:
            val = self.power(*w[0])
        else:
            val = self.mul(self.word(w[:-1]), self.power(*w[-1]))
        self._words[w] = val
        return val


@lru_cache(maxsize=None)
def engine(n: int) -> Engine:
    return Engine(n)


def _fmt_coef(c) -> str:
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"({c!r})"


def _is_negative(c) -> bool:
    return isinstance(c, (int, Fraction)) and c < 0


def format_terms(items: Iterable[tuple[str, Any]]) -> str:
    parts = []
    for mono, c in items:
        neg = _is_negative(c)
        a = -c if neg else c
        if mono == "1":
            body = _fmt_coef(a)
        elif a == 1 and isinstance(a, (int, Fraction)):
            body = mono
        else:
            body = f"{_fmt_coef(a)}*{mono}"
        parts.append(("- " if neg else "+ ") + body)
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class PBWElement:
    """An element of U(gl_n): normal-ordered monomial -> coefficient."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Mono, Any] | None = None):
        self.n = n
        self.terms = _clean(terms or {})
        self._hash = None

    @classmethod
    def one(cls, n: int) -> "PBWElement":
        return cls(n, {(): 1})

    @classmethod
    def zero(cls, n: int) -> "PBWElement":
        return cls(n, {})

    @classmethod
    def scalar(cls, n: int, c) -> "PBWElement":
        return cls(n, {(): c})

    @classmethod
    def gen(cls, n: int, i: int, j: int) -> "PBWElement":
        """The matrix unit E_ij, indices from 1."""
        return cls(n, {(engine(n).letter(i - 1, j - 1),): 1})

    @property
    def engine(self) -> Engine:
        return engine(self.n)

    def _check(self, other: "PBWElement"):
        if other.n != self.n:
            raise RankMismatch(f"gl_{self.n} element combined with gl_{other.n} element")

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            other = PBWElement.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return PBWElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PBWElement):
            other = PBWElement.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            self._check(other)
            return PBWElement(self.n, self.engine.mul(self.terms, other.terms))
        if isinstance(other, TensorPBW):
            return NotImplemented
        return PBWElement(self.n, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return PBWElement(self.n, {m: other * c for m, c in self.terms.items()})

    def __pow__(self, k: int):
        out = PBWElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == _clean({(): other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Mono):
        return self.terms.get(tuple(mono), 0)

    def map_coeffs(self, fn) -> "PBWElement":
        return PBWElement(self.n, {m: fn(c) for m, c in self.terms.items()})

    def at(self, s0) -> "PBWElement":
        """Evaluate coefficients that are rational functions of one variable."""
        return self.map_coeffs(lambda c: c.at(s0) if hasattr(c, "at") else c)

    def mono_str(self, m: Mono) -> str:
        return mono_str(self.n, m)

    def sorted_terms(self) -> list[tuple[Mono, Any]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]), reverse=True)

    def __str__(self):
        return format_terms((self.mono_str(m), c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"PBWElement(gl{self.n}: {self})"


def mono_str(n: int, m: Mono) -> str:
    if not m:
        return "1"
    e = engine(n)
    out = []
    k = 0
    while k < len(m):
        g = m[k]
        p = k
        while p < len(m) and m[p] == g:
            p += 1
        i, j = e.pair(g)
        name = f"E{i + 1}{j + 1}" if n < 10 else f"E({i + 1},{j + 1})"
        out.append(name if p - k == 1 else f"{name}^{p - k}")
        k = p
    return "".join(out)


def monomial_factors(n: int, m: Mono) -> tuple[tuple[int, int, int], ...]:
    """Monomial as ((i, j, exponent), ...) with 1-based indices, in stored order."""
    e = engine(n)
    out: list[list[int]] = []
    for g in m:
        i, j = e.pair(g)
        if out and out[-1][0] == i + 1 and out[-1][1] == j + 1:
            out[-1][2] += 1
        else:
            out.append([i + 1, j + 1, 1])
    return tuple(tuple(x) for x in out)


class TensorPBW:
    """An element of U(gl_n) x U(gl_n) as (mono, mono) -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[Mono, Mono], Any] | None = None):
        self.n = n
        self.terms = _clean(terms or {})

    @classmethod
    def one(cls, n: int) -> "TensorPBW":
        return cls(n, {((), ()): 1})

    @classmethod
    def scalar(cls, n: int, c) -> "TensorPBW":
        return cls(n, {((), ()): c})

    @classmethod
    def pure(cls, x: PBWElement, y: PBWElement) -> "TensorPBW":
        if x.n != y.n:
            raise RankMismatch("tensor legs of different rank")
        return cls(x.n, {(a, b): ca * cb for a, ca in x.terms.items() for b, cb in y.terms.items()})

    def _coerce(self, other):
        if isinstance(other, TensorPBW):
            if other.n != self.n:
                raise RankMismatch("rank mismatch in tensor square")
            return other
        return TensorPBW.scalar(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return TensorPBW(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorPBW(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TensorPBW):
            return TensorPBW(self.n, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        e = engine(self.n)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = e.mul({a1: 1}, {a2: 1})
                right = e.mul({b1: 1}, {b2: 1})
                c = c1 * c2
                for x, cx in left.items():
                    for y, cy in right.items():
                        out[x, y] = out.get((x, y), 0) + c * cx * cy
        return TensorPBW(self.n, out)

    def __rmul__(self, other):
        return TensorPBW(self.n, {m: other * c for m, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TensorPBW):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    __hash__ = None

    def __str__(self):
        items = sorted(self.terms.items(),
                       key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]), reverse=True)

        def name(ab):
            a, b = ab
            if not a and not b:
                return "1"
            return f"{mono_str(self.n, a)}⊗{mono_str(self.n, b)}"

        return format_terms((name(m), c) for m, c in items)

    def __repr__(self):
        return f"TensorPBW(gl{self.n}: {self})"


def pbw_product(x: PBWElement, y: PBWElement) -> PBWElement:
    if x.n != y.n:
        raise RankMismatch(f"gl_{x.n} times gl_{y.n}")
    return x * y


def commutator(x, y):
    return x * y - y * x


def matrix_power_entry(n: int, r: int, i: int, j: int) -> PBWElement:
    """(E^r)_ij with 1-based indices."""
    if r < 0 or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad power entry ({r}, {i}, {j}) for gl_{n}")
    return PBWElement(n, engine(n).power(r, i - 1, j - 1))


def poly_of_matrix_entry(p, n: int, i: int, j: int) -> PBWElement:
    """(p(E))_ij for a polynomial given by its coefficient list (or UPoly)."""
    e = engine(n)
    acc: dict = {}
    for l, c in enumerate(p):
        if not c:
            continue
        for m, v in e.power(l, i - 1, j - 1).items():
            acc[m] = acc.get(m, 0) + c * v
    return PBWElement(n, acc)


def coproduct_eval(n: int, s_value) -> list[list[TensorPBW]]:
    """Image of the coproduct of T(s) = 1 + E/s under the evaluation map, at s = s_value."""
    s = Fraction(s_value)
    if s == 0:
        raise PoleCollision("evaluation at s = 0")
    inv = 1 / s

    def t(i, k):
        x = PBWElement.gen(n, i, k) * inv
        return x + 1 if i == k else x

    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            acc = TensorPBW(n)
            for k in range(1, n + 1):
                acc = acc + TensorPBW.pure(t(i, k), t(k, j))
            row.append(acc)
        out.append(row)
    return out


# ---------------------------------------------------------- lazy entry words

class EntryExpr:
    """Formal noncommutative combination of generator symbols.

    A symbol (r, i, j, kind) stands for the r-th generator t^(r)_ij of one
    realization (0-based indices; kind 1 is the twisted copy). Relations are
    assembled formally; evaluate() then substitutes t^(r) = sum_l p^r_l E^l
    and normal orders what survives through the engine's product cache.
    With legs=2 a word is a pair of leg words, an element of the tensor square.
    """

    __slots__ = ("n", "legs", "terms")

    def __init__(self, n: int, legs: int = 1, terms: Mapping[tuple, Any] | None = None):
        self.n = n
        self.legs = legs
        self.terms = {k: _small(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def scalar(cls, n: int, c, legs: int = 1) -> "EntryExpr":
        return cls(n, legs, {((),) * legs: c})

    @classmethod
    def gen(cls, n: int, r: int, i: int, j: int, legs: int = 1, leg: int = 0,
            kind: int = 0) -> "EntryExpr":
        """t^(r)_ij on the given leg, 1-based indices; t^(0) = delta, t^(-1) = 0."""
        if r < 0:
            return cls(n, legs)
        if r == 0:
            return cls.scalar(n, 1 if i == j else 0, legs)
        word = tuple(((r, i - 1, j - 1, kind),) if k == leg else () for k in range(legs))
        return cls(n, legs, {word: 1})

    def _coerce(self, other) -> "EntryExpr":
        if isinstance(other, EntryExpr):
            if other.n != self.n or other.legs != self.legs:
                raise RankMismatch("incompatible entry expressions")
            return other
        return EntryExpr.scalar(self.n, other, self.legs)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return EntryExpr(self.n, self.legs, out)

    __radd__ = __add__

    def __neg__(self):
        return EntryExpr(self.n, self.legs, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, EntryExpr):
            return EntryExpr(self.n, self.legs, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + c1 * c2
        return EntryExpr(self.n, self.legs, out)

    def __rmul__(self, other):
        return EntryExpr(self.n, self.legs, {w: other * c for w, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, EntryExpr):
            return (self.n, self.legs, self.terms) == (other.n, other.legs, other.terms)
        return NotImplemented

    __hash__ = None

    def substitute(self, fn) -> "EntryExpr":
        """Replace every symbol by fn(symbol), an EntryExpr on the same legs."""
        out = EntryExpr(self.n, self.legs)
        for w, c in self.terms.items():
            acc = EntryExpr.scalar(self.n, c, self.legs)
            for leg, lw in enumerate(w):
                for sym in lw:
                    acc = acc * fn(sym, leg)
            out = out + acc
        return out

    def _expand_leg(self, lw: tuple, rows) -> dict:
        """Leg word in symbols -> {power word: coefficient}."""
        acc: dict = {(): 1}
        for (r, i, j, kind) in lw:
            table = rows.get(kind) if rows else None
            if table is None:
                opts = [((r, i, j, kind), 1)]
            else:
                opts = [((l, i, j, kind), _small(c)) for l, c in enumerate(table[r]) if c]
            nxt: dict = {}
            for w, c in acc.items():
                for (l, a, b, k), cc in opts:
                    if l == 0:
                        if a != b:
                            continue
                        key = w
                    else:
                        key = w + ((l, a, b, k),)
                    nxt[key] = nxt.get(key, 0) + c * cc
            acc = _clean(nxt)
        return acc

    def evaluate(self, rows: Mapping[int, Any] | None = None):
        """Normal-ordered value: a PBWElement for one leg, a TensorPBW for two.

        rows maps a realization kind to its coefficient triangle (row r lists
        the coefficients of p_r); a missing kind means t^(r) = E^r.
        Rational coefficients are cleared to a common denominator first so
        the heavy products run on integers.
        """
        e = engine(self.n)
        if self.legs == 1:
            expanded: dict = {}
            for (w,), c in self.terms.items():
                for pw, cc in self._expand_leg(w, rows).items():
                    expanded[pw] = expanded.get(pw, 0) + c * cc
            expanded, den = _integerize(expanded)
            acc: dict = {}
            for pw, c in expanded.items():
                if not c:
                    continue
                for m, v in e.word(pw).items():
                    acc[m] = acc.get(m, 0) + c * v
            return PBWElement(self.n, _rescale(acc, den))
        if self.legs != 2:
            raise ValueError("only one or two legs are supported")
        # group by the left power word so each right sum is built once
        flat: dict = {}
        for (w1, w2), c in self.terms.items():
            left = self._expand_leg(w1, rows)
            right = self._expand_leg(w2, rows)
            for p1, c1 in left.items():
                for p2, c2 in right.items():
                    key = (p1, p2)
                    flat[key] = flat.get(key, 0) + c * c1 * c2
        flat, den = _integerize(flat)
        grouped: dict = {}
        for (p1, p2), c in flat.items():
            if c:
                grouped.setdefault(p1, {})[p2] = c
        acc = {}
        for p1, rights in grouped.items():
            rv: dict = {}
            for p2, c in rights.items():
                for m, v in e.word(p2).items():
                    rv[m] = rv.get(m, 0) + c * v
            rv = _clean(rv)
            if not rv:
                continue
            for a, ca in e.word(p1).items():
                for b, cb in rv.items():
                    acc[a, b] = acc.get((a, b), 0) + ca * cb
        return TensorPBW(self.n, _rescale(acc, den))


def _integerize(d: dict) -> tuple[dict, int | None]:
    """Scale rational coefficients to integers; den None means leave as is."""
    den = 1
    for c in d.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
        elif not isinstance(c, int):
            return d, None
    if den == 1:
        return {k: int(c) for k, c in d.items()}, 1
    return {k: int(c * den) for k, c in d.items()}, den


def _rescale(d: dict, den: int | None) -> dict:
    if den is None or den == 1:
        return d
    return {k: Fraction(v, den) for k, v in d.items() if v}


def ecomm(x: EntryExpr, y: EntryExpr) -> EntryExpr:
    return x * y - y * x
