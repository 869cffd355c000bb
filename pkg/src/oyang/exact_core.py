"""Exact arithmetic substrate: rationals, polynomials, truncated series in 1/u,
formal residues and an operational localized Weyl algebra.

Every series lives in the variable t = 1/u. A TruncSeries knows its
coefficients for exponents up to its order N; above N they are unknown,
unless the series is flagged ``exact`` (a finite Laurent polynomial), in
which case they are zero. Products and inverses track how far the result
is still known, so truncation never leaks into reported coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

from sympy import QQ
from sympy.polys.fields import field

from .errors import IncomposableLeadingTerm, PoleCollision, WindowViolation

Rat = Fraction


def rat(x: Any) -> Fraction:
    """Parse an exact rational from int, Fraction or a "p/q" string.

    Floats are refused on purpose.
    """
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            q = int(q)
            if q == 0:
                raise ValueError(f"zero denominator in {x!r}")
            return Fraction(int(p), q)
        return Fraction(int(s))
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot read {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- polynomials

class UPoly:
    """Dense univariate polynomial over the rationals, index = degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, a) -> "UPoly":
        return cls((a,))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == UPoly((other,)).c
        return NotImplemented

    def __hash__(self):
        return hash(("UPoly", self.c))

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        return UPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-a for a in self.c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(other.c) + 1, 0)
        lead = other.c[-1]
        for k in range(len(r) - len(other.c), -1, -1):
            f = r[k + len(other.c) - 1] / lead
            q[k] = f
            if f:
                for j, b in enumerate(other.c):
                    r[k + j] -= f * b
        return UPoly(q), UPoly(r)

    def monic(self) -> "UPoly":
        return UPoly(a / self.c[-1] for a in self.c) if self.c else self

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if not a:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and a == 1:
                parts.append(mono)
            elif mono and a == -1:
                parts.append("-" + mono)
            else:
                parts.append(rat_str(a) + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")


class RatFunc:
    """Univariate rational function num/den, reduced, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UPoly) else UPoly((num,))
        den = UPoly((1,)) if den is None else (den if isinstance(den, UPoly) else UPoly((den,)))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = UPoly(), UPoly((1,))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num.divmod(g)[0], den.divmod(g)[0]
        lead = den.c[-1]
        self.num = UPoly(a / lead for a in num.c)
        self.den = UPoly(a / lead for a in den.c)

    @classmethod
    def var(cls) -> "RatFunc":
        return cls(UPoly.x())

    @staticmethod
    def _c(x):
        return x if isinstance(x, RatFunc) else RatFunc(x)

    def __add__(self, o):
        o = self._c(o)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        if not o.num:
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, UPoly, RatFunc)):
            o = self._c(o)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def at(self, x) -> Fraction:
        d = self.den(Fraction(x))
        if d == 0:
            raise PoleCollision(f"pole of {self!r} at {x}")
        return self.num(Fraction(x)) / d

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


# --------------------------------------------------------------------- series

_INF = float("inf")


class TruncSeries:
    """Truncated Laurent series in t = 1/u with coefficients in any exact ring.

    The ring only needs +, -, *, and truthiness as a zero test. Products keep
    the order of factors, so noncommutative coefficients are fine.
    """

    __slots__ = ("coeffs", "N", "lo", "exact")

    def __init__(self, coeffs: Mapping[int, Any], N: int, lo: int | None = None, exact: bool = False):
        c = {int(k): v for k, v in coeffs.items() if v}
        if exact and c:
            N = max(N, max(c))
        bad = [k for k in c if k > N]
        if bad:
            raise WindowViolation(f"exponent {max(bad)} above order {N}")
        if lo is None:
            lo = min(c) if c else min(0, N)
        if c and min(c) < lo:
            raise WindowViolation(f"exponent {min(c)} below window start {lo}")
        self.coeffs = c
        self.N = N
        self.lo = lo
        self.exact = exact

    # constructors
    @classmethod
    def u(cls, N: int = 0) -> "TruncSeries":
        return cls({-1: Fraction(1)}, max(N, -1), lo=-1, exact=True)

    @classmethod
    def const(cls, a, N: int = 0) -> "TruncSeries":
        return cls({0: a}, N, lo=0, exact=True)

    @classmethod
    def from_list(cls, seq: Sequence[Any], N: int | None = None, exact: bool = False) -> "TruncSeries":
        N = len(seq) - 1 if N is None else N
        return cls({k: a for k, a in enumerate(seq) if k <= N}, N, lo=0, exact=exact)

    def coeff(self, k: int):
        if k > self.N and not self.exact:
            raise WindowViolation(f"coefficient {k} beyond known order {self.N}")
        return self.coeffs.get(k, 0)

    def valuation(self) -> float:
        if self.coeffs:
            return min(self.coeffs)
        return _INF if self.exact else self.N + 1

    def __bool__(self):
        return bool(self.coeffs)

    def truncate(self, N: int) -> "TruncSeries":
        if N >= self.N and not self.exact:
            return self
        c = {k: v for k, v in self.coeffs.items() if k <= N}
        return TruncSeries(c, N, lo=min(self.lo, N), exact=False)

    def agrees(self, other: "TruncSeries", N: int) -> bool:
        """Coefficients of t^k agree for every k <= N."""
        return not (self - other).truncate(N).coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.N == other.N
                and self.exact == other.exact)

    __hash__ = None

    def map(self, fn: Callable[[Any], Any]) -> "TruncSeries":
        return TruncSeries({k: fn(v) for k, v in self.coeffs.items()}, self.N, self.lo, self.exact)

    def _merge_order(self, other: "TruncSeries") -> tuple[int, bool]:
        if self.exact and other.exact:
            return max(self.N, other.N), True
        if self.exact:
            return other.N, False
        if other.exact:
            return self.N, False
        return min(self.N, other.N), False

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(other)
        N, exact = self._merge_order(other)
        c = {k: v for k, v in self.coeffs.items() if k <= N}
        for k, v in other.coeffs.items():
            if k > N:
                continue
            if k in c:
                c[k] = c[k] + v
            else:
                c[k] = v
        return TruncSeries(c, N, lo=min(self.lo, other.lo, N), exact=exact)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return TruncSeries.const(other) + self

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return TruncSeries.const(other) - self

    def _product_order(self, other: "TruncSeries") -> tuple[int, bool]:
        if self.exact and other.exact:
            return self.N + other.N, True
        va, vb = self.valuation(), other.valuation()
        bounds = []
        if not self.exact:
            bounds.append(self.N + vb)
        if not other.exact:
            bounds.append(other.N + va)
        N = min(bounds)
        if N == _INF:
            N = max(self.N, other.N)
        return int(N), False

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.map(lambda v: v * other)
        N, exact = self._product_order(other)
        c: dict[int, Any] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k > N:
                    continue
                p = a * b
                if k in c:
                    c[k] = c[k] + p
                else:
                    c[k] = p
        return TruncSeries(c, N, lo=min(self.lo + other.lo, N), exact=exact)

    def __rmul__(self, other):
        return self.map(lambda v: other * v)

    def shift(self, m: int) -> "TruncSeries":
        """Multiply by t^m, i.e. by u^(-m)."""
        return TruncSeries({k + m: v for k, v in self.coeffs.items()}, self.N + m, self.lo + m, self.exact)

    def inverse(self) -> "TruncSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a zero series")
        v = min(self.coeffs)
        lead = self.coeffs[v]
        inv_lead = Fraction(1) / lead if isinstance(lead, int) else 1 / lead
        # self = lead t^v (1 + y); y has valuation >= 1
        y = TruncSeries({k - v: inv_lead * c for k, c in self.coeffs.items() if k != v},
                        self.N - v, lo=0, exact=self.exact)
        prec = self.N - v if not self.exact else None
        if self.exact and not y.coeffs:
            return TruncSeries({-v: inv_lead}, -v, lo=-v, exact=True)
        if prec is None:
            raise IncomposableLeadingTerm("inverse of a finite series needs an explicit order; truncate first")
        acc = TruncSeries({0: Fraction(1)}, prec, lo=0)
        term = TruncSeries({0: Fraction(1)}, prec, lo=0)
        neg_y = -y
        for _ in range(prec):
            term = (term * neg_y).truncate(prec)
            if not term.coeffs:
                break
            acc = acc + term
        acc = acc.truncate(prec)
        return acc.shift(-v).map(lambda c: c * inv_lead)

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncSeries({0: Fraction(1)}, 0, lo=0, exact=True)
        for _ in range(k):
            out = out * self
        return out

    def derivative_u(self) -> "TruncSeries":
        """d/du, with d/du t^k = -k t^(k+1)."""
        return TruncSeries({k + 1: -k * v for k, v in self.coeffs.items() if k},
                           self.N + 1, self.lo + 1, self.exact)

    def scale_var(self, q) -> "TruncSeries":
        """Series of f(q*u): the t^k coefficient picks up q^(-k)."""
        q = Fraction(q)
        return TruncSeries({k: (q ** (-k)) * v for k, v in self.coeffs.items()}, self.N, self.lo, self.exact)

    def __repr__(self):
        terms = ", ".join(f"{k}: {v!r}" for k, v in sorted(self.coeffs.items()))
        tail = "" if self.exact else f" + O(t^{self.N + 1})"
        return f"TruncSeries({{{terms}}}{tail})"


def series_compose(f: TruncSeries, phi: TruncSeries, N: int) -> TruncSeries:
    """f(phi(u)) to order N, where f is a series in 1/u and phi has rational coefficients.

    phi must start as gamma*u or gamma/u. In the second case 1/phi grows like u,
    so only a finite f can be substituted.
    """
    if not phi.coeffs:
        raise IncomposableLeadingTerm("cannot substitute the zero series")
    v = min(phi.coeffs)
    if v not in (-1, 1):
        raise IncomposableLeadingTerm(f"leading exponent t^{v} is neither u nor 1/u")
    if v == 1 and not f.exact:
        raise IncomposableLeadingTerm(
            "phi starts with gamma/u: every coefficient of the truncated f would "
            "feed every order of the result")
    spread = max((abs(k) for k in f.coeffs), default=0)
    p = phi.truncate(N + 2 * spread + 4) if phi.exact else phi
    inv = p.inverse() if any(k > 0 for k in f.coeffs) else None
    out = TruncSeries({}, N, lo=0, exact=True)
    for k, a in sorted(f.coeffs.items()):
        piece = inv ** k if k > 0 else (p ** (-k) if k < 0 else TruncSeries.const(Fraction(1)))
        out = out + _scalar_left(a, piece)
    if not f.exact:
        # the unknown tail of f starts at t^(f.N+1) and keeps that order
        out = out.truncate(min(out.N, f.N))
    return out.truncate(N)


def _scalar_left(a, s: TruncSeries) -> TruncSeries:
    return TruncSeries({k: a * c for k, c in s.coeffs.items()}, s.N, s.lo, s.exact)


def l_apply(c: Callable[[int], Any] | Sequence[Any], f: TruncSeries) -> TruncSeries:
    """The operator sum d_k u^-k -> sum c_k d_k u^-k."""
    if any(k < 0 for k in f.coeffs):
        raise WindowViolation("l_apply needs a series without positive powers of u")
    get = c if callable(c) else (lambda k: c[k])
    return TruncSeries({k: get(k) * v for k, v in f.coeffs.items()}, f.N, max(f.lo, 0), f.exact)


def residue_pairing(g: Mapping[int, Any] | TruncSeries):
    """Coefficient of z^0 of a Laurent polynomial given as exponent -> coefficient."""
    coeffs = g.coeffs if isinstance(g, TruncSeries) else g
    return coeffs.get(0, 0)


# ------------------------------------------------------- localized Weyl algebra

WEYL_FIELD, WU, WV, WW = field("u,v,w", QQ)
WEYL_VARS = (WU, WV, WW)


def weyl_fn(x) -> Any:
    """Coerce a rational, a field element or a sympy expression into the Weyl field."""
    if isinstance(x, (int, Fraction)):
        return WEYL_FIELD(Fraction(x))
    if hasattr(x, "field") and x.field == WEYL_FIELD:
        return x
    return WEYL_FIELD.from_expr(x)


class LaurentWeylOp:
    """Operator on rational functions of u, v, w, kept as a sum of words.

    A word is a tuple of factors applied right to left; a factor is either
    ("mul", g) for multiplication by a rational function g or ("d", i) for
    the partial derivative in the i-th variable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Fraction, tuple]] = ()):
        acc: dict[tuple, Fraction] = {}
        for c, word in terms:
            acc[word] = acc.get(word, 0) + Fraction(c)
        self.terms = tuple((c, w) for w, c in acc.items() if c)

    @classmethod
    def identity(cls) -> "LaurentWeylOp":
        return cls([(1, ())])

    @classmethod
    def mul(cls, g) -> "LaurentWeylOp":
        return cls([(1, (("mul", weyl_fn(g)),))])

    @classmethod
    def d(cls, i: int) -> "LaurentWeylOp":
        return cls([(1, (("d", i),))])

    def __add__(self, other):
        if not isinstance(other, LaurentWeylOp):
            other = LaurentWeylOp.mul(other)
        return LaurentWeylOp(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentWeylOp((-c, w) for c, w in self.terms)

    def __sub__(self, other):
        if not isinstance(other, LaurentWeylOp):
            other = LaurentWeylOp.mul(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentWeylOp.mul(other) - self

    def __mul__(self, other):
        """Composition self after other, or right scaling by a number."""
        if isinstance(other, (int, Fraction)):
            return LaurentWeylOp((c * other, w) for c, w in self.terms)
        if not isinstance(other, LaurentWeylOp):
            other = LaurentWeylOp.mul(other)
        return LaurentWeylOp((a * b, wa + wb) for a, wa in self.terms for b, wb in other.terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentWeylOp((c * other, w) for c, w in self.terms)
        return LaurentWeylOp.mul(other) * self

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentWeylOp({len(self.terms)} words)"


def weyl_apply(op: LaurentWeylOp, f):
    """Apply the operator to a rational function; the result is exact."""
    f = weyl_fn(f)
    out = WEYL_FIELD(0)
    for c, word in op.terms:
        g = f
        for kind, arg in reversed(word):
            if kind == "mul":
                g = arg * g
            else:
                g = g.diff(WEYL_VARS[arg])
        out = out + g * c
    return out


def evaluate_at(g, point: Sequence[Any]) -> Fraction:
    """Value of a Weyl-field element at (u, v, w); PoleCollision on a vanishing denominator."""
    g = weyl_fn(g)
    gens = WEYL_FIELD.ring.gens
    subs = [(gens[i], QQ(Fraction(x).numerator, Fraction(x).denominator)) for i, x in enumerate(point)]
    num = g.numer.evaluate(subs) if subs else g.numer
    den = g.denom.evaluate(subs) if subs else g.denom
    num, den = rat(_ground(num)), rat(_ground(den))
    if den == 0:
        raise PoleCollision(f"denominator vanishes at {tuple(point)}")
    return num / den


def _ground(x):
    if hasattr(x, "LC") and hasattr(x, "is_ground"):
        return x.LC if x else 0
    return x


__all__ = [
    "Rat", "rat", "rat_str", "UPoly", "RatFunc", "TruncSeries", "series_compose",
    "l_apply", "residue_pairing", "LaurentWeylOp", "weyl_apply", "weyl_fn",
    "evaluate_at", "WEYL_FIELD", "WU", "WV", "WW",
]
