"""Exact valued fields: Q with a p-adic valuation and Q(t^(1/N)) with the t-adic one.

Elements of Qp are ``gmpy2.mpq`` rationals.  Elements of Qt are either ``mpq``
(constants) or :class:`RationalFunction` (anything involving ``t``); every
arithmetic result is demoted back to ``mpq`` whenever it is constant, so
equality stays syntactic.

Each field fixes a splitting of its valuation: ``p**w`` for Qp and ``t**w``
for Qt.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq

from .errors import NotInValuationRing, ValueGroupError, ZeroElement


class Infinity:
    """Valuation of zero.  Compares above every rational."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"


INF = Infinity()


def to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


# ---------------------------------------------------------------------------
# residue field of Qp

@total_ordering
class ModP:
    """Element of Z/pZ."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine ModP with {type(other).__name__}")

    def __add__(self, other):
        return ModP(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModP(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in the residue field")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = ModP(other, self.p)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __lt__(self, other):
        return self.v < self._coerce(other)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


# ---------------------------------------------------------------------------
# univariate polynomials over Q, coefficients ascending, used by Qt

def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _pshift(a, k):
    return tuple([mpq(0)] * k) + tuple(a)


def _pdivmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = list(_ptrim(a))
    return _ptrim(q), tuple(a)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return tuple(x / a[-1] for x in a)


def _lowest(a):
    for i, x in enumerate(a):
        if x != 0:
            return i
    raise ZeroElement("zero polynomial has no lowest term")


class RationalFunction:
    """Nonconstant element ``s**k * num(s) / den(s)`` of Q(s), ``s = t^(1/N)``.

    ``num(0) != 0``, ``den(0) == 1`` and ``gcd(num, den) == 1``.  Constants are
    never stored in this class; :meth:`make` demotes them to ``mpq``.
    """

    __slots__ = ("N", "k", "num", "den")

    def __init__(self, N, k, num, den):
        self.N, self.k, self.num, self.den = N, k, num, den

    @classmethod
    def make(cls, N, k, num, den):
        num, den = _ptrim(num), _ptrim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return mpq(0)
        i = _lowest(num)
        j = _lowest(den)
        k += i - j
        num, den = num[i:], den[j:]
        if len(den) > 1 and len(num) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        c = den[0]
        num = tuple(x / c for x in num)
        den = tuple(x / c for x in den)
        if k == 0 and len(num) == 1 and len(den) == 1:
            return num[0]
        return cls(N, k, num, den)

    @classmethod
    def lift(cls, N, x):
        if isinstance(x, RationalFunction):
            return x
        return cls(N, 0, (to_mpq(x),), (mpq(1),))

    def _parts(self, other):
        if isinstance(other, RationalFunction):
            if other.N != self.N:
                raise TypeError("mixing Q(t^(1/N)) fields with different N")
            return other.k, other.num, other.den
        other = to_mpq(other)
        if other == 0:
            return None
        return 0, (other,), (mpq(1),)

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return self
        k2, n2, d2 = o
        m = min(self.k, k2)
        a = _pshift(_pmul(self.num, d2), self.k - m)
        b = _pshift(_pmul(n2, self.den), k2 - m)
        return RationalFunction.make(self.N, m, _padd(a, b), _pmul(self.den, d2))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.N, self.k, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return mpq(0)
        k2, n2, d2 = o
        return RationalFunction.make(
            self.N, self.k + k2, _pmul(self.num, n2), _pmul(self.den, d2)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            raise ZeroDivisionError("division by zero in Q(t)")
        k2, n2, d2 = o
        return RationalFunction.make(
            self.N, self.k - k2, _pmul(self.num, d2), _pmul(self.den, n2)
        )

    def __rtruediv__(self, other):
        other = to_mpq(other)
        if other == 0:
            return mpq(0)
        return RationalFunction(self.N, 0, (other,), (mpq(1),)) / self

    def __pow__(self, e: int):
        if e < 0:
            return 1 / (self ** (-e))
        out = mpq(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return (self.N, self.k, self.num, self.den) == (
                other.N, other.k, other.num, other.den)
        return False

    def __hash__(self):
        return hash((self.N, self.k, self.num, self.den))

    def __bool__(self):
        return True

    def __repr__(self):
        return format_t_element(self)


def _fmt_q(q) -> str:
    q = to_mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_sum(N, k, coeffs) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = Fraction(k + i, N)
        if e == 0:
            mono = None
        elif e == 1:
            mono = "t"
        elif e.denominator == 1:
            mono = f"t^{e.numerator}"
        else:
            mono = f"t^({e.numerator}/{e.denominator})"
        if mono is None:
            s = _fmt_q(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{_fmt_q(c)}*{mono}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def format_t_element(a) -> str:
    if not isinstance(a, RationalFunction):
        return _fmt_q(a)
    if len(a.den) == 1:
        return _fmt_sum(a.N, a.k, a.num)
    num = _fmt_sum(a.N, a.k, a.num)
    den = _fmt_sum(a.N, 0, a.den)
    return f"({num})/({den})"


# ---------------------------------------------------------------------------
# the fields

class ValuedField:
    """Common surface of the two supported valued fields."""

    kind: str

    def val(self, a):
        raise NotImplementedError

    def coerce(self, a):
        raise NotImplementedError

    def in_gamma(self, w) -> bool:
        raise NotImplementedError

    def check_gamma(self, w):
        for x in (w if isinstance(w, (list, tuple)) else [w]):
            if not self.in_gamma(x):
                raise ValueGroupError(f"{x} is not in the value group {self.gamma_str()}")

    def gamma_str(self) -> str:
        raise NotImplementedError

    def unit_part(self, a):
        """Residue of ``split(-val(a)) * a``."""
        raise NotImplementedError

    def residue(self, a):
        raise NotImplementedError

    def split(self, w):
        raise NotImplementedError

    @property
    def residue_field(self):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        raise NotImplementedError


class ResidueField:
    """The residue field: ``GF(p)`` for Qp and ``Q`` for Qt."""

    def __init__(self, p: int | None):
        self.p = p

    def coerce(self, a):
        if self.p is None:
            return to_mpq(a)
        if isinstance(a, ModP):
            return a
        if isinstance(a, mpq) or isinstance(a, Fraction):
            a = to_mpq(a)
            return ModP(int(a.numerator), self.p) / ModP(int(a.denominator), self.p)
        return ModP(int(a), self.p)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def format(self, a) -> str:
        return str(int(a)) if self.p is not None else _fmt_q(a)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.p == other.p

    def __hash__(self):
        return hash(("k", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p is not None else "QQ"


class PAdicField(ValuedField):
    """Q with the p-adic valuation; value group Z, residue field GF(p)."""

    kind = "Qp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.p = p
        self._k = ResidueField(p)

    def key(self):
        return ("Qp", self.p)

    def __repr__(self):
        return f"Qp(p={self.p})"

    def header(self) -> str:
        return f"field Qp p={self.p}"

    @property
    def residue_field(self):
        return self._k

    @property
    def trivial_on_constants(self) -> bool:
        return False

    def coerce(self, a):
        if isinstance(a, RationalFunction):
            raise TypeError("t does not live in Qp")
        return to_mpq(a)

    def val(self, a):
        a = to_mpq(a)
        if a == 0:
            return INF
        return Fraction(
            gmpy2.remove(a.numerator, self.p)[1] - gmpy2.remove(a.denominator, self.p)[1]
        )

    def in_gamma(self, w) -> bool:
        return Fraction(w).denominator == 1

    def gamma_str(self):
        return "Z"

    def split(self, w):
        self.check_gamma(w)
        w = int(Fraction(w))
        return mpq(self.p) ** w if w >= 0 else 1 / mpq(self.p) ** (-w)

    def residue(self, a):
        a = to_mpq(a)
        if a == 0:
            return ModP(0, self.p)
        v = self.val(a)
        if v < 0:
            raise NotInValuationRing(f"val({a}) = {v} < 0")
        if v > 0:
            return ModP(0, self.p)
        return ModP(int(a.numerator), self.p) / ModP(int(a.denominator), self.p)

    def unit_part(self, a):
        a = to_mpq(a)
        if a == 0:
            raise ZeroElement("unit part of zero")
        num = gmpy2.remove(a.numerator, self.p)[0]
        den = gmpy2.remove(a.denominator, self.p)[0]
        return ModP(int(num), self.p) / ModP(int(den), self.p)

    def format(self, a) -> str:
        return _fmt_q(a)


class PuiseuxField(ValuedField):
    """Q(t^(1/N)) with the t-adic valuation; value group (1/N)Z, residue field Q.

    Constants have valuation 0, so an ideal with constant coefficients sees
    the trivial valuation.
    """

    kind = "Qt"

    def __init__(self, N: int = 1):
        if int(N) != N or N < 1:
            raise ValueError(f"N={N} must be a positive integer")
        self.N = int(N)
        self._k = ResidueField(None)

    def key(self):
        return ("Qt", self.N)

    def __repr__(self):
        return f"Qt(N={self.N})"

    def header(self) -> str:
        return f"field Qt N={self.N}"

    @property
    def residue_field(self):
        return self._k

    @property
    def t(self):
        return self.monomial(Fraction(1))

    def monomial(self, q):
        """The element ``t^q``."""
        self.check_gamma(q)
        k = int(Fraction(q) * self.N)
        if k == 0:
            return mpq(1)
        return RationalFunction(self.N, k, (mpq(1),), (mpq(1),))

    def coerce(self, a):
        if isinstance(a, RationalFunction):
            if a.N != self.N:
                raise TypeError("element from a different Q(t^(1/N))")
            return a
        return to_mpq(a)

    def val(self, a):
        if isinstance(a, RationalFunction):
            return Fraction(a.k, self.N)
        return INF if a == 0 else Fraction(0)

    def in_gamma(self, w) -> bool:
        return (Fraction(w) * self.N).denominator == 1

    def gamma_str(self):
        return "Z" if self.N == 1 else f"(1/{self.N})Z"

    def split(self, w):
        return self.monomial(w)

    def residue(self, a):
        if isinstance(a, RationalFunction):
            if a.k < 0:
                raise NotInValuationRing(f"val = {Fraction(a.k, self.N)} < 0")
            return mpq(0) if a.k > 0 else a.num[0]
        return to_mpq(a)

    def unit_part(self, a):
        if isinstance(a, RationalFunction):
            return a.num[0]
        if a == 0:
            raise ZeroElement("unit part of zero")
        return to_mpq(a)

    def format(self, a) -> str:
        return format_t_element(a)


def make_field(kind: str, param: int) -> ValuedField:
    if kind == "Qp":
        return PAdicField(param)
    if kind == "Qt":
        return PuiseuxField(param)
    raise ValueError(f"unknown field kind {kind!r}")
