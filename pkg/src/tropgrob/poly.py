"""Sparse multivariate (Laurent) polynomials over a valued field or its residue field.

A polynomial is a dict from exponent tuples to nonzero coefficients.  The
coefficient domain is either a :class:`~tropgrob.valued_field.ValuedField`
(the field K) or a :class:`~tropgrob.valued_field.ResidueField` (the residue
field k).  Variable names are metadata; arity is what matters.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArityError,
    NotPolynomial,
    ParseError,
    ZeroPolynomial,
)
from .valued_field import ResidueField, RationalFunction, PuiseuxField

Exp = tuple


def dot(w: Sequence, u: Sequence):
    s = 0
    for a, b in zip(w, u):
        if b:
            s += a * b
    return s


def as_weight(w) -> tuple:
    return tuple(Fraction(x) for x in w)


class Polynomial:
    __slots__ = ("domain", "names", "terms")

    def __init__(self, domain, names: Sequence[str], terms: dict | None = None):
        self.domain = domain
        self.names = tuple(names)
        self.terms = {}
        for u, c in (terms or {}).items():
            if len(u) != len(self.names):
                raise ArityError(f"exponent {u} does not match {len(self.names)} variables")
            c = domain.coerce(c)
            if c != 0:
                self.terms[tuple(int(e) for e in u)] = c

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, domain, names, terms):
        p = cls.__new__(cls)
        p.domain, p.names, p.terms = domain, names, terms
        return p

    @classmethod
    def constant(cls, domain, names, c):
        return cls(domain, names, {(0,) * len(names): c})

    @classmethod
    def monomial(cls, domain, names, u, c=1):
        return cls(domain, names, {tuple(u): c})

    def like(self, terms):
        return Polynomial(self.domain, self.names, terms)

    # -- basic queries ------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def over_residue(self) -> bool:
        return isinstance(self.domain, ResidueField)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> list:
        return sorted(self.terms, reverse=True)

    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("degree of zero")
        return max(sum(u) for u in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(u) for u in self.terms}) <= 1

    def is_laurent(self) -> bool:
        return any(e < 0 for u in self.terms for e in u)

    @property
    def ring_tag(self) -> str:
        shape = "HOMOG" if self.is_homogeneous() and not self.is_laurent() else "LAURENT"
        return f"{shape}_{'k' if self.over_residue else 'K'}"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ArityError("polynomials in different numbers of variables")
            return other
        return Polynomial.constant(self.domain, self.names, other)

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for u, c in other.terms.items():
            s = t.get(u, 0) + c
            if s == 0:
                t.pop(u, None)
            else:
                t[u] = s
        return Polynomial._raw(self.domain, self.names, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.domain, self.names, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.domain.coerce(other)
            if c == 0:
                return Polynomial._raw(self.domain, self.names, {})
            return Polynomial._raw(self.domain, self.names,
                                   {u: a * c for u, a in self.terms.items()})
        other = self._check(other)
        t = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                k = tuple(x + y for x, y in zip(u, v))
                s = t.get(k, 0) + a * b
                if s == 0:
                    t.pop(k, None)
                else:
                    t[k] = s
        return Polynomial._raw(self.domain, self.names, t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = self.domain.coerce(c)
        return Polynomial._raw(self.domain, self.names, {u: a / c for u, a in self.terms.items()})

    def __pow__(self, e: int):
        out = Polynomial.constant(self.domain, self.names, 1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, a: Sequence[int]):
        """Multiply by the monomial ``x^a``."""
        return Polynomial._raw(
            self.domain, self.names,
            {tuple(x + y for x, y in zip(u, a)): c for u, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return False

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def monic(self):
        """Scale so the lexicographically largest term has coefficient 1."""
        if not self.terms:
            return self
        return self / self.terms[max(self.terms)]

    def map_exponents(self, matrix: Sequence[Sequence[int]], names=None):
        """Substitute ``x_i -> x^{matrix[i]}`` (a monomial change of coordinates)."""
        names = tuple(names) if names is not None else self.names
        m = len(names)
        t = {}
        for u, c in self.terms.items():
            k = tuple(sum(u[i] * matrix[i][j] for i in range(len(u))) for j in range(m))
            s = t.get(k, 0) + c
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = s
        return Polynomial._raw(self.domain, names, t)

    # -- text -------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# printing and parsing

def _format_coeff(domain, c) -> str:
    s = domain.format(c).replace(" ", "")
    if isinstance(c, RationalFunction) and ("+" in s[1:] or "-" in s[1:]) and not s.startswith("("):
        s = f"({s})"
    return s


def _format_monomial(names, u) -> str:
    parts = []
    for n, e in zip(names, u):
        if e == 0:
            continue
        parts.append(n if e == 1 else (f"{n}^{e}" if e > 0 else f"{n}^({e})"))
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for u in f.support():
        c = f.terms[u]
        mono = _format_monomial(f.names, u)
        cs = _format_coeff(f.domain, c)
        if not mono:
            term = cs
        elif cs == "1":
            term = mono
        elif cs == "-1":
            term = "-" + mono
        else:
            term = f"{cs}*{mono}"
        if out and not term.startswith("-"):
            term = "+" + term
        out.append(term)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        if m.group(1):
            toks.append(("num", int(m.group(1))))
        elif m.group(2):
            toks.append(("id", m.group(2)))
        elif m.group(3) and not m.group(3).isspace():
            toks.append(("op", m.group(3)))
    return toks


class _Parser:
    def __init__(self, text, field, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.names = tuple(names)
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val is not None and tok[1] != val):
            raise ParseError(f"unexpected token {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def const(self, c):
        return Polynomial.constant(self.field, self.names, c)

    def parse(self):
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r} in {self.text!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if len(rhs.terms) != 1 or any(rhs.support()[0]):
                    raise ParseError("division is only allowed by field constants")
                out = out / rhs.terms[rhs.support()[0]]
        return out

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
        return self.power()

    def exponent(self):
        if self.peek() == ("op", "("):
            self.take()
            sign = -1 if self.peek() == ("op", "-") else 1
            if sign < 0:
                self.take()
            num = self.take("num")[1]
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("num")[1]
            self.take("op", ")")
            return Fraction(sign * num, den)
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        return Fraction(sign * self.take("num")[1])

    def power(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            base = self.const(val)
            is_t = False
        elif kind == "id":
            self.take()
            is_t = False
            if val in self.names:
                u = [0] * len(self.names)
                u[self.names.index(val)] = 1
                base = Polynomial.monomial(self.field, self.names, u)
            elif val == "t" and isinstance(self.field, PuiseuxField):
                is_t = True
                base = None
            else:
                raise ParseError(f"unknown symbol {val!r}")
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take("op", ")")
            is_t = False
        else:
            raise ParseError(f"unexpected token {val!r} in {self.text!r}")
        e = Fraction(1)
        if self.peek() == ("op", "^"):
            self.take()
            e = self.exponent()
        if is_t:
            return self.const(self.field.monomial(e))
        if e.denominator != 1:
            raise ParseError("fractional exponents are only allowed on t")
        e = int(e)
        if e >= 0:
            return base ** e
        if len(base.terms) != 1:
            raise ParseError("negative powers are only allowed on monomials")
        (u, c), = base.terms.items()
        return Polynomial(self.field, self.names, {tuple(x * e for x in u): 1 / c ** (-e)})


def parse_polynomial(text: str, field, names: Sequence[str]) -> Polynomial:
    """Parse ``coef*x^a*y^b + ...`` into a polynomial over ``field``."""
    return _Parser(text, field, names).parse()


def parse_element(text: str, field):
    """Parse a field element such as ``3/2*t^(1/2) + t``."""
    p = parse_polynomial(text, field, ())
    return p.terms.get((), field.coerce(0))


# ---------------------------------------------------------------------------
# tropical operations on single polynomials

def trop_eval(f: Polynomial, w) -> tuple:
    """Evaluate ``min_u val(c_u) + w.u`` and return ``(W, argmin exponents)``."""
    if f.over_residue:
        raise TypeError("trop_eval needs a polynomial over the valued field")
    if not f.terms:
        raise ZeroPolynomial("trop of the zero polynomial")
    w = as_weight(w)
    if len(w) != f.nvars:
        raise ArityError(f"weight of length {len(w)} for {f.nvars} variables")
    val = f.domain.val
    vals = {u: val(c) + dot(w, u) for u, c in f.terms.items()}
    W = min(vals.values())
    return W, frozenset(u for u, x in vals.items() if x == W)


def initial_form(f: Polynomial, w, check: bool = True) -> Polynomial:
    """Initial form over the residue field.

    With ``check=False`` the weight may lie outside the value group; the
    result is then the initial form over the totally ramified extension in
    which it does lie, which has the same residue field and unit parts.
    """
    w = as_weight(w)
    if check:
        f.domain.check_gamma(w)
    W, arg = trop_eval(f, w)
    up = f.domain.unit_part
    k = f.domain.residue_field
    return Polynomial._raw(k, f.names, {u: up(f.terms[u]) for u in arg})


def initial_form_residue(g: Polynomial, v) -> Polynomial:
    """Initial form of a polynomial over k with respect to the trivial valuation."""
    if not g.terms:
        raise ZeroPolynomial("initial form of zero")
    v = as_weight(v)
    vals = {u: dot(v, u) for u in g.terms}
    m = min(vals.values())
    return Polynomial._raw(g.domain, g.names, {u: c for u, c in g.terms.items() if vals[u] == m})


def epsilon_bound(f: Polynomial, w, v) -> Fraction:
    """Exact supremum of the eps for which ``in_{w+e v}(f) = in_v(in_w(f))`` on (0, eps).

    Returns 1 when no term ever overtakes the limiting initial form.
    """
    if not f.terms:
        raise ZeroPolynomial("epsilon bound of zero")
    w, v = as_weight(w), as_weight(v)
    val = f.domain.val
    a = {u: val(c) + dot(w, u) for u, c in f.terms.items()}
    W = min(a.values())
    b = {u: dot(v, u) for u in f.terms}
    Wp = min(b[u] for u in f.terms if a[u] == W)
    eps = None
    for u in f.terms:
        gap = a[u] - W
        if gap > 0 and b[u] < Wp:
            e = gap / (Wp - b[u])
            eps = e if eps is None else min(eps, e)
    return Fraction(1) if eps is None else Fraction(eps)


# ---------------------------------------------------------------------------
# homogenization

def homogenizing_name(names: Sequence[str]) -> str:
    name = "x0"
    while name in names:
        name += "_"
    return name


def monomial_clear(f: Polynomial) -> Polynomial:
    """Multiply by the monomial making every exponent >= 0 and every minimum 0."""
    if not f.terms:
        raise ZeroPolynomial("monomial_clear of zero")
    mins = [min(u[i] for u in f.terms) for i in range(f.nvars)]
    return f.shift([-m for m in mins])


def homogenize(f: Polynomial, x0_name: str | None = None) -> Polynomial:
    """``x0^deg(f) f(x1/x0, ..., xn/x0)`` with ``x0`` prepended as variable 0."""
    if not f.terms:
        raise ZeroPolynomial("homogenize zero")
    if f.is_laurent():
        raise NotPolynomial(f"{f} has negative exponents; apply monomial_clear first")
    d = f.degree()
    names = (x0_name or homogenizing_name(f.names),) + f.names
    return Polynomial._raw(f.domain, names, {(d - sum(u),) + u: c for u, c in f.terms.items()})


def dehomogenize(f: Polynomial) -> Polynomial:
    """Set the first variable to 1."""
    t = {}
    for u, c in f.terms.items():
        k = u[1:]
        s = t.get(k, 0) + c
        if s == 0:
            t.pop(k, None)
        else:
            t[k] = s
    return Polynomial._raw(f.domain, f.names[1:], t)


def monomials_of_degree(n: int, d: int) -> list:
    """All exponent vectors of length n and total degree d, lexicographically descending."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return out


def divides(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def minimal_monomials(monos: Iterable[Exp]) -> list:
    ms = sorted(set(monos), key=lambda u: (sum(u), tuple(-x for x in u)))
    out = []
    for u in ms:
        if not any(divides(g, u) for g in out):
            out.append(u)
    return out
