"""Exact polynomial part ``I ∩ K[x]`` of a Laurent ideal, through sympy Gröbner bases.

The Laurent ideal ``<f_1..f_r>`` meets ``K[x]`` in
``<f_1..f_r, 1 - y x_1...x_n> ∩ K[x]``; ``y`` is eliminated with a lex basis
and the result is re-reduced to a graded reverse lexicographic basis, whose
homogenization generates the homogenized ideal.
"""
from __future__ import annotations

import sympy
from gmpy2 import mpq

from .poly import Polynomial, monomial_clear, monomials_of_degree
from .valued_field import PuiseuxField, RationalFunction


def _uni(coeffs, s):
    return sum((sympy.Rational(int(c.numerator), int(c.denominator)) * s ** i
                for i, c in enumerate(coeffs) if c != 0), sympy.Integer(0))


def _coeff_to_sympy(c, s):
    if isinstance(c, RationalFunction):
        return s ** c.k * _uni(c.num, s) / _uni(c.den, s)
    c = mpq(c)
    return sympy.Rational(int(c.numerator), int(c.denominator))


def _ascending(expr, s) -> tuple:
    p = sympy.Poly(expr, s)
    return tuple(mpq(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in reversed(p.all_coeffs()))


def _coeff_from_sympy(expr, field, s):
    expr = sympy.together(sympy.sympify(expr))
    if isinstance(field, PuiseuxField) and s in expr.free_symbols:
        num, den = sympy.fraction(expr)
        return RationalFunction.make(field.N, 0, _ascending(num, s), _ascending(den, s))
    num, den = sympy.fraction(expr)
    return mpq(int(num), int(den))


def _domain(polys, s):
    if any(isinstance(c, RationalFunction) for f in polys for c in f.terms.values()):
        return sympy.QQ.frac_field(s)
    return sympy.QQ


def _to_sympy(f: Polynomial, xs, s):
    return sum((_coeff_to_sympy(c, s) * sympy.Mul(*[x ** e for x, e in zip(xs, u)])
                for u, c in f.terms.items()), sympy.Integer(0))


def _from_sympy(expr, xs, field, names, s) -> Polynomial:
    p = sympy.Poly(expr, *xs)
    return Polynomial(field, names, {u: _coeff_from_sympy(c, field, s) for u, c in p.terms()})


def polynomial_part(generators) -> list:
    """Generators of ``I ∩ K[x]`` forming a graded reverse lexicographic Gröbner basis."""
    gens = [monomial_clear(g) for g in generators]
    field, names = gens[0].domain, gens[0].names
    s = sympy.Symbol("s_")
    xs = sympy.symbols([f"v{i}_" for i in range(len(names))])
    y = sympy.Symbol("y_")
    dom = _domain(gens, s)
    F = [_to_sympy(g, xs, s) for g in gens] + [1 - y * sympy.Mul(*xs)]
    G = sympy.groebner(F, y, *xs, order="lex", domain=dom)
    kept = [g for g in G.exprs if y not in g.free_symbols]
    if not kept:
        return []
    H = sympy.groebner(kept, *xs, order="grevlex", domain=dom)
    return [_from_sympy(h, xs, field, names, s) for h in H.exprs]


def hilbert_function(generators, D: int) -> list:
    """``dim (S/I)_d`` for ``d = 0..D`` of a homogeneous ideal, by counting standard monomials
    of a graded reverse lexicographic basis."""
    names = generators[0].names
    s = sympy.Symbol("s_")
    xs = sympy.symbols([f"v{i}_" for i in range(len(names))])
    G = sympy.groebner([_to_sympy(g, xs, s) for g in generators], *xs, order="grevlex",
                       domain=_domain(generators, s))
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]
    out = []
    for d in range(D + 1):
        out.append(sum(1 for u in monomials_of_degree(len(names), d)
                       if not any(all(a <= b for a, b in zip(l, u)) for l in leads)))
    return out
