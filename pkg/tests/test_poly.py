from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropgrob.errors import NotPolynomial, ParseError, ValueGroupError, ZeroPolynomial
from tropgrob.poly import (
    Polynomial,
    dehomogenize,
    epsilon_bound,
    homogenize,
    initial_form,
    initial_form_residue,
    monomial_clear,
    parse_polynomial,
    trop_eval,
)
from tropgrob.valued_field import PAdicField, PuiseuxField

from oracles import epsilon_scan, initial_terms, trop_min
from strategies import homogeneous_poly, laurent_poly, padic_field, rational_weights, to_dict, weights

Q2, Q3, T1 = PAdicField(2), PAdicField(3), PuiseuxField(1)


def P(text, K=Q2, names="xyz"):
    return parse_polynomial(text, K, tuple(names))


def test_trop_eval_examples():
    W, arg = trop_eval(P("3*x+8*y+6*z", Q3), (1, 1, 1))
    assert W == 1 and arg == {(0, 1, 0)}
    W, arg = trop_eval(P("6*x^2+5*x*y+7*y^2", Q2, "xy"), (1, 2))
    assert W == 3 and arg == {(2, 0), (1, 1)}
    f = P("x+3*y-z", T1)
    W, arg = trop_eval(f, (0, 0, 0))
    assert W == 0 and arg == set(f.terms)
    with pytest.raises(ZeroPolynomial):
        trop_eval(Polynomial(Q2, "xy"), (0, 0))


def test_initial_form_examples():
    assert str(initial_form(P("6*x^2+5*x*y+7*y^2", Q2, "xy"), (1, 2))) == "x^2+x*y"
    assert str(initial_form(P("3*x+8*y+6*z", Q3), (1, 1, 1))) == "2*y"
    f = P("12*x*y^2", Q3, "xy")
    for w in [(0, 0), (5, -2), (1, 1)]:
        assert initial_form(f, w) == Polynomial(Q3.residue_field, ("x", "y"), {(1, 2): 1})
    with pytest.raises(ValueGroupError):
        initial_form(P("x+y", Q2, "xy"), (Fraction(1, 2), 0))


def test_initial_form_residue_examples():
    g = initial_form(P("6*x^2+5*x*y+7*y^2", Q2, "xy"), (1, 2))
    assert str(initial_form_residue(g, (0, 1))) == "x^2"
    assert initial_form_residue(g, (0, 0)) == g
    single = initial_form(P("x*y", Q2, "xy"), (0, 0))
    assert initial_form_residue(single, (3, -1)) == single


def test_epsilon_bound_examples():
    f = P("x+t*y", T1, "xy")
    eps = epsilon_bound(f, (0, 0), (1, -1))
    assert eps == Fraction(1, 2)
    assert epsilon_scan(to_dict_t(f), (0, 0), (1, -1), None) < eps
    assert epsilon_bound(f, (0, 0), (0, 0)) == 1
    assert epsilon_bound(P("5*x^2*y", Q3, "xy"), (1, 2), (-3, 1)) == 1


def to_dict_t(f):
    K = f.domain
    return {u: (K.val(c), K.unit_part(c)) for u, c in f.terms.items()}


def test_homogenize_examples():
    assert str(homogenize(P("x+y+1", T1, "xy"))) == "x0+x+y"
    cubic = P("y^2*z-x^3-x^2*z-16*z^3", Q2)
    h = homogenize(cubic)
    assert h.names == ("x0", "x", "y", "z")
    assert all(u[0] == 0 for u in h.terms)
    assert dehomogenize(h) == cubic
    assert dehomogenize(homogenize(P("6*x^2+5*x*y+7*y^2", Q2, "xy"))) == P("6*x^2+5*x*y+7*y^2", Q2, "xy")
    with pytest.raises(NotPolynomial):
        homogenize(P("x^(-1)+y", T1, "xy"))


def test_monomial_clear_examples():
    assert monomial_clear(P("x^(-1)*y+1", T1, "xy")) == P("y+x", T1, "xy")
    assert monomial_clear(P("x^2+y+3", T1, "xy")) == P("x^2+y+3", T1, "xy")
    assert monomial_clear(P("x^(-2)+x^(-1)", T1, "x")) == P("1+x", T1, "x")


def test_dehomogenize_examples():
    names = ("x0", "x", "y")
    assert dehomogenize(P("x+y+x0", T1, names)) == P("x+y+1", T1, "xy")
    assert dehomogenize(P("x0^3", T1, names)) == P("1", T1, "xy")
    assert dehomogenize(P("x^2*x0-y^3", T1, names)) == P("x^2-y^3", T1, "xy")


def test_parser_errors_and_round_trip():
    for text in ["3*x+8*y+6*z", "x^2*y-1/2*z^3", "(t^(1/2)+1)*x-t*y"]:
        f = P(text, PuiseuxField(2))
        assert P(str(f), PuiseuxField(2)) == f
    for bad in ["x+", "x^", "w+1", "x^(1/2)", "2**x"]:
        with pytest.raises(ParseError):
            P(bad, Q2)


# --- properties ---------------------------------------------------------------

@settings(max_examples=500, deadline=None)
@given(st.data())
def test_lineality_of_homogeneous_initial_forms(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(2, 3))
    f = data.draw(homogeneous_poly(K, n, data.draw(st.integers(1, 3))))
    w = data.draw(weights(n))
    lam = data.draw(st.integers(-6, 6))
    assert initial_form(f, tuple(x + lam for x in w)) == initial_form(f, w)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_initial_form_matches_oracle(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(1, 3))
    f = data.draw(laurent_poly(K, n))
    w = data.draw(weights(n))
    got = initial_form(f, w)
    want = initial_terms(to_dict(f), w, K.p)
    assert {u: int(c) for u, c in got.terms.items()} == want
    assert trop_eval(f, w)[0] == trop_min(to_dict(f), w, K.p)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_initial_of_initial_at_half_epsilon(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(1, 3))
    f = data.draw(laurent_poly(K, n, max_terms=5))
    w = data.draw(weights(n))
    v = data.draw(weights(n, -3, 3))
    eps = epsilon_bound(f, w, v)
    assert eps > 0
    pt = tuple(a + eps / 2 * b for a, b in zip(w, v))
    expect = initial_form_residue(initial_form(f, w), v)
    assert initial_form(f, pt, check=False) == expect
    if all(x.denominator == 1 for x in pt):
        assert initial_form(f, pt) == expect


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_epsilon_bound_against_grid_scan(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(1, 2))
    f = data.draw(laurent_poly(K, n, max_terms=5))
    w = data.draw(weights(n))
    v = data.draw(weights(n, -3, 3))
    eps = epsilon_bound(f, w, v)
    grid, top = 120, 3
    scan = epsilon_scan(to_dict(f), w, v, K.p, grid, top)
    if scan == top:
        assert eps == 1 or eps >= top
    else:
        assert scan < eps <= scan + Fraction(1, grid)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_initial_forms_and_trop_are_multiplicative(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(1, 3))
    f = data.draw(laurent_poly(K, n, max_deg=2))
    g = data.draw(laurent_poly(K, n, max_deg=2))
    w = data.draw(weights(n))
    assert initial_form(f * g, w) == initial_form(f, w) * initial_form(g, w)
    assert trop_eval(f * g, w)[0] == trop_eval(f, w)[0] + trop_eval(g, w)[0]


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_homogenize_round_trip(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(1, 3))
    f = monomial_clear(data.draw(laurent_poly(K, n)))
    h = homogenize(f)
    assert h.is_homogeneous() and h.degree() == f.degree()
    assert dehomogenize(h) == f
    assert P(str(f), K, f.names) == f


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_rational_weights_respect_value_group(data):
    n = 2
    f = data.draw(laurent_poly(Q2, n))
    w = data.draw(rational_weights(n))
    if all(x.denominator == 1 for x in w):
        initial_form(f, w)
    else:
        with pytest.raises(ValueGroupError):
            initial_form(f, w)
