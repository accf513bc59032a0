import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from tropgrob.errors import (
    ArityError,
    IdealIsUnit,
    MonomialInput,
    NotInIdeal,
    SaturationWarning,
)
from tropgrob.ideal_graded import contains_monomial_up_to
from tropgrob.polyhedra import TropicalAffineFamily, check_complex, nonlinearity_locus, support_equal
from tropgrob.poly import homogenize, parse_polynomial
from tropgrob.tropical import (
    LaurentIdeal,
    homogenized_ideal,
    in_ideal_degree,
    image_under_monomial_map,
    pullback_under_monomial_map,
    saturation_defects,
    trop_family,
    trop_hypersurface,
    tropical_basis,
    tropicalize,
    verify_tropical_basis,
)
from tropgrob.valued_field import PAdicField, PuiseuxField

import oracles
from strategies import laurent_poly, padic_field

Q2, T1 = PAdicField(2), PuiseuxField(1)
XY, XYZ = ("x", "y"), ("x", "y", "z")

pytestmark = pytest.mark.filterwarnings("ignore::tropgrob.errors.SaturationWarning",
                                        "ignore::tropgrob.errors.DegreeBoundWarning")


def P(text, K=T1, names=XY):
    return parse_polynomial(text, K, tuple(names))


def L(K, names, *texts):
    return LaurentIdeal([P(t, K, names) for t in texts])


def directions(cx, apex):
    out = set()
    for c in cx.cells:
        if c.dim == 1:
            d = [x - y for x, y in zip(c.point, apex)]
            g = max(abs(x) for x in d)
            out.add(tuple(int(x / g) for x in d))
    return out


# --- hypersurfaces -------------------------------------------------------------

def test_tropical_line():
    cx = trop_hypersurface(P("x+y+1"))
    assert cx.counts() == {0: 1, 1: 3}
    apex = next(c.point for c in cx.cells if c.dim == 0)
    assert list(apex) == [0, 0]
    assert directions(cx, apex) == {(-1, -1), (0, 1), (1, 0)}


def test_two_term_hypersurface():
    cx = trop_hypersurface(P("x+2*y", Q2))
    assert len(cx) == 1 and cx.cells[0].eqs == (((1, -1), 1),)
    with pytest.raises(MonomialInput):
        trop_hypersurface(P("5*x*y", Q2))


def test_elliptic_hypersurface_matches_formula_and_oracle():
    f = P("y^2*z-x^3-x^2*z-16*z^3", Q2, XYZ)
    # min(2y+z, 3x, 2x+z, 3z+4)
    formula = TropicalAffineFamily.make([(0, (0, 2, 1)), (0, (3, 0, 0)), (0, (2, 0, 1)), (4, (0, 0, 3))])
    assert trop_family(f) == formula
    cx = trop_hypersurface(f)
    assert cx.key_set() == nonlinearity_locus(formula).key_set()
    cells = oracles.active_pattern_cells([(0, (0, 2, 1)), (0, (3, 0, 0)), (0, (2, 0, 1)), (4, (0, 0, 3))], 3)
    assert cx.counts(1) == oracles.dimension_counts(cells, modulo=1, min_size=2) == {0: 2, 1: 5}


# --- homogenization --------------------------------------------------------------

def test_homogenized_ideal_examples():
    Ih = homogenized_ideal(L(Q2, XYZ, "x+2*y", "x+4*z"), 2)
    assert sorted(str(g) for g in Ih.generators) == ["x+2*y", "x+4*z"]
    assert [str(g) for g in homogenized_ideal(L(T1, XY, "x^(-1)*y+1"), 1).generators] == ["x+y"]
    Ih = homogenized_ideal(L(T1, XYZ, "x+y", "x+y+z"), 1)
    z = homogenize(P("z", T1, XYZ))
    assert all(contains_monomial_up_to(Ih, w, 1)[0] for w in [(0, 0, 0, 0), (0, 3, -1, 2), (1, 0, 5, -2)])
    assert in_ideal_degree(Ih, z)


def test_homogenized_ideal_warns_and_validates():
    with pytest.warns(SaturationWarning):
        homogenized_ideal(L(T1, XY, "x+y+1"), 1)
    with pytest.raises(ValueError):
        homogenized_ideal(L(T1, XY, "x+y+1"), 1, saturation="magic")


def test_saturation_slack_and_elimination():
    # x^2+y+1 - (x*y+y+1) = x*(x-y), so x-y lies in the Laurent ideal
    I = L(T1, XY, "x^2+y+1", "x*y+y+1")
    assert saturation_defects(homogenized_ideal(I, 4, slack=0), 4) != []
    Ih = homogenized_ideal(I, 4, slack=2)
    assert "x-y" in [str(g) for g in Ih.generators] and saturation_defects(Ih, 4) == []
    exact = homogenized_ideal(I, saturation="elimination")
    assert sorted(str(g) for g in exact.generators) == ["x-y", "x0^2+x0*y+y^2"]
    assert saturation_defects(exact, 4) == []


# --- tropicalization -------------------------------------------------------------

def test_tropicalize_examples():
    line = tropicalize(L(T1, XY, "x+y+1"))
    assert support_equal(line, trop_hypersurface(P("x+y+1")))[0]
    two = tropicalize(L(Q2, XY, "x+2*y"))
    assert len(two) == 1 and two.cells[0].eqs == (((1, -1), 1),)
    # V(I) is x = y with x^2+x+1 = 0, whose points have valuation 0
    pt = tropicalize(L(T1, XY, "x^2+y+1", "x*y+y+1"))
    assert len(pt) == 1 and list(pt.cells[0].point) == [0, 0]
    with pytest.raises(IdealIsUnit):
        tropicalize(L(T1, XYZ, "x+y", "x+y+z"))


def test_tropicalize_linear_space():
    # x = -2y = -4z: the tropical line w1 = 1 + w2 = 2 + w3
    cx = tropicalize(L(Q2, XYZ, "x+2*y", "x+4*z"))
    assert cx.counts() == {1: 1}
    assert cx.cells[0].contains((2, 1, 0)) and cx.cells[0].contains((7, 6, 5))
    assert verify_tropical_basis([P("x+2*y", Q2, XYZ), P("x+4*z", Q2, XYZ)], L(Q2, XYZ, "x+2*y", "x+4*z")) == (True, None)


def test_plane_fan():
    cx = tropicalize(L(T1, "abcde", "a+b+c+d+e", "3*b+5*c+7*d+11*e"), 1)
    assert cx.lineality() == [[1, 1, 1, 1, 1]]
    assert cx.counts(1) == {0: 1, 1: 5, 2: 10}
    assert check_complex(cx) == []


def test_monomial_maps():
    I = L(T1, XY, "x+y+1")
    sq = [[1, 1], [0, 1]]               # x -> x*y, y -> y
    pulled = pullback_under_monomial_map(I, sq)
    assert [str(g) for g in pulled.generators] == ["x*y+y+1"]
    back = image_under_monomial_map(pulled, sq)
    assert back.generators[0] == I.generators[0]
    # min(w1+w2, w2, 0): the line's rays under the inverse of the transposed map
    cx = tropicalize(pulled)
    assert directions(cx, next(c.point for c in cx.cells if c.dim == 0)) == {(0, -1), (1, 0), (-1, 1)}
    with pytest.raises(ValueError):
        image_under_monomial_map(I, [[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        image_under_monomial_map(I, [[1, 1], [1, 1]])
    with pytest.raises(ArityError):
        image_under_monomial_map(I, [[1, 0]])


# --- tropical bases ----------------------------------------------------------------

def test_tropical_basis_principal_needs_nothing():
    B = tropical_basis(L(Q2, XYZ, "y^2*z-x^3-x^2*z-16*z^3"))
    assert len(B.polynomials) == 1 and B.witnesses == []


def test_tropical_basis_adds_circuit():
    I = L(T1, XYZ, "x+y+z", "x+2*y")
    # V(I) is x = -2y, z = y: trop is the diagonal, the prevariety a half-plane
    cx = tropicalize(I)
    assert cx.counts() == {1: 1} and cx.cells[0].contains((3, 3, 3))
    ok, w = verify_tropical_basis(I.generators, I)
    assert not ok and not cx.contains(w)
    B = tropical_basis(I)
    assert B.witnesses
    assert verify_tropical_basis(B.polynomials, I) == (True, None)


def test_tropical_basis_when_ideal_has_a_variable():
    I = L(T1, XYZ, "x+y", "x+y+z")
    ok, w = verify_tropical_basis(I.generators, I)
    assert not ok and w is not None
    assert all(trop_hypersurface(f).contains(w) for f in I.generators)


@pytest.mark.parametrize("texts", [
    ("27*x+z^(-1)+x^(-1)", "x+z^(-1)"),
    ("18*z+2*y^(-1)", "z+1+y^(-1)"),
])
def test_tropical_basis_generator_must_cover_whole_cell(texts):
    # a generator whose initial form is a monomial only at the cell's
    # representative point does not rule out the rest of the cell
    I = L(Q2, XYZ, *texts)
    B = tropical_basis(I)
    assert verify_tropical_basis(B.polynomials, I) == (True, None)


def test_verify_rejects_outsiders():
    with pytest.raises(NotInIdeal):
        verify_tropical_basis([P("x+3*y", Q2, XYZ)], L(Q2, XYZ, "x+2*y", "x+4*z"))


# --- properties ------------------------------------------------------------------

def _nontrivial(f):
    return len(f.terms) >= 2


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_principal_consistency(data):
    K = data.draw(padic_field())
    n = data.draw(st.integers(2, 3))
    f = data.draw(laurent_poly(K, n, max_deg=2, min_terms=2))
    assume(_nontrivial(f))
    cx = tropicalize(LaurentIdeal([f]))
    assert support_equal(cx, trop_hypersurface(f))[0]
    assert check_complex(cx) == []


@st.composite
def desk_ideal(draw):
    K = draw(padic_field())
    n = draw(st.integers(2, 3))
    if n == 2 or draw(st.booleans()):
        gens = [draw(laurent_poly(K, n, max_deg=2, min_terms=2, max_terms=3))]
    else:
        gens = [draw(laurent_poly(K, 3, max_deg=1, min_terms=2, max_terms=3)) for _ in range(2)]
    assume(all(_nontrivial(g) for g in gens))
    return LaurentIdeal(gens)


def _trop_or_none(I, D=None):
    try:
        return tropicalize(I, D)
    except IdealIsUnit:
        return None


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(desk_ideal())
def test_tropical_basis_round_trip(I):
    cx = _trop_or_none(I)
    assume(cx is not None)
    assert check_complex(cx) == []
    B = tropical_basis(I)
    assert B.polynomials[:len(I.generators)] == I.generators
    assert verify_tropical_basis(B.polynomials, I) == (True, None)


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(desk_ideal(), st.integers(0, 10**6))
def test_monotonicity_and_slice(I, seed):
    D = I.default_degree() + 1
    cx = _trop_or_none(I, D)
    assume(cx is not None)
    hyper = [trop_hypersurface(g) for g in I.generators]
    rng = random.Random(seed)
    Ih = homogenized_ideal(I, D)
    for c in cx.cells:
        assert all(h.contains(c.point) for h in hyper)
    for _ in range(10):
        w = tuple(Fraction(rng.randint(-5, 5)) for _ in range(I.nvars))
        has, _ = contains_monomial_up_to(Ih, (0,) + w, D)
        assert (not has) == cx.contains(w)
        if cx.contains(w):
            assert all(h.contains(w) for h in hyper)
