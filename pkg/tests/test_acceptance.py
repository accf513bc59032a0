"""Acceptance criteria 1-8 at their stated tolerances and time limits.

Timings are the best of several runs so that one-off interpreter warm-up
does not count.  Under pytest the per-criterion verdicts are printed in the
terminal summary; ``python tests/test_acceptance.py`` prints them directly.
"""
import sys
import time
import traceback
import warnings
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_log  # noqa: E402
import oracles  # noqa: E402
from tropgrob.errors import DegreeBoundWarning, SaturationWarning  # noqa: E402
from tropgrob.grobner_complex import complex_state_mode, complex_traversal_mode, cone_of, maximal_labels  # noqa: E402
from tropgrob.ideal_graded import HomogeneousIdeal, initial_space, residue_rref  # noqa: E402
from tropgrob.polyhedra import TropicalAffineFamily, canonicalize, nonlinearity_locus  # noqa: E402
from tropgrob.poly import initial_form, parse_polynomial, trop_eval  # noqa: E402
from tropgrob.tropical import (  # noqa: E402
    LaurentIdeal,
    image_under_monomial_map,
    trop_hypersurface,
    tropicalize,
    verify_tropical_basis,
)
from tropgrob.valued_field import PAdicField, PuiseuxField  # noqa: E402

Q2, Q3, T1 = PAdicField(2), PAdicField(3), PuiseuxField(1)
XY, XYZ = ("x", "y"), ("x", "y", "z")


def best_time(fn, repeat=5):
    best, out = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def record(k):
    """Run the criterion body, store PASS/FAIL with its detail line, re-raise failures."""
    def wrap(body):
        def test():
            try:
                detail = body()
            except BaseException as e:
                acceptance_log.RESULTS[k] = (False, f"{type(e).__name__}: {e}".splitlines()[0][:160])
                raise
            acceptance_log.RESULTS[k] = (True, detail)
        test.__name__ = body.__name__
        return test
    return wrap


@record(1)
def test_criterion_1_initial_form():
    f = parse_polynomial("6*x^2+5*x*y+7*y^2", Q2, XY)
    want = parse_polynomial("x^2+x*y", Q2, XY)
    dt, got = best_time(lambda: initial_form(f, (1, 2)), 50)
    assert [(u, int(c)) for u, c in sorted(got.terms.items())] == [(u, int(c)) for u, c in sorted(want.terms.items())]
    assert dt < 1e-3, dt
    return f"in_(1,2) = {got}  ({dt * 1e3:.3f} ms < 1 ms)"


@record(2)
def test_criterion_2_initial_ideal():
    I = HomogeneousIdeal([parse_polynomial(t, Q2, XYZ) for t in ("x+2*y", "x+4*z")])
    J = HomogeneousIdeal([parse_polynomial(t, Q2, XYZ) for t in ("x", "y")])
    w = (1, 1, 1)

    def spaces():
        return [residue_rref(initial_space(I, d, w))[0] for d in range(3)]

    dt, got = best_time(spaces, 20)
    assert got == [residue_rref(initial_space(J, d, w))[0] for d in range(3)]
    assert [str(initial_form(g, w)) for g in I.generators] == ["x", "x"]
    assert dt < 1e-2, dt
    return f"in_(1,1,1)<x+2y, x+4z> = <x,y> up to degree 2  ({dt * 1e3:.2f} ms < 10 ms)"


@record(3)
def test_criterion_3_cone():
    I = HomogeneousIdeal([parse_polynomial("3*x+8*y+6*z", Q3, XYZ)])
    dt, cell = best_time(lambda: cone_of(I, (1, 1, 1), 1), 20)
    # x2 <= 1 + x1 and x2 <= 1 + x3
    want = canonicalize(3, [((-1, 1, 0), 1), ((0, 1, -1), 1)])
    assert cell.poly.key == want.key
    W, _ = trop_eval(I.generators[0], (1, 1, 1))
    assert W == 1
    assert dt < 1e-2, dt
    return f"cone = {{x2 <= 1+x1, x2 <= 1+x3}}, W = {W}  ({dt * 1e3:.2f} ms < 10 ms)"


@record(4)
def test_criterion_4_complex():
    I = HomogeneousIdeal([parse_polynomial("3*x+8*y+6*z", Q3, XYZ)])

    def both():
        return complex_state_mode(I, 1), complex_traversal_mode(I, 1)

    dt, (a, b) = best_time(both, 3)
    assert a.key_set() == b.key_set()
    # argmin enumeration of min(1+w1, w2, 1+w3)
    cells = oracles.active_pattern_cells([(1, (1, 0, 0)), (0, (0, 1, 0)), (1, (0, 0, 1))], 3)
    want = oracles.dimension_counts(cells, modulo=1)
    assert a.counts(1) == want == {0: 1, 1: 3, 2: 3}
    labels = sorted(str(lab.initial_gens[0]) for lab in maximal_labels(a))
    assert labels == ["x", "y", "z"]
    assert dt < 1.0, dt
    return f"3 cells / 3 walls / 1 vertex mod R1, labels <x>,<y>,<z>, modes agree  ({dt:.3f} s < 1 s)"


@record(5)
def test_criterion_5_elliptic():
    f = parse_polynomial("y^2*z-x^3-x^2*z-16*z^3", Q2, XYZ)
    terms = [(0, (0, 2, 1)), (0, (3, 0, 0)), (0, (2, 0, 1)), (4, (0, 0, 3))]
    dt, cx = best_time(lambda: trop_hypersurface(f), 3)
    assert cx.key_set() == nonlinearity_locus(TropicalAffineFamily.make(terms)).key_set()
    cells = oracles.active_pattern_cells([(Fraction(a), m) for a, m in terms], 3)
    want = oracles.dimension_counts(cells, modulo=1, min_size=2)
    assert cx.counts(1) == want
    assert dt < 5.0, dt
    return f"locus of min(2y+z,3x,2x+z,3z+4), counts {want} match oracle  ({dt:.3f} s < 5 s)"


def _rays_and_cones(cx) -> tuple:
    c = cx.counts(len(cx.lineality()))
    return c.get(1, 0), c.get(2, 0)


@record(6)
def test_criterion_6_non_canonicity():
    names = tuple("abcde")
    I = LaurentIdeal([parse_polynomial(t, T1, names) for t in ("a+b+c+d+e", "3*b+5*c+7*d+11*e")])
    # a -> ab, b -> bc, c -> cd, d -> de, e -> e
    images = [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]
    t = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        warnings.simplefilter("ignore", DegreeBoundWarning)
        plane = tropicalize(I, mode="traversal")
        image = tropicalize(image_under_monomial_map(I, images), mode="traversal", saturation="elimination")
    dt = time.perf_counter() - t
    assert _rays_and_cones(plane) == (5, 10)
    assert _rays_and_cones(image) == (7, 12)
    assert dt < 300, dt
    return f"plane 5 rays/10 cones, image 7 rays/12 cones  ({dt:.1f} s < 300 s)"


def _property_suite():
    import test_grobner_complex
    import test_ideal_graded
    import test_poly
    import test_tropical
    return [
        ("Hilbert equality", test_ideal_graded.test_hilbert_equality),
        ("initial of initial form at eps/2", test_poly.test_initial_of_initial_at_half_epsilon),
        ("initial of initial ideal", test_ideal_graded.test_perturbation_coherence),
        ("lineality invariance", test_ideal_graded.test_lineality_invariance),
        ("complex axioms", test_grobner_complex.test_groebner_complex_invariants),
        ("tropical basis round trip", test_tropical.test_tropical_basis_round_trip),
    ]


@pytest.mark.filterwarnings("ignore::tropgrob.errors.SaturationWarning",
                            "ignore::tropgrob.errors.DegreeBoundWarning")
@record(7)
def test_criterion_7_property_suite():
    done = []
    for name, prop in _property_suite():
        assert prop._hypothesis_internal_use_settings.max_examples >= 200, name
        prop()
        done.append(name)
    return f"{len(done)} properties, >= 200 examples each"


@record(8)
def test_criterion_8_negative_control():
    F = [parse_polynomial(t, T1, XYZ) for t in ("x+y", "x+y+z")]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        dt, (ok, w) = best_time(lambda: verify_tropical_basis(F, LaurentIdeal(F)), 3)
    assert ok is False and w is not None
    assert all(trop_hypersurface(f).contains(w) for f in F)
    assert dt < 1.0, dt
    return f"verified = False, witness {tuple(str(x) for x in w)}  ({dt * 1e3:.1f} ms < 1 s)"


if __name__ == "__main__":
    warnings.simplefilter("ignore")
    for test in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            test()
        except BaseException:
            traceback.print_exc()
    print("\n".join(acceptance_log.lines()))
    sys.exit(0 if all(ok for ok, _ in acceptance_log.RESULTS.values()) else 1)
