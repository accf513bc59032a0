"""Tropical hypersurfaces, tropicalization of Laurent ideals, and tropical bases.

A Laurent ideal is handled through the homogenization of its polynomial
part: generators are cleared of denominators, homogenized with a new first
variable ``x0``, and saturated degreewise.  The tropical variety is then
the part of the Gröbner complex of that ideal whose initial ideals contain
no monomial, sliced at ``w0 = 0``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .errors import (
    ArityError,
    DegreeBoundTooSmall,
    IdealIsUnit,
    MonomialInput,
    NotInIdeal,
    SaturationWarning,
    ZeroPolynomial,
)
from .grobner_complex import DEFAULT_CAP, default_degree, groebner_complex
from .ideal_graded import (
    DEFAULT_SEED,
    HomogeneousIdeal,
    contains_monomial_up_to,
    generic_monomial_initial,
    initial_space,
    macaulay_piece,
)
from .linalg import nullspace, rref
from .lp import OPTIMAL, lp_max
from .poly import Polynomial, dehomogenize, homogenize, homogenizing_name, initial_form, monomial_clear
from .polyhedra import (
    PolyhedralComplex,
    QPolyhedron,
    TropicalAffineFamily,
    common_refinement,
    nonlinearity_locus,
    slice_coordinate,
    support_equal,
)

DEFAULT_SLACK = 2


class LaurentIdeal:
    """Ideal of ``K[x_1^{+-1}, ..., x_n^{+-1}]`` given by generators."""

    def __init__(self, generators: Sequence[Polynomial]):
        gens = list(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.is_zero():
                raise ZeroPolynomial("zero generator")
        self.generators = gens
        self.field = gens[0].domain
        self.names = gens[0].names
        if any(g.names != self.names for g in gens):
            raise ArityError("generators live in different rings")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def default_degree(self) -> int:
        return max(monomial_clear(g).degree() for g in self.generators)

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def as_laurent_ideal(I) -> LaurentIdeal:
    if isinstance(I, LaurentIdeal):
        return I
    if isinstance(I, Polynomial):
        return LaurentIdeal([I])
    return LaurentIdeal(list(I))


# ---------------------------------------------------------------------------
# hypersurfaces

def trop_family(f: Polynomial) -> TropicalAffineFamily:
    val = f.domain.val
    return TropicalAffineFamily.make((val(c), u) for u, c in f.terms.items())


def trop_hypersurface(f: Polynomial) -> PolyhedralComplex:
    """Non-linearity locus of ``trop(f)``; cell labels are the exponents attaining the minimum."""
    if f.is_zero():
        raise ZeroPolynomial("tropical hypersurface of zero")
    if len(f.terms) == 1:
        raise MonomialInput(f"{f} is a single term; its tropical hypersurface is empty")
    F = trop_family(f)
    cx = nonlinearity_locus(F)
    cx.labels = [tuple(tuple(int(x) for x in F.terms[i][1]) for i in lab) for lab in cx.labels]
    return cx


# ---------------------------------------------------------------------------
# homogenization and saturation

def _piece_pivots(piece):
    return [next(j for j, x in enumerate(r) if x != 0) for r in piece.rows]


def reduce_in_piece(I: HomogeneousIdeal, d: int, vec: list) -> list:
    """Remainder of a coefficient row modulo the reduced basis of ``I_d``."""
    piece = macaulay_piece(I, d)
    v = list(vec)
    for r, p in zip(piece.rows, _piece_pivots(piece)):
        c = v[p]
        if c != 0:
            v = [x - c * y for x, y in zip(v, r)]
    return v


def in_ideal_degree(I: HomogeneousIdeal, f: Polynomial) -> bool:
    """Whether the homogeneous ``f`` lies in ``I_{deg f}``."""
    if f.is_zero():
        return True
    d = f.degree()
    piece = macaulay_piece(I, d)
    zero = I.field.coerce(0)
    vec = [f.terms.get(u, zero) for u in piece.columns]
    return all(x == 0 for x in reduce_in_piece(I, d, vec))


def _colon_candidates(I: HomogeneousIdeal, d: int, k: int, i: int) -> list:
    """Rows over degree-d monomials of ``{h : x_i^k h in I_{d+k}}``."""
    big = macaulay_piece(I, d + k)
    if not big.rows:
        return []
    div = [j for j, u in enumerate(big.columns) if u[i] >= k]
    rest = [j for j, u in enumerate(big.columns) if u[i] < k]
    M = [[r[j] for r in big.rows] for j in rest]
    lam = nullspace(M, len(big.rows)) if M else [
        [1 if a == b else 0 for b in range(len(big.rows))] for a in range(len(big.rows))]
    small = macaulay_piece(I, d)
    zero = I.field.coerce(0)
    out = []
    for l in lam:
        vec = [zero] * len(small.columns)
        for j in div:
            c = sum((x * r[j] for x, r in zip(l, big.rows) if x != 0), zero)
            if c != 0:
                u = list(big.columns[j])
                u[i] -= k
                vec[small.index[tuple(u)]] = c
        out.append(vec)
    return out


def saturate(gens: list, D: int, slack: int) -> list:
    """Adjoin degree-d forms ``h`` (d <= D) with ``x_i^k h`` in the ideal for some ``k <= slack``."""
    gens = list(gens)
    names = gens[0].names
    K = gens[0].domain
    changed = True
    while changed:
        changed = False
        J = HomogeneousIdeal(gens)
        for d in range(D + 1):
            for k in range(1, slack + 1):
                for i in range(len(names)):
                    for vec in _colon_candidates(J, d, k, i):
                        rem = reduce_in_piece(J, d, vec)
                        if any(x != 0 for x in rem):
                            cols = macaulay_piece(J, d).columns
                            h = Polynomial._raw(K, names, {u: c for u, c in zip(cols, rem) if c != 0})
                            gens.append(h.monic())
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
    return gens


def homogenized_ideal(I, D: int | None = None, slack: int = DEFAULT_SLACK,
                      saturation: str = "slack") -> HomogeneousIdeal:
    """Homogenization of the polynomial part of ``I``.

    ``saturation="slack"`` saturates degreewise up to ``D`` with bounded
    colon exponents and warns that the result is not certified complete.
    ``saturation="elimination"`` computes ``I ∩ K[x]`` exactly by Gröbner
    elimination and homogenizes a graded basis of it.
    """
    I = as_laurent_ideal(I)
    D = I.default_degree() if D is None else D
    x0 = homogenizing_name(I.names)
    if saturation == "elimination":
        from .elimination import polynomial_part
        gens = [homogenize(g, x0).monic() for g in polynomial_part(I.generators)]
        return HomogeneousIdeal(gens)
    if saturation != "slack":
        raise ValueError(f"unknown saturation method {saturation!r}")
    gens = [homogenize(monomial_clear(g), x0).monic() for g in I.generators]
    warnings.warn(SaturationWarning(
        f"degreewise saturation up to degree {D} with slack {slack} is not certified complete"),
        stacklevel=2)
    return HomogeneousIdeal(saturate(gens, D, slack))


def saturation_defects(Ih: HomogeneousIdeal, D: int) -> list:
    """Pairs ``(d, i)`` with a degree-d form ``h`` outside ``Ih`` but ``x_i h`` inside.

    An empty list certifies that ``Ih`` is saturated with respect to every
    variable in degrees below ``D``.
    """
    out = []
    for d in range(D):
        for i in range(Ih.nvars):
            if any(any(x != 0 for x in reduce_in_piece(Ih, d, vec)) for vec in _colon_candidates(Ih, d, 1, i)):
                out.append((d, i))
    return out


def _unimodular_inverse(M) -> list:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ArityError("monomial map needs a square exponent matrix")
    R, piv = rref([[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)], 2 * n)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ValueError("exponent matrix is singular")
    inv = [r[n:] for r in R[:n]]
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("exponent matrix is not unimodular, so the monomial map is not invertible")
    return [[int(x) for x in r] for r in inv]


def pullback_under_monomial_map(I, images) -> LaurentIdeal:
    """``phi^*(I)`` for ``phi^*(x_i) = x^{images[i]}``; cuts out ``phi^{-1}(V(I))``."""
    I = as_laurent_ideal(I)
    _unimodular_inverse(images)
    return LaurentIdeal([g.map_exponents(images) for g in I.generators])


def image_under_monomial_map(I, images) -> LaurentIdeal:
    """``(phi^*)^{-1}(I)`` for ``phi^*(x_i) = x^{images[i]}``; cuts out the image ``phi(V(I))``."""
    I = as_laurent_ideal(I)
    inv = _unimodular_inverse(images)
    return LaurentIdeal([g.map_exponents(inv) for g in I.generators])


# ---------------------------------------------------------------------------
# tropicalization

@dataclass
class Tropicalization:
    """The sliced complex plus the data it was read from."""

    complex: PolyhedralComplex
    homogenized: HomogeneousIdeal
    groebner: PolyhedralComplex
    degree_bound: int


def _tropical_data(I, D, slack, mode, seed, cap, saturation="slack") -> Tropicalization:
    I = as_laurent_ideal(I)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        Ih = homogenized_ideal(I, D, slack, saturation)
    if D is None:
        D = max(default_degree(Ih, seed), I.default_degree())
    gc = groebner_complex(Ih, D, mode=mode, seed=seed, cap=cap)
    keep = [i for i, cell in enumerate(gc.labels)
            if not contains_monomial_up_to(Ih, cell.representative_w, D, check=False)[0]]
    sliced = slice_coordinate(gc.subcomplex(keep), 0)
    return Tropicalization(sliced, Ih, gc, D)


def tropicalize(I, D: int | None = None, slack: int = DEFAULT_SLACK, mode: str = "traversal",
                seed: int = DEFAULT_SEED, cap: int = DEFAULT_CAP, saturation: str = "slack") -> PolyhedralComplex:
    """``trop(V(I))`` as a polyhedral complex in ``R^n``."""
    if saturation == "slack":
        warnings.warn(SaturationWarning(f"saturation slack {slack}"), stacklevel=2)
    T = _tropical_data(I, D, slack, mode, seed, cap, saturation)
    if T.complex.is_empty():
        raise IdealIsUnit("every initial ideal contains a monomial")
    return T.complex


# ---------------------------------------------------------------------------
# tropical bases

@dataclass
class TropicalBasis:
    polynomials: list
    certificate: list = field(default_factory=list)    # (cell representative, basis index)
    n_original: int = 0

    @property
    def witnesses(self) -> list:
        return self.polynomials[self.n_original:]


def _monomial_initial(g: Polynomial, w):
    f = initial_form(g, w, check=False)
    return next(iter(f.terms)) if len(f.terms) == 1 else None


def _monomial_on_cell(g: Polynomial, u: tuple, cell: QPolyhedron) -> bool:
    """Whether the term ``x^u`` of ``g`` is the unique lowest one on the whole open cell.

    Given that it is at an interior point, it suffices that no other term
    drops strictly below it anywhere on the closed cell: one LP per term.
    """
    val = g.domain.val
    cu = val(g.terms[u])
    rows = cell.constraints()
    A = [list(a) for a, _ in rows]
    b = [mpq(x) for _, x in rows]
    for a, c in g.terms.items():
        if a == u:
            continue
        d = [mpq(x - y) for x, y in zip(a, u)]
        res = lp_max([-x for x in d], A, b)
        if res.status != OPTIMAL or mpq(val(c) - cu) - res.value < 0:
            return False
    return True


def tropical_basis(I, D: int | None = None, slack: int = DEFAULT_SLACK, mode: str = "traversal",
                   seed: int = DEFAULT_SEED, cap: int = DEFAULT_CAP, saturation: str = "slack") -> TropicalBasis:
    """Original generators plus one witness per Gröbner cell whose initial ideal holds a monomial."""
    I = as_laurent_ideal(I)
    if saturation == "slack":
        warnings.warn(SaturationWarning(f"saturation slack {slack}"), stacklevel=2)
    T = _tropical_data(I, D, slack, mode, seed, cap, saturation)
    Ih, D = T.homogenized, T.degree_bound
    x0 = Ih.names[0]
    homs = [homogenize(monomial_clear(g), x0) for g in I.generators]
    basis = list(I.generators)
    hbasis = list(homs)
    cert = []
    for cell in T.groebner.labels:
        w = cell.representative_w
        has, u = contains_monomial_up_to(Ih, w, D, check=False)
        if not has:
            continue
        # a generator only certifies the cell if its initial form stays monomial across all of it
        idx = next((j for j, g in enumerate(hbasis)
                    if (m := _monomial_initial(g, w)) is not None and _monomial_on_cell(g, m, cell.poly)), None)
        if idx is None:
            pert = generic_monomial_initial(Ih, w, D, check=False)
            wp = pert.point(w)
            sp = initial_space(Ih, sum(u), wp, check=False)
            if u not in sp.pivots:
                raise DegreeBoundTooSmall(f"monomial {u} left the perturbed initial ideal")
            g = sp.lifts[sp.pivots.index(u)]
            if _monomial_initial(g, w) != u or not _monomial_on_cell(g, u, cell.poly):
                raise DegreeBoundTooSmall(f"witness for {u} has a non-monomial initial form on its cell")
            gi = dehomogenize(g)
            if gi in basis:
                idx = basis.index(gi)
            else:
                basis.append(gi)
                hbasis.append(g)
                idx = len(basis) - 1
        cert.append((w, idx))
    return TropicalBasis(basis, cert, len(I.generators))


def prevariety(F: Sequence[Polynomial]) -> PolyhedralComplex:
    """Intersection of the tropical hypersurfaces of ``F``."""
    n = F[0].nvars
    out = None
    for f in F:
        if len(f.terms) <= 1:
            return PolyhedralComplex.empty(n)
        H = trop_hypersurface(f)
        out = H if out is None else common_refinement(out, H)
        if out.is_empty():
            return out
    return out


def verify_tropical_basis(F: Sequence[Polynomial], I, D: int | None = None, slack: int = DEFAULT_SLACK,
                          mode: str = "traversal", seed: int = DEFAULT_SEED, cap: int = DEFAULT_CAP,
                          saturation: str = "slack"):
    """Whether ``trop(V(I))`` equals the intersection of the hypersurfaces of ``F``.

    Returns ``(flag, witness)``; a witness is a rational point lying in
    exactly one of the two sets.
    """
    I = as_laurent_ideal(I)
    F = list(F)
    D0 = I.default_degree() if D is None else D
    D = max([D0] + [monomial_clear(f).degree() for f in F if not f.is_zero()])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SaturationWarning)
        T = _tropical_data(I, D, slack, mode, seed, cap, saturation)
    Ih = T.homogenized
    x0 = Ih.names[0]
    for f in F:
        if f.is_zero():
            continue
        if not in_ideal_degree(Ih, homogenize(monomial_clear(f), x0)):
            raise NotInIdeal(f"{f} is not in the ideal (checked in degree {monomial_clear(f).degree()})")
    ok, q = support_equal(prevariety(F), T.complex)
    if ok:
        return True, None
    return False, tuple(Fraction(int(mpq(x).numerator), int(mpq(x).denominator)) for x in q)
