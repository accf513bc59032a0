"""Degreewise linear algebra on homogeneous ideals over a valued field.

Everything here works one graded piece ``I_d`` at a time.  ``I_d`` is taken
to be the span of ``x^a g_i`` over the given generators, so the generators
must generate degreewise up to the degrees used (see
:func:`tropgrob.tropical.homogenized_ideal` for the saturation step).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import ArityError, InconsistentInitial, RetryExhausted, ZeroPolynomial
from .linalg import rref, solve_pivots, weighted_echelon
from .poly import Polynomial, as_weight, dot, minimal_monomials, monomials_of_degree

DEFAULT_SEED = 20240601


class HomogeneousIdeal:
    """Ideal of ``K[x_0..x_n]`` given by homogeneous generators."""

    def __init__(self, generators: Sequence[Polynomial]):
        gens = [g for g in generators]
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.is_zero():
                raise ZeroPolynomial("zero generator")
            if not g.is_homogeneous() or g.is_laurent():
                raise ValueError(f"generator {g} is not a homogeneous polynomial")
        self.generators = gens
        self.field = gens[0].domain
        self.names = gens[0].names
        if any(g.nvars != len(self.names) for g in gens):
            raise ArityError("generators in different numbers of variables")
        self._pieces: dict = {}
        self._spaces: dict = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen_degrees(self) -> list:
        return [g.degree() for g in self.generators]

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass
class MacaulayPiece:
    """Basis of ``I_d`` as rows over the degree-d monomials ``columns``."""

    degree: int
    columns: list
    rows: list
    index: dict = field(repr=False)

    @property
    def s(self) -> int:
        return len(self.rows)

    def row_polynomial(self, row, I: HomogeneousIdeal) -> Polynomial:
        return Polynomial(I.field, I.names, {u: c for u, c in zip(self.columns, row) if c != 0})


@dataclass
class InitialSpace:
    """``in_w(I)_d`` with a basis of initial forms.

    ``pivots`` are the monomials whose reduced lifts ``lifts`` (elements of
    ``I_d`` equal to ``x^u`` plus terms off the pivots) have the basis
    initial forms.  ``standard`` are the degree-d monomials off the pivots.
    """

    degree: int
    weight: tuple
    basis: list
    pivots: list
    lifts: list
    monomial_flag: bool
    columns: list = field(repr=False, default_factory=list)

    @property
    def monomials(self) -> set:
        return set(self.pivots) if self.monomial_flag else set()

    @property
    def standard(self) -> list:
        p = set(self.pivots)
        return [u for u in self.columns if u not in p]

    def residue_rows(self):
        """Basis initial forms as coefficient rows over ``columns``."""
        k = None
        out = []
        for g in self.basis:
            k = g.domain
            out.append([g.terms.get(u, k.zero) for u in self.columns])
        return out


def macaulay_piece(I: HomogeneousIdeal, d: int) -> MacaulayPiece:
    """Row-reduced basis of ``I_d`` built from all degree-d shifts of the generators."""
    if d in I._pieces:
        return I._pieces[d]
    cols = monomials_of_degree(I.nvars, d)
    index = {u: i for i, u in enumerate(cols)}
    zero = I.field.coerce(0)
    rows = []
    for g in I.generators:
        e = d - g.degree()
        if e < 0:
            continue
        for a in monomials_of_degree(I.nvars, e):
            r = [zero] * len(cols)
            for u, c in g.terms.items():
                r[index[tuple(x + y for x, y in zip(u, a))]] = c
            rows.append(r)
    R, _ = rref(rows, len(cols))
    piece = MacaulayPiece(d, cols, R, index)
    I._pieces[d] = piece
    return piece


def hilbert_dim(I: HomogeneousIdeal, d: int) -> int:
    """``dim_K (S/I)_d``."""
    return comb(I.nvars - 1 + d, I.nvars - 1) - macaulay_piece(I, d).s


def initial_space(I: HomogeneousIdeal, d: int, w, check: bool = True) -> InitialSpace:
    """Basis of ``in_w(I)_d`` by valuation-pivoted elimination of ``I_d``.

    The pivots minimize ``val(det A^J) + w . sum(J)``; the reduced rows
    ``x^u + (terms off the pivots)`` then have linearly independent initial
    forms, which therefore span ``in_w(I)_d``.
    """
    w = as_weight(w)
    if len(w) != I.nvars:
        raise ArityError(f"weight of length {len(w)} for {I.nvars} variables")
    if check:
        I.field.check_gamma(w)
    key = (d, w)
    if key in I._spaces:
        return I._spaces[key]
    piece = macaulay_piece(I, d)
    cols = piece.columns
    cw = [dot(w, u) for u in cols]
    pivots, rows = weighted_echelon(piece.rows, cw, I.field.val)
    K = I.field
    k = K.residue_field
    basis, lifts = [], []
    flag = True
    for c, row in zip(pivots, rows):
        target = cw[c]
        terms = {}
        for j, x in enumerate(row):
            if x == 0:
                continue
            b = K.val(x) + cw[j]
            if b < target:
                raise InconsistentInitial("pivot row has a term below its pivot weight")
            if b == target:
                terms[cols[j]] = K.unit_part(x)
        if len(terms) > 1:
            flag = False
        basis.append(Polynomial._raw(k, I.names, terms))
        lifts.append(Polynomial._raw(K, I.names, {cols[j]: x for j, x in enumerate(row) if x != 0}))
    sp = InitialSpace(d, w, basis, [cols[c] for c in pivots], lifts, flag, cols)
    I._spaces[key] = sp
    return sp


def residue_initial(space: InitialSpace, v) -> tuple:
    """``in_v`` of the k-space spanned by ``space.basis`` (trivial valuation on k).

    Returns ``(pivot monomials, basis forms, monomial flag)``.
    """
    v = as_weight(v)
    cols = space.columns
    rows = space.residue_rows()
    if not rows:
        return [], [], True
    cw = [dot(v, u) for u in cols]
    pivots, R = weighted_echelon(rows, cw, lambda x: 0)
    k = space.basis[0].domain
    forms = []
    flag = True
    for c, row in zip(pivots, R):
        terms = {cols[j]: x for j, x in enumerate(row) if x != 0 and cw[j] == cw[c]}
        if len(terms) > 1:
            flag = False
        forms.append(Polynomial._raw(k, space.basis[0].names, terms))
    return [cols[c] for c in pivots], forms, flag


def residue_rref(space: InitialSpace):
    """Canonical (lexicographic RREF) basis of ``in_w(I)_d`` over k."""
    rows = space.residue_rows()
    if not rows:
        return [], []
    R, piv = rref(rows, len(space.columns))
    return R, piv


def monomial_in_space(space: InitialSpace):
    """A monomial lying in the k-span of the initial space, or ``None``."""
    R, piv = residue_rref(space)
    for r, p in zip(R, piv):
        if all(x == 0 for j, x in enumerate(r) if j != p):
            return space.columns[p]
    return None


def contains_monomial_up_to(I: HomogeneousIdeal, w, D: int, check: bool = True):
    """Whether ``in_w(I)`` has a monomial in some degree ``<= D``; returns ``(flag, witness)``."""
    for d in range(0, D + 1):
        sp = initial_space(I, d, w, check=check)
        if not sp.pivots:
            continue
        u = monomial_in_space(sp)
        if u is not None:
            return True, u
    return False, None


def is_monomial_up_to(I: HomogeneousIdeal, w, D: int, check: bool = True) -> bool:
    return all(initial_space(I, d, w, check=check).monomial_flag for d in range(D + 1))


@dataclass
class Perturbation:
    """Result of pushing ``w`` a little in direction ``v``."""

    v: tuple
    epsilon: Fraction
    monomials: dict            # degree -> pivot monomials of in_v(in_w(I))_d
    gens: list                 # minimal monomial generators up to D

    def point(self, w, fraction=Fraction(1, 2)):
        return tuple(Fraction(a) + fraction * self.epsilon * b for a, b in zip(w, self.v))


def perturbation_epsilon(I: HomogeneousIdeal, w, v, D: int, check: bool = False):
    """Exact ``eps`` with ``in_{w+e v}(I)_d = in_v(in_w(I))_d`` for all ``0 < e < eps``, ``d <= D``.

    Returns ``None`` when ``in_v(in_w(I))`` is not monomial in some degree.
    The bound comes from the lifts ``x^u + sum c x^a`` of the limiting
    monomial ideal: each tail term must stay strictly above ``x^u``.
    """
    w, v = as_weight(w), as_weight(v)
    K = I.field
    eps = None
    mons = {}
    for d in range(D + 1):
        sp = initial_space(I, d, w, check=check)
        if not sp.pivots:
            mons[d] = []
            continue
        J, _, flag = residue_initial(sp, v)
        if not flag:
            return None
        piece = macaulay_piece(I, d)
        idx = [piece.index[u] for u in J]
        rows = solve_pivots(piece.rows, idx)
        if rows is None:
            raise InconsistentInitial(f"degree {d}: limiting monomials are not a basis of I_d")
        Jset = set(J)
        for u, row in zip(J, rows):
            wu, vu = dot(w, u), dot(v, u)
            for j, c in enumerate(row):
                a = piece.columns[j]
                if c == 0 or a in Jset:
                    continue
                gap = K.val(c) + dot(w, a) - wu
                slope = dot(v, a) - vu
                if gap < 0 or (gap == 0 and slope <= 0):
                    raise InconsistentInitial(f"degree {d}: tail term {a} undercuts {u}")
                if gap > 0 and slope < 0:
                    e = gap / -slope
                    eps = e if eps is None else min(eps, e)
        mons[d] = J
    return Fraction(1) if eps is None else Fraction(eps), mons


def generic_monomial_initial(I: HomogeneousIdeal, w, D: int, rng: random.Random | None = None,
                             check: bool = True, max_retries: int = 8, v=None) -> Perturbation:
    """Find ``v`` and ``eps`` making ``in_{w+eps v}(I) = in_v(in_w(I))`` monomial up to degree D.

    Random integer directions are drawn from ``[-B, B]`` with ``B`` doubling
    after each failure.
    """
    w = as_weight(w)
    if check:
        I.field.check_gamma(w)
    if v is None and is_monomial_up_to(I, w, D, check=False):
        mons = {d: initial_space(I, d, w, check=False).pivots for d in range(D + 1)}
        gens = minimal_monomials(u for ms in mons.values() for u in ms)
        return Perturbation((Fraction(0),) * I.nvars, Fraction(1), mons, gens)
    if v is not None:
        res = perturbation_epsilon(I, w, as_weight(v), D)
        if res is not None:
            return _perturbation(as_weight(v), res)
    rng = rng or random.Random(DEFAULT_SEED)
    B = 4
    for _ in range(max_retries):
        vv = tuple(Fraction(rng.randint(-B, B)) for _ in range(I.nvars))
        res = perturbation_epsilon(I, w, vv, D)
        if res is not None:
            return _perturbation(vv, res)
        B *= 2
    raise RetryExhausted(f"no generic direction found after {max_retries} draws")


def _perturbation(v, res):
    eps, mons = res
    gens = minimal_monomials(u for ms in mons.values() for u in ms)
    return Perturbation(v, eps, mons, gens)


def groebner_basis_at(I: HomogeneousIdeal, w, D: int, check: bool = True) -> list:
    """Pairs ``(g, u)`` with ``g = x^u + (standard monomials)`` and ``in_w(g) = x^u``.

    One pair per minimal generator ``x^u`` of the monomial ideal ``in_w(I)``
    up to degree D.
    """
    w = as_weight(w)
    if check:
        I.field.check_gamma(w)
    spaces = [initial_space(I, d, w, check=False) for d in range(D + 1)]
    if not all(sp.monomial_flag for sp in spaces):
        raise InconsistentInitial("groebner_basis_at needs a monomial initial ideal; perturb first")
    lift = {}
    for sp in spaces:
        for u, g in zip(sp.pivots, sp.lifts):
            lift[u] = g
    out = []
    for u in minimal_monomials(lift):
        g = lift[u]
        if g.terms.get(u) != 1:
            raise InconsistentInitial(f"lift of {u} is not monic")
        out.append((g, u))
    return out


def initial_ideal_key(I: HomogeneousIdeal, w, D: int, check: bool = False) -> tuple:
    """Hashable canonical form of ``in_w(I)`` degreewise up to D."""
    key = []
    for d in range(D + 1):
        sp = initial_space(I, d, w, check=check)
        R, piv = residue_rref(sp)
        key.append(tuple(tuple((j, x) for j, x in enumerate(r) if x != 0) for r in R))
    return tuple(key)


def initial_generators(I: HomogeneousIdeal, w, D: int, check: bool = False) -> list:
    """Minimal degreewise generators of ``in_w(I)`` up to D, as monic k-polynomials.

    In degree d the generators are the RREF rows of ``in_w(I)_d`` whose pivot
    is not already a pivot of the part generated in lower degrees.
    """
    gens = []
    prev = []
    k = I.field.residue_field
    for d in range(D + 1):
        sp = initial_space(I, d, w, check=check)
        if not sp.pivots:
            prev = []
            continue
        cols = sp.columns
        index = {u: i for i, u in enumerate(cols)}
        shifted = []
        for g in prev:
            for i in range(I.nvars):
                r = [k.zero] * len(cols)
                for u, c in g.terms.items():
                    uu = list(u)
                    uu[i] += 1
                    r[index[tuple(uu)]] = c
                shifted.append(r)
        lower_piv = set(rref(shifted, len(cols))[1]) if shifted else set()
        R, piv = residue_rref(sp)
        for r, p in zip(R, piv):
            if p not in lower_piv:
                gens.append(Polynomial._raw(k, I.names, {cols[j]: x for j, x in enumerate(r) if x != 0}))
        prev = [Polynomial._raw(k, I.names, {cols[j]: x for j, x in enumerate(r) if x != 0}) for r in R]
    return gens
