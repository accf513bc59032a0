"""Gröbner cones and the Gröbner complex of a homogeneous ideal.

Two independent constructions are provided.  :func:`complex_state_mode`
tropicalizes the state polynomials (Plücker vectors of the graded pieces)
and refines their linearity complexes.  :func:`complex_traversal_mode`
walks from cone to neighbouring cone across facets.  On every instance both
must return the same cells.
"""
from __future__ import annotations

import random
import warnings
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from gmpy2 import mpq

from .errors import (
    CombinatorialCapExceeded,
    DegreeBoundTooSmall,
    DegreeBoundWarning,
    InconsistentInitial,
    NonConvergence,
)
from .ideal_graded import (
    DEFAULT_SEED,
    HomogeneousIdeal,
    generic_monomial_initial,
    groebner_basis_at,
    initial_generators,
    initial_ideal_key,
    is_monomial_up_to,
    macaulay_piece,
)
from .linalg import det
from .polyhedra import (
    PolyhedralComplex,
    QPolyhedron,
    TropicalAffineFamily,
    canonicalize,
    common_refinement,
    complex_json,
    full_space,
    linearity_complex,
    qstr,
)
from .poly import as_weight

DEFAULT_CAP = 200_000
MAX_CELLS = 20_000


@dataclass
class GrobnerCell:
    """A closed Gröbner cell with the initial ideal of its relative interior."""

    poly: QPolyhedron
    initial_gens: list
    monomial_flag: bool
    representative_w: tuple
    ideal_key: tuple

    def to_json(self) -> dict:
        return {
            "initial_ideal": [str(g) for g in self.initial_gens],
            "monomial": self.monomial_flag,
            "representative_w": [qstr(x) for x in self.representative_w],
        }


def default_degree(I: HomogeneousIdeal, seed: int = DEFAULT_SEED, draws: int = 3, extra: int = 2) -> int:
    """Heuristic degree bound, not certified.

    Top degree of the minimal generators of a generic monomial initial ideal
    at a few random integer weights; the most frequent value wins, the larger
    on ties.  The search looks at most ``extra`` degrees past the generators.
    """
    base = max(I.gen_degrees())
    rng = random.Random(seed)
    tops = []
    for _ in range(draws):
        w = tuple(rng.randint(-4, 4) for _ in range(I.nvars))
        top = base
        for D in range(base + 1, base + extra + 1):
            gens = generic_monomial_initial(I, w, D, rng=rng, check=False).gens
            top = max([base] + [sum(u) for u in gens])
            if top < D:
                break
        tops.append(top)
    counts = Counter(tops)
    best = max(counts.items(), key=lambda kv: (kv[1], kv[0]))[0]
    warnings.warn(DegreeBoundWarning(
        f"degree bound D={best} is a heuristic from {draws} generic initial ideals and is not certified"),
        stacklevel=2)
    return best


def representative(P: QPolyhedron) -> tuple:
    """Canonical relative-interior point, shifted along ``(1,...,1)`` to end in 0."""
    p = canonicalize(P.ambient, P.ineqs, P.eqs).point
    last = p[-1]
    return tuple(Fraction(int(x.numerator), int(x.denominator)) - Fraction(int(last.numerator), int(last.denominator))
                 for x in p)


def label_cell(I: HomogeneousIdeal, P: QPolyhedron, D: int) -> GrobnerCell:
    rep = representative(P)
    if not P.contains(rep):
        raise DegreeBoundTooSmall("cell is not invariant under (1,...,1)")
    return GrobnerCell(
        P,
        initial_generators(I, rep, D),
        is_monomial_up_to(I, rep, D, check=False),
        rep,
        initial_ideal_key(I, rep, D),
    )


def _monomial_cone(I: HomogeneousIdeal, w, D: int) -> QPolyhedron:
    """Closed cone of a weight with monomial initial ideal, from its reduced Gröbner basis."""
    K = I.field
    rows = []
    for g, u in groebner_basis_at(I, w, D, check=False):
        for a, c in g.terms.items():
            if a != u:
                rows.append(([x - y for x, y in zip(u, a)], mpq(K.val(c))))
    return canonicalize(I.nvars, rows)


def cone_polyhedron(I: HomogeneousIdeal, w, D: int, rng=None) -> QPolyhedron:
    """Closure of the Gröbner cell of ``w`` (no value-group check)."""
    w = as_weight(w)
    if is_monomial_up_to(I, w, D, check=False):
        P = _monomial_cone(I, w, D)
    else:
        try:
            pert = generic_monomial_initial(I, w, D, rng=rng, check=False)
        except InconsistentInitial as e:
            raise DegreeBoundTooSmall(str(e)) from e
        P2 = _monomial_cone(I, pert.point(w), D)
        wq = [mpq(x) for x in w]
        if not P2.contains(wq):
            raise DegreeBoundTooSmall("perturbed cone misses the original weight")
        tight = [(a, b) for a, b in P2.ineqs if sum(x * y for x, y in zip(a, wq)) == b]
        loose = [(a, b) for a, b in P2.ineqs if sum(x * y for x, y in zip(a, wq)) != b]
        P = canonicalize(I.nvars, loose, P2.eqs + tuple(tight))
    if not P.in_relative_interior([mpq(x) for x in w]):
        raise DegreeBoundTooSmall(f"weight {w} is not interior to its computed cell")
    return P


def cone_of(I: HomogeneousIdeal, w, D: int | None = None, rng=None, check: bool = True) -> GrobnerCell:
    """The Gröbner cell of ``w`` together with its initial ideal data up to degree ``D``."""
    w = as_weight(w)
    if check:
        I.field.check_gamma(w)
    D = default_degree(I) if D is None else D
    P = cone_polyhedron(I, w, D, rng)
    cell = label_cell(I, P, D)
    if cell.ideal_key != initial_ideal_key(I, w, D):
        raise DegreeBoundTooSmall("initial ideal varies on the computed cell")
    return cell


# ---------------------------------------------------------------------------
# state polynomials

@dataclass
class StateData:
    """Per degree, ``(valuation of the minor, exponent sum)`` for each nonzero maximal minor."""

    degree_bound: int
    entries: dict            # d -> list of (Fraction, tuple)

    def family(self, d: int) -> TropicalAffineFamily | None:
        e = self.entries.get(d)
        if not e:
            return None
        return TropicalAffineFamily.make(e)


def state_data(I: HomogeneousIdeal, D: int | None = None, cap: int = DEFAULT_CAP) -> StateData:
    D = default_degree(I) if D is None else D
    K = I.field
    out = {}
    for d in range(D + 1):
        piece = macaulay_piece(I, d)
        s = piece.s
        if s == 0:
            out[d] = []
            continue
        count = comb(len(piece.columns), s)
        if count > cap:
            raise CombinatorialCapExceeded(d, count, cap)
        entries = []
        for J in combinations(range(len(piece.columns)), s):
            m = det([[r[j] for j in J] for r in piece.rows])
            if m == 0:
                continue
            total = tuple(sum(piece.columns[j][i] for j in J) for i in range(I.nvars))
            entries.append((K.val(m), total))
        if not entries:
            raise InconsistentInitial(f"degree {d}: all maximal minors vanish")
        lo = min(v for v, _ in entries)
        out[d] = [(v - lo, u) for v, u in entries]
    return StateData(D, out)


def _labelled(I: HomogeneousIdeal, cx: PolyhedralComplex, D: int) -> PolyhedralComplex:
    cx.labels = [label_cell(I, c, D) for c in cx.cells]
    return cx


def complex_state_mode(I: HomogeneousIdeal, D: int | None = None, cap: int = DEFAULT_CAP) -> PolyhedralComplex:
    """Gröbner complex as the common refinement of the linearity complexes of the state polynomials."""
    D = default_degree(I) if D is None else D
    sd = state_data(I, D, cap)
    n = I.nvars
    cx = PolyhedralComplex(n, [full_space(n)])
    for d in range(D + 1):
        F = sd.family(d)
        if F is None or len(F.terms) == 1:
            continue
        cx = common_refinement(cx, linearity_complex(F))
    cx = PolyhedralComplex.from_maximal(n, cx.maximal_cells())
    return _labelled(I, cx, D)


def complex_traversal_mode(I: HomogeneousIdeal, D: int | None = None, seed: int = DEFAULT_SEED,
                           max_cells: int = MAX_CELLS) -> PolyhedralComplex:
    """Gröbner complex by breadth-first flipping across facets of maximal cones."""
    D = default_degree(I) if D is None else D
    rng = random.Random(seed)
    n = I.nvars
    start = generic_monomial_initial(I, (0,) * n, D, rng=rng, check=False).point((0,) * n)
    first = cone_polyhedron(I, start, D, rng)
    found = {first.key: first}
    queue = deque([first])
    while queue:
        C = queue.popleft()
        facets = C.facets()
        if len(facets) != len(C.ineqs):
            raise InconsistentInitial("a cone inequality does not define a facet")
        for (a, _), F in zip(C.ineqs, facets):
            w = as_weight(_frac(x) for x in F.point)
            nu = as_weight(a)
            try:
                pert = generic_monomial_initial(I, w, D, rng=rng, check=False, v=nu)
            except InconsistentInitial as e:
                raise DegreeBoundTooSmall(str(e)) from e
            N = cone_polyhedron(I, pert.point(w), D, rng)
            if N.key not in found:
                found[N.key] = N
                queue.append(N)
                if len(found) > max_cells:
                    raise NonConvergence(f"more than {max_cells} maximal cells")
    cx = PolyhedralComplex.from_maximal(n, found.values())
    return _labelled(I, cx, D)


def _frac(x) -> Fraction:
    x = mpq(x)
    return Fraction(int(x.numerator), int(x.denominator))


def groebner_complex(I: HomogeneousIdeal, D: int | None = None, mode: str = "traversal",
                     seed: int = DEFAULT_SEED, cap: int = DEFAULT_CAP) -> PolyhedralComplex:
    """Dispatch on ``mode`` in {"state", "traversal", "both"}; "both" checks agreement."""
    if mode not in ("state", "traversal", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    D = default_degree(I, seed) if D is None else D
    if mode == "state":
        return complex_state_mode(I, D, cap)
    if mode == "traversal":
        return complex_traversal_mode(I, D, seed)
    if mode == "both":
        a = complex_state_mode(I, D, cap)
        b = complex_traversal_mode(I, D, seed)
        if a.key_set() != b.key_set():
            raise InconsistentInitial("state and traversal modes disagree")
        return a
    raise ValueError(f"unknown mode {mode!r}")


def maximal_labels(cx: PolyhedralComplex) -> list:
    return [cx.labels[i] for i in cx.maximal_indices()]


def grobner_json(cx: PolyhedralComplex) -> dict:
    return complex_json(cx, lambda cell: cell.to_json())
