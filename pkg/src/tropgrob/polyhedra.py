"""Exact rational polyhedra and polyhedral complexes.

A :class:`QPolyhedron` is ``{x : A x <= b, E x = c}`` in canonical form:
implicit equalities promoted into ``E``, ``E`` in reduced echelon form
scaled to primitive integer rows, inequality normals reduced modulo ``E``
and scaled to primitive integer vectors, redundant inequalities removed.
Two polyhedra are equal exactly when their :attr:`QPolyhedron.key` agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import ArityError, DirectionNotInLineality
from .linalg import nullspace, rref
from .lp import OPTIMAL, lp_max


def _lcm(a, b):
    return a * b // gcd(a, b)


def primitive(normal: Sequence, offset=0):
    """Scale ``(normal, offset)`` by a positive rational so the normal is a primitive integer vector."""
    normal = [mpq(x) for x in normal]
    den = 1
    for x in normal:
        den = _lcm(den, int(x.denominator))
    ints = [int(x * den) for x in normal]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), mpq(offset)
    return tuple(x // g for x in ints), mpq(offset) * den / g


def _qkey(q) -> tuple:
    q = mpq(q)
    return (int(q.numerator), int(q.denominator))


def qstr(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QPolyhedron:
    """Canonical rational polyhedron.  Build with :func:`canonicalize`."""

    __slots__ = ("ambient", "ineqs", "eqs", "empty", "point", "_key", "_lin")

    def __init__(self, ambient, ineqs, eqs, empty=False, point=None):
        self.ambient = ambient
        self.ineqs = tuple(ineqs)
        self.eqs = tuple(eqs)
        self.empty = empty
        self.point = point
        self._key = None
        self._lin = None

    @property
    def dim(self) -> int:
        return -1 if self.empty else self.ambient - len(self.eqs)

    @property
    def key(self) -> tuple:
        if self._key is None:
            if self.empty:
                self._key = (self.ambient, "empty")
            else:
                self._key = (
                    self.ambient,
                    tuple((a, _qkey(b)) for a, b in self.eqs),
                    tuple((a, _qkey(b)) for a, b in self.ineqs),
                )
        return self._key

    def __eq__(self, other):
        return isinstance(other, QPolyhedron) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (self.dim, self.key) < (other.dim, other.key)

    def __repr__(self):
        if self.empty:
            return "QPolyhedron(empty)"
        parts = [f"{_fmt_row(a)} = {qstr(b)}" for a, b in self.eqs]
        parts += [f"{_fmt_row(a)} <= {qstr(b)}" for a, b in self.ineqs]
        return f"QPolyhedron(dim={self.dim}: " + ", ".join(parts) + ")"

    # -- membership ---------------------------------------------------------
    def contains(self, p) -> bool:
        if self.empty:
            return False
        p = [mpq(x) for x in p]
        return all(_dot(a, p) == b for a, b in self.eqs) and all(
            _dot(a, p) <= b for a, b in self.ineqs)

    def in_relative_interior(self, p) -> bool:
        if self.empty:
            return False
        p = [mpq(x) for x in p]
        return all(_dot(a, p) == b for a, b in self.eqs) and all(
            _dot(a, p) < b for a, b in self.ineqs)

    # -- structure ----------------------------------------------------------
    def lineality(self) -> list:
        """Basis of the lineality space (integer vectors)."""
        if self._lin is None:
            rows = [list(a) for a, _ in self.eqs] + [list(a) for a, _ in self.ineqs]
            basis = nullspace([[mpq(x) for x in r] for r in rows], self.ambient) if rows else [
                [1 if i == j else 0 for j in range(self.ambient)] for i in range(self.ambient)]
            self._lin = [list(primitive(v)[0]) for v in basis]
        return self._lin

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality())

    def constraints(self):
        """All constraints as ``<=`` rows, equalities doubled."""
        rows = list(self.ineqs)
        for a, b in self.eqs:
            rows.append((a, b))
            rows.append((tuple(-x for x in a), -b))
        return rows

    def facets(self) -> list:
        if self.empty:
            return []
        cached = _FACETS.get(self.key)
        if cached is not None:
            return cached
        out = []
        for i, (a, b) in enumerate(self.ineqs):
            others = self.ineqs[:i] + self.ineqs[i + 1:]
            F = canonicalize(self.ambient, others, self.eqs + ((a, b),))
            if not F.empty:
                out.append(F)
        _FACETS[self.key] = out
        return out

    def faces(self) -> list:
        """All proper nonempty faces, sorted."""
        seen = {}
        stack = [self]
        while stack:
            P = stack.pop()
            for F in P.facets():
                if F.key not in seen:
                    seen[F.key] = F
                    stack.append(F)
        return sorted(seen.values())

    def intersect(self, other: "QPolyhedron") -> "QPolyhedron":
        if self.ambient != other.ambient:
            raise ArityError("polyhedra in different ambient dimensions")
        if self.empty:
            return self
        if other.empty:
            return other
        return canonicalize(self.ambient, self.ineqs + other.ineqs, self.eqs + other.eqs)

    def is_gamma_rational(self, in_gamma) -> bool:
        """Whether some positive rescaling of each row puts its offset in the value group.

        Scaling by the offset's denominator always lands in Z, so this holds
        for every value group containing Z; the check is kept explicit.
        """
        for a, b in self.ineqs + self.eqs:
            if not in_gamma(Fraction(int(b.numerator), 1)):
                return False
        return True


_FACETS: dict = {}


def _dot(a, p):
    s = mpq(0)
    for x, y in zip(a, p):
        if x:
            s += x * y
    return s


def _fmt_row(a) -> str:
    terms = []
    for i, x in enumerate(a):
        if x == 0:
            continue
        v = f"x{i}"
        terms.append(v if x == 1 else ("-" + v if x == -1 else f"{x}*{v}"))
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def empty_polyhedron(n: int) -> QPolyhedron:
    return QPolyhedron(n, (), (), empty=True)


def full_space(n: int) -> QPolyhedron:
    return QPolyhedron(n, (), (), point=[mpq(0)] * n)


def canonicalize(n: int, ineqs: Iterable = (), eqs: Iterable = ()) -> QPolyhedron:
    """Canonical form of ``{x : a.x <= b for (a, b) in ineqs, a.x = c for (a, c) in eqs}``."""
    ineqs = [([mpq(x) for x in a], mpq(b)) for a, b in ineqs]
    eqs = [([mpq(x) for x in a], mpq(c)) for a, c in eqs]
    for a, _ in ineqs + eqs:
        if len(a) != n:
            raise ArityError(f"row of length {len(a)} in ambient dimension {n}")
    while True:
        # equalities: reduced echelon form, consistency
        E, piv = rref([a + [c] for a, c in eqs], n + 1) if eqs else ([], [])
        if n in piv:
            return empty_polyhedron(n)
        # reduce inequalities modulo the equalities, make primitive, merge parallels
        best = {}
        for a, b in ineqs:
            a = list(a)
            for r, p in zip(E, piv):
                f = a[p]
                if f != 0:
                    a = [x - f * y for x, y in zip(a, r[:n])]
                    b = b - f * r[n]
            if all(x == 0 for x in a):
                if b < 0:
                    return empty_polyhedron(n)
                continue
            na, nb = primitive(a, b)
            if na not in best or nb < best[na]:
                best[na] = nb
        promoted = False
        for na, nb in list(best.items()):
            neg = tuple(-x for x in na)
            if neg in best and na in best:
                s = nb + best[neg]
                if s < 0:
                    return empty_polyhedron(n)
                if s == 0:
                    eqs.append(([mpq(x) for x in na], nb))
                    del best[na], best[neg]
                    promoted = True
        rows = sorted(best.items())
        eq_rows = [(r[:n], r[n]) for r in E]
        if promoted:
            ineqs = [(list(a), b) for a, b in rows]
            continue
        # strict feasibility: maximize a common slack t <= 1
        A = [list(a) + [1] for a, _ in rows]
        bb = [b for _, b in rows]
        for a, c in eq_rows:
            A.append(list(a) + [0])
            bb.append(c)
            A.append([-x for x in a] + [0])
            bb.append(-c)
        A.append([0] * n + [1])
        bb.append(1)
        res = lp_max([0] * n + [1], A, bb)
        t = res.value
        if t < 0:
            return empty_polyhedron(n)
        if t == 0:
            implicit = [i for i in range(len(rows)) if res.y[i] > 0]
            eqs = [(list(a), c) for a, c in eq_rows] + [(list(rows[i][0]), rows[i][1]) for i in implicit]
            ineqs = [(list(a), b) for i, (a, b) in enumerate(rows) if i not in implicit]
            continue
        point = res.x[:n]
        break
    # redundancy removal
    keep = list(rows)
    eq_cons = []
    for a, c in eq_rows:
        eq_cons.append((list(a), c))
        eq_cons.append(([-x for x in a], -c))
    i = 0
    while i < len(keep):
        a, b = keep[i]
        others = keep[:i] + keep[i + 1:]
        cons = [(list(x), y) for x, y in others] + eq_cons
        res = lp_max(list(a), [c[0] for c in cons], [c[1] for c in cons]) if cons else None
        if res is not None and res.status == OPTIMAL and res.value <= b:
            keep.pop(i)
        else:
            i += 1
    eq_out = tuple(primitive(a, c) for a, c in eq_rows)
    return QPolyhedron(n, tuple(keep), eq_out, point=point)


# ---------------------------------------------------------------------------
# complexes

@dataclass(frozen=True)
class TropicalAffineFamily:
    """``w -> min_j (offset_j + slope_j . w)``."""

    terms: tuple

    @classmethod
    def make(cls, terms: Iterable) -> "TropicalAffineFamily":
        best = {}
        for a, m in terms:
            m = tuple(mpq(x) for x in m)
            a = mpq(a)
            if m not in best or a < best[m]:
                best[m] = a
        if not best:
            raise ValueError("empty tropical family")
        return cls(tuple(sorted((a, m) for m, a in best.items())))

    @property
    def ambient(self) -> int:
        return len(self.terms[0][1])

    def evaluate(self, w):
        w = [mpq(x) for x in w]
        return min(a + _dot(m, w) for a, m in self.terms)

    def active(self, w) -> tuple:
        w = [mpq(x) for x in w]
        vals = [a + _dot(m, w) for a, m in self.terms]
        lo = min(vals)
        return tuple(i for i, v in enumerate(vals) if v == lo)


class PolyhedralComplex:
    """Cells (sorted by dimension then key), labels, and facet incidences.

    ``faces`` holds pairs ``(i, j)`` meaning cell ``j`` is a facet of cell ``i``.
    """

    def __init__(self, ambient: int, cells: Sequence[QPolyhedron], labels=None, faces=None):
        self.ambient = ambient
        order = sorted(range(len(cells)), key=lambda i: cells[i])
        self.cells = [cells[i] for i in order]
        labels = list(labels) if labels is not None else [None] * len(cells)
        self.labels = [labels[i] for i in order]
        self.index = {c.key: i for i, c in enumerate(self.cells)}
        if faces is None:
            faces = self._compute_faces()
        else:
            inv = {old: new for new, old in enumerate(order)}
            faces = sorted((inv[i], inv[j]) for i, j in faces)
        self.faces = faces

    @classmethod
    def from_maximal(cls, ambient: int, cells: Iterable[QPolyhedron]) -> "PolyhedralComplex":
        """The face closure of ``cells``."""
        seen = {}
        for c in cells:
            if c.empty:
                continue
            seen[c.key] = c
            for F in c.faces():
                seen.setdefault(F.key, F)
        return cls(ambient, list(seen.values()))

    @classmethod
    def empty(cls, ambient: int) -> "PolyhedralComplex":
        return cls(ambient, [])

    def _compute_faces(self):
        out = []
        for i, c in enumerate(self.cells):
            for F in c.facets():
                j = self.index.get(F.key)
                if j is not None:
                    out.append((i, j))
        return sorted(out)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def is_empty(self) -> bool:
        return not self.cells

    def lineality(self) -> list:
        """Common lineality space of all cells."""
        if not self.cells:
            return []
        rows = []
        for c in self.cells:
            rows += [list(a) for a, _ in c.eqs] + [list(a) for a, _ in c.ineqs]
        if not rows:
            return [[1 if i == j else 0 for j in range(self.ambient)] for i in range(self.ambient)]
        return [list(primitive(v)[0]) for v in nullspace([[mpq(x) for x in r] for r in rows], self.ambient)]

    def maximal_indices(self) -> list:
        has_parent = {j for _, j in self.faces}
        return [i for i in range(len(self.cells)) if i not in has_parent]

    def maximal_cells(self) -> list:
        return [self.cells[i] for i in self.maximal_indices()]

    def dimension(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def counts(self, modulo: int = 0) -> dict:
        """Number of cells per dimension, dimensions shifted down by ``modulo``."""
        out = {}
        for c in self.cells:
            out[c.dim - modulo] = out.get(c.dim - modulo, 0) + 1
        return dict(sorted(out.items()))

    def contains(self, p) -> bool:
        return any(c.contains(p) for c in self.cells)

    def locate(self, p):
        """Index of the cell whose relative interior contains ``p``, or ``None``."""
        for i, c in enumerate(self.cells):
            if c.in_relative_interior(p):
                return i
        return None

    def subcomplex(self, keep: Sequence[int]) -> "PolyhedralComplex":
        keep = sorted(set(keep))
        pos = {old: new for new, old in enumerate(keep)}
        faces = [(pos[i], pos[j]) for i, j in self.faces if i in pos and j in pos]
        return PolyhedralComplex(self.ambient, [self.cells[i] for i in keep],
                                 [self.labels[i] for i in keep], faces)

    def key_set(self) -> frozenset:
        return frozenset(c.key for c in self.cells)


def descendants(cx: PolyhedralComplex) -> list:
    """For each cell, the set of indices of its faces (including itself)."""
    children = {}
    for i, j in cx.faces:
        children.setdefault(i, []).append(j)
    out = [None] * len(cx.cells)
    order = sorted(range(len(cx.cells)), key=lambda i: cx.cells[i].dim)
    for i in order:
        s = {i}
        for j in children.get(i, []):
            s |= out[j]
        out[i] = s
    return out


def check_complex(cx: PolyhedralComplex) -> list:
    """Violations of the complex axioms; an empty list means ``cx`` is a polyhedral complex."""
    problems = []
    desc = descendants(cx)
    for i, c in enumerate(cx.cells):
        for F in c.facets():
            if F.key not in cx.index:
                problems.append(f"facet of cell {i} missing")
    for i in range(len(cx.cells)):
        for j in range(i + 1, len(cx.cells)):
            X = cx.cells[i].intersect(cx.cells[j])
            if X.empty:
                continue
            k = cx.index.get(X.key)
            if k is None or k not in desc[i] or k not in desc[j]:
                problems.append(f"cells {i} and {j} meet outside a common face")
    return problems


def linearity_complex(F: TropicalAffineFamily) -> PolyhedralComplex:
    """Coarsest complex on whose cells ``F`` is affine; each label is the active term set."""
    n = F.ambient
    regions = []
    for j, (a, m) in enumerate(F.terms):
        rows = []
        for k, (b, mk) in enumerate(F.terms):
            if k != j:
                rows.append(([x - y for x, y in zip(m, mk)], b - a))
        R = canonicalize(n, rows)
        if R.dim == n:
            regions.append(R)
    cx = PolyhedralComplex.from_maximal(n, regions)
    cx.labels = [F.active(c.point) for c in cx.cells]
    cx.family = F
    return cx


def nonlinearity_locus(F: TropicalAffineFamily) -> PolyhedralComplex:
    """Cells of the linearity complex where the minimum is attained at least twice."""
    cx = linearity_complex(F)
    sub = cx.subcomplex([i for i, lab in enumerate(cx.labels) if len(lab) >= 2])
    sub.family = F
    return sub


def _check_arity(a: PolyhedralComplex, b: PolyhedralComplex):
    if a.ambient != b.ambient:
        raise ArityError("complexes in different ambient dimensions")


def common_refinement(c1: PolyhedralComplex, c2: PolyhedralComplex) -> PolyhedralComplex:
    """Complex of all nonempty intersections ``s & t``; its support is ``|c1| & |c2|``.

    Labels are pairs of the labels of the cells of ``c1`` and ``c2`` whose
    relative interiors contain the new cell's relative interior.
    """
    _check_arity(c1, c2)
    pieces = {}
    for s in c1.maximal_cells():
        for t in c2.maximal_cells():
            X = s.intersect(t)
            if not X.empty:
                pieces[X.key] = X
    cx = PolyhedralComplex.from_maximal(c1.ambient, pieces.values())
    labels = []
    for c in cx.cells:
        i, j = c1.locate(c.point), c2.locate(c.point)
        labels.append((c1.labels[i] if i is not None else None,
                       c2.labels[j] if j is not None else None))
    cx.labels = labels
    return cx


def _uncovered_point(sigma: QPolyhedron, other: PolyhedralComplex):
    """A point of ``sigma`` outside ``|other|``, or ``None`` if ``sigma`` is covered."""
    k = sigma.dim
    pieces = {}
    for t in other.maximal_cells():
        X = sigma.intersect(t)
        if X.dim == k:
            pieces[X.key] = X
    pieces = list(pieces.values())
    if not pieces:
        return _point_avoiding(sigma, other)
    for P in pieces:
        for F in P.facets():
            if not sigma.in_relative_interior(F.point):
                continue
            if any(Q is not P and Q.contains(F.point) for Q in pieces):
                continue
            step = [f - p for f, p in zip(F.point, P.point)]
            delta = mpq(1)
            for _ in range(200):
                q = [f + delta * s for f, s in zip(F.point, step)]
                if sigma.contains(q) and not other.contains(q):
                    return q
                delta /= 2
    return None


def _point_avoiding(sigma: QPolyhedron, other: PolyhedralComplex):
    """A point of ``sigma`` outside ``|other|``, assuming ``|other|`` meets ``sigma`` in lower dimension."""
    if not other.contains(sigma.point):
        return sigma.point
    basis = nullspace([[mpq(x) for x in a] for a, _ in sigma.eqs], sigma.ambient) if sigma.eqs else [
        [1 if i == j else 0 for j in range(sigma.ambient)] for i in range(sigma.ambient)]
    # directions on the moment curve are in general position
    for j in range(1, 4 * sigma.ambient + 8):
        d = [sum((mpq(j) ** k * b[i] for k, b in enumerate(basis)), mpq(0)) for i in range(sigma.ambient)]
        delta = mpq(1)
        for _ in range(64):
            q = [p + delta * x for p, x in zip(sigma.point, d)]
            if sigma.in_relative_interior(q) and not other.contains(q):
                return q
            delta /= 2
    return sigma.point


def covers(a: PolyhedralComplex, b: PolyhedralComplex):
    """Whether ``|a|`` lies inside ``|b|``; returns ``(flag, witness in |a| - |b|)``."""
    _check_arity(a, b)
    for s in a.maximal_cells():
        q = _uncovered_point(s, b)
        if q is not None:
            return False, q
    return True, None


def support_equal(a: PolyhedralComplex, b: PolyhedralComplex):
    """Whether ``|a| == |b|``; on failure returns a point in exactly one of them."""
    ok, q = covers(a, b)
    if not ok:
        return False, q
    ok, q = covers(b, a)
    if not ok:
        return False, q
    return True, None


def project_quotient(cx: PolyhedralComplex, direction: Sequence) -> PolyhedralComplex:
    """Slice by ``x_k = 0`` (``k`` the last coordinate with ``direction[k] != 0``) and drop ``x_k``.

    ``direction`` must lie in the lineality space of every cell; the cell
    poset is preserved.
    """
    d = [mpq(x) for x in direction]
    nz = [i for i, x in enumerate(d) if x != 0]
    if not nz:
        raise DirectionNotInLineality("zero direction")
    k = nz[-1]
    return slice_coordinate(cx, k, d)


def slice_coordinate(cx: PolyhedralComplex, k: int, direction=None) -> PolyhedralComplex:
    """Intersect every cell with ``x_k = 0`` and delete coordinate ``k``."""
    n = cx.ambient
    new_cells = []
    for c in cx.cells:
        if direction is not None:
            for a, _ in c.eqs + c.ineqs:
                if _dot(a, direction) != 0:
                    raise DirectionNotInLineality(f"{list(direction)} is not in the lineality of {c}")
        ineqs = [(a[:k] + a[k + 1:], b) for a, b in c.ineqs]
        eqs = [(a[:k] + a[k + 1:], b) for a, b in c.eqs]
        new_cells.append(canonicalize(n - 1, ineqs, eqs))
    pos = {}
    cells, labels, src = [], [], []
    for i, c in enumerate(new_cells):
        if c.empty:
            continue
        if c.key in pos:
            continue
        pos[c.key] = len(cells)
        cells.append(c)
        labels.append(cx.labels[i])
        src.append(i)
    back = {i: pos[new_cells[i].key] for i in src}
    faces = [(back[i], back[j]) for i, j in cx.faces if i in back and j in back]
    out = PolyhedralComplex(n - 1, cells, labels, faces)
    return out


# ---------------------------------------------------------------------------
# JSON

def polyhedron_json(P: QPolyhedron) -> dict:
    return {
        "dim": P.dim,
        "inequalities": [{"normal": list(a), "offset": qstr(b)} for a, b in P.ineqs],
        "equalities": [{"normal": list(a), "offset": qstr(b)} for a, b in P.eqs],
    }


def complex_json(cx: PolyhedralComplex, label_fn=None) -> dict:
    cells = []
    for c, lab in zip(cx.cells, cx.labels):
        d = polyhedron_json(c)
        if label_fn is not None:
            d.update(label_fn(lab))
        else:
            d["label"] = _jsonable(lab)
        cells.append(d)
    return {
        "ambient_dim": cx.ambient,
        "lineality": [[qstr(x) for x in v] for v in cx.lineality()],
        "cells": cells,
        "faces": [list(p) for p in cx.faces],
    }


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    try:
        return qstr(x)
    except (TypeError, ValueError):
        return str(x)


def complex_from_json(data: dict) -> PolyhedralComplex:
    n = data["ambient_dim"]
    cells = []
    for c in data["cells"]:
        ineqs = [(r["normal"], mpq(r["offset"])) for r in c["inequalities"]]
        eqs = [(r["normal"], mpq(r["offset"])) for r in c["equalities"]]
        cells.append(canonicalize(n, ineqs, eqs))
    return PolyhedralComplex(n, cells, [c.get("label") for c in data["cells"]],
                             [tuple(p) for p in data.get("faces", [])])
