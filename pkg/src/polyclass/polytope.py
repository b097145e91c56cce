"""Lattice polytopes from vertex data, with exact facet and point enumeration.

A :class:`Polytope` is the convex hull of finitely many integer points.
All derived data (affine hull, facets, lattice points, facet value
vectors) is computed exactly and cached on first use; instances are
immutable.

Facet values are normalized the way class-group computations need them:
for each facet the affine form is scaled so that its values on the
lattice points of the polytope are nonnegative integers with gcd 1 and
vanish exactly on the facet.  That value vector is canonical even though
the supporting form itself is only determined up to the affine hull.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product as iterproduct
from math import gcd
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .intlinalg import (
    IntMatrix,
    _echelon_int,
    det_laplace,
    hnf_row_lattice,
    int_kernel_basis,
)

Point = tuple[int, ...]
# An affine form (a, b) represents the function x -> <a, x> + b.
Form = tuple[tuple[int, ...], int]


def _eval_form(form: Form, pt: Sequence[int]) -> int:
    a, b = form
    s = b
    for c, x in zip(a, pt):
        if c:
            s += c * x
    return s


def _det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, exact, sign possibly flipped.

    Every caller only cares about |det| or about det == 0, so the row
    swaps inside the Bareiss elimination are not sign-tracked.
    """
    n = len(rows)
    if n <= 4:
        return det_laplace(rows)
    ech, pivots = _echelon_int(rows, n)
    if len(pivots) < n:
        return 0
    return ech[-1][pivots[-1]]


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane {x : <a, x> + b = 0} with rational coefficients."""

    a: tuple[Fraction, ...]
    b: Fraction

    def __post_init__(self) -> None:
        if not any(self.a):
            raise ValueError("hyperplane normal must be nonzero")

    def evaluate(self, pt: Sequence[int | Fraction]) -> Fraction:
        if len(pt) != len(self.a):
            raise ValueError("point dimension mismatch")
        return sum((c * x for c, x in zip(self.a, pt)), start=self.b)


@dataclass(frozen=True)
class FacetData:
    """One facet: supporting hyperplane plus its normalized value vector.

    ``hyperplane`` is scaled so that evaluating it at a lattice point of
    the parent polytope gives exactly ``values[pt]``.  ``int_form`` is
    the primitive integer representative of the same hyperplane and
    ``divisor`` the gcd that relates them: values[pt] = int_form(pt) / divisor.
    ``vertex_set`` holds indices into the parent's vertex tuple.
    """

    facet_id: int
    hyperplane: Hyperplane
    vertex_set: tuple[int, ...]
    values: Mapping[Point, int]
    int_form: Form
    divisor: int

    def value(self, pt: Point) -> int:
        return self.values[pt]


def _validate_vertices(points: Iterable[Sequence[int]],
                       ambient_dim: int | None) -> tuple[tuple[Point, ...], int]:
    pts = []
    for p in points:
        tp = tuple(p)
        for v in tp:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"vertex coordinates must be int, got {v!r}")
        pts.append(tuple(int(v) for v in tp))
    if not pts:
        raise ValueError("a polytope needs at least one vertex")
    d = ambient_dim if ambient_dim is not None else len(pts[0])
    for p in pts:
        if len(p) != d:
            raise ValueError("all vertices must have the same dimension")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate vertices")
    return tuple(sorted(pts)), d


class Polytope:
    """Convex hull of integer points, canonicalized to lex-sorted vertices.

    The constructor is strict: every supplied point must be an actual
    vertex of the hull, checked at construction time.  Use
    :meth:`from_points` to build a polytope from an arbitrary generating
    set with duplicates and interior points silently dropped.
    """

    __slots__ = ("vertices", "ambient_dim", "__dict__")

    def __init__(self, vertices: Iterable[Sequence[int]], ambient_dim: int | None = None):
        verts, d = _validate_vertices(vertices, ambient_dim)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "ambient_dim", d)
        self._hull  # noqa: B018  -- forces the non-vertex check now

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]],
                    ambient_dim: int | None = None) -> "Polytope":
        pts = [tuple(int(v) for v in p) for p in points]
        uniq, d = _validate_vertices(set(pts), ambient_dim)
        aff, cands = _hull_candidates(uniq, d)
        keep = [p for i, p in enumerate(uniq) if _is_vertex(uniq, i, d, aff, cands)]
        return cls(keep, d)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Polytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    # -- basic geometry ------------------------------------------------

    @cached_property
    def dim(self) -> int:
        v0 = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, v0)) for v in self.vertices[1:]]
        _, pivots = _echelon_int(diffs, self.ambient_dim)
        return len(pivots)

    @cached_property
    def is_01(self) -> bool:
        return all(v in (0, 1) for pt in self.vertices for v in pt)

    @cached_property
    def _hull(self) -> tuple[tuple[Form, ...], tuple[tuple[Form, tuple[int, ...]], ...]]:
        """(affine hull equations, facet (form, vertex indices) pairs).

        Facet forms are primitive integer forms oriented >= 0 on the
        polytope, ordered by their sorted vertex index tuples.  Raises if
        some supplied point is not a vertex.
        """
        aff, cands = _hull_candidates(self.vertices, self.ambient_dim)
        for i in range(len(self.vertices)):
            if not _is_vertex(self.vertices, i, self.ambient_dim, aff, cands):
                raise ValueError(f"point {self.vertices[i]} is not a vertex of the hull")
        facets = tuple(sorted(cands, key=lambda fc: fc[1]))
        return tuple(aff), facets

    @property
    def affine_hull_forms(self) -> tuple[Form, ...]:
        """Primitive integer affine forms vanishing on the polytope."""
        return self._hull[0]

    @cached_property
    def lattice_points(self) -> tuple[Point, ...]:
        """All integer points of the polytope, in lex order."""
        return self._scaled_lattice_points(1)

    def _scaled_lattice_points(self, h: int) -> tuple[Point, ...]:
        """Integer points of the dilation h*P, without building h*P.

        A form (a, b) valid for P turns into (a, h*b) for h*P, for both
        the affine hull equations and the facet inequalities.
        """
        aff, facets = self._hull
        eqs = [(a, h * b) for a, b in aff]
        ineqs = [(a, h * b) for (a, b), _ in facets]
        ranges = []
        for j in range(self.ambient_dim):
            coords = [v[j] for v in self.vertices]
            ranges.append(range(h * min(coords), h * max(coords) + 1))
        out = []
        for pt in iterproduct(*ranges):
            ok = True
            for form in eqs:
                if _eval_form(form, pt) != 0:
                    ok = False
                    break
            if ok:
                for form in ineqs:
                    if _eval_form(form, pt) < 0:
                        ok = False
                        break
            if ok:
                out.append(pt)
        return tuple(out)

    @cached_property
    def facets(self) -> tuple[FacetData, ...]:
        """Facets with normalized value vectors, in canonical order.

        Canonical order is by sorted vertex index tuple.  The value
        vector of each facet is divided by its gcd over the lattice
        points, which makes it independent of the choice of supporting
        form modulo the affine hull.
        """
        if self.dim == 0:
            raise ValueError("a 0-dimensional polytope has no facets")
        _, raw = self._hull
        pts = self.lattice_points
        out = []
        for fid, (form, vset) in enumerate(raw):
            vals = [_eval_form(form, pt) for pt in pts]
            g = 0
            for v in vals:
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                vals = [v // g for v in vals]
            else:
                g = 1
            a, b = form
            hyp = Hyperplane(tuple(Fraction(c, g) for c in a), Fraction(b, g))
            out.append(FacetData(
                facet_id=fid,
                hyperplane=hyp,
                vertex_set=vset,
                values=MappingProxyType(dict(zip(pts, vals))),
                int_form=form,
                divisor=g,
            ))
        return tuple(out)

    def contains(self, pt: Sequence[int | Fraction]) -> bool:
        """Exact membership test for a rational point."""
        if len(pt) != self.ambient_dim:
            raise ValueError("point dimension mismatch")
        aff, facets = self._hull
        q = [Fraction(x) for x in pt]
        for a, b in aff:
            if sum((c * x for c, x in zip(a, q)), start=Fraction(b)) != 0:
                return False
        for (a, b), _ in facets:
            if sum((c * x for c, x in zip(a, q)), start=Fraction(b)) < 0:
                return False
        return True

    def is_simple(self) -> bool:
        """True when every vertex lies on exactly dim facets."""
        counts = [0] * len(self.vertices)
        for f in self.facets:
            for i in f.vertex_set:
                counts[i] += 1
        return all(c == self.dim for c in counts)

    def dilate(self, k: int) -> "Polytope":
        """The dilation k*P, k >= 1."""
        if type(k) is not int or k < 1:
            raise ValueError("dilation factor must be a positive integer")
        if k == 1:
            return self
        return Polytope([tuple(k * x for x in v) for v in self.vertices], self.ambient_dim)

    @cached_property
    def lattice_height_basis(self) -> IntMatrix:
        """Hermite basis of the lattice spanned by {(v, 1) : v a lattice point}."""
        rows = [pt + (1,) for pt in self.lattice_points]
        return hnf_row_lattice(IntMatrix.from_rows(rows, self.ambient_dim + 1))


def _hull_candidates(verts: tuple[Point, ...], d: int):
    """Affine hull forms and facet candidates of conv(verts).

    Returns (affine_forms, {(form, on_indices)}): affine_forms are
    primitive integer forms vanishing on every point; each facet
    candidate is a primitive integer form, oriented >= 0 on all points,
    together with the sorted tuple of indices of points it vanishes on.
    Works for any generating set, not just vertex sets, because every
    facet of the hull passes through affinely independent input points.
    """
    n = len(verts)
    v0 = verts[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
    _, pivots = _echelon_int(diffs, d)
    k = len(pivots)
    aff = []
    if k < d:
        aff = [(vec[:d], vec[d]) for vec in int_kernel_basis(
            [v + (1,) for v in verts], d + 1)]
    if k == 0:
        return aff, []
    found: dict[tuple[int, ...], Form] = {}
    found_sets: list[frozenset[int]] = []
    full_dim = (k == d)
    for sub in combinations(range(n), k):
        subset = set(sub)
        if any(subset <= fs for fs in found_sets):
            continue
        pts = [verts[i] for i in sub]
        if full_dim:
            form = _spanning_form_full(pts, d)
        else:
            form = _spanning_form_general(pts, verts, d, len(aff))
        if form is None:
            continue
        vals = [_eval_form(form, v) for v in verts]
        sign = 0
        ok = True
        for val in vals:
            if val > 0:
                if sign < 0:
                    ok = False
                    break
                sign = 1
            elif val < 0:
                if sign > 0:
                    ok = False
                    break
                sign = -1
        if not ok or sign == 0:
            continue
        if sign < 0:
            form = (tuple(-c for c in form[0]), -form[1])
            vals = [-v for v in vals]
        on = tuple(i for i, val in enumerate(vals) if val == 0)
        if on not in found:
            found[on] = form
            found_sets.append(frozenset(on))
    return aff, [(form, on) for on, form in found.items()]


def _spanning_form_full(pts: list[Point], d: int) -> Form | None:
    """Form vanishing on d points in R^d via the generalized cross product.

    Normal component j is the signed minor of the (d-1) x d difference
    matrix with column j removed; returns None when the points are
    affinely dependent.
    """
    p0 = pts[0]
    rows = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        det = _det_int(minor)
        normal.append(det if j % 2 == 0 else -det)
    if not any(normal):
        return None
    g = 0
    for v in normal:
        g = gcd(g, v)
    normal = [v // g for v in normal]
    b = -sum(c * x for c, x in zip(normal, p0))
    return tuple(normal), b


def _spanning_form_general(pts: list[Point], verts: tuple[Point, ...],
                           d: int, aff_count: int) -> Form | None:
    """Form vanishing on a size-k point set inside a k-dim affine hull.

    The kernel of the stacked rows (p, 1) consists of all affine forms
    vanishing on the set; it must exceed the affine hull equation space
    by exactly one dimension, and any kernel vector not vanishing on the
    whole polytope represents the candidate hyperplane.
    """
    kern = int_kernel_basis([p + (1,) for p in pts], d + 1)
    if len(kern) != aff_count + 1:
        return None
    for vec in kern:
        form = (vec[:d], vec[d])
        if any(_eval_form(form, v) for v in verts):
            return form
    return None


def _is_vertex(verts: tuple[Point, ...], idx: int, d: int,
               aff: list[Form], cands) -> bool:
    """A point is a vertex iff the forms vanishing there cut out a single point."""
    v = verts[idx]
    rows = [a for a, _ in aff]
    for form, _ in cands:
        if _eval_form(form, v) == 0:
            rows.append(form[0])
    _, pivots = _echelon_int(rows, d)
    return len(pivots) == d
