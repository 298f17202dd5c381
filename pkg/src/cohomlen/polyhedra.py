"""Exact rational polyhedral geometry.

Everything is built on one primitive: a double-description sweep computing
the extreme rays of a cone {x : Ax >= 0} with exact integer arithmetic.
Running it on a homogenized inequality system enumerates the vertices of a
polyhedron; running it on the dual side enumerates facets from points and
rays.  On top of that sit Newton polyhedra of monomial ideals (facet
description of conv(generators) + nonnegative orthant), exact polytope
volumes by lexicographic triangulation from a base vertex, and co-convex
regions Gamma \\ (Gamma_1 u ... u Gamma_s) whose volumes are computed by
inclusion-exclusion against a certified bounding box and whose lattice
points are counted by direct enumeration.

The bounding-box certificate: if the co-convex difference is bounded, its
closure is contained in the convex hull of the vertices of the terms
Gamma n Gamma_{i_1} n ... (every extreme point of the closure is tight at
enough facet hyperplanes of active polyhedra to be a vertex of one such
term), so checking every term vertex against [0, B]^d certifies the box.
B starts from a degree-sum heuristic and doubles on failure, a bounded
number of times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import CertificateError, ConsistencyError, DomainError
from .ideals import MonomialIdeal, localize, minimalize
from .linalg import affine_rank, det, dot, primitive, rank

_MAX_BOX_DOUBLINGS = 8


# ---------------------------------------------------------------------------
# double description


def dd_extreme_rays(
    rows: Sequence[Sequence], m: int
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Lineality basis and extreme rays of {x in R^m : <row, x> >= 0}.

    Rows may be rational; they are normalized to primitive integer vectors.
    The output rays are primitive, canonical, and exactly the extreme rays
    (a final tight-rank filter removes anything redundant).
    """
    norm_rows: list[tuple[int, ...]] = []
    seen = set()
    for r in rows:
        p = primitive(r)
        if any(p) and p not in seen:
            seen.add(p)
            norm_rows.append(p)

    lineality = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []  # bitmask over processed rows, parallel to rays
    processed: list[tuple[int, ...]] = []

    for row in norm_rows:
        k = len(processed)
        lin_dots = [dot(row, l) for l in lineality]
        if any(lin_dots):
            j0 = next(i for i, v in enumerate(lin_dots) if v)
            l0, d0 = lineality[j0], lin_dots[j0]
            if d0 < 0:
                l0 = tuple(-x for x in l0)
                d0 = -d0
            new_lin = []
            for i, l in enumerate(lineality):
                if i == j0:
                    continue
                dl = lin_dots[i]
                new_lin.append(
                    primitive(tuple(d0 * a - dl * b for a, b in zip(l, l0))) if dl else l
                )
            new_rays = []
            for r in rays:
                dr = dot(row, r)
                new_rays.append(
                    primitive(tuple(d0 * a - dr * b for a, b in zip(r, l0))) if dr else r
                )
            lineality = new_lin
            # adjusted rays are tight at the new row; l0 is strictly positive on it
            rays = new_rays + [l0]
            tight = [t | (1 << k) for t in tight] + [
                sum(1 << i for i, p in enumerate(processed) if dot(p, l0) == 0)
            ]
        else:
            dots = [dot(row, r) for r in rays]
            if any(v < 0 for v in dots):
                keep_idx = [i for i, v in enumerate(dots) if v >= 0]
                pos_idx = [i for i, v in enumerate(dots) if v > 0]
                neg_idx = [i for i, v in enumerate(dots) if v < 0]
                new_rays = [rays[i] for i in keep_idx]
                new_tight = [
                    tight[i] | ((1 << k) if dots[i] == 0 else 0) for i in keep_idx
                ]
                seen_new = set(new_rays)
                for ip in pos_idx:
                    for iq in neg_idx:
                        common = tight[ip] & tight[iq]
                        if any(
                            i != ip and i != iq and common & tight[i] == common
                            for i in range(len(rays))
                        ):
                            continue  # not adjacent: some third ray lies on the common face
                        p, q = rays[ip], rays[iq]
                        w = primitive(
                            tuple(dots[ip] * b - dots[iq] * a for a, b in zip(p, q))
                        )
                        if not any(w) or w in seen_new:
                            continue
                        seen_new.add(w)
                        new_rays.append(w)
                        new_tight.append(
                            sum(1 << i for i, pr in enumerate(processed) if dot(pr, w) == 0)
                            | (1 << k)
                        )
                rays, tight = new_rays, new_tight
            else:
                tight = [
                    t | ((1 << k) if v == 0 else 0) for t, v in zip(tight, dots)
                ]
        processed.append(row)

    lin_dim = len(lineality)
    extreme = []
    for r, t in zip(rays, tight):
        tight_rows = [processed[i] for i in range(len(processed)) if t >> i & 1]
        face_dim = m - (rank(tight_rows) if tight_rows else 0)
        if face_dim == lin_dim + 1:
            extreme.append(r)
    return sorted(lineality), sorted(extreme)


# ---------------------------------------------------------------------------
# half-spaces and description conversions


@dataclass(frozen=True)
class HalfSpace:
    """The set {x : <normal, x> >= offset}; normal is a primitive integer vector."""

    normal: tuple[int, ...]
    offset: Fraction

    def eval(self, point: Sequence) -> Fraction:
        return Fraction(dot(self.normal, point)) - self.offset

    def contains(self, point: Sequence) -> bool:
        return self.eval(point) >= 0

    def scaled_int(self, n: int = 1) -> tuple[tuple[int, ...], int, int]:
        """(normal, q, n*p) such that membership in the n-fold dilate reads
        q*<normal, x> >= n*p with integer arithmetic."""
        return self.normal, self.offset.denominator, n * self.offset.numerator

    def sort_key(self):
        return (self.normal, self.offset)


def halfspace(normal: Sequence, offset) -> HalfSpace:
    norm = primitive(normal)
    if not any(norm):
        raise DomainError("half-space normal must be nonzero")
    j = next(i for i, x in enumerate(norm) if x)
    scale = Fraction(norm[j], 1) / Fraction(normal[j])
    return HalfSpace(norm, Fraction(offset) * scale)


def orthant_halfspaces(dim: int) -> list[HalfSpace]:
    return [
        HalfSpace(tuple(1 if j == i else 0 for j in range(dim)), Fraction(0))
        for i in range(dim)
    ]


def vertices_and_rays(
    halfspaces: Iterable[HalfSpace], dim: int
) -> tuple[list[tuple[Fraction, ...]], list[tuple[int, ...]]]:
    """Vertices and extreme recession rays of an intersection of half-spaces.

    The polyhedron must be pointed (ours always contain the orthant
    constraints); an empty vertex list means the polyhedron is empty.
    """
    rows = [(-hs.offset,) + tuple(hs.normal) for hs in halfspaces]
    rows.append((1,) + (0,) * dim)  # homogenization variable t >= 0
    lineality, rays = dd_extreme_rays(rows, dim + 1)
    if lineality:
        raise ConsistencyError("polyhedron contains a line; vertex enumeration undefined")
    verts = []
    rec = []
    for r in rays:
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            rec.append(r[1:])
    return sorted(verts), sorted(rec)


def facets_from_points(
    points: Sequence[Sequence], rays: Sequence[Sequence], dim: int
) -> list[HalfSpace] | None:
    """Facet half-spaces of conv(points) + cone(rays).

    Returns None when the polyhedron is not full-dimensional (the dual cone
    then has a lineality space), which doubles as the degeneracy test for
    volume computations.
    """
    rows = [(1,) + tuple(p) for p in points]
    rows += [(0,) + tuple(r) for r in rays]
    lineality, dual_rays = dd_extreme_rays(rows, dim + 1)
    if lineality:
        return None
    out = []
    for r in dual_rays:
        b, c = r[0], r[1:]
        if not any(c):
            continue  # the trivial valid inequality 1 >= 0
        g = 0
        for x in c:
            g = gcd(g, x)
        out.append(HalfSpace(tuple(x // g for x in c), Fraction(-b, g)))
    return sorted(out, key=HalfSpace.sort_key)


# ---------------------------------------------------------------------------
# Newton polyhedra


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(exponents of the ideal) + nonnegative orthant, both descriptions.

    ``halfspaces`` is the irredundant facet list; orthant constraints appear
    in it exactly when they are facets, and membership tests assume the
    query point is already componentwise nonnegative.
    """

    dim: int
    vertices: tuple[tuple[int, ...], ...]
    halfspaces: tuple[HalfSpace, ...]


@lru_cache(maxsize=4096)
def newton_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    if ideal.is_zero:
        raise DomainError("the Newton polyhedron of the zero ideal is undefined")
    d = ideal.dim
    unit_rays = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    facets = facets_from_points(ideal.gens, unit_rays, d)
    assert facets is not None  # the orthant recession cone is full-dimensional
    vertices = []
    for g in ideal.gens:
        tight = [hs.normal for hs in facets if hs.eval(g) == 0]
        if tight and rank(tight) == d:
            vertices.append(g)
    return NewtonPolyhedron(d, tuple(sorted(vertices)), tuple(facets))


def nc_membership(poly: NewtonPolyhedron, n: int, point: Sequence[int]) -> bool:
    """Whether the point lies in the n-fold dilate n * conv(I).

    This is exactly membership of x^point in the integral closure of I^n.
    """
    if any(x < 0 for x in point):
        raise DomainError("membership points must be componentwise nonnegative")
    if n < 1:
        raise DomainError("dilation factor must be >= 1")
    for hs in poly.halfspaces:
        normal, q, np_ = hs.scaled_int(n)
        if q * dot(normal, point) < np_:
            return False
    return True


def strictly_inside(poly: NewtonPolyhedron, point: Sequence[int]) -> bool:
    """Interior membership: strict at every facet."""
    return all(hs.eval(point) > 0 for hs in poly.halfspaces)


def integral_closure_generators(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """Minimal monomial generators of the integral closure of ideal^n.

    These are the minimal lattice points of n * conv(ideal); every minimal
    point is bounded by n * (componentwise max generator exponent).
    """
    if ideal.is_zero or ideal.is_unit:
        return ideal
    poly = newton_polyhedron(ideal)
    bounds = [n * m for m in ideal.max_exponents()]
    points = []
    grid = np.indices([b + 1 for b in bounds]).reshape(ideal.dim, -1).T
    member = np.ones(len(grid), dtype=bool)
    for hs in poly.halfspaces:
        normal, q, np_ = hs.scaled_int(n)
        member &= q * (grid @ np.array(normal, dtype=np.int64)) >= np_
    points = [tuple(int(x) for x in row) for row in grid[member]]
    return minimalize(points, ideal.dim)


# ---------------------------------------------------------------------------
# exact polytope volume


def _face_key(indices: Iterable[int]) -> frozenset[int]:
    return frozenset(indices)


def polytope_volume(points: Iterable[Sequence]) -> Fraction:
    """Exact d-volume of the convex hull of a finite rational point set.

    Lower-dimensional hulls have volume 0.  The triangulation cones from the
    lexicographically smallest point of each face over its boundary faces,
    so the result is independent of input order and of interior points.
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        return Fraction(0)
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DomainError("points of mixed dimension")
    if affine_rank(pts) < d:
        return Fraction(0)
    facets = facets_from_points(pts, (), d)
    facet_sets = [
        frozenset(i for i, p in enumerate(pts) if hs.eval(p) == 0) for hs in facets
    ]

    rank_memo: dict[frozenset[int], int] = {}

    def face_rank(key: frozenset[int]) -> int:
        if key not in rank_memo:
            rank_memo[key] = affine_rank([pts[i] for i in key])
        return rank_memo[key]

    tri_memo: dict[frozenset[int], tuple[tuple[int, ...], ...]] = {}

    def triangulate(key: frozenset[int], k: int) -> tuple[tuple[int, ...], ...]:
        if key in tri_memo:
            return tri_memo[key]
        if k == 0:
            simps = ((min(key),),)
        else:
            base = min(key, key=lambda i: pts[i])
            simps = []
            for fs in facet_sets:
                sub = key & fs
                if not sub or base in sub or face_rank(sub) != k - 1:
                    continue
                for s in triangulate(sub, k - 1):
                    simps.append(s + (base,))
            simps = tuple(simps)
        tri_memo[key] = simps
        return simps

    total = Fraction(0)
    top = frozenset(range(len(pts)))
    fact = 1
    for t in range(2, d + 1):
        fact *= t
    for simplex in triangulate(top, d):
        base = pts[simplex[-1]]
        mat = [[pts[i][j] - base[j] for j in range(d)] for i in simplex[:-1]]
        total += abs(det(mat))
    return total / fact


# ---------------------------------------------------------------------------
# co-convex regions


@dataclass(frozen=True)
class ConvexRegion:
    """Intersection of half-spaces inside the nonnegative orthant."""

    dim: int
    halfspaces: tuple[HalfSpace, ...]


def convex_region(dim: int, parts: Iterable) -> ConvexRegion:
    """Build a region from half-spaces and/or Newton polyhedra; the orthant
    constraints are always included."""
    hs: set[HalfSpace] = set(orthant_halfspaces(dim))
    for part in parts:
        if isinstance(part, NewtonPolyhedron):
            if part.dim != dim:
                raise DomainError("Newton polyhedron of mismatched dimension")
            hs.update(part.halfspaces)
        elif isinstance(part, HalfSpace):
            if len(part.normal) != dim:
                raise DomainError("half-space of mismatched dimension")
            hs.add(part)
        elif isinstance(part, ConvexRegion):
            if part.dim != dim:
                raise DomainError("region of mismatched dimension")
            hs.update(part.halfspaces)
        else:
            raise DomainError(f"cannot interpret {part!r} as a convex region part")
    return ConvexRegion(dim, tuple(sorted(hs, key=HalfSpace.sort_key)))


@dataclass(frozen=True)
class CoConvexRegion:
    """Set difference outer \\ (inner_1 u ... u inner_s), with a box hint.

    Each inner region contains all of the outer constraints, so containment
    inner_i <= outer holds by construction.
    """

    outer: ConvexRegion
    inner: tuple[ConvexRegion, ...]
    box_hint: int = 1


def coconvex_region(
    outer: ConvexRegion, inner_extras: Sequence[Iterable], box_hint: int = 1
) -> CoConvexRegion:
    inner = tuple(
        convex_region(outer.dim, [outer, *extras]) for extras in inner_extras
    )
    return CoConvexRegion(outer, inner, box_hint)


def coconvex_from_ideals(
    meet: Sequence[MonomialIdeal], avoid: Sequence[MonomialIdeal]
) -> CoConvexRegion:
    """Points in every n-dilated closure of ``meet`` ideals but in none of
    the ``avoid`` closures: outer = intersection of Newton polyhedra of the
    meet ideals, inner_i = outer n conv(avoid_i)."""
    if not meet:
        raise DomainError("need at least one ideal on the meet side")
    dim = meet[0].dim
    outer = convex_region(
        dim, [newton_polyhedron(i) for i in meet if not i.is_unit]
    )
    extras = [
        [] if j.is_unit else [newton_polyhedron(j)] for j in avoid
    ]
    degree_sum = sum(
        sum(sum(g) for g in ideal.gens) for ideal in [*meet, *avoid]
    )
    return CoConvexRegion(
        outer,
        tuple(convex_region(dim, [outer, *e]) for e in extras),
        degree_sum + 1,
    )


@lru_cache(maxsize=65536)
def _system_vertices(system: frozenset[HalfSpace], dim: int):
    return tuple(vertices_and_rays(sorted(system, key=HalfSpace.sort_key), dim)[0])


@lru_cache(maxsize=65536)
def _system_volume(system: frozenset[HalfSpace], dim: int) -> Fraction:
    return polytope_volume(_system_vertices(system, dim))


def _box_halfspaces(dim: int, bound: int) -> list[HalfSpace]:
    return [
        HalfSpace(tuple(-1 if j == i else 0 for j in range(dim)), Fraction(-bound))
        for i in range(dim)
    ]


def _terms(region: CoConvexRegion) -> list[tuple[int, frozenset[HalfSpace]]]:
    """(sign, half-space system) for every inclusion-exclusion term."""
    out = []
    for r in range(len(region.inner) + 1):
        for subset in combinations(range(len(region.inner)), r):
            hs = set(region.outer.halfspaces)
            for i in subset:
                hs.update(region.inner[i].halfspaces)
            out.append(((-1) ** r, frozenset(hs)))
    return out


def certified_box(region: CoConvexRegion) -> int:
    """A bound B with the bounded difference contained in [0, B]^d.

    Validated by checking every vertex of every inclusion-exclusion term
    (without box constraints); doubles on failure, a bounded number of
    times.  Assumes the difference is bounded, as the volume theory does.
    """
    d = region.outer.dim
    all_vertices = [
        v for _, system in _terms(region) for v in _system_vertices(system, d)
    ]
    bound = max(1, region.box_hint)
    for _ in range(_MAX_BOX_DOUBLINGS + 1):
        if all(x <= bound for v in all_vertices for x in v):
            return bound
        bound *= 2
    raise CertificateError(
        f"no box certificate up to B = {bound}; the region may be unbounded"
    )


def region_vertex_bounds(region: CoConvexRegion) -> tuple[Fraction, ...]:
    """Componentwise max over all certified term vertices (bounds the difference)."""
    d = region.outer.dim
    certified_box(region)
    best = [Fraction(0)] * d
    for _, system in _terms(region):
        for v in _system_vertices(system, d):
            for j in range(d):
                best[j] = max(best[j], v[j])
    return tuple(best)


def coconvex_volume(region: CoConvexRegion) -> Fraction:
    """Exact volume of outer \\ union(inner), by inclusion-exclusion.

    Every term is intersected with the certified box, so the alternating sum
    telescopes to the volume of the bounded difference.
    """
    d = region.outer.dim
    bound = certified_box(region)
    box = frozenset(_box_halfspaces(d, bound))
    total = Fraction(0)
    for sign, system in _terms(region):
        total += sign * _system_volume(system | box, d)
    return total


def lattice_count(region: CoConvexRegion, n: int) -> int:
    """#(Z^d n n*(outer \\ union inner)), by enumeration over the dilated box."""
    if n < 1:
        raise DomainError("dilation factor must be >= 1")
    d = region.outer.dim
    bounds = region_vertex_bounds(region)
    limits = [int(n * b) for b in bounds]  # floor; integer points cannot exceed these

    def scaled(system: Iterable[HalfSpace]):
        rows = []
        for hs in system:
            normal, q, np_ = hs.scaled_int(n)
            rows.append((np.array(normal, dtype=np.int64), q, np_))
        return rows

    outer_rows = scaled(region.outer.halfspaces)
    inner_rows = [scaled(r.halfspaces) for r in region.inner]

    if d == 1:
        axis_grids = []
        tail_shape = ()
    else:
        tail_ranges = [np.arange(l + 1, dtype=np.int64) for l in limits[1:]]
        grids = np.meshgrid(*tail_ranges, indexing="ij") if len(tail_ranges) else []
        axis_grids = list(grids)
        tail_shape = tuple(l + 1 for l in limits[1:])

    def eval_rows(rows, x0):
        value = None
        for normal, q, np_ in rows:
            acc = np.zeros(tail_shape, dtype=np.int64) if tail_shape else np.int64(0)
            acc = acc + int(normal[0]) * x0
            for j in range(1, d):
                acc = acc + int(normal[j]) * axis_grids[j - 1]
            ok = q * acc >= np_
            value = ok if value is None else (value & ok)
        if value is None:
            value = (
                np.ones(tail_shape, dtype=bool) if tail_shape else np.bool_(True)
            )
        return value

    count = 0
    for x0 in range(limits[0] + 1):
        member = eval_rows(outer_rows, x0)
        for rows in inner_rows:
            member = member & ~eval_rows(rows, x0)
        count += int(member.sum())
    return count
