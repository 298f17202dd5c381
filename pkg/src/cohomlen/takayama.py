"""Graded pieces and total lengths of local cohomology of monomial quotients.

For a degree a in Z^d with negative support G_a and positive part a+, the
degree-a piece of H^i_m(R/I) has dimension dim H~_{i-|G_a|-1}(D_a(I)),
where D_a(I) is the simplicial complex of subsets F of [d] \\ G_a such that
x^{a+} avoids the localization I_{F u G_a} (Takayama's formula, in the
unconditional form: whenever the classical degree conditions fail, the
homology index falls out of range and the dimension is 0).

Membership of x^{a+} in any localization is unchanged once a coordinate
reaches the maximum exponent of that variable among the generators, so
every degree class is represented inside a clamped box.  Total lengths are
finite exactly when all classes with negative support and all box-boundary
classes (each representing infinitely many degrees) carry zero homology;
the finite support then lives strictly inside the box.  The box scans are
vectorized with numpy but remain exact: membership arrays are unions of
upper-orthant boxes (or half-space tests with integer thresholds for
integral-closure powers), and each distinct membership pattern is decoded
into a complex whose homology is computed once and cached.

An independent strand-by-strand Cech complex on x_1..x_d provides the
verification oracle: its terms are 0/1-dimensional by the same localization
membership, its maps are signed inclusions, and its cohomology ranks are
computed over Q with no reference to the simplicial route.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError
from .homology import QQ, FieldSpec, SimplicialComplex, homology_dim, reduced_homology_dims
from .ideals import (
    ClosurePowerIdeal,
    ExponentVector,
    MonomialIdeal,
    localize,
    negative_support,
    positive_part,
)
from .linalg import rank


class _InfiniteLength:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteLength()


@dataclass(frozen=True)
class LengthResult:
    """Total length of one cohomology module: a natural number or INFINITE.

    When finite, ``support`` lists the (degree, dimension) pairs with
    nonzero graded pieces; all such degrees are componentwise nonnegative.
    """

    value: int | _InfiniteLength
    support: tuple[tuple[ExponentVector, int], ...] | None = None

    @property
    def is_finite(self) -> bool:
        return self.value is not INFINITE

    def __post_init__(self):
        if self.is_finite and self.support is not None:
            assert self.value == sum(d for _, d in self.support)


@dataclass(frozen=True)
class GradedPieceQuery:
    ideal: MonomialIdeal
    i: int
    degree: ExponentVector

    def __post_init__(self):
        if not 0 <= self.i <= self.ideal.dim:
            raise DomainError(f"cohomological index {self.i} outside 0..{self.ideal.dim}")


IdealLike = MonomialIdeal | ClosurePowerIdeal


def _mask_vars(mask: int, d: int) -> list[int]:
    return [i for i in range(d) if mask >> i & 1]


class _LocalizedCache:
    """All 2^d localizations of an ideal-like object, with box-scan arrays.

    For a monomial ideal the mask data is the localized generator list; for
    an integral-closure power it is the integer-scaled facet system of the
    Newton polyhedron of the localized base.  The unit localization is the
    constant-true membership.
    """

    def __init__(self, target: IdealLike):
        self.target = target
        self.d = target.dim
        self.is_closure = isinstance(target, ClosurePowerIdeal)
        self._info: dict[int, object] = {}
        self._boxes: dict[int, np.ndarray] = {}
        if self.is_closure:
            base = target.base
            self.bound = tuple(target.n * m + 1 for m in base.max_exponents())
        else:
            self.bound = tuple(m + 1 for m in target.max_exponents())

    def info(self, mask: int):
        if mask not in self._info:
            if self.is_closure:
                loc = localize(self.target.base, _mask_vars(mask, self.d))
                if loc.is_unit:
                    data = "unit"
                elif loc.is_zero:
                    data = "zero"
                else:
                    from .polyhedra import newton_polyhedron

                    data = tuple(
                        hs.scaled_int(self.target.n)
                        for hs in newton_polyhedron(loc).halfspaces
                    )
            else:
                loc = localize(self.target, _mask_vars(mask, self.d))
                if loc.is_unit:
                    data = "unit"
                elif loc.is_zero:
                    data = "zero"
                else:
                    data = loc.gens
            self._info[mask] = data
        return self._info[mask]

    def member(self, mask: int, point: Sequence[int]) -> bool:
        data = self.info(mask)
        if data == "unit":
            return True
        if data == "zero":
            return False
        if self.is_closure:
            return all(
                q * sum(c * x for c, x in zip(normal, point)) >= np_
                for normal, q, np_ in data
            )
        return any(all(g <= x for g, x in zip(gen, point)) for gen in data)

    def drop_boxes_if_large(self, limit_bytes: int = 8 << 20):
        if sum(arr.nbytes for arr in self._boxes.values()) > limit_bytes:
            self._boxes.clear()

    def member_box(self, mask: int) -> np.ndarray:
        """Membership of every point of prod(range(bound_i)) as a bool array."""
        if mask not in self._boxes:
            shape = self.bound
            data = self.info(mask)
            if data == "unit":
                arr = np.ones(shape, dtype=bool)
            elif data == "zero":
                arr = np.zeros(shape, dtype=bool)
            elif self.is_closure:
                arr = np.ones(shape, dtype=bool)
                for normal, q, np_ in data:
                    acc = np.zeros(shape, dtype=np.int64)
                    for ax in range(self.d):
                        view = [None] * self.d
                        view[ax] = slice(None)
                        acc = acc + normal[ax] * np.arange(
                            shape[ax], dtype=np.int64
                        ).reshape([-1 if v else 1 for v in view])
                    arr &= q * acc >= np_
            else:
                arr = np.zeros(shape, dtype=bool)
                for gen in data:
                    arr[tuple(slice(g, None) for g in gen)] = True
            self._boxes[mask] = arr
        return self._boxes[mask]


@lru_cache(maxsize=512)
def _cache_for(target: IdealLike) -> _LocalizedCache:
    return _LocalizedCache(target)


def _check_proper(target: IdealLike):
    base = target.base if isinstance(target, ClosurePowerIdeal) else target
    if base.is_zero:
        raise DomainError("the zero ideal is excluded")
    if base.is_unit:
        raise DomainError("the unit ideal is excluded")


def delta_complex(target: IdealLike, degree: Sequence[int]) -> SimplicialComplex:
    """The membership complex D_a: F is a face when x^{a+} avoids I_{F u G_a}."""
    d = target.dim
    a = tuple(int(x) for x in degree)
    if len(a) != d:
        raise DomainError(f"degree {a} does not have dimension {d}")
    gmask = 0
    for i in negative_support(a):
        gmask |= 1 << i
    ap = positive_part(a)
    cache = _cache_for(target)
    comp = ((1 << d) - 1) ^ gmask
    faces = set()
    sub = comp
    while True:
        if not cache.member(sub | gmask, ap):
            faces.add(sub)
        if sub == 0:
            break
        sub = (sub - 1) & comp
    return SimplicialComplex(d, frozenset(faces))


def graded_dim(query: GradedPieceQuery, field: FieldSpec = QQ) -> int:
    """dim_k of the degree-a piece of H^i_m(R/I), via the membership complex."""
    return graded_dim_at(query.ideal, query.i, query.degree, field)


def graded_dim_at(
    target: IdealLike, i: int, degree: Sequence[int], field: FieldSpec = QQ
) -> int:
    j = i - len(negative_support(degree)) - 1
    if j < -1 or j >= target.dim:
        return 0
    return homology_dim(delta_complex(target, degree), j, field)


def support_bound(target: IdealLike) -> ExponentVector:
    """Componentwise clamp bound M: membership in every localization is
    unchanged once a coordinate reaches M_i - 1."""
    _check_proper(target)
    return _cache_for(target).bound


# ---------------------------------------------------------------------------
# box scans


def _pattern_dims(
    cache: _LocalizedCache, gmask: int, j: int, char: int
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Array of dim H~_j(D_a) over the clamped box of positive parts with
    zeros on the gmask axes, plus the box shape."""
    d = cache.d
    comp = ((1 << d) - 1) ^ gmask
    axes = [ax for ax in range(d) if comp >> ax & 1]
    shape = tuple(cache.bound[ax] for ax in axes)
    npoints = int(np.prod(shape, dtype=np.int64)) if shape else 1

    submasks = []
    sub = comp
    while True:
        submasks.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & comp
    submasks.sort()

    cols = np.empty((npoints, len(submasks)), dtype=bool)
    index = [0 if gmask >> ax & 1 else slice(None) for ax in range(d)]
    for c, fmask in enumerate(submasks):
        arr = cache.member_box(fmask | gmask)[tuple(index)]
        cols[:, c] = ~arr.reshape(-1)

    packed = np.packbits(cols, axis=1)
    uniq, inverse = np.unique(packed, axis=0, return_inverse=True)
    dims = np.zeros(len(uniq), dtype=np.int64)
    for u, row in enumerate(uniq):
        bits = np.unpackbits(row)[: len(submasks)]
        faces = frozenset(
            fmask for c, fmask in enumerate(submasks) if bits[c]
        )
        complex_ = SimplicialComplex(d, faces)
        dims[u] = reduced_homology_dims(complex_, FieldSpec(char))[j + 1]
    return dims[inverse].reshape(shape), shape


def _scan(target: IdealLike, i: int, field: FieldSpec, want_support: bool):
    """(finite, total, support) for the length of H^i_m(R/target)."""
    _check_proper(target)
    cache = _cache_for(target)
    d = cache.d
    char = field.characteristic
    try:
        # degree classes with nonempty negative support: any nonzero dimension
        # is shared by infinitely many degrees
        for gmask in range(1, 1 << d):
            s = bin(gmask).count("1")
            j = i - s - 1
            if j < -1 or j >= d:
                continue
            dims, _ = _pattern_dims(cache, gmask, j, char)
            if (dims > 0).any():
                return False, None, None

        j = i - 1
        if j < -1 or j >= d:
            return True, 0, ()
        dims, shape = _pattern_dims(cache, 0, j, char)
        boundary = np.zeros(shape, dtype=bool)
        for ax in range(d):
            index = [slice(None)] * d
            index[ax] = shape[ax] - 1
            boundary[tuple(index)] = True
        if (dims[boundary] > 0).any():
            return False, None, None
        total = int(dims.sum())
        support: tuple = ()
        if want_support and total:
            where = np.argwhere(dims > 0)
            support = tuple(
                (tuple(int(x) for x in pos), int(dims[tuple(pos)])) for pos in where
            )
        return True, total, support
    finally:
        cache.drop_boxes_if_large()


def finiteness_oracle(target: IdealLike, i: int, field: FieldSpec = QQ) -> bool:
    """Whether the length of H^i_m(R/target) is finite, by the clamped scan."""
    finite, _, _ = _scan(target, i, field, want_support=False)
    return finite


def total_length(target: IdealLike, i: int, field: FieldSpec = QQ) -> LengthResult:
    """Exact length of H^i_m(R/target), INFINITE when the scan certifies so."""
    finite, total, support = _scan(target, i, field, want_support=True)
    if not finite:
        return LengthResult(INFINITE)
    return LengthResult(total, support)


# ---------------------------------------------------------------------------
# Cech strand oracle


def cech_dims(ideal: MonomialIdeal, degree: Sequence[int]) -> tuple[int, ...]:
    """Dimensions of H^0 .. H^d of the degree-a strand of the Cech complex
    on x_1..x_d applied to R/I; independent of the simplicial route."""
    d = ideal.dim
    a = tuple(int(x) for x in degree)
    if len(a) != d:
        raise DomainError(f"degree {a} does not have dimension {d}")
    cache = _cache_for(ideal) if not ideal.is_zero and not ideal.is_unit else None

    def member(mask: int, point) -> bool:
        if ideal.is_unit:
            return True
        if ideal.is_zero:
            return False
        return cache.member(mask, point)

    present: dict[int, bool] = {}
    for mask in range(1 << d):
        if any(a[jx] < 0 for jx in range(d) if not mask >> jx & 1):
            present[mask] = False
            continue
        clamped = tuple(max(x, 0) if mask >> jx & 1 else x for jx, x in enumerate(a))
        present[mask] = not member(mask, clamped)

    by_level: dict[int, list[int]] = {}
    for mask in range(1 << d):
        if present[mask]:
            by_level.setdefault(bin(mask).count("1"), []).append(mask)
    for v in by_level.values():
        v.sort()

    ranks: dict[int, int] = {}
    for p in range(d):
        lower = by_level.get(p, [])
        upper = by_level.get(p + 1, [])
        if not lower or not upper:
            continue
        col_index = {m: c for c, m in enumerate(lower)}
        mat = [[0] * len(lower) for _ in upper]
        for r, umask in enumerate(upper):
            for jx in range(d):
                bit = 1 << jx
                if umask & bit:
                    src = umask ^ bit
                    if src in col_index:
                        sign = (-1) ** bin(src & (bit - 1)).count("1")
                        mat[r][col_index[src]] = sign
        ranks[p] = rank(mat)

    dims = []
    for i in range(d + 1):
        dims.append(
            len(by_level.get(i, ())) - ranks.get(i, 0) - ranks.get(i - 1, 0)
        )
    return tuple(dims)


def cech_oracle(ideal: MonomialIdeal, i: int, degree: Sequence[int]) -> int:
    """dim of the degree-a strand cohomology at index i (verification oracle)."""
    if not 0 <= i <= ideal.dim:
        return 0
    return cech_dims(ideal, degree)[i]
