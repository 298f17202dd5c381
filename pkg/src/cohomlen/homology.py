"""Reduced simplicial homology over Q or F_p, exactly.

Complexes live on a vertex universe 1..ambient (ambient <= 16) and store
their faces as a frozenset of bitmasks, so membership tests, downward
closure, and cache keys are all cheap integer operations.  The void complex
(no faces) and the irrelevant complex {empty set} are distinct values: the
void complex has no homology at all, while the irrelevant complex has a
one-dimensional reduced homology in degree -1.

Dimensions are computed from ranks of boundary matrices with the standard
lexicographic orientation; over Q by exact fraction elimination, over F_p
by modular elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import DomainError
from .linalg import rank


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means Q, otherwise a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise DomainError(f"characteristic {p} is not prime")


QQ = FieldSpec(0)


def _iter_subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face family on a subset of {1..ambient}, as bitmasks."""

    ambient: int
    faces: frozenset[int]

    def __post_init__(self):
        if self.ambient > 16:
            raise DomainError("bitset representation capped at 16 vertices")
        full = (1 << self.ambient) - 1
        for f in self.faces:
            if f & ~full:
                raise DomainError(f"face {bin(f)} uses vertices beyond the ambient set")
            if (f & (f - 1)) and not all(
                sub in self.faces for sub in _iter_subsets(f) if sub != f
            ):
                raise DomainError("face family is not downward closed")
        if self.faces and 0 not in self.faces:
            raise DomainError("a nonvoid complex must contain the empty face")

    @classmethod
    def void(cls, ambient: int) -> "SimplicialComplex":
        return cls(ambient, frozenset())

    @classmethod
    def irrelevant(cls, ambient: int) -> "SimplicialComplex":
        return cls(ambient, frozenset({0}))

    @classmethod
    def from_facets(cls, ambient: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Downward closure of the given faces (vertices are 1-based)."""
        faces = {0}
        for facet in facets:
            mask = 0
            for v in facet:
                if not 1 <= v <= ambient:
                    raise DomainError(f"vertex {v} outside 1..{ambient}")
                mask |= 1 << (v - 1)
            faces.update(_iter_subsets(mask))
        return cls(ambient, frozenset(faces))

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_irrelevant(self) -> bool:
        return self.faces == frozenset({0})

    def vertex_set(self) -> frozenset[int]:
        return frozenset(
            v for v in range(1, self.ambient + 1) if (1 << (v - 1)) in self.faces
        )

    def facet_masks(self) -> list[int]:
        return sorted(
            f for f in self.faces
            if not any(g != f and g & f == f for g in self.faces)
        )

    def facets(self) -> list[frozenset[int]]:
        return [
            frozenset(v for v in range(1, self.ambient + 1) if m >> (v - 1) & 1)
            for m in self.facet_masks()
        ]

    def euler_characteristic_reduced(self) -> int:
        """Sum over faces of (-1)^dim, the empty face contributing -1."""
        return sum((-1) ** (bin(f).count("1") - 1) for f in self.faces)


def _boundary_matrix(lower: list[int], upper: list[int]) -> list[list[int]]:
    """Rows indexed by ``lower`` faces, columns by ``upper`` faces, entries 0/+-1."""
    index = {f: i for i, f in enumerate(lower)}
    mat = [[0] * len(upper) for _ in lower]
    for j, face in enumerate(upper):
        sign = 1
        for v in range(16):
            bit = 1 << v
            if face & bit:
                mat[index[face ^ bit]][j] = sign
                sign = -sign
    return mat


@lru_cache(maxsize=None)
def _homology_dims_cached(ambient: int, faces: frozenset[int], char: int) -> tuple[int, ...]:
    if not faces:
        return (0,) * (ambient + 1)
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(bin(f).count("1") - 1, []).append(f)
    for v in by_dim.values():
        v.sort()
    counts = {d: len(v) for d, v in by_dim.items()}
    ranks: dict[int, int] = {}
    for d in sorted(by_dim):
        if d - 1 in by_dim:
            mat = _boundary_matrix(by_dim[d - 1], by_dim[d])
            ranks[d] = rank(mat, char)
    dims = []
    for d in range(-1, ambient):
        dims.append(counts.get(d, 0) - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return tuple(dims)


def reduced_homology_dims(
    complex_: SimplicialComplex, field: FieldSpec = QQ
) -> tuple[int, ...]:
    """dim H~_j for j = -1 .. ambient-1, as a tuple indexed by j + 1."""
    return _homology_dims_cached(complex_.ambient, complex_.faces, field.characteristic)


def homology_dim(complex_: SimplicialComplex, j: int, field: FieldSpec = QQ) -> int:
    """dim H~_j, with 0 for indices outside -1 .. ambient-1."""
    if j < -1 or j >= complex_.ambient:
        return 0
    return reduced_homology_dims(complex_, field)[j + 1]


def is_connected(complex_: SimplicialComplex) -> bool:
    """Connectivity of the 1-skeleton over the complex's vertex set."""
    vertices = complex_.vertex_set()
    if not vertices:
        raise DomainError("connectivity needs at least one vertex")
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in complex_.faces:
        if bin(f).count("1") == 2:
            lo = (f & -f).bit_length()
            hi = f.bit_length()
            parent[find(lo)] = find(hi)
    roots = {find(v) for v in vertices}
    return len(roots) == 1


def cone(complex_: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Cone over a new vertex; kills all reduced homology."""
    bit = 1 << (apex - 1)
    if any(f & bit for f in complex_.faces):
        raise DomainError(f"apex {apex} already appears in the complex")
    ambient = max(complex_.ambient, apex)
    faces = set(complex_.faces) | {f | bit for f in complex_.faces} | {0, bit}
    return SimplicialComplex(ambient, frozenset(faces))
