"""Exact arithmetic of monomial ideals.

A monomial ideal in k[x_1..x_d] is identified with the antichain of exponent
vectors of its minimal generators.  Everything here is a pure function over
immutable values: products, powers, localizations (set x_i = 1 for i in a
mask), membership, intersections, saturation by the irrelevant ideal, and
the graded families (powers, saturated powers, integral-closure powers)
whose cohomology lengths the rest of the package studies.

Conventions: the zero ideal has no generators; the unit ideal has the single
generator 0.  Generator tuples are kept sorted so equal ideals compare equal
and all derived output is diff-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, DomainError

ExponentVector = tuple[int, ...]


def negative_support(a: Sequence[int]) -> frozenset[int]:
    """Indices (0-based) where the degree vector is negative."""
    return frozenset(i for i, x in enumerate(a) if x < 0)


def positive_part(a: Sequence[int]) -> ExponentVector:
    """Clamp negative entries to zero."""
    return tuple(max(x, 0) for x in a)


def _divides(g: Sequence[int], a: Sequence[int]) -> bool:
    return all(gi <= ai for gi, ai in zip(g, a))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generating set of a monomial ideal in a fixed ambient dimension.

    ``gens`` must already be an antichain under componentwise <=; use
    :func:`minimalize` to build an ideal from an arbitrary generating set.
    """

    dim: int
    gens: tuple[ExponentVector, ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.dim:
                raise DimensionMismatchError(
                    f"generator {g} has length {len(g)}, ambient dimension is {self.dim}"
                )
            if any(e < 0 for e in g):
                raise DomainError(f"generator {g} has a negative exponent")
        for g, h in combinations(self.gens, 2):
            if _divides(g, h) or _divides(h, g):
                raise DomainError("generators are not an antichain; use minimalize()")
        object.__setattr__(self, "gens", tuple(sorted(self.gens)))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def max_exponents(self) -> ExponentVector:
        """Componentwise maximum exponent over the generators (0 if zero ideal)."""
        return tuple(
            max((g[i] for g in self.gens), default=0) for i in range(self.dim)
        )

    def __repr__(self):
        return f"MonomialIdeal(dim={self.dim}, gens={list(self.gens)})"


def zero_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, ())


def unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, ((0,) * dim,))


def minimalize(gens: Iterable[Sequence[int]], dim: int | None = None) -> MonomialIdeal:
    """The unique antichain generating the same ideal as ``gens``.

    ``dim`` is required only for an empty generating set (the zero ideal).
    """
    vecs = [tuple(int(e) for e in g) for g in gens]
    if dim is None:
        if not vecs:
            raise DimensionMismatchError("empty generating set needs an explicit dimension")
        dim = len(vecs[0])
    for v in vecs:
        if len(v) != dim:
            raise DimensionMismatchError(f"generator {v} does not have dimension {dim}")
        if any(e < 0 for e in v):
            raise DomainError(f"generator {v} has a negative exponent")
    vecs = sorted(set(vecs), key=lambda v: (sum(v), v))
    minimal: list[ExponentVector] = []
    for v in vecs:
        if not any(_divides(m, v) for m in minimal):
            minimal.append(v)
    return MonomialIdeal(dim, tuple(sorted(minimal)))


def _check_same_dim(a: MonomialIdeal, b: MonomialIdeal):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"ambient dimensions differ: {a.dim} vs {b.dim}")


def multiply(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of the product ideal."""
    _check_same_dim(a, b)
    if a.is_zero or b.is_zero:
        return zero_ideal(a.dim)
    prods = {tuple(x + y for x, y in zip(g, h)) for g in a.gens for h in b.gens}
    return minimalize(prods, a.dim)


def power(a: MonomialIdeal, n: int) -> MonomialIdeal:
    """n-th power, computed by iterated products with intermediate minimalization."""
    if n < 0:
        raise DomainError("negative power")
    if n == 0:
        return unit_ideal(a.dim)
    result = a
    for _ in range(n - 1):
        result = multiply(result, a)
    return result


def localize(a: MonomialIdeal, mask: Iterable[int]) -> MonomialIdeal:
    """Image of the ideal under x_i -> 1 for every i in ``mask`` (0-based)."""
    vars_ = set(mask)
    for i in vars_:
        if not 0 <= i < a.dim:
            raise DomainError(f"variable index {i} outside range(0, {a.dim})")
    if a.is_zero:
        return a
    zeroed = [
        tuple(0 if i in vars_ else e for i, e in enumerate(g)) for g in a.gens
    ]
    return minimalize(zeroed, a.dim)


def contains(a: MonomialIdeal, vec: Sequence[int]) -> bool:
    """Whether x^vec lies in the ideal (some generator divides it)."""
    v = tuple(int(e) for e in vec)
    if len(v) != a.dim:
        raise DimensionMismatchError(f"degree {v} does not have dimension {a.dim}")
    if any(e < 0 for e in v):
        raise DomainError(f"membership degree {v} has a negative entry")
    return any(_divides(g, v) for g in a.gens)


def contains_ideal(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """Whether b is a subset of a, generator by generator."""
    _check_same_dim(a, b)
    return all(contains(a, g) for g in b.gens)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Intersection, generated by the componentwise maxima of generator pairs."""
    _check_same_dim(a, b)
    if a.is_zero or b.is_zero:
        return zero_ideal(a.dim)
    lcms = {tuple(max(x, y) for x, y in zip(g, h)) for g in a.gens for h in b.gens}
    return minimalize(lcms, a.dim)


def saturate(a: MonomialIdeal) -> MonomialIdeal:
    """Saturation with respect to the irrelevant ideal, I : m^infinity.

    Computed as the intersection over variables i of the ideal generated by
    the generators of I with their i-th exponent zeroed.
    """
    if a.is_zero or a.is_unit:
        return a
    result = localize(a, (0,))
    for i in range(1, a.dim):
        result = intersect(result, localize(a, (i,)))
    return result


@dataclass(frozen=True)
class ClosurePowerIdeal:
    """Membership view of the integral closure of base^n.

    x^a lies in the ideal exactly when a is in n * conv(base), so membership
    is delegated to the Newton polyhedron of the base ideal rather than to a
    generator list.  Localization commutes with taking closures of powers,
    which keeps these objects usable wherever cohomology code localizes.
    """

    base: MonomialIdeal
    n: int

    def __post_init__(self):
        if self.base.is_zero:
            raise DomainError("integral closures of the zero ideal are not defined")
        if self.n < 1:
            raise DomainError("closure power exponent must be >= 1")

    @property
    def dim(self) -> int:
        return self.base.dim

    def contains(self, vec: Sequence[int]) -> bool:
        if self.base.is_unit:
            return True
        from .polyhedra import nc_membership, newton_polyhedron

        return nc_membership(newton_polyhedron(self.base), self.n, vec)

    def localize(self, mask: Iterable[int]) -> "ClosurePowerIdeal":
        return ClosurePowerIdeal(localize(self.base, mask), self.n)

    def generator_ideal(self) -> MonomialIdeal:
        """Explicit minimal generators: lattice points of n * conv(base)."""
        from .polyhedra import integral_closure_generators

        return integral_closure_generators(self.base, self.n)


FAMILY_KINDS = ("powers", "saturated-powers", "integral-closure-powers", "explicit-list")


@dataclass(frozen=True)
class IdealFamily:
    """A graded family (I_n) of monomial ideals, I_0 = R by convention."""

    kind: str
    base: MonomialIdeal | None = None
    explicit: tuple[MonomialIdeal, ...] | None = None

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise DomainError(f"unknown family kind {self.kind!r}")
        if self.kind == "explicit-list":
            if not self.explicit:
                raise DomainError("explicit-list family needs at least I_1")
        elif self.base is None:
            raise DomainError(f"family kind {self.kind!r} needs a base ideal")

    @property
    def dim(self) -> int:
        return self.base.dim if self.base is not None else self.explicit[0].dim


def powers_family(base: MonomialIdeal) -> IdealFamily:
    return IdealFamily("powers", base=base)


def saturated_powers_family(base: MonomialIdeal) -> IdealFamily:
    return IdealFamily("saturated-powers", base=base)


def integral_closure_family(base: MonomialIdeal) -> IdealFamily:
    return IdealFamily("integral-closure-powers", base=base)


def explicit_family(ideals: Sequence[MonomialIdeal]) -> IdealFamily:
    return IdealFamily("explicit-list", explicit=tuple(ideals))


def family_member(fam: IdealFamily, n: int) -> MonomialIdeal | ClosurePowerIdeal:
    """The n-th member of the family; n = 0 yields the unit ideal."""
    if n < 0:
        raise DomainError("family index must be >= 0")
    if n == 0:
        return unit_ideal(fam.dim)
    if fam.kind == "powers":
        return power(fam.base, n)
    if fam.kind == "saturated-powers":
        return saturate(power(fam.base, n))
    if fam.kind == "integral-closure-powers":
        return ClosurePowerIdeal(fam.base, n)
    if n > len(fam.explicit):
        raise DomainError(
            f"explicit family has {len(fam.explicit)} members, index {n} out of range"
        )
    return fam.explicit[n - 1]


def validate_family(fam: IdealFamily, upto: int | None = None) -> None:
    """Check the graded containment I_n I_m <= I_{n+m} on an explicit list.

    Raises DomainError on the first violated pair; a no-op for the derived
    family kinds, whose containments hold by construction.
    """
    if fam.kind != "explicit-list":
        return
    k = len(fam.explicit) if upto is None else min(upto, len(fam.explicit))
    for n in range(1, k + 1):
        for m in range(1, k - n + 1):
            prod = multiply(family_member(fam, n), family_member(fam, m))
            if not contains_ideal(family_member(fam, n + m), prod):
                raise DomainError(
                    f"graded containment fails: I_{n} * I_{m} is not inside I_{n + m}"
                )
