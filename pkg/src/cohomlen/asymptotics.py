"""Length sequences over ideal families and their exact asymptotics.

Sequence values are exact lengths; quasi-polynomials are recovered by a
fit-and-validate search (train on one window, demand exact agreement on
every held-out value) rather than by a symbolic counting argument, so a
successful fit is strong evidence at desk scale but not a proof.  The
implicit family convention I_0 = R contributes the value f(0) = 0, which
both the generating functions and the fits use.

The volume limit for integral-closure families sums, over the candidate
subcomplexes of the radical complex with nonzero homology in the relevant
index, the homology dimension times the exact volume of the co-convex
region carved out by the facet and minimal-non-face membership conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .errors import (
    ConsistencyError,
    DomainError,
    InsufficientDataError,
    NoFitError,
    ResourceLimitError,
)
from .homology import QQ, FieldSpec, SimplicialComplex, homology_dim
from .ideals import (
    ClosurePowerIdeal,
    IdealFamily,
    MonomialIdeal,
    family_member,
    localize,
)
from .linalg import solve
from .takayama import INFINITE, LengthResult, delta_complex, finiteness_oracle, total_length


@dataclass(frozen=True)
class LengthSequence:
    """Lengths of H^i_m(R/I_n) for n = 1..N over one ideal family."""

    family: IdealFamily
    i: int
    entries: tuple[tuple[int, LengthResult], ...]

    @property
    def dim(self) -> int:
        return self.family.dim

    @property
    def n_max(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def finite_values(self) -> list[tuple[int, int]]:
        return [(n, r.value) for n, r in self.entries if r.is_finite]

    def has_infinite(self) -> bool:
        return any(not r.is_finite for _, r in self.entries)


def length_sequence(
    family: IdealFamily,
    i: int,
    n_max: int,
    field: FieldSpec = QQ,
    threads: int = 1,
) -> LengthSequence:
    """Exact lengths for n = 1..n_max; INFINITE entries are recorded, never raised.

    Entries are independent, so the thread count is a throughput knob only;
    results are collected in index order and identical at any thread count.
    """
    if n_max < 1:
        raise DomainError("sequence needs n_max >= 1")

    def entry(n: int) -> tuple[int, LengthResult]:
        return n, total_length(family_member(family, n), i, field)

    ns = range(1, n_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = tuple(pool.map(entry, ns))
    else:
        entries = tuple(entry(n) for n in ns)
    return LengthSequence(family, i, entries)


# ---------------------------------------------------------------------------
# quasi-polynomial fitting


@dataclass(frozen=True)
class QuasiPolynomial:
    """f(n) = polys[n mod period](n) for n >= valid_from; coefficients ascending."""

    period: int
    polys: tuple[tuple[Fraction, ...], ...]
    valid_from: int

    @property
    def degree(self) -> int:
        return max(len(p) - 1 for p in self.polys)

    def evaluate(self, n: int) -> Fraction:
        coeffs = self.polys[n % self.period]
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * n + c
        return acc

    def to_jsonable(self) -> dict:
        return {
            "period": self.period,
            "polys": [[str(c) for c in p] for p in self.polys],
            "valid_from": self.valid_from,
        }


def _sequence_values(data) -> list[int]:
    if isinstance(data, LengthSequence):
        if data.has_infinite():
            raise DomainError("cannot fit a sequence with INFINITE entries")
        values = [0]  # I_0 = R, so the length at n = 0 vanishes
        for idx, (n, r) in enumerate(data.entries):
            if n != idx + 1:
                raise DomainError("sequence entries must cover consecutive n from 1")
            values.append(r.value)
        return values
    return [int(v) for v in data]


def fit_quasipolynomial(
    data, max_degree: int, max_period: int
) -> QuasiPolynomial:
    """Smallest (period, degree, valid_from) in lexicographic order whose
    exact interpolation on a training window reproduces every held-out
    value exactly.

    ``data`` is a LengthSequence (the convention f(0) = 0 supplies one extra
    point) or a plain list of values f(0), f(1), ...  Training takes
    period*(degree+1) consecutive points from valid_from; at least
    max(5, 2*period) later points must be left over for validation.
    """
    values = _sequence_values(data)
    total = len(values)
    n_top = total - 1
    min_needed = 1 + max(5, 2)
    if total < min_needed:
        raise InsufficientDataError(
            f"need values up to n >= {min_needed - 1}, got n <= {n_top}"
        )
    for period in range(1, max_period + 1):
        margin = max(5, 2 * period)
        for degree in range(0, max_degree + 1):
            need = period * (degree + 1)
            for valid_from in range(0, n_top // 2 + 1):
                if valid_from + need + margin > total:
                    break
                polys = []
                for r in range(period):
                    pts = [
                        (n, values[n])
                        for n in range(valid_from, valid_from + need)
                        if n % period == r
                    ]
                    rows = [[Fraction(n) ** j for j in range(degree + 1)] for n, _ in pts]
                    rhs = [v for _, v in pts]
                    coeffs = solve(rows, rhs)
                    assert coeffs is not None  # distinct nodes: Vandermonde solvable
                    while len(coeffs) > 1 and coeffs[-1] == 0:
                        coeffs.pop()
                    polys.append(tuple(coeffs))
                qp = QuasiPolynomial(period, tuple(polys), valid_from)
                if all(
                    qp.evaluate(n) == values[n] for n in range(valid_from, total)
                ):
                    return qp
    raise NoFitError(
        f"no quasi-polynomial with period <= {max_period}, degree <= {max_degree} "
        f"reproduces the data exactly"
    )


# ---------------------------------------------------------------------------
# rational generating functions


@dataclass(frozen=True)
class RationalGeneratingFunction:
    """numerator(x) / prod_j (1 - x^{b_j}), integer numerator coefficients."""

    numerator: tuple[int, ...]
    denominator_factors: tuple[int, ...]

    def series(self, count: int) -> list[int]:
        den = [1]
        for b in self.denominator_factors:
            nxt = den + [0] * b
            for k, c in enumerate(den):
                nxt[k + b] -= c
            den = nxt
        out = []
        for m in range(count):
            c = self.numerator[m] if m < len(self.numerator) else 0
            for k in range(1, min(m, len(den) - 1) + 1):
                c -= den[k] * out[m - k]
            out.append(c)
        return out

    def to_jsonable(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "denominator_factors": list(self.denominator_factors),
        }


def _poly_div_exact(num: list[int], div: list[int]) -> list[int] | None:
    """Exact division of integer polynomials (ascending coefficients)."""
    if all(c == 0 for c in num):
        return [0]
    if len(num) < len(div):
        return None
    rem = list(num)
    lead = div[-1]
    out = [0] * (len(num) - len(div) + 1)
    for pos in range(len(out) - 1, -1, -1):
        c = rem[pos + len(div) - 1]
        if c % lead:
            return None
        q = c // lead
        out[pos] = q
        for k, dcoef in enumerate(div):
            rem[pos + k] -= q * dcoef
    if any(rem):
        return None
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _one_minus_xb(b: int) -> list[int]:
    return [1] + [0] * (b - 1) + [-1]


def _reduce_gf(num: list[int], factors: list[int]) -> tuple[list[int], list[int]]:
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    changed = True
    while changed and factors:
        changed = False
        factors.sort()
        for idx, b in enumerate(factors):
            q = _poly_div_exact(num, _one_minus_xb(b))
            if q is not None:
                num = q
                del factors[idx]
                changed = True
                break
            replaced = False
            for bp in range(1, b):
                if b % bp:
                    continue
                quotient = [0] * (b - bp + 1)
                for t in range(0, b // bp):
                    quotient[t * bp] = 1
                q = _poly_div_exact(num, quotient)
                if q is not None:
                    num = q
                    factors[idx] = bp
                    changed = True
                    replaced = True
                    break
            if replaced:
                break
    factors.sort()
    return num, factors


def to_generating_function(
    qp: QuasiPolynomial, prefix: Sequence[int] = ()
) -> RationalGeneratingFunction:
    """Sum of f(n) x^n as a rational function, reduced.

    ``prefix`` supplies the exact values for n < valid_from.  The raw
    denominator is (1 - x^period)^(degree+1); the numerator is verified to
    terminate, then common factors are cancelled so e.g. powers of (1+x)
    migrate out of (1 - x^2) factors.
    """
    v = qp.valid_from
    if len(prefix) < v:
        raise DomainError(f"prefix must cover n < {v}")
    pi, k = qp.period, qp.degree + 1

    def f(n: int) -> Fraction:
        return Fraction(prefix[n]) if n < v else qp.evaluate(n)

    top = v + pi * k - 1
    num = []
    for m in range(top + 1):
        c = sum(
            (-1) ** t * comb(k, t) * f(m - t * pi)
            for t in range(k + 1)
            if m - t * pi >= 0
        )
        if c.denominator != 1:
            raise ConsistencyError("non-integer numerator coefficient; bad fit")
        num.append(int(c))
    for m in range(top + 1, top + 2 * pi + 1):
        c = sum(
            (-1) ** t * comb(k, t) * f(m - t * pi)
            for t in range(k + 1)
            if m - t * pi >= 0
        )
        if c != 0:
            raise ConsistencyError("numerator fails to terminate; bad fit")
    if all(c == 0 for c in num):
        return RationalGeneratingFunction((0,), ())
    num, factors = _reduce_gf(num, [pi] * k)
    return RationalGeneratingFunction(tuple(num), tuple(factors))


# ---------------------------------------------------------------------------
# volume limits for integral-closure families


def _antichains(masks: list[int], cap: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]

    def dfs(start: int, chosen: tuple[int, ...]):
        for idx in range(start, len(masks)):
            f = masks[idx]
            if any((f & c) == f or (f & c) == c for c in chosen):
                continue
            nxt = chosen + (f,)
            out.append(nxt)
            if len(out) > cap:
                raise ResourceLimitError(
                    f"more than {cap} candidate subcomplexes; dimension too large"
                )
            dfs(idx + 1, nxt)

    dfs(0, ())
    return out


def _minimal_nonfaces(complex_: SimplicialComplex) -> list[int]:
    d = complex_.ambient
    out = []
    for mask in range(1, 1 << d):
        if mask in complex_.faces:
            continue
        sub_ok = True
        for v in range(d):
            bit = 1 << v
            if mask & bit and (mask ^ bit) not in complex_.faces:
                sub_ok = False
                break
        if sub_ok:
            out.append(mask)
    return out


def limit_via_volume(
    ideal: MonomialIdeal, i: int, field: FieldSpec = QQ, candidate_cap: int = 200_000
) -> Fraction:
    """lim length(H^i_m(R/closure(I^n))) / n^d, as an exact rational.

    Enumerates subcomplexes of the radical complex with nonzero reduced
    homology in index i-1 and integrates the volume of the region where the
    membership complex equals that subcomplex: inside the Newton polyhedron
    of every minimal non-face localization, outside the one of every facet
    localization.
    """
    from .polyhedra import (
        CoConvexRegion,
        _system_vertices,
        coconvex_volume,
        convex_region,
        newton_polyhedron,
    )

    if ideal.is_zero or ideal.is_unit:
        raise DomainError("the zero and unit ideals are excluded")
    d = ideal.dim
    if d > 5:
        raise ResourceLimitError("candidate enumeration is capped at dimension 5")
    for n in (1, 2):
        if not finiteness_oracle(ClosurePowerIdeal(ideal, n), i):
            raise DomainError(
                f"integral-closure family has infinite length at i={i} (n={n}); "
                "the volume limit does not apply"
            )

    delta0 = delta_complex(ideal, (0,) * d)
    face_masks = sorted(
        (m for m in delta0.faces if m), key=lambda m: (bin(m).count("1"), m)
    )
    total = Fraction(0)
    for chain in _antichains(face_masks, candidate_cap):
        complex_ = SimplicialComplex.from_facets(
            d, [[v + 1 for v in range(d) if m >> v & 1] for m in chain]
        )
        h = homology_dim(complex_, i - 1, field)
        if h == 0:
            continue
        outer_parts = []
        involved: list[MonomialIdeal] = []
        for gmask in _minimal_nonfaces(complex_):
            loc = localize(ideal, [v for v in range(d) if gmask >> v & 1])
            if loc.is_unit:
                continue
            involved.append(loc)
            outer_parts.append(newton_polyhedron(loc))
        outer = convex_region(d, outer_parts)
        overts = _system_vertices(frozenset(outer.halfspaces), d)
        if not overts:
            continue
        facet_polys = []
        for fmask in complex_.facet_masks():
            loc = localize(ideal, [v for v in range(d) if fmask >> v & 1])
            involved.append(loc)
            facet_polys.append(newton_polyhedron(loc))
        # structural kill: if the outer region sits inside one facet
        # polyhedron the difference is empty (shared orthant recession)
        if any(
            all(all(hs.contains(v) for hs in poly.halfspaces) for v in overts)
            for poly in facet_polys
        ):
            continue
        degree_sum = sum(sum(sum(g) for g in loc.gens) for loc in involved)
        region = CoConvexRegion(
            outer,
            tuple(convex_region(d, [outer, poly]) for poly in facet_polys),
            max(1, degree_sum + 1),
        )
        total += h * coconvex_volume(region)
    return total


# ---------------------------------------------------------------------------
# growth diagnostics


@dataclass(frozen=True)
class GrowthEstimate:
    """Tail statistics of length/n^d; floating point, explicitly non-certified."""

    limsup_est: float
    liminf_est: float
    fitted_degree: int | None


def growth_estimate(seq: LengthSequence) -> GrowthEstimate:
    finite = seq.finite_values()
    if len(finite) < 4:
        raise DomainError("growth estimates need at least 4 finite entries")
    d = seq.dim
    ratios = [v / n**d for n, v in finite]
    tail = ratios[-max(4, len(ratios) // 2):]
    fitted = None
    try:
        fitted = fit_quasipolynomial(seq, max_degree=d, max_period=4).degree
    except (DomainError, InsufficientDataError, NoFitError):
        pass
    return GrowthEstimate(max(tail), min(tail), fitted)
