"""Exact lengths of graded local cohomology of monomial ideal powers.

The package computes, with exact rational arithmetic throughout: graded
pieces and total lengths of H^i_m(R/I_n) for families of monomial ideals
(ordinary powers, saturations, integral closures), quasi-polynomials and
rational generating functions fitted to the length sequences, volume limits
of integral-closure families via Newton polyhedra and co-convex regions,
and graph-theoretic finiteness criteria for edge ideals.
"""

from .asymptotics import (
    GrowthEstimate,
    LengthSequence,
    QuasiPolynomial,
    RationalGeneratingFunction,
    fit_quasipolynomial,
    growth_estimate,
    length_sequence,
    limit_via_volume,
    to_generating_function,
)
from .dsl import emit_graph, emit_ideal, parse_graph, parse_ideal
from .graphs import (
    Graph,
    edge_ideal,
    g_sub_x,
    height_edge_ideal,
    locally_bipartite,
    prop_finiteness_criterion,
)
from .homology import (
    QQ,
    FieldSpec,
    SimplicialComplex,
    is_connected,
    reduced_homology_dims,
)
from .ideals import (
    ClosurePowerIdeal,
    IdealFamily,
    MonomialIdeal,
    contains,
    explicit_family,
    family_member,
    integral_closure_family,
    intersect,
    localize,
    minimalize,
    multiply,
    power,
    powers_family,
    saturate,
    saturated_powers_family,
    unit_ideal,
    zero_ideal,
)
from .polyhedra import (
    CoConvexRegion,
    ConvexRegion,
    HalfSpace,
    NewtonPolyhedron,
    coconvex_from_ideals,
    coconvex_region,
    coconvex_volume,
    convex_region,
    halfspace,
    integral_closure_generators,
    lattice_count,
    nc_membership,
    newton_polyhedron,
    polytope_volume,
    strictly_inside,
)
from .takayama import (
    INFINITE,
    GradedPieceQuery,
    LengthResult,
    cech_dims,
    cech_oracle,
    delta_complex,
    finiteness_oracle,
    graded_dim,
    graded_dim_at,
    support_bound,
    total_length,
)

__version__ = "0.1.0"
