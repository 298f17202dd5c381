"""Finite simple graphs, edge ideals, and finiteness criteria for their powers.

The criteria implemented here decide, combinatorially, whether the first
local cohomology of R/I(G)^n has finite length for large n: every vertex
must either leave an isolated vertex behind when its closed neighborhood is
deleted, or leave a graph with at least one bipartite connected component.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError
from .ideals import MonomialIdeal, minimalize

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple graph on 1-based vertices inside an ambient range 1..ambient.

    ``vertices`` may be a proper subset of the ambient range: star deletion
    produces subgraphs but the variable indices they refer to stay fixed.
    """

    ambient: int
    vertices: frozenset[int]
    edges: frozenset[Edge]

    @classmethod
    def from_edges(
        cls,
        ambient: int,
        edges: Iterable[Sequence[int]],
        vertices: Iterable[int] | None = None,
    ) -> "Graph":
        vs = frozenset(range(1, ambient + 1)) if vertices is None else frozenset(vertices)
        norm = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if u not in vs or v not in vs:
                raise DomainError(f"edge {u}-{v} leaves the vertex set")
            norm.add((min(u, v), max(u, v)))
        if any(not 1 <= v <= ambient for v in vs):
            raise DomainError("vertex outside the ambient range")
        return cls(ambient, vs, frozenset(norm))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacent(self, v: int) -> set[int]:
        return {u if w == v else w for u, w in self.edges if v in (u, w)}

    def star(self, v: int) -> set[int]:
        return {v} | self.adjacent(v)

    def isolated_vertices(self) -> set[int]:
        touched = {v for e in self.edges for v in e}
        return set(self.vertices) - touched

    def induced(self, keep: Iterable[int]) -> "Graph":
        ks = frozenset(keep)
        return Graph(
            self.ambient,
            ks,
            frozenset(e for e in self.edges if e[0] in ks and e[1] in ks),
        )

    def components(self) -> list[frozenset[int]]:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in self.edges:
            parent[find(u)] = find(v)
        groups: dict[int, set[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)


def is_bipartite(graph: Graph) -> bool:
    """Two-colorability of the whole graph (vacuously true without vertices)."""
    color: dict[int, int] = {}
    for start in sorted(graph.vertices):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in graph.adjacent(v):
                if u not in color:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def odd_cycle_witness(graph: Graph) -> list[int] | None:
    """An odd closed walk certifying non-bipartiteness, or None."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for start in sorted(graph.vertices):
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = [start]
        while queue:
            v = queue.pop(0)
            for u in sorted(graph.adjacent(v)):
                if u not in color:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    def path(w):
                        out = []
                        while w is not None:
                            out.append(w)
                            w = parent[w]
                        return out
                    pv, pu = path(v), path(u)
                    common = (set(pv) & set(pu))
                    meet = next(w for w in pv if w in common)
                    cycle = pv[: pv.index(meet) + 1] + pu[: pu.index(meet)][::-1]
                    return cycle
    return None


def edge_ideal(graph: Graph) -> MonomialIdeal:
    """Squarefree quadratic ideal with one generator x_u x_v per edge."""
    gens = []
    for u, v in graph.sorted_edges():
        exp = [0] * graph.ambient
        exp[u - 1] = 1
        exp[v - 1] = 1
        gens.append(tuple(exp))
    if not gens:
        from .ideals import zero_ideal

        return zero_ideal(graph.ambient)
    return minimalize(gens, graph.ambient)


def _require_criterion_input(graph: Graph):
    if graph.ambient < 3:
        raise DomainError("criteria assume at least 3 vertices")
    if graph.isolated_vertices():
        raise DomainError(f"graph has isolated vertices: {sorted(graph.isolated_vertices())}")


def g_sub_x(graph: Graph, v: int) -> Graph:
    """Delete the closed neighborhood of v, then drop isolated vertices."""
    if v not in graph.vertices:
        raise DomainError(f"vertex {v} not in the graph")
    rest = graph.induced(set(graph.vertices) - graph.star(v))
    return rest.induced(set(rest.vertices) - rest.isolated_vertices())


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the per-vertex finiteness test with one witness per vertex."""

    finite: bool
    witnesses: tuple[tuple[int, str], ...]  # (vertex, 'isolated'|'bipartite-component'|'fail')


def prop_finiteness_criterion(graph: Graph) -> CriterionReport:
    """Finiteness of the length of H^1 of R/I(G)^n for n >> 0.

    Every vertex must satisfy (i) deleting its closed star leaves isolated
    vertices, or (ii) the star-deleted, pruned graph has a bipartite
    connected component.  A single-edge component counts as bipartite.
    """
    _require_criterion_input(graph)
    witnesses = []
    finite = True
    for v in sorted(graph.vertices):
        deleted = graph.induced(set(graph.vertices) - graph.star(v))
        if deleted.isolated_vertices():
            witnesses.append((v, "isolated"))
            continue
        gx = g_sub_x(graph, v)
        if any(is_bipartite(gx.induced(comp)) for comp in gx.components()):
            witnesses.append((v, "bipartite-component"))
            continue
        witnesses.append((v, "fail"))
        finite = False
    return CriterionReport(finite, tuple(witnesses))


def locally_bipartite(graph: Graph) -> bool:
    """Whether every star-deleted, pruned graph is bipartite."""
    _require_criterion_input(graph)
    return all(is_bipartite(g_sub_x(graph, v)) for v in sorted(graph.vertices))


def height_edge_ideal(graph: Graph) -> int:
    """Height of the edge ideal = minimum vertex cover size (exhaustive, d <= 16)."""
    if graph.ambient > 16:
        raise DomainError("exhaustive vertex-cover search capped at 16 vertices")
    if not graph.edges:
        return 0
    verts = sorted({v for e in graph.edges for v in e})
    for k in range(len(verts) + 1):
        for cover in combinations(verts, k):
            cs = set(cover)
            if all(u in cs or v in cs for u, v in graph.edges):
                return k
    return len(verts)
