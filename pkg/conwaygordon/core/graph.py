"""Finite simple graphs and ΔY / YΔ rewriting.

This module provides functionality to:
- Represent finite simple graphs with integer vertex labels as immutable values
- Perform ΔY-exchanges (triangle to wye) and YΔ-exchanges (wye to triangle)
- Compute canonical certificates so isomorphic graphs compare equal

Graphs in this package are small (at most 14 vertices and 21 edges for the
families of interest), so canonical forms are computed by colour refinement
plus exhaustive individualization instead of an external canonical-labelling
tool.
"""

import hashlib
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph with integer vertex labels.

    Instances are immutable and hashable. The name is carried for display and
    file output only; it takes no part in equality.

    Attributes:
        vertices: Sorted tuple of distinct vertex labels
        edges: Set of edges, each stored as an ascending label pair
        name: Optional display name
    """

    vertices: Tuple[int, ...]
    edges: FrozenSet[Edge]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(self.vertices):
            raise ValueError(f"Repeated vertex labels in {self.vertices}")
        edges = frozenset(_edge(a, b) for a, b in self.edges)
        known = set(vertices)
        for a, b in edges:
            if a == b:
                raise ValueError(f"Self-loop at vertex {a}")
            if a not in known or b not in known:
                raise ValueError(f"Edge {a}-{b} has an endpoint that is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[int, int]],
        vertices: Optional[Iterable[int]] = None,
        name: str = "",
    ) -> "Graph":
        """Build a graph from an edge list.

        Args:
            edges: Vertex pairs; repeated pairs are rejected
            vertices: Vertex labels, defaulting to the edge endpoints
            name: Optional display name

        Returns:
            The graph

        Raises:
            ValueError: If an edge is repeated or is a self-loop
        """
        edge_list = [_edge(int(a), int(b)) for a, b in edges]
        if len(set(edge_list)) != len(edge_list):
            raise ValueError("Repeated edge in edge list; multi-edges are not supported")
        if vertices is None:
            labels = {v for e in edge_list for v in e}
        else:
            labels = [int(v) for v in vertices]
        return cls(tuple(labels), frozenset(edge_list), name)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: int) -> FrozenSet[int]:
        if v not in self.adjacency:
            raise ValueError(f"Vertex {v} is not in the graph")
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edges

    def fresh_vertex(self) -> int:
        """Return the next unused label (max label + 1)."""
        return self.vertices[-1] + 1 if self.vertices else 0

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def triangles(self) -> List["TriangleSite"]:
        """Return every 3-cycle of the graph as a TriangleSite, sorted."""
        adj = self.adjacency
        sites = []
        for u, v in self.sorted_edges():
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    sites.append(TriangleSite(u, v, w))
        return sites

    def wye_sites(self) -> List["WyeSite"]:
        """Return every degree-3 vertex at which a YΔ-exchange keeps the graph simple."""
        sites = []
        for x in self.vertices:
            if self.degree(x) != 3:
                continue
            site = WyeSite.at(self, x)
            if not any(self.has_edge(a, b) for a, b in combinations(site.legs, 2)):
                sites.append(site)
        return sites

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        """Return the graph with every vertex ``v`` renamed to ``mapping[v]``."""
        return Graph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(_edge(mapping[a], mapping[b]) for a, b in self.edges),
            self.name,
        )

    def with_name(self, name: str) -> "Graph":
        return replace(self, name=name)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph(name=self.name)
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    def __str__(self) -> str:
        label = self.name or "graph"
        return f"{label} ({self.order} vertices, {self.size} edges)"


@dataclass(frozen=True, order=True)
class TriangleSite:
    """A 3-cycle on vertices u < v < w."""

    u: int
    v: int
    w: int

    def __post_init__(self):
        u, v, w = sorted((self.u, self.v, self.w))
        if u == v or v == w:
            raise ValueError(f"Triangle site needs three distinct vertices, got {(u, v, w)}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @property
    def vertices(self) -> Tuple[int, int, int]:
        return (self.u, self.v, self.w)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset({(self.u, self.v), (self.v, self.w), (self.u, self.w)})

    def __str__(self) -> str:
        return f"{self.u}-{self.v}-{self.w}"


@dataclass(frozen=True, order=True)
class WyeSite:
    """A vertex x together with its three neighbours u < v < w."""

    x: int
    u: int
    v: int
    w: int

    def __post_init__(self):
        u, v, w = sorted((self.u, self.v, self.w))
        if len({self.x, u, v, w}) != 4:
            raise ValueError(f"Wye site needs four distinct vertices, got {(self.x, u, v, w)}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @classmethod
    def at(cls, g: Graph, x: int) -> "WyeSite":
        """Build the wye centred at ``x`` in ``g``.

        Raises:
            ValueError: If ``x`` does not have degree exactly 3
        """
        legs = sorted(g.neighbors(x))
        if len(legs) != 3:
            raise ValueError(f"Vertex {x} has degree {len(legs)}, expected 3")
        return cls(x, *legs)

    @property
    def legs(self) -> Tuple[int, int, int]:
        return (self.u, self.v, self.w)

    @property
    def triangle(self) -> TriangleSite:
        return TriangleSite(self.u, self.v, self.w)

    def __str__(self) -> str:
        return f"{self.x}:{self.u}-{self.v}-{self.w}"


def complete_graph(n: int) -> Graph:
    """Return K_n on vertices 0..n-1.

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError(f"Complete graph needs at least one vertex, got n={n}")
    return Graph(tuple(range(n)), frozenset(combinations(range(n), 2)), f"K{n}")


def delta_y(g: Graph, site: TriangleSite, x: Optional[int] = None) -> Graph:
    """Apply a ΔY-exchange at a triangle.

    The three triangle edges are removed and a new vertex ``x`` is joined to
    each triangle vertex.

    Args:
        g: Host graph
        site: A 3-cycle of ``g``
        x: Label for the new vertex, defaulting to ``g.fresh_vertex()``

    Returns:
        The exchanged graph, with one more vertex and the same number of edges

    Raises:
        ValueError: If the site is not a triangle of ``g`` or ``x`` is already used
    """
    if not site.edges <= g.edges:
        raise ValueError(f"Site {site} is not a triangle of {g}")
    if x is None:
        x = g.fresh_vertex()
    elif x in g.adjacency:
        raise ValueError(f"Vertex label {x} is already used in {g}")
    edges = (g.edges - site.edges) | {_edge(x, t) for t in site.vertices}
    logger.debug(f"ΔY at {site} on {g}: new vertex {x}")
    return Graph(g.vertices + (x,), frozenset(edges))


def y_delta(g: Graph, site: WyeSite) -> Graph:
    """Apply a YΔ-exchange at a degree-3 vertex.

    Args:
        g: Host graph
        site: A wye of ``g``

    Returns:
        The graph with ``site.x`` removed and the triangle on its legs added

    Raises:
        ValueError: If ``site.x`` does not have degree 3 with legs u, v, w, or if
            one of the triangle edges is already present
    """
    if site.x not in g.adjacency:
        raise ValueError(f"Vertex {site.x} is not in {g}")
    legs = g.neighbors(site.x)
    if len(legs) != 3:
        raise ValueError(f"Vertex {site.x} has degree {len(legs)}, expected 3")
    if set(legs) != set(site.legs):
        raise ValueError(f"Neighbours of {site.x} are {sorted(legs)}, not {list(site.legs)}")
    triangle = site.triangle.edges
    if triangle & g.edges:
        raise ValueError(f"YΔ at {site} would create multi-edge")
    edges = {e for e in g.edges if site.x not in e} | triangle
    logger.debug(f"YΔ at {site} on {g}")
    return Graph(tuple(v for v in g.vertices if v != site.x), frozenset(edges))


@dataclass(frozen=True)
class CanonicalCertificate:
    """Isomorphism-invariant fingerprint of a graph.

    Attributes:
        order: Number of vertices
        codes: Sorted edge codes ``a * order + b`` under the canonical relabelling
    """

    order: int
    codes: Tuple[int, ...]

    def digest(self, length: int = 12) -> str:
        payload = f"{self.order}:{','.join(map(str, self.codes))}".encode()
        return hashlib.sha1(payload).hexdigest()[:length]

    def __str__(self) -> str:
        return self.digest()


def _refine(adj: Dict[int, FrozenSet[int]], colours: Dict[int, int]) -> Dict[int, int]:
    """Equitable colour refinement; colour ids are ranks of sorted signatures."""
    cells = len(set(colours.values()))
    while True:
        signatures = {
            v: (colours[v], tuple(sorted(colours[w] for w in adj[v]))) for v in adj
        }
        rank = {s: i for i, s in enumerate(sorted(set(signatures.values())))}
        refined = {v: rank[s] for v, s in signatures.items()}
        if len(rank) == cells:
            return refined
        cells = len(rank)
        colours = refined


@lru_cache(maxsize=None)
def canonical_form(g: Graph) -> CanonicalCertificate:
    """Compute the canonical certificate of a graph.

    Colour refinement starts from a single colour class (so the first round
    separates by degree). Every non-discrete partition is split by
    individualizing each vertex of its first smallest-colour non-singleton cell
    in turn. Each discrete leaf is a relabelling; the certificate is the
    lexicographically smallest relabelled edge code over all leaves.

    Args:
        g: Graph to certify

    Returns:
        The certificate; equal for two graphs exactly when they are isomorphic
    """
    adj = g.adjacency
    n = g.order
    best: Optional[Tuple[int, ...]] = None
    leaves = 0

    def search(colours: Dict[int, int]) -> None:
        nonlocal best, leaves
        colours = _refine(adj, colours)
        cells: Dict[int, List[int]] = {}
        for v, c in colours.items():
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            leaves += 1
            code = tuple(sorted(
                min(colours[a], colours[b]) * n + max(colours[a], colours[b])
                for a, b in g.edges
            ))
            if best is None or code < best:
                best = code
            return
        target = min(c for c, members in cells.items() if len(members) > 1)
        for v in sorted(cells[target]):
            search({w: 2 * c + (0 if w == v else 1) for w, c in colours.items()})

    search({v: 0 for v in g.vertices})
    logger.debug(f"Canonical form of {g}: {leaves} leaves explored")
    return CanonicalCertificate(n, best or ())
