"""Exact piecewise-linear spatial embeddings.

This module provides functionality to:
- Store PL embeddings of graphs with exact rational coordinates
- Sample seeded random straight-line embeddings and build the moment-curve one
- Project an embedding along a generic direction and read off the signed
  Gauss code of any cycle or cycle pair
- Contract the image of a wye onto the boundary of a disk, realizing the
  embedding of G_△ induced from an embedding of G_Y

Projection along (a, b, 1) is computed exactly as the shear
(x, y, z) ↦ (x − a·z, y − b·z) with depth z; larger z is over. Every pair of
segments of the whole graph is intersected once per embedding, so the
genericity certificate holds for every cycle set at once.
"""

import logging
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import ClassVar, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..utils.geometry import (
    Point3,
    ONE,
    ZERO,
    add,
    as_point,
    cross2,
    lerp,
    point_on_segment,
    scale,
    segment_intersection_3d,
    segment_params_2d,
    segment_triangle_params,
    sign,
    sub,
)
from .cycles import CycleSetElement
from .diagram import LinkDiagram, Visit
from .graph import Edge, Graph, WyeSite, y_delta

logger = logging.getLogger(__name__)


class GeneralPositionError(ValueError):
    """Raised when an embedding or projection cannot be brought into general position."""


class ContractionError(ValueError):
    """Raised when no certified disk is found for a wye contraction."""


class Segment(NamedTuple):
    """One straight piece of an edge polyline, oriented from the smaller endpoint label."""

    edge: Edge
    index: int
    p0: Point3
    p1: Point3


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


class PLEmbedding:
    """A piecewise-linear embedding of a graph in 3-space.

    Attributes:
        graph: Host graph
        points: Vertex label to exact point
        bends: Edge to interior bend points, ordered from the smaller endpoint
        seed: Seed the embedding was sampled with, if any
        BOX: Exclusive upper bound of random integer coordinates
        MAX_RETRIES: Resampling cap for random embeddings
    """

    BOX: ClassVar[int] = 2 ** 16
    MAX_RETRIES: ClassVar[int] = 100

    def __init__(
        self,
        graph: Graph,
        points: Mapping[int, Sequence],
        bends: Optional[Mapping[Tuple[int, int], Sequence[Sequence]]] = None,
        seed: Optional[int] = None,
    ):
        missing = set(graph.vertices) - set(points)
        if missing:
            raise ValueError(f"No point given for vertices {sorted(missing)}")
        self.graph = graph
        self.points: Dict[int, Point3] = {v: as_point(points[v]) for v in graph.vertices}
        self.bends: Dict[Edge, Tuple[Point3, ...]] = {}
        for (a, b), pts in (bends or {}).items():
            if not graph.has_edge(a, b):
                raise ValueError(f"Bend points given for non-edge {a}-{b}")
            path = [as_point(p) for p in pts]
            if a > b:
                path.reverse()
            if path:
                self.bends[_edge(a, b)] = tuple(path)
        self.seed = seed
        self._projections: Dict[Optional[int], "Projection"] = {}

    def polyline(self, u: int, v: int) -> List[Point3]:
        """Points of edge ``uv`` from u to v, bends included."""
        a, b = _edge(u, v)
        path = [self.points[a], *self.bends.get((a, b), ()), self.points[b]]
        return path if u == a else path[::-1]

    def segments(self) -> List[Segment]:
        segs = []
        for a, b in self.graph.sorted_edges():
            path = self.polyline(a, b)
            for k in range(len(path) - 1):
                segs.append(Segment((a, b), k, path[k], path[k + 1]))
        return segs

    def invalid_reason(self) -> Optional[str]:
        """Return why this is not an embedding, or None if it is one.

        Checks exactly that vertices are distinct points, no vertex lies on a
        non-incident edge, and polylines meet only at shared endpoints.
        """
        pts = list(self.points.values())
        if len(set(pts)) != len(pts):
            return "two vertices share a point"
        segs = self.segments()
        for s in segs:
            if s.p0 == s.p1:
                return f"zero-length segment on edge {s.edge}"
        for v, p in self.points.items():
            for s in segs:
                if v not in s.edge and point_on_segment(p, s.p0, s.p1):
                    return f"vertex {v} lies on edge {s.edge}"
        for s, t in combinations(segs, 2):
            hit = segment_intersection_3d(s.p0, s.p1, t.p0, t.p1)
            if hit is None:
                continue
            if hit[0] == "overlap":
                return f"edges {s.edge} and {t.edge} overlap"
            allowed = None
            if s.edge == t.edge:
                if abs(s.index - t.index) == 1:
                    allowed = s.p1 if s.index < t.index else s.p0
            else:
                common = set(s.edge) & set(t.edge)
                if common:
                    p = self.points[common.pop()]
                    if p in (s.p0, s.p1) and p in (t.p0, t.p1):
                        allowed = p
            if hit[1] != allowed:
                return f"edges {s.edge} and {t.edge} intersect"
        return None

    def is_valid(self) -> bool:
        return self.invalid_reason() is None

    def projection(self, seed: Optional[int] = None) -> "Projection":
        """Cached generic projection; ``seed`` selects a randomized direction search."""
        if seed not in self._projections:
            self._projections[seed] = Projection(self, seed)
        return self._projections[seed]

    def __repr__(self) -> str:
        return f"PLEmbedding({self.graph}, seed={self.seed}, {len(self.bends)} bent edges)"


def random_embedding(g: Graph, seed: int, max_retries: Optional[int] = None) -> PLEmbedding:
    """Sample a straight-line embedding with random integer vertex coordinates.

    Args:
        g: Graph to embed
        seed: Seed for ``numpy.random.default_rng``
        max_retries: Resampling cap, defaulting to MAX_RETRIES

    Returns:
        A valid embedding with coordinates in [0, BOX)

    Raises:
        GeneralPositionError: If every sample fails the validity check
    """
    retries = PLEmbedding.MAX_RETRIES if max_retries is None else max_retries
    rng = np.random.default_rng(seed)
    for attempt in range(retries):
        coords = rng.integers(0, PLEmbedding.BOX, size=(g.order, 3))
        points = {v: tuple(int(c) for c in coords[i]) for i, v in enumerate(g.vertices)}
        emb = PLEmbedding(g, points, seed=seed)
        reason = emb.invalid_reason()
        if reason is None:
            return emb
        logger.warning(f"Resampling embedding of {g} (seed {seed}, attempt {attempt + 1}): {reason}")
    raise GeneralPositionError(
        f"could not reach general position for {g} with seed {seed} "
        f"after {retries} attempts"
    )


def linear_embedding(g: Graph) -> PLEmbedding:
    """Place the k-th vertex at (t, t², t³) with t = k + 1 on the moment curve.

    No four points of the moment curve are coplanar, so straight edges never meet.
    """
    points = {}
    for k, v in enumerate(g.vertices):
        t = k + 1
        points[v] = (t, t * t, t * t * t)
    return PLEmbedding(g, points)


class Crossing(NamedTuple):
    """A crossing of two segment projections."""

    over: int
    under: int
    over_param: Fraction
    under_param: Fraction
    sign: int


class Projection:
    """Generic projection of a whole embedding.

    Attributes:
        embedding: The projected embedding
        direction: Projection direction (a, b, 1)
        crossings: Every crossing between segment projections
        MAX_DIRECTION_ATTEMPTS: Cap on direction perturbations
    """

    MAX_DIRECTION_ATTEMPTS: ClassVar[int] = 64

    def __init__(self, embedding: PLEmbedding, seed: Optional[int] = None):
        self.embedding = embedding
        self.segments = embedding.segments()
        rng = np.random.default_rng(0 if seed is None else seed)
        for attempt in range(self.MAX_DIRECTION_ATTEMPTS):
            if attempt == 0 and seed is None:
                a, b = ZERO, ZERO
            else:
                a = Fraction(int(rng.integers(-2 ** 10, 2 ** 10 + 1)), 2 ** 12)
                b = Fraction(int(rng.integers(-2 ** 10, 2 ** 10 + 1)), 2 ** 12)
            crossings = self._find_crossings(a, b)
            if crossings is not None:
                break
            logger.debug(f"Direction ({a}, {b}, 1) is not generic for {embedding.graph}")
        else:
            raise GeneralPositionError(
                f"could not find a generic projection direction for {embedding.graph} "
                f"after {self.MAX_DIRECTION_ATTEMPTS} attempts"
            )
        if attempt:
            logger.warning(f"Projection of {embedding.graph} perturbed {attempt} time(s) to ({a}, {b}, 1)")
        self.direction = (a, b, ONE)
        self.crossings: List[Crossing] = crossings
        self._by_segment: Dict[int, List[Tuple[Fraction, int]]] = {}
        for k, cr in enumerate(crossings):
            self._by_segment.setdefault(cr.over, []).append((cr.over_param, k))
            self._by_segment.setdefault(cr.under, []).append((cr.under_param, k))
        for entries in self._by_segment.values():
            entries.sort()
        self._edge_segments: Dict[Edge, List[int]] = {}
        for i, s in enumerate(self.segments):
            self._edge_segments.setdefault(s.edge, []).append(i)

    def _shared_endpoint(self, s: Segment, t: Segment) -> Optional[Point3]:
        if s.edge == t.edge:
            if abs(s.index - t.index) == 1:
                return s.p1 if s.index < t.index else s.p0
            return None
        common = set(s.edge) & set(t.edge)
        if not common:
            return None
        return self.embedding.points[common.pop()]

    def _find_crossings(self, a: Fraction, b: Fraction) -> Optional[List[Crossing]]:
        def shear(p: Point3) -> Tuple[Fraction, Fraction]:
            return (p[0] - a * p[2], p[1] - b * p[2])

        flat = [(shear(s.p0), shear(s.p1)) for s in self.segments]
        seen_points = set()
        crossings = []
        for i, j in combinations(range(len(self.segments)), 2):
            s, t = self.segments[i], self.segments[j]
            try:
                hit = segment_params_2d(flat[i][0], flat[i][1], flat[j][0], flat[j][1])
            except ValueError:
                return None
            if hit is None:
                continue
            si, tj = hit
            end_i = si in (ZERO, ONE)
            end_j = tj in (ZERO, ONE)
            if end_i or end_j:
                shared = self._shared_endpoint(s, t)
                if (
                    shared is not None and end_i and end_j
                    and lerp(s.p0, s.p1, si) == shared and lerp(t.p0, t.p1, tj) == shared
                ):
                    continue
                return None
            zi = s.p0[2] + (s.p1[2] - s.p0[2]) * si
            zj = t.p0[2] + (t.p1[2] - t.p0[2]) * tj
            if zi == zj:
                return None
            where = lerp(flat[i][0], flat[i][1], si)
            if where in seen_points:
                return None
            seen_points.add(where)
            if zi > zj:
                over, under, op, up = i, j, si, tj
            else:
                over, under, op, up = j, i, tj, si
            d_over = sub(flat[over][1], flat[over][0])
            d_under = sub(flat[under][1], flat[under][0])
            crossings.append(Crossing(over, under, op, up, sign(cross2(d_over, d_under))))
        return crossings

    def diagram(self, element: CycleSetElement) -> LinkDiagram:
        """Signed Gauss code of the image of a cycle or cycle pair.

        Each component is traversed in its canonical vertex order; crossings
        with edges outside ``element`` are ignored.

        Raises:
            ValueError: If ``element`` uses a non-edge of the host
        """
        direction: Dict[Edge, int] = {}
        for comp in element.components:
            seq = comp.vertices
            for k in range(len(seq)):
                a, b = seq[k], seq[(k + 1) % len(seq)]
                e = _edge(a, b)
                if e not in self._edge_segments:
                    raise ValueError(f"{element.key()} uses non-edge {a}-{b}")
                direction[e] = 1 if a < b else -1

        ids: Dict[int, int] = {}
        components = []
        for comp in element.components:
            seq = comp.vertices
            visits = []
            for k in range(len(seq)):
                a, b = seq[k], seq[(k + 1) % len(seq)]
                e = _edge(a, b)
                forward = direction[e] == 1
                segs = self._edge_segments[e] if forward else reversed(self._edge_segments[e])
                for si in segs:
                    entries = self._by_segment.get(si, [])
                    for _, ci in (entries if forward else reversed(entries)):
                        cr = self.crossings[ci]
                        over_edge = self.segments[cr.over].edge
                        under_edge = self.segments[cr.under].edge
                        if over_edge not in direction or under_edge not in direction:
                            continue
                        ids.setdefault(ci, len(ids))
                        s = cr.sign * direction[over_edge] * direction[under_edge]
                        visits.append(Visit(ids[ci], s, cr.over == si))
            components.append(visits)
        return LinkDiagram(components)


def project(emb: PLEmbedding, element: CycleSetElement, seed: Optional[int] = None) -> LinkDiagram:
    """Project the image of a cycle set to a signed link diagram.

    Args:
        emb: Embedding
        element: A cycle or cycle pair of the host
        seed: Optional seed for a randomized projection direction; None starts
            from (0, 0, 1)

    Raises:
        GeneralPositionError: If no generic direction is found
    """
    return emb.projection(seed).diagram(element)


class _Fan:
    """Cone from the wye centre over the hexagon u, p_uv, v, p_vw, w, p_wu."""

    def __init__(self, centre: Point3, rim: Sequence[Point3]):
        self.centre = centre
        self.rim = list(rim)
        self.triangles = [(centre, rim[k], rim[(k + 1) % 6]) for k in range(6)]

    def embedded(self) -> bool:
        """Whether the six triangles meet only along shared spokes."""
        x = self.centre
        try:
            for k, l in combinations(range(6), 2):
                if l == k + 1:
                    spoke = self.rim[l]
                elif (k, l) == (0, 5):
                    spoke = self.rim[0]
                else:
                    spoke = None

                def allowed(p: Point3) -> bool:
                    return p == x or (spoke is not None and point_on_segment(p, x, spoke))

                for mine, theirs in ((k, l), (l, k)):
                    tri = self.triangles[mine]
                    for e0, e1 in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
                        hit = segment_triangle_params(e0, e1, *self.triangles[theirs])
                        if hit is None:
                            continue
                        if not (allowed(lerp(e0, e1, hit[0])) and allowed(lerp(e0, e1, hit[1]))):
                            return False
        except ValueError:
            return False
        return True

    def clear_of(self, segments: Sequence[Segment], legs: Sequence[Point3]) -> bool:
        """Whether other segments meet the fan only in their own endpoints at u, v or w."""
        for s in segments:
            for tri in self.triangles:
                hit = segment_triangle_params(s.p0, s.p1, *tri)
                if hit is None:
                    continue
                lo, hi = hit
                if lo != hi or lo not in (ZERO, ONE):
                    return False
                if lerp(s.p0, s.p1, lo) not in legs:
                    return False
        return True


_AXES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _direction_sets(points: Sequence[Point3]) -> List[Tuple[Point3, Point3, Point3]]:
    """Offset directions for p_uv, p_vw, p_wu: signed coordinate axes, then bisectors."""
    sets = []
    for perm in permutations(_AXES):
        for signs in product((1, -1), repeat=3):
            sets.append(tuple(as_point(scale(axis, Fraction(s))) for axis, s in zip(perm, signs)))
    x, pu, pv, pw = points
    sets.append(tuple(
        sub(add(p, q), scale(x, Fraction(2))) for p, q in ((pu, pv), (pv, pw), (pw, pu))
    ))
    return sets


MAX_HALVINGS = 40


def contract_y(emb: PLEmbedding, site: WyeSite, max_halvings: int = MAX_HALVINGS) -> PLEmbedding:
    """Contract the image of a wye onto the boundary of a disk.

    The new edges uv, vw, wu run u → p_uv → v, v → p_vw → w and w → p_wu → u
    with p = f(x) + ε·d. The result is accepted when the cone D from f(x) over
    the hexagon u, p_uv, v, p_vw, w, p_wu is an embedded disk that every other
    edge meets at most in its own endpoint u, v or w, and the new polylines form
    a valid embedding. ε starts at 1 and is halved up to MAX_HALVINGS times per
    direction set.

    Args:
        emb: Embedding of G_Y whose wye edges are straight
        site: Wye of the host
        max_halvings: Halvings of ε tried per direction set

    Returns:
        Embedding of G_△ = y_delta(host, site) on the same vertex points

    Raises:
        ValueError: If the site is not a wye of the host or YΔ is not simple
        ContractionError: If a wye edge is bent or no certified disk is found
    """
    g = emb.graph
    if WyeSite.at(g, site.x) != site:
        raise ValueError(f"{site} is not a wye of {g}")
    g_delta = y_delta(g, site)
    for leg in site.legs:
        if _edge(site.x, leg) in emb.bends:
            raise ContractionError(f"Wye edge {site.x}-{leg} is bent; only straight wye edges contract")

    centre = emb.points[site.x]
    pu, pv, pw = (emb.points[t] for t in site.legs)
    legs = (pu, pv, pw)
    others = [s for s in emb.segments() if site.x not in s.edge]
    new_edges = (_edge(site.u, site.v), _edge(site.v, site.w), _edge(site.u, site.w))

    for dirs in _direction_sets((centre, pu, pv, pw)):
        eps = ONE
        unit_fan = _Fan(centre, [pu, add(centre, dirs[0]), pv, add(centre, dirs[1]), pw, add(centre, dirs[2])])
        if not unit_fan.embedded():
            continue
        for _ in range(max_halvings):
            p_uv, p_vw, p_wu = (add(centre, scale(d, eps)) for d in dirs)
            fan = _Fan(centre, [pu, p_uv, pv, p_vw, pw, p_wu])
            if fan.embedded() and fan.clear_of(others, legs):
                bends = {e: pts for e, pts in emb.bends.items() if site.x not in e}
                bends.update({new_edges[0]: [p_uv], new_edges[1]: [p_vw], new_edges[2]: [p_wu]})
                points = {v: p for v, p in emb.points.items() if v != site.x}
                contracted = PLEmbedding(g_delta, points, bends, seed=emb.seed)
                if contracted.is_valid():
                    logger.debug(f"Contracted {site} on {g} with ε = {eps}")
                    return contracted
            eps /= 2
    raise ContractionError(f"no valid ε found to contract {site} on {g}")
