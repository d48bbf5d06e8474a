"""Cycles, disjoint cycle pairs and the rerouting map of a ΔY-exchange.

This module provides functionality to:
- Enumerate all cycles Γ(G) and all unions of n disjoint cycles Γ⁽ⁿ⁾(G)
- Store cycles and cycle pairs in a canonical, sortable form with text keys
- Map cycle sets of G_△ to G_Y by rerouting triangle edges through the new
  vertex x, and compute the exact preimages of that map

A cycle is stored as its vertex sequence rotated so the smallest vertex comes
first, and reflected so the second vertex is smaller than the last. Keys are
``"0-1-2"`` for a cycle and ``"0-1-2|3-4-5"`` for a pair.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .graph import Edge, Graph, TriangleSite, delta_y

logger = logging.getLogger(__name__)


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@total_ordering
@dataclass(frozen=True, eq=True)
class Cycle:
    """A cycle given by its vertex sequence in canonical cyclic order.

    Any rotation or reflection of the same sequence builds an equal Cycle.
    Ordering is by length, then by vertex sequence.
    """

    vertices: Tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(v) for v in self.vertices)
        if len(seq) < 3:
            raise ValueError(f"A cycle needs at least 3 vertices, got {seq}")
        if len(set(seq)) != len(seq):
            raise ValueError(f"Cycle {seq} repeats a vertex")
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        if rot[1] > rot[-1]:
            rot = (rot[0],) + tuple(reversed(rot[1:]))
        object.__setattr__(self, "vertices", rot)

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "Cycle":
        return cls(tuple(seq))

    @property
    def length(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @cached_property
    def edges(self) -> FrozenSet[Edge]:
        seq = self.vertices
        return frozenset(_edge(seq[i - 1], seq[i]) for i in range(len(seq)))

    @property
    def components(self) -> Tuple["Cycle", ...]:
        return (self,)

    def sort_key(self) -> tuple:
        return (self.length, self.vertices)

    def key(self) -> str:
        return "-".join(map(str, self.vertices))

    def __lt__(self, other: "Cycle") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.key()


@dataclass(frozen=True)
class CyclePair:
    """Two vertex-disjoint cycles, the smaller one first."""

    first: Cycle
    second: Cycle

    def __post_init__(self):
        if self.first.vertex_set & self.second.vertex_set:
            raise ValueError(f"Cycles {self.first} and {self.second} are not disjoint")
        if self.second < self.first:
            first, second = self.second, self.first
            object.__setattr__(self, "first", first)
            object.__setattr__(self, "second", second)

    @property
    def components(self) -> Tuple[Cycle, Cycle]:
        return (self.first, self.second)

    @property
    def lengths(self) -> Tuple[int, int]:
        """Component lengths, longest first."""
        return tuple(sorted((self.first.length, self.second.length), reverse=True))

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return self.first.vertex_set | self.second.vertex_set

    def sort_key(self) -> tuple:
        return (self.first.sort_key(), self.second.sort_key())

    def key(self) -> str:
        return f"{self.first.key()}|{self.second.key()}"

    def __str__(self) -> str:
        return self.key()


CycleSetElement = Union[Cycle, CyclePair]


def element_sort_key(element: CycleSetElement) -> tuple:
    """Sort cycles before pairs, each in their own canonical order."""
    if isinstance(element, Cycle):
        return (0, element.sort_key())
    return (1, element.sort_key())


def parse_element(key: str) -> CycleSetElement:
    """Parse ``"0-1-2"`` or ``"0-1-2|3-4-5"`` (spaces also separate vertices).

    Raises:
        ValueError: For malformed keys or more than two components
    """
    parts = [p.strip() for p in key.split("|")]
    try:
        cycles = [Cycle(tuple(int(v) for v in p.replace("-", " ").split())) for p in parts]
    except ValueError as e:
        raise ValueError(f"Malformed cycle key {key!r}: {e}") from e
    if len(cycles) == 1:
        return cycles[0]
    if len(cycles) == 2:
        return CyclePair(*cycles)
    raise ValueError(f"Cycle key {key!r} has {len(cycles)} components; at most 2 are supported")


def _masks(g: Graph) -> Dict[int, int]:
    return {v: 1 << i for i, v in enumerate(g.vertices)}


def _mask_of(cycle: Cycle, bits: Dict[int, int]) -> int:
    m = 0
    for v in cycle.vertices:
        m |= bits[v]
    return m


@lru_cache(maxsize=64)
def _cycles(g: Graph) -> Tuple[Cycle, ...]:
    adj = g.adjacency
    found: List[Cycle] = []
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend(v: int) -> None:
            for w in sorted(adj[v]):
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        found.append(Cycle(tuple(path)))
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.remove(w)

        extend(s)
    found.sort()
    logger.debug(f"{g}: {len(found)} cycles")
    return tuple(found)


def enumerate_cycles(g: Graph, length: Optional[int] = None) -> List[Cycle]:
    """Enumerate Γ(g), or Γ_k(g) when ``length`` is given.

    A depth-first search from every start vertex s visits only vertices larger
    than s and closes a cycle only when its second vertex is smaller than its
    last, so each cycle is produced exactly once, already canonical.

    Args:
        g: Host graph
        length: Optional cycle length filter

    Returns:
        Sorted list of cycles
    """
    cycles = _cycles(g)
    if length is None:
        return list(cycles)
    return [c for c in cycles if c.length == length]


def _cycles_by_mask(g: Graph) -> Tuple[List[int], Dict[int, List[Cycle]]]:
    bits = _masks(g)
    groups: Dict[int, List[Cycle]] = {}
    for c in _cycles(g):
        groups.setdefault(_mask_of(c, bits), []).append(c)
    return sorted(groups), groups


@lru_cache(maxsize=64)
def _pairs(g: Graph) -> Tuple[CyclePair, ...]:
    masks, groups = _cycles_by_mask(g)
    pairs = []
    for i, m1 in enumerate(masks):
        for m2 in masks[i + 1:]:
            if m1 & m2:
                continue
            for c1 in groups[m1]:
                for c2 in groups[m2]:
                    pairs.append(CyclePair(c1, c2))
    pairs.sort(key=CyclePair.sort_key)
    logger.debug(f"{g}: {len(pairs)} disjoint cycle pairs")
    return tuple(pairs)


def enumerate_disjoint_pairs(
    g: Graph, lengths: Optional[Tuple[int, int]] = None
) -> List[CyclePair]:
    """Enumerate Γ⁽²⁾(g), or Γ⁽²⁾_{k,l}(g) when ``lengths=(k, l)`` is given.

    Cycles are grouped by vertex bitmask; two groups combine exactly when their
    masks are disjoint.
    """
    pairs = _pairs(g)
    if lengths is None:
        return list(pairs)
    wanted = tuple(sorted(lengths, reverse=True))
    return [p for p in pairs if p.lengths == wanted]


def enumerate_gamma_n(g: Graph, n: int) -> List[Tuple[Cycle, ...]]:
    """Enumerate Γ⁽ⁿ⁾(g): unions of n mutually disjoint cycles.

    Args:
        g: Host graph
        n: Number of components, at least 2

    Returns:
        Sorted list of n-tuples of cycles, each tuple in cycle order

    Raises:
        ValueError: If n < 2
    """
    if n < 2:
        raise ValueError(f"Γ⁽ⁿ⁾ needs n >= 2, got {n}")
    masks, groups = _cycles_by_mask(g)
    full = sum(_masks(g).values())
    results: List[Tuple[Cycle, ...]] = []

    def choose(start: int, used: int, chosen: List[int]) -> None:
        if len(chosen) == n:
            combos: List[Tuple[Cycle, ...]] = [()]
            for m in chosen:
                combos = [prefix + (c,) for prefix in combos for c in groups[m]]
            results.extend(tuple(sorted(combo)) for combo in combos)
            return
        # Each remaining component needs at least three unused vertices.
        if bin(full & ~used).count("1") < 3 * (n - len(chosen)):
            return
        for i in range(start, len(masks)):
            m = masks[i]
            if not m & used:
                chosen.append(m)
                choose(i + 1, used | m, chosen)
                chosen.pop()

    choose(0, 0, [])
    results.sort(key=lambda t: tuple(c.sort_key() for c in t))
    return results


def enumerate_elements(g: Graph) -> List[CycleSetElement]:
    """Γ̄(g) restricted to Γ(g) ∪ Γ⁽²⁾(g), cycles first."""
    return list(_cycles(g)) + list(_pairs(g))


def is_element_of(g: Graph, element: CycleSetElement) -> bool:
    """Return whether every component of ``element`` is a cycle of ``g``."""
    return all(c.vertex_set <= set(g.adjacency) and c.edges <= g.edges for c in element.components)


def contains_triangle(element: CycleSetElement, site: TriangleSite) -> bool:
    """Return whether the triangle is a component of ``element`` (membership in Γ̄_△)."""
    tri = frozenset(site.vertices)
    return any(c.vertex_set == tri for c in element.components)


def _rebuild(components: Sequence[Cycle]) -> CycleSetElement:
    if len(components) == 1:
        return components[0]
    return CyclePair(*components)


def _reroute(cycle: Cycle, triangle: FrozenSet[Edge], x: int) -> Cycle:
    seq = cycle.vertices
    n = len(seq)
    used = [i for i in range(n) if _edge(seq[i], seq[(i + 1) % n]) in triangle]
    if not used:
        return cycle
    if len(used) == 1:
        rot = seq[used[0]:] + seq[:used[0]]
        return Cycle((rot[0], x) + rot[1:])
    # Two triangle edges always meet at a vertex, so they are consecutive.
    start = next(i for i in used if (i + 1) % n in used)
    rot = seq[start:] + seq[:start]
    return Cycle((rot[0], x) + rot[2:])


def phi_map(
    g_delta: Graph,
    site: TriangleSite,
    element: CycleSetElement,
    x: Optional[int] = None,
) -> CycleSetElement:
    """Map a cycle set of G_△ to G_Y by rerouting through the new vertex.

    A sub-path using one triangle edge ``a-b`` becomes ``a-x-b``; a sub-path
    using two triangle edges ``a-c-b`` becomes ``a-x-b``.

    Args:
        g_delta: The graph G_△ containing the triangle
        site: The triangle that the ΔY-exchange replaces
        element: A cycle or cycle pair of ``g_delta``
        x: Label of the new vertex in G_Y, defaulting to ``g_delta.fresh_vertex()``

    Returns:
        The corresponding element of Γ̄(G_Y)

    Raises:
        ValueError: If ``element`` is not in Γ̄(g_delta) or contains the triangle
    """
    if not is_element_of(g_delta, element):
        raise ValueError(f"{element.key()} is not a cycle set of {g_delta}")
    if contains_triangle(element, site):
        raise ValueError(f"{element.key()} is in Γ̄_△, map undefined")
    if x is None:
        x = g_delta.fresh_vertex()
    return _rebuild([_reroute(c, site.edges, x) for c in element.components])


def phi_preimage(
    g_delta: Graph,
    site: TriangleSite,
    element: CycleSetElement,
    x: Optional[int] = None,
) -> List[CycleSetElement]:
    """Compute the exact preimage of a cycle set of G_Y under ``phi_map``.

    If x is not on ``element`` the preimage is the element itself. Otherwise
    the component through ``a-x-b`` has two candidate preimages: with the edge
    ``a-b``, and with the path ``a-c-b`` through the third triangle vertex c.
    The second exists only when c is not already on ``element``.

    Args:
        g_delta: The graph G_△
        site: The triangle of ``g_delta`` replaced by the exchange
        element: A cycle or cycle pair of G_Y
        x: Label of the new vertex, defaulting to ``g_delta.fresh_vertex()``

    Returns:
        Sorted list of one or two elements of Γ̄(g_delta)

    Raises:
        ValueError: If ``element`` is not a cycle set of G_Y
    """
    g_y = delta_y(g_delta, site, x)
    if x is None:
        x = g_delta.fresh_vertex()
    if not is_element_of(g_y, element):
        raise ValueError(f"{element.key()} is not a cycle set of {g_y}")

    components = list(element.components)
    hit = [i for i, c in enumerate(components) if x in c.vertex_set]
    if not hit:
        return [element]
    i = hit[0]
    seq = components[i].vertices
    k = seq.index(x)
    rot = seq[k - 1:] + seq[:k - 1] if k else (seq[-1],) + seq[:-1]
    a, b = rot[0], rot[2]
    (c,) = set(site.vertices) - {a, b}

    options = [Cycle((a,) + rot[2:])]
    if c not in element.vertex_set:
        options.append(Cycle((a, c) + rot[2:]))
    preimages = []
    for option in options:
        replaced = components[:i] + [option] + components[i + 1:]
        preimages.append(_rebuild(replaced))
    return sorted(preimages, key=element_sort_key)
