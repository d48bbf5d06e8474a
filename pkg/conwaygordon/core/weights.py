"""Integer cycle-weight maps and their pushforward through ΔY-exchanges.

This module provides functionality to:
- Build the base weight maps on Γ̄(K6) and Γ̄(K7)
- Push a weight map forward along a ΔY-exchange, summing over preimages
- Derive the weight map of any graph reached from K6 or K7 by ΔY-exchanges
- Extract the odd-weight cycles that carry the Arf parity statement
- Compare tables of isomorphic hosts up to relabelling

A weight map is sparse: only nonzero weights are stored. It carries the
identity kind (K6-type or K7-type) and the identity constant, so the verifier
can configure itself from the table alone.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Set

from networkx.algorithms.isomorphism import GraphMatcher

from .cycles import (
    Cycle,
    CyclePair,
    CycleSetElement,
    contains_triangle,
    element_sort_key,
    enumerate_cycles,
    enumerate_disjoint_pairs,
    is_element_of,
    phi_map,
)
from .family import root_graph
from .graph import Graph, TriangleSite, complete_graph, delta_y

logger = logging.getLogger(__name__)


class IdentityKind(Enum):
    """The two identity shapes, named after their root graph.

    K6-type: 2·Σ ω·a₂ = Σ ω·lk² − 1.
    K7-type: Σ ω·a₂ = 2·Σ ω·lk² − 21.

    Attributes:
        K6: Identities descending from K6
        K7: Identities descending from K7
    """
    K6 = "K6"
    K7 = "K7"

    @property
    def constant(self) -> int:
        return -1 if self is IdentityKind.K6 else -21

    @property
    def knot_coefficient(self) -> int:
        """Coefficient of ω·a₂ in the invariant attached to a cycle."""
        return 2 if self is IdentityKind.K6 else 1

    @property
    def link_coefficient(self) -> int:
        """Coefficient of ω·lk² in the invariant attached to a cycle pair."""
        return -1 if self is IdentityKind.K6 else -2

    @property
    def order(self) -> int:
        return 6 if self is IdentityKind.K6 else 7


@dataclass
class WeightMap:
    """A sparse integer weight map on Γ̄(host).

    Attributes:
        host: Graph whose cycle sets are weighted
        kind: Identity kind inherited from the root
        constant: Identity constant c
        weights: Nonzero weights keyed by canonical cycle set
    """

    host: Graph
    kind: IdentityKind
    constant: int
    weights: Dict[CycleSetElement, int] = field(default_factory=dict)

    def __post_init__(self):
        self.weights = {k: v for k, v in self.weights.items() if v}

    def __getitem__(self, element: CycleSetElement) -> int:
        return self.weights.get(element, 0)

    def __len__(self) -> int:
        return len(self.weights)

    def items(self) -> List[tuple]:
        """Nonzero entries in canonical element order."""
        return sorted(self.weights.items(), key=lambda kv: element_sort_key(kv[0]))

    def cycle_weights(self) -> Dict[Cycle, int]:
        return {k: v for k, v in self.weights.items() if isinstance(k, Cycle)}

    def pair_weights(self) -> Dict[CyclePair, int]:
        return {k: v for k, v in self.weights.items() if isinstance(k, CyclePair)}

    def validate(self) -> None:
        """Check that every key is a cycle set of the host.

        Raises:
            ValueError: On the first invalid key
        """
        for element in self.weights:
            if not is_element_of(self.host, element):
                raise ValueError(f"Weight key {element.key()} is not a cycle set of {self.host}")

    def relabel(self, mapping: Mapping[int, int]) -> "WeightMap":
        """Return the table with host and keys relabelled by ``mapping``."""
        def move(element: CycleSetElement) -> CycleSetElement:
            cycles = [Cycle(tuple(mapping[v] for v in c.vertices)) for c in element.components]
            return cycles[0] if len(cycles) == 1 else CyclePair(*cycles)

        return WeightMap(
            self.host.relabel(mapping),
            self.kind,
            self.constant,
            {move(k): v for k, v in self.weights.items()},
        )

    def histogram(self) -> Dict[tuple, int]:
        """Count entries by (shape, weight); shape is a cycle length or a pair's lengths."""
        counts: Counter = Counter()
        for element, weight in self.weights.items():
            shape = element.length if isinstance(element, Cycle) else element.lengths
            counts[(shape, weight)] += 1
        return dict(counts)


def _complete_host(host: Optional[Graph], n: int) -> Graph:
    if host is None:
        return complete_graph(n)
    if host.order != n or host.size != n * (n - 1) // 2:
        raise ValueError(f"Base weights for K{n} need a complete host on {n} vertices, got {host}")
    return host


def base_weights_k6(host: Optional[Graph] = None) -> WeightMap:
    """Base table on Γ̄(K6): 1 on Hamiltonian cycles and disjoint pairs, −1 on 5-cycles.

    Args:
        host: A complete graph on 6 vertices, defaulting to ``complete_graph(6)``

    Raises:
        ValueError: If ``host`` is not complete on 6 vertices
    """
    host = _complete_host(host, 6)
    weights: Dict[CycleSetElement, int] = {}
    for c in enumerate_cycles(host):
        if c.length == 6:
            weights[c] = 1
        elif c.length == 5:
            weights[c] = -1
    for p in enumerate_disjoint_pairs(host):
        weights[p] = 1
    return WeightMap(host, IdentityKind.K6, IdentityKind.K6.constant, weights)


def base_weights_k7(host: Optional[Graph] = None) -> WeightMap:
    """Base table on Γ̄(K7): 7 / −6 / −2 on 7- / 6- / 5-cycles, 1 on (4,3) pairs.

    Args:
        host: A complete graph on 7 vertices, defaulting to ``complete_graph(7)``

    Raises:
        ValueError: If ``host`` is not complete on 7 vertices
    """
    host = _complete_host(host, 7)
    by_length = {7: 7, 6: -6, 5: -2}
    weights: Dict[CycleSetElement, int] = {}
    for c in enumerate_cycles(host):
        if c.length in by_length:
            weights[c] = by_length[c.length]
    for p in enumerate_disjoint_pairs(host, (4, 3)):
        weights[p] = 1
    return WeightMap(host, IdentityKind.K7, IdentityKind.K7.constant, weights)


def base_weights(kind: IdentityKind, host: Optional[Graph] = None) -> WeightMap:
    if kind is IdentityKind.K6:
        return base_weights_k6(host)
    return base_weights_k7(host)


def pushforward(w: WeightMap, site: TriangleSite) -> WeightMap:
    """Push a weight map forward through a ΔY-exchange.

    ω̃(γ) is the sum of ω(γ′) over the preimages γ′ of γ. Since the rerouting
    map is defined on every element that does not contain the triangle, the
    sum is accumulated by mapping each nonzero entry forward; entries that
    contain the triangle have no image and drop out.

    Args:
        w: Weight map on Γ̄(G_△)
        site: A triangle of ``w.host``

    Returns:
        Weight map on Γ̄(G_Y) with the same kind and constant

    Raises:
        ValueError: If the site is not a triangle of the host
    """
    g_y = delta_y(w.host, site)
    x = w.host.fresh_vertex()
    totals: Dict[CycleSetElement, int] = {}
    dropped = 0
    for element, weight in w.weights.items():
        if contains_triangle(element, site):
            dropped += 1
            continue
        image = phi_map(w.host, site, element, x)
        totals[image] = totals.get(image, 0) + weight
    result = WeightMap(g_y, w.kind, w.constant, totals)
    logger.debug(
        f"Pushforward at {site}: {len(w)} entries -> {len(result)} entries "
        f"({dropped} triangle entries dropped)"
    )
    return result


def derive_weights(root, sequence: Sequence[TriangleSite]) -> WeightMap:
    """Derive the weight map of a ΔY-descendant by iterated pushforward.

    Args:
        root: ``"K6"``, ``"K7"`` or an IdentityKind
        sequence: Triangle sites, replayed from the labelled root

    Returns:
        Weight map on the graph obtained by replaying ``sequence``

    Raises:
        ValueError: If the root is unsupported or a step does not replay; the
            message names the failing step
    """
    kind = root if isinstance(root, IdentityKind) else IdentityKind(str(root))
    w = base_weights(kind, root_graph(kind.value))
    for i, site in enumerate(sequence, start=1):
        try:
            w = pushforward(w, site)
        except ValueError as e:
            raise ValueError(f"Step {i} ({site}) is invalid: {e}") from e
    logger.info(f"Derived {kind.value}-type weights over {len(sequence)} step(s): {len(w)} entries")
    return w


def arf_support(w: WeightMap) -> Set[Cycle]:
    """Cycles of odd weight in a K7-type table.

    Raises:
        ValueError: If the table is K6-type
    """
    if w.kind is not IdentityKind.K7:
        raise ValueError(f"Arf support needs a K7-type table, got {w.kind.value}-type")
    return {c for c, weight in w.cycle_weights().items() if weight % 2}


def tables_agree(w1: WeightMap, w2: WeightMap) -> bool:
    """Return whether some host isomorphism carries one table onto the other.

    Hosts are matched with networkx's VF2 matcher; each isomorphism is tried
    until one maps every nonzero entry of ``w1`` to an equal entry of ``w2``.
    """
    if w1.kind is not w2.kind or w1.constant != w2.constant or len(w1) != len(w2):
        return False
    matcher = GraphMatcher(w1.host.to_networkx(), w2.host.to_networkx())
    for mapping in matcher.isomorphisms_iter():
        if w1.relabel(mapping).weights == w2.weights:
            return True
    return False
