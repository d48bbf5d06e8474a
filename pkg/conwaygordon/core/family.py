"""Graph families generated from K6 and K7 by ΔY / YΔ-exchanges.

This module provides functionality to:
- Compute the closure of a root graph under ΔY and optionally YΔ-exchanges
- Record a replayable witnessing exchange sequence for every member
- Name members stably and attach structural aliases (Petersen, Heawood, K3,3,1)

Members are named by root and order: the roots keep their names, other members
of the K6 family are ``Q<order>`` and of the K7 family ``H<order>``, and later
discoveries of the same order get a letter suffix (``Q8b``). Breadth-first
discovery makes the names deterministic. Because a mixed ΔY/YΔ path to a graph
is always at least two steps longer than a pure ΔY path, every ΔY-reachable
member is reached first by a pure ΔY witness.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from string import ascii_lowercase
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .graph import (
    CanonicalCertificate,
    Graph,
    TriangleSite,
    WyeSite,
    canonical_form,
    complete_graph,
    delta_y,
    y_delta,
)

logger = logging.getLogger(__name__)


class ExchangeKind(Enum):
    """Kinds of graph exchange.

    Attributes:
        DELTA_Y: Replace a triangle by a wye
        Y_DELTA: Replace a wye by a triangle
    """
    DELTA_Y = "ΔY"
    Y_DELTA = "YΔ"


@dataclass(frozen=True)
class Exchange:
    """One step of a witnessing sequence."""

    kind: ExchangeKind
    site: Union[TriangleSite, WyeSite]

    def apply(self, g: Graph) -> Graph:
        if self.kind is ExchangeKind.DELTA_Y:
            return delta_y(g, self.site)
        return y_delta(g, self.site)

    def __str__(self) -> str:
        if self.kind is ExchangeKind.DELTA_Y:
            return str(self.site)
        return f"Y{self.site}"


ROOTS: Dict[str, int] = {"K6": 6, "K7": 7}
PREFIXES: Dict[str, str] = {"K6": "Q", "K7": "H"}


def root_graph(root: str) -> Graph:
    """Return the labelled root graph for a family name.

    Raises:
        ValueError: If the root is not K6 or K7
    """
    if root not in ROOTS:
        raise ValueError(f"Unsupported root {root!r}. Must be one of: {', '.join(ROOTS)}")
    return complete_graph(ROOTS[root])


def replay(root: Graph, steps: Sequence[Union[Exchange, TriangleSite]]) -> Graph:
    """Replay an exchange sequence from a root graph.

    Bare TriangleSites are read as ΔY steps.

    Raises:
        ValueError: If a step does not apply; the message names the step
    """
    g = root
    for i, step in enumerate(steps, start=1):
        if isinstance(step, TriangleSite):
            step = Exchange(ExchangeKind.DELTA_Y, step)
        try:
            g = step.apply(g)
        except ValueError as e:
            raise ValueError(f"Step {i} ({step}) is invalid: {e}") from e
    return g


@lru_cache(maxsize=None)
def _structural_aliases() -> Tuple[Tuple[str, CanonicalCertificate], ...]:
    known = {
        "Petersen": nx.petersen_graph(),
        "Heawood": nx.heawood_graph(),
        "K3,3,1": nx.complete_multipartite_graph(3, 3, 1),
    }
    aliases = []
    for alias, nxg in known.items():
        labels = {v: i for i, v in enumerate(sorted(nxg.nodes))}
        g = Graph.from_edges(
            [(labels[a], labels[b]) for a, b in nxg.edges], vertices=labels.values()
        )
        aliases.append((alias, canonical_form(g)))
    return tuple(aliases)


@dataclass(frozen=True)
class FamilyMember:
    """A member of a ΔY / YΔ family.

    Attributes:
        name: Stable internal name (K6, Q7, H8, ...)
        graph: Labelled representative, exactly the result of replaying ``witness``
        certificate: Canonical certificate of ``graph``
        witness: Exchanges leading from the root to ``graph``
        aliases: Structural names this member is isomorphic to
    """

    name: str
    graph: Graph
    certificate: CanonicalCertificate
    witness: Tuple[Exchange, ...] = ()
    aliases: Tuple[str, ...] = ()

    @property
    def delta_y_reachable(self) -> bool:
        return all(step.kind is ExchangeKind.DELTA_Y for step in self.witness)

    @property
    def delta_y_sequence(self) -> List[TriangleSite]:
        """The witness as a list of triangle sites.

        Raises:
            ValueError: If the witness contains a YΔ step
        """
        if not self.delta_y_reachable:
            raise ValueError(f"{self.name} is not reachable by ΔY-exchanges alone")
        return [step.site for step in self.witness]

    def witness_text(self) -> str:
        return ",".join(str(step) for step in self.witness) or "-"


@dataclass
class Family:
    """The closure of a root graph under a set of exchanges."""

    root: str
    include_ydelta: bool
    members: List[FamilyMember] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def names(self) -> List[str]:
        return [m.name for m in self.members]

    def get(self, key: str) -> FamilyMember:
        """Look a member up by name, alias, or certificate digest prefix.

        Raises:
            ValueError: If nothing or more than one member matches
        """
        for m in self.members:
            if key == m.name or key in m.aliases:
                return m
        matches = [m for m in self.members if len(key) >= 4 and m.certificate.digest().startswith(key)]
        if len(matches) == 1:
            return matches[0]
        if matches:
            raise ValueError(f"Certificate prefix {key!r} is ambiguous in the {self.root} family")
        raise ValueError(f"No member {key!r} in the {self.root} family")


def _member_name(root: str, order: int, counts: Dict[int, int]) -> str:
    seen = counts.get(order, 0)
    counts[order] = seen + 1
    base = f"{PREFIXES[root]}{order}"
    return base if seen == 0 else f"{base}{ascii_lowercase[seen]}"


def family_closure(root: str, include_ydelta: bool = False) -> Family:
    """Generate the family of a root graph.

    Breadth-first search applies every ΔY site (and, if requested, every YΔ
    site) to every member, in sorted site order, deduplicating by canonical
    certificate.

    Args:
        root: ``"K6"`` or ``"K7"``
        include_ydelta: Whether YΔ-exchanges are allowed too

    Returns:
        The family, members in discovery order

    Raises:
        ValueError: If the root is unsupported

    Example:
        ```python
        family = family_closure("K7")
        assert len(family) == 14
        ```
    """
    start = root_graph(root)
    aliases = _structural_aliases()
    family = Family(root, include_ydelta)
    counts: Dict[int, int] = {}
    seen: Dict[CanonicalCertificate, FamilyMember] = {}

    def admit(g: Graph, witness: Tuple[Exchange, ...]) -> Optional[FamilyMember]:
        cert = canonical_form(g)
        if cert in seen:
            return None
        name = root if not witness else _member_name(root, g.order, counts)
        member = FamilyMember(
            name=name,
            graph=g.with_name(name),
            certificate=cert,
            witness=witness,
            aliases=tuple(alias for alias, c in aliases if c == cert),
        )
        seen[cert] = member
        family.members.append(member)
        logger.info(f"Discovered {name}: {g.order} vertices via [{member.witness_text()}]")
        return member

    queue = deque([admit(start, ())])
    while queue:
        member = queue.popleft()
        steps = [Exchange(ExchangeKind.DELTA_Y, s) for s in member.graph.triangles()]
        if include_ydelta:
            steps += [Exchange(ExchangeKind.Y_DELTA, s) for s in member.graph.wye_sites()]
        for step in steps:
            child = admit(step.apply(member.graph), member.witness + (step,))
            if child is not None:
                queue.append(child)

    logger.info(f"{root} family ({'ΔY+YΔ' if include_ydelta else 'ΔY'}): {len(family)} members")
    return family


@lru_cache(maxsize=None)
def load_family(root: str, include_ydelta: bool = True) -> Family:
    """Cached ``family_closure``."""
    return family_closure(root, include_ydelta)


def find_member(name: str) -> Tuple[str, FamilyMember]:
    """Find a member in either family by name, alias or certificate prefix.

    Returns:
        Tuple of (root name, member)

    Raises:
        ValueError: If no family contains the member
    """
    errors = []
    for root in ROOTS:
        try:
            return root, load_family(root).get(name)
        except ValueError as e:
            errors.append(str(e))
    raise ValueError(f"Unknown member {name!r}: " + "; ".join(errors))
