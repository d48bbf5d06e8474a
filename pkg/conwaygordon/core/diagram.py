"""Signed Gauss codes of knot and link diagrams.

This module provides functionality to:
- Represent a link diagram as one Gauss sequence per component
- Build diagrams from closed braid words
- Switch, smooth, mirror and reorient diagrams

Sign convention: a crossing is positive when the under-strand passes from
right to left as seen travelling along the over-strand (the right-handed
crossing). With the plane oriented counterclockwise this is
``sign(cross2(over_direction, under_direction))``.
"""

import logging
from typing import Dict, List, NamedTuple, Sequence, Tuple

logger = logging.getLogger(__name__)


class Visit(NamedTuple):
    """One passage of a component through a crossing."""

    crossing: int
    sign: int
    over: bool


class CrossingInfo(NamedTuple):
    """Where a crossing sits: its sign and the (component, index) of each visit."""

    sign: int
    over: Tuple[int, int]
    under: Tuple[int, int]


class LinkDiagram:
    """An oriented link diagram in signed Gauss-code form.

    Attributes:
        components: One tuple of visits per component, in travel order. A
            component with no crossings is an empty tuple.
    """

    def __init__(self, components: Sequence[Sequence[Visit]]):
        self.components: Tuple[Tuple[Visit, ...], ...] = tuple(
            tuple(Visit(int(v.crossing), int(v.sign), bool(v.over)) for v in comp)
            for comp in components
        )
        self._table = self._build_table()

    def _build_table(self) -> Dict[int, CrossingInfo]:
        seen: Dict[int, List[tuple]] = {}
        for ci, comp in enumerate(self.components):
            for k, visit in enumerate(comp):
                if visit.sign not in (1, -1):
                    raise ValueError(f"Crossing {visit.crossing} has sign {visit.sign}")
                seen.setdefault(visit.crossing, []).append((ci, k, visit))
        table = {}
        for c, visits in seen.items():
            if len(visits) != 2:
                raise ValueError(f"Crossing {c} is visited {len(visits)} times, expected 2")
            (ci1, k1, v1), (ci2, k2, v2) = visits
            if v1.over == v2.over:
                raise ValueError(f"Crossing {c} needs one over and one under visit")
            if v1.sign != v2.sign:
                raise ValueError(f"Crossing {c} has inconsistent signs")
            over, under = ((ci1, k1), (ci2, k2)) if v1.over else ((ci2, k2), (ci1, k1))
            table[c] = CrossingInfo(v1.sign, over, under)
        return table

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def crossing_count(self) -> int:
        return len(self._table)

    def crossing_table(self) -> Dict[int, CrossingInfo]:
        return dict(self._table)

    def crossings(self) -> List[int]:
        return sorted(self._table)

    def sign(self, c: int) -> int:
        return self._table[c].sign

    def writhe(self) -> int:
        return sum(info.sign for info in self._table.values())

    def component_of(self, c: int) -> Tuple[int, int]:
        """Components of the over and under strands of crossing ``c``."""
        info = self._table[c]
        return info.over[0], info.under[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, LinkDiagram) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"LinkDiagram({self.component_count} components, {self.crossing_count} crossings)"

    @classmethod
    def from_braid(cls, word: Sequence[int], strands: int) -> "LinkDiagram":
        """Diagram of the closure of a braid.

        Generator ``i`` (1-based, signed) crosses the strands at positions i and
        i+1. For ``+i`` the strand at position i goes over and the crossing is
        positive; for ``-i`` the strand at position i+1 goes over and the
        crossing is negative.

        Args:
            word: Signed generator indices
            strands: Number of braid strands

        Raises:
            ValueError: If a generator index is out of range

        Example:
            ```python
            trefoil = LinkDiagram.from_braid([1, 1, 1], 2)
            ```
        """
        for g in word:
            if g == 0 or abs(g) >= strands:
                raise ValueError(f"Generator {g} is out of range for {strands} strands")
        done = [False] * strands
        components = []
        for start in range(strands):
            if done[start]:
                continue
            visits = []
            pos = start
            while True:
                done[pos] = True
                for k, g in enumerate(word):
                    left = abs(g) - 1
                    if pos not in (left, left + 1):
                        continue
                    on_left = pos == left
                    sign = 1 if g > 0 else -1
                    visits.append(Visit(k, sign, on_left == (g > 0)))
                    pos = left + 1 if on_left else left
                if pos == start:
                    break
            components.append(visits)
        return cls(components)

    def relabelled(self) -> "LinkDiagram":
        """Renumber crossings 0, 1, ... in order of first appearance."""
        ids: Dict[int, int] = {}
        comps = []
        for comp in self.components:
            out = []
            for v in comp:
                ids.setdefault(v.crossing, len(ids))
                out.append(Visit(ids[v.crossing], v.sign, v.over))
            comps.append(out)
        return LinkDiagram(comps)

    def switch(self, c: int) -> "LinkDiagram":
        """Exchange over and under at crossing ``c``; its sign flips."""
        return LinkDiagram([
            [Visit(v.crossing, -v.sign, not v.over) if v.crossing == c else v for v in comp]
            for comp in self.components
        ])

    def smooth(self, c: int) -> "LinkDiagram":
        """Oriented smoothing at crossing ``c``.

        A self-crossing splits its component in two; a crossing between two
        components merges them.
        """
        info = self._table[c]
        (ca, ka), (cb, kb) = sorted((info.over, info.under))
        comps = [list(comp) for comp in self.components]
        if ca == cb:
            seq = comps[ca]
            inner = seq[ka + 1:kb]
            outer = seq[kb + 1:] + seq[:ka]
            new = comps[:ca] + [outer, inner] + comps[ca + 1:]
        else:
            x, y = comps[ca], comps[cb]
            merged = x[:ka] + y[kb + 1:] + y[:kb] + x[ka + 1:]
            new = [comp for i, comp in enumerate(comps) if i not in (ca, cb)]
            new.insert(ca, merged)
        return LinkDiagram(new)

    def reverse(self, i: int) -> "LinkDiagram":
        """Reverse the orientation of component ``i``.

        Crossings between component ``i`` and another component change sign;
        self-crossings of component ``i`` keep their sign.
        """
        flip = {
            c for c, info in self._table.items()
            if (info.over[0] == i) != (info.under[0] == i)
        }
        comps = []
        for k, comp in enumerate(self.components):
            seq = list(reversed(comp)) if k == i else list(comp)
            comps.append([Visit(v.crossing, -v.sign if v.crossing in flip else v.sign, v.over) for v in seq])
        return LinkDiagram(comps)

    def mirror(self) -> "LinkDiagram":
        """Switch every crossing."""
        return LinkDiagram([
            [Visit(v.crossing, -v.sign, not v.over) for v in comp] for comp in self.components
        ])

    def rotated(self, i: int, k: int) -> "LinkDiagram":
        """Move the basepoint of component ``i`` forward by ``k`` visits."""
        comps = [list(comp) for comp in self.components]
        if comps[i]:
            k %= len(comps[i])
            comps[i] = comps[i][k:] + comps[i][:k]
        return LinkDiagram(comps)
