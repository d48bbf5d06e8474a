"""Reidemeister moves on Gauss codes and braid words.

This module provides functionality to:
- Add and remove Reidemeister I kinks and Reidemeister II pokes on Gauss codes
- Reduce a diagram by R1/R2 removals to a fixpoint
- Apply isotopy moves to braid words (R2, R3, far commutation, conjugation,
  Markov stabilization)

The Gauss-code moves only ever insert or delete crossings whose planar
realization is local, so planar diagrams stay planar.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from .diagram import LinkDiagram, Visit

logger = logging.getLogger(__name__)


def _next_crossing_id(d: LinkDiagram) -> int:
    ids = d.crossings()
    return ids[-1] + 1 if ids else 0


def add_kink(d: LinkDiagram, component: int, position: int, sign: int, over_first: bool) -> LinkDiagram:
    """Insert a Reidemeister I kink.

    Args:
        d: Diagram
        component: Component receiving the kink
        position: Index in the component's visit list where the kink goes
        sign: Sign of the new crossing
        over_first: Whether the kink is entered on the over strand

    Returns:
        The diagram with one more crossing
    """
    if sign not in (1, -1):
        raise ValueError(f"Kink sign must be +1 or -1, got {sign}")
    c = _next_crossing_id(d)
    comps = [list(comp) for comp in d.components]
    seq = comps[component]
    position %= len(seq) + 1
    seq[position:position] = [Visit(c, sign, over_first), Visit(c, sign, not over_first)]
    return LinkDiagram(comps)


def add_poke(d: LinkDiagram, c: int, finger_on_over: bool, finger_over: bool) -> LinkDiagram:
    """Insert a Reidemeister II poke at the corner between two outgoing arms.

    The outgoing arm of one strand at crossing ``c`` (the finger) is pushed
    across the outgoing arm of the other strand, creating crossings d1 then d2
    on both strands right after ``c``.

    Args:
        d: Diagram
        c: Existing crossing next to the corner
        finger_on_over: Whether the finger is the over strand of ``c``
        finger_over: Whether the finger passes over the other arm

    Returns:
        The diagram with two more crossings
    """
    info = d.crossing_table()[c]
    a_pos, b_pos = (info.over, info.under) if finger_on_over else (info.under, info.over)
    # Orientation of the corner: sign of cross2(finger, other) at c.
    turn = info.sign if finger_on_over else -info.sign
    s1, s2 = (-turn, turn) if finger_over else (turn, -turn)
    d1 = _next_crossing_id(d)
    d2 = d1 + 1
    on_finger = [Visit(d1, s1, finger_over), Visit(d2, s2, finger_over)]
    on_other = [Visit(d1, s1, not finger_over), Visit(d2, s2, not finger_over)]

    comps = [list(comp) for comp in d.components]
    inserts = sorted([(a_pos, on_finger), (b_pos, on_other)], key=lambda t: t[0], reverse=True)
    for (ci, k), visits in inserts:
        comps[ci][k + 1:k + 1] = visits
    return LinkDiagram(comps)


def _remove(d: LinkDiagram, doomed: set) -> LinkDiagram:
    return LinkDiagram([[v for v in comp if v.crossing not in doomed] for comp in d.components])


def find_kink(d: LinkDiagram) -> Optional[int]:
    """Return a crossing whose two visits are cyclically adjacent, if any."""
    for comp in d.components:
        n = len(comp)
        for k in range(n):
            if n >= 2 and comp[k].crossing == comp[(k + 1) % n].crossing:
                return comp[k].crossing
    return None


def find_poke(d: LinkDiagram) -> Optional[Tuple[int, int]]:
    """Return two crossings forming a Reidemeister II bigon, if any.

    One strand passes over (or under) both crossings consecutively, the other
    strand passes the opposite way through both consecutively, and the signs
    are opposite.
    """
    table = d.crossing_table()
    for comp in d.components:
        n = len(comp)
        if n < 2:
            continue
        for k in range(n):
            v1, v2 = comp[k], comp[(k + 1) % n]
            if v1.crossing == v2.crossing or v1.over != v2.over or v1.sign != -v2.sign:
                continue
            i1 = table[v1.crossing]
            i2 = table[v2.crossing]
            o1 = i1.under if v1.over else i1.over
            o2 = i2.under if v2.over else i2.over
            if o1[0] != o2[0]:
                continue
            m = len(d.components[o1[0]])
            if o2[1] == (o1[1] + 1) % m or o1[1] == (o2[1] + 1) % m:
                return v1.crossing, v2.crossing
    return None


def remove_kinks(d: LinkDiagram) -> LinkDiagram:
    while (c := find_kink(d)) is not None:
        d = _remove(d, {c})
    return d


def remove_pokes(d: LinkDiagram) -> LinkDiagram:
    while (pair := find_poke(d)) is not None:
        d = _remove(d, set(pair))
    return d


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Remove R1 kinks and R2 bigons until none remain; crossings are renumbered."""
    before = d.crossing_count
    while True:
        c = find_kink(d)
        if c is not None:
            d = _remove(d, {c})
            continue
        pair = find_poke(d)
        if pair is not None:
            d = _remove(d, set(pair))
            continue
        break
    if d.crossing_count != before:
        logger.debug(f"Simplified {before} -> {d.crossing_count} crossings")
    return d.relabelled()


def braid_r2(word: Sequence[int], position: int, generator: int) -> List[int]:
    """Insert the cancelling pair ``generator, -generator`` at ``position``."""
    word = list(word)
    word[position:position] = [generator, -generator]
    return word


def braid_r3(word: Sequence[int], position: int) -> List[int]:
    """Rewrite ``a b a`` as ``b a b`` for adjacent same-sign generators.

    Raises:
        ValueError: If the three letters at ``position`` do not form such a pattern
    """
    a, b, c = word[position:position + 3]
    if a != c or abs(abs(a) - abs(b)) != 1 or (a > 0) != (b > 0):
        raise ValueError(f"No braid relation at position {position}: {[a, b, c]}")
    return list(word[:position]) + [b, a, b] + list(word[position + 3:])


def braid_commute(word: Sequence[int], position: int) -> List[int]:
    """Swap two far-apart generators at ``position`` and ``position + 1``.

    Raises:
        ValueError: If the generators are adjacent
    """
    a, b = word[position:position + 2]
    if abs(abs(a) - abs(b)) < 2:
        raise ValueError(f"Generators {a} and {b} do not commute")
    return list(word[:position]) + [b, a] + list(word[position + 2:])


def conjugate(word: Sequence[int], shift: int) -> List[int]:
    """Cyclically rotate a braid word; the closure is unchanged."""
    if not word:
        return []
    shift %= len(word)
    return list(word[shift:]) + list(word[:shift])


def stabilize(word: Sequence[int], strands: int, sign: int = 1) -> Tuple[List[int], int]:
    """Markov stabilization: add a strand and one crossing with it."""
    if sign not in (1, -1):
        raise ValueError(f"Stabilization sign must be +1 or -1, got {sign}")
    return list(word) + [sign * strands], strands + 1
