"""Link invariants computed from signed Gauss codes.

This module provides functionality to:
- Compute the linking number of a 2-component link diagram
- Compute the Conway polynomial by the skein relation (the oracle)
- Compute a₂ of a knot from a Gauss-diagram formula (the fast path) and
  cross-check it against the oracle on request
- Derive the Arf invariant and lk² with its a₁² consistency check
- Detect diagrams whose components fall apart into separate pieces

The skein recursion uses ∇(L) = ∇(L with c switched) + sign(c)·z·∇(L smoothed
at c), always at the first crossing met from below in travel order, which
drives the diagram towards a descending one. Diagrams are reduced by R1/R2
removals before each step and memoized on their reduced Gauss code.
"""

import logging
from typing import Dict, Optional, Tuple

import networkx as nx
import sympy as sp

from .diagram import LinkDiagram
from .reidemeister import simplify

logger = logging.getLogger(__name__)

z = sp.Symbol("z")

Coefficients = Tuple[int, ...]


def _trim(p: list) -> Coefficients:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _add(p: Coefficients, q: Coefficients) -> Coefficients:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _times_z(p: Coefficients, factor: int) -> Coefficients:
    return _trim([0] + [factor * c for c in p]) if p else ()


def is_split(d: LinkDiagram) -> bool:
    """Return whether the components form more than one crossing-connected piece."""
    if d.component_count < 2:
        return False
    g = nx.Graph()
    g.add_nodes_from(range(d.component_count))
    for info in d.crossing_table().values():
        g.add_edge(info.over[0], info.under[0])
    return not nx.is_connected(g)


def linking_number(d: LinkDiagram) -> int:
    """Half the signed count of crossings between the two components.

    Raises:
        ValueError: If the diagram does not have exactly two components
    """
    if d.component_count != 2:
        raise ValueError(f"Linking number needs 2 components, got {d.component_count}")
    total = sum(info.sign for info in d.crossing_table().values() if info.over[0] != info.under[0])
    if total % 2:
        raise ValueError(f"Inter-component signs sum to {total}, which is odd; diagram is inconsistent")
    return total // 2


def _memo_key(d: LinkDiagram) -> tuple:
    def code(diagram: LinkDiagram) -> tuple:
        relabelled = diagram.relabelled()
        return tuple(tuple(comp) for comp in relabelled.components)

    if d.component_count == 1 and d.components[0]:
        return min(code(d.rotated(0, k)) for k in range(len(d.components[0])))
    return code(d)


def _first_ascending(d: LinkDiagram) -> Optional[int]:
    seen = set()
    for comp in d.components:
        for visit in comp:
            if visit.crossing in seen:
                continue
            seen.add(visit.crossing)
            if not visit.over:
                return visit.crossing
    return None


def _skein(d: LinkDiagram, memo: Dict[tuple, Coefficients]) -> Coefficients:
    d = simplify(d)
    if is_split(d):
        return ()
    key = _memo_key(d)
    if key in memo:
        return memo[key]
    c = _first_ascending(d)
    if c is None:
        # Descending diagrams are unlinks.
        result: Coefficients = (1,) if d.component_count == 1 else ()
    else:
        switched = _skein(d.switch(c), memo)
        smoothed = _skein(d.smooth(c), memo)
        result = _add(switched, _times_z(smoothed, d.sign(c)))
    memo[key] = result
    return result


def conway_coefficients(d: LinkDiagram) -> Coefficients:
    """Conway polynomial coefficients, constant term first; () is zero."""
    memo: Dict[tuple, Coefficients] = {}
    result = _skein(d, memo)
    logger.debug(f"Skein on {d}: {len(memo)} memoized diagrams")
    return result


def conway_polynomial(d: LinkDiagram) -> sp.Poly:
    """The Conway polynomial ∇(z) as an integer polynomial.

    Example:
        ```python
        trefoil = LinkDiagram.from_braid([1, 1, 1], 2)
        conway_polynomial(trefoil)  # Poly(z**2 + 1, z, domain='ZZ')
        ```
    """
    coeffs = conway_coefficients(d)
    return sp.Poly(list(reversed(coeffs)) or [0], z, domain="ZZ")


def gauss_a2(d: LinkDiagram) -> int:
    """a₂ of a knot from its based Gauss diagram.

    Sums ε_i·ε_j over ordered crossing pairs whose visits appear in the order
    over i, under j, under i, over j from the basepoint.

    Raises:
        ValueError: If the diagram is not a knot
    """
    if d.component_count != 1:
        raise ValueError(f"a2 needs a knot diagram, got {d.component_count} components")
    over: Dict[int, int] = {}
    under: Dict[int, int] = {}
    sign: Dict[int, int] = {}
    for k, visit in enumerate(d.components[0]):
        (over if visit.over else under)[visit.crossing] = k
        sign[visit.crossing] = visit.sign
    # Only arrows pointing forward (over before under) can play the role of i.
    forward = [c for c in over if over[c] < under[c]]
    total = 0
    for i in forward:
        oi, ui = over[i], under[i]
        for j in sign:
            if j != i and oi < under[j] < ui < over[j]:
                total += sign[i] * sign[j]
    return total


def conway_a2(d: LinkDiagram, check: bool = False) -> int:
    """Second Conway coefficient of a knot.

    Args:
        d: Knot diagram
        check: Also run the skein oracle and compare

    Raises:
        ValueError: If the diagram is not a knot
        RuntimeError: If ``check`` is set and the two computations disagree
    """
    value = gauss_a2(d)
    if check:
        coeffs = conway_coefficients(d)
        oracle = coeffs[2] if len(coeffs) > 2 else 0
        if oracle != value:
            raise RuntimeError(f"Gauss-diagram a2 = {value} but skein a2 = {oracle} on {d}")
    return value


def arf(d: LinkDiagram) -> int:
    """Arf invariant of a knot, as a₂ mod 2."""
    return conway_a2(d) % 2


def lk_squared(d: LinkDiagram, check: bool = False) -> int:
    """Square of the linking number of a 2-component link.

    Args:
        d: Two-component link diagram
        check: Also compare with the squared z-coefficient of the Conway polynomial

    Raises:
        ValueError: If the diagram does not have two components
        RuntimeError: If ``check`` is set and a₁² differs from lk²
    """
    lk = linking_number(d)
    if check:
        coeffs = conway_coefficients(d)
        a1 = coeffs[1] if len(coeffs) > 1 else 0
        if a1 * a1 != lk * lk:
            raise RuntimeError(f"a1^2 = {a1 * a1} but lk^2 = {lk * lk} on {d}")
    return lk * lk
