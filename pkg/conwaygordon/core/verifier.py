"""Exact verification of Conway–Gordon type identities on sampled embeddings.

This module provides functionality to:
- Evaluate lk, lk², a₂ and Arf of the constituent knots and links of one
  embedding, with per-element caching
- Check the mod-2 Conway–Gordon statements on K6 and K7
- Check the refined integer identities on K6 and K7 and the weighted
  identities on every graph reached from them by ΔY-exchanges
- Check the parity corollaries, the transfer of a weighted sum through a
  Y-contraction, and per-cycle invariance under Y-contraction
- Resolve identity ids and family members into verification tasks and run
  them over seeded trials, optionally in a process pool

Every identity is exact integer equality and every report keeps its full term
breakdown, so a single failing cycle can be located.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .cycles import (
    Cycle,
    CyclePair,
    CycleSetElement,
    contains_triangle,
    element_sort_key,
    enumerate_cycles,
    enumerate_disjoint_pairs,
    enumerate_elements,
    phi_map,
    phi_preimage,
)
from .family import FamilyMember, find_member, load_family
from .graph import Graph, WyeSite, canonical_form, complete_graph, y_delta
from .invariants import conway_a2, linking_number
from .spatial import PLEmbedding, contract_y, project, random_embedding
from .weights import IdentityKind, WeightMap, arf_support, base_weights, derive_weights

logger = logging.getLogger(__name__)


class Term(NamedTuple):
    """One row of a report breakdown.

    For weighted identities ``value`` is the invariant of the image and
    ``contribution`` is what the row adds to its side. For the contraction
    check ``value`` is taken on f(γ) and ``contribution`` on φ(f)(γ′).
    """

    key: str
    weight: int
    invariant: str
    value: int
    contribution: int


@dataclass
class IdentityReport:
    """Outcome of one identity on one embedding.

    Attributes:
        graph: Name of the host graph
        identity: Identity id (cg1, main2, ...)
        seed: Embedding seed, if the embedding was sampled
        lhs: Left-hand value
        rhs: Right-hand value
        passed: Whether the identity holds
        terms: Per-element breakdown
    """

    graph: str
    identity: str
    seed: Optional[int]
    lhs: int
    rhs: int
    passed: bool
    terms: List[Term] = field(default_factory=list)

    def failing_terms(self) -> List[Term]:
        return [t for t in self.terms if t.invariant.endswith("!")]

    def to_record(self) -> Dict[str, Any]:
        return {
            "graph": self.graph,
            "identity": self.identity,
            "seed": self.seed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "passed": self.passed,
            "terms": [t._asdict() for t in self.terms],
        }


class EmbeddingEvaluator:
    """Cached invariants of the constituent knots and links of one embedding.

    Args:
        embedding: The embedding
        check: Cross-check a₂ against the skein oracle on every knot
        direction_seed: Seed for the projection direction search
    """

    def __init__(self, embedding: PLEmbedding, check: bool = False, direction_seed: Optional[int] = None):
        self.embedding = embedding
        self.check = check
        self.direction_seed = direction_seed
        self._a2: Dict[Cycle, int] = {}
        self._lk: Dict[CyclePair, int] = {}

    @property
    def graph(self) -> Graph:
        return self.embedding.graph

    def a2(self, cycle: Cycle) -> int:
        if cycle not in self._a2:
            self._a2[cycle] = conway_a2(project(self.embedding, cycle, self.direction_seed), check=self.check)
        return self._a2[cycle]

    def arf(self, cycle: Cycle) -> int:
        return self.a2(cycle) % 2

    def lk(self, pair: CyclePair) -> int:
        if pair not in self._lk:
            self._lk[pair] = linking_number(project(self.embedding, pair, self.direction_seed))
        return self._lk[pair]

    def lk2(self, pair: CyclePair) -> int:
        return self.lk(pair) ** 2

    def invariant(self, element: CycleSetElement) -> Tuple[str, int]:
        """a₂ of a cycle or lk² of a pair, with its name."""
        if isinstance(element, Cycle):
            return "a2", self.a2(element)
        return "lk2", self.lk2(element)


def _evaluator(emb, check: bool = False) -> EmbeddingEvaluator:
    return emb if isinstance(emb, EmbeddingEvaluator) else EmbeddingEvaluator(emb, check)


def _require_root(g: Graph, kind: IdentityKind, identity: str) -> None:
    if canonical_form(g) != canonical_form(complete_graph(kind.order)):
        raise ValueError(f"{identity} needs a host isomorphic to {kind.value}, got {g}")


def _root_kind(g: Graph, identity: str) -> IdentityKind:
    cert = canonical_form(g)
    for kind in IdentityKind:
        if cert == canonical_form(complete_graph(kind.order)):
            return kind
    raise ValueError(f"{identity} needs a host isomorphic to K6 or K7, got {g}")


def _report(ev: EmbeddingEvaluator, identity: str, lhs: int, rhs: int, terms: List[Term], passed: Optional[bool] = None) -> IdentityReport:
    report = IdentityReport(
        graph=ev.graph.name or str(ev.graph),
        identity=identity,
        seed=ev.embedding.seed,
        lhs=lhs,
        rhs=rhs,
        passed=lhs == rhs if passed is None else passed,
        terms=terms,
    )
    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, f"{identity} on {report.graph} (seed {report.seed}): {lhs} vs {rhs}, {'pass' if report.passed else 'FAIL'}")
    return report


def verify_cg1(emb) -> IdentityReport:
    """Σ lk over the 10 disjoint cycle pairs of K6 is odd.

    Args:
        emb: Embedding of a graph isomorphic to K6, or its evaluator

    Raises:
        ValueError: If the host is not isomorphic to K6
    """
    ev = _evaluator(emb)
    _require_root(ev.graph, IdentityKind.K6, "cg1")
    terms = []
    for pair in enumerate_disjoint_pairs(ev.graph):
        lk = ev.lk(pair)
        terms.append(Term(pair.key(), 1, "lk", lk, lk))
    return _report(ev, "cg1", sum(t.contribution for t in terms) % 2, 1, terms)


def verify_cg2(emb) -> IdentityReport:
    """Σ Arf over the 360 Hamiltonian cycles of K7 is odd.

    Raises:
        ValueError: If the host is not isomorphic to K7
    """
    ev = _evaluator(emb)
    _require_root(ev.graph, IdentityKind.K7, "cg2")
    terms = []
    for cycle in enumerate_cycles(ev.graph, 7):
        value = ev.arf(cycle)
        terms.append(Term(cycle.key(), 1, "arf", value, value))
    return _report(ev, "cg2", sum(t.contribution for t in terms) % 2, 1, terms)


def _weighted(ev: EmbeddingEvaluator, w: WeightMap, identity: str) -> IdentityReport:
    kind = w.kind
    lhs_terms, rhs_terms = [], []
    for element, weight in w.items():
        name, value = ev.invariant(element)
        if isinstance(element, Cycle):
            lhs_terms.append(Term(element.key(), weight, name, value, kind.knot_coefficient * weight * value))
        else:
            rhs_terms.append(Term(element.key(), weight, name, value, -kind.link_coefficient * weight * value))
    lhs = sum(t.contribution for t in lhs_terms)
    rhs = sum(t.contribution for t in rhs_terms) + w.constant
    return _report(ev, identity, lhs, rhs, lhs_terms + rhs_terms)


def _check_pairs_unweighted(w: WeightMap) -> None:
    off = [p.key() for p in enumerate_disjoint_pairs(w.host) if w[p] != 1]
    if off:
        raise ValueError(
            f"K6-type identity needs weight 1 on every disjoint cycle pair of {w.host}; "
            f"{len(off)} pair(s) differ, first {off[0]}"
        )


def verify_nrefine(emb) -> IdentityReport:
    """The refined integer identity on K6 or K7.

    K6: 2·Σ_{Γ6} a₂ − 2·Σ_{Γ5} a₂ = Σ_{Γ⁽²⁾} lk² − 1.
    K7: 7·Σ_{Γ7} a₂ − 6·Σ_{Γ6} a₂ − 2·Σ_{Γ5} a₂ = 2·Σ_{Γ⁽²⁾_{4,3}} lk² − 21.

    Raises:
        ValueError: If the host is not isomorphic to K6 or K7
    """
    ev = _evaluator(emb)
    kind = _root_kind(ev.graph, "nrefine")
    return _weighted(ev, base_weights(kind, ev.graph), "nrefine")


def _check_host(ev: EmbeddingEvaluator, w: WeightMap) -> None:
    if ev.graph != w.host:
        raise ValueError(f"Weight table host {w.host} does not match embedding host {ev.graph}")


def verify_main(emb, w: WeightMap) -> IdentityReport:
    """The weighted identity for a ΔY-descendant of K6 or K7.

    K6-type: 2·Σ ω̃·a₂ = Σ lk² − 1, after checking ω̃ ≡ 1 on disjoint pairs.
    K7-type: Σ ω̃·a₂ = 2·Σ ω̃·lk² − 21.
    Only elements of nonzero weight are evaluated.

    Args:
        emb: Embedding of the host of ``w``, or its evaluator
        w: Weight table derived for that host

    Raises:
        ValueError: If hosts differ or a K6-type table is not 1 on every pair
    """
    ev = _evaluator(emb)
    _check_host(ev, w)
    if w.kind is IdentityKind.K6:
        _check_pairs_unweighted(w)
    return _weighted(ev, w, "main1" if w.kind is IdentityKind.K6 else "main2")


def verify_corollary(emb, w: WeightMap) -> IdentityReport:
    """Parity corollaries of the weighted identities.

    K6-type: Σ lk over all disjoint cycle pairs is odd.
    K7-type: Σ Arf over the odd-weight cycles of ``w`` is odd.

    Raises:
        ValueError: If hosts differ or a K6-type table is not 1 on every pair
    """
    ev = _evaluator(emb)
    _check_host(ev, w)
    terms = []
    if w.kind is IdentityKind.K6:
        _check_pairs_unweighted(w)
        for pair in enumerate_disjoint_pairs(ev.graph):
            lk = ev.lk(pair)
            terms.append(Term(pair.key(), 1, "lk", lk, lk))
        identity = "corollary1"
    else:
        for cycle in sorted(arf_support(w)):
            value = ev.arf(cycle)
            terms.append(Term(cycle.key(), w[cycle], "arf", value, value))
        identity = "corollary2"
    return _report(ev, identity, sum(t.contribution for t in terms) % 2, 1, terms)


def _alpha(ev: EmbeddingEvaluator, kind: IdentityKind, element: CycleSetElement, weight: int) -> Term:
    name, value = ev.invariant(element)
    coef = kind.knot_coefficient if isinstance(element, Cycle) else kind.link_coefficient
    return Term(element.key(), weight, name, value, coef * weight * value)


def verify_transfer(emb, site: WyeSite, w: WeightMap) -> IdentityReport:
    """Transfer of a weighted invariant sum through a Y-contraction.

    The left side sums the pushed-forward invariants 2ω̃·a₂ and −ω̃·lk²
    (K6-type; ω̃·a₂ and −2ω̃·lk² for K7-type) over f(G_Y). The right side sums
    the original invariants over φ(f)(G_△). Elements of G_△ containing the
    triangle must contribute 0: the triangle bounds a disk, so it is unknotted
    and split from every disjoint cycle. A nonzero such term fails the report
    and is marked with a trailing ``!`` in its invariant name.

    Args:
        emb: Embedding of G_Y, or its evaluator
        site: The wye of G_Y created by the exchange
        w: Weight table on G_△ = y_delta(G_Y, site)

    Raises:
        ValueError: If ``w`` does not live on y_delta(G_Y, site)
        ContractionError: If the wye cannot be contracted
    """
    ev = _evaluator(emb)
    g_delta = y_delta(ev.graph, site)
    if g_delta != w.host:
        raise ValueError(f"Weight table host {w.host} is not the YΔ image {g_delta} of {ev.graph} at {site}")
    tri = site.triangle
    contracted = EmbeddingEvaluator(contract_y(ev.embedding, site), ev.check, ev.direction_seed)

    pushed: Dict[CycleSetElement, int] = {}
    for element, weight in w.weights.items():
        if not contains_triangle(element, tri):
            image = phi_map(g_delta, tri, element, site.x)
            pushed[image] = pushed.get(image, 0) + weight
    lhs_terms = [
        _alpha(ev, w.kind, element, weight)
        for element, weight in sorted(pushed.items(), key=lambda kv: element_sort_key(kv[0]))
        if weight
    ]
    rhs_terms = [_alpha(contracted, w.kind, element, weight) for element, weight in w.items()]

    compressible = True
    for element in enumerate_elements(g_delta):
        if not contains_triangle(element, tri):
            continue
        name, value = contracted.invariant(element)
        if value:
            compressible = False
            rhs_terms.append(Term(element.key(), w[element], f"{name}!", value, 0))
            logger.warning(f"Triangle term {element.key()} has {name} = {value} after contracting {site}")

    lhs = sum(t.contribution for t in lhs_terms)
    rhs = sum(t.contribution for t in rhs_terms)
    identity = "transfer1" if w.kind is IdentityKind.K6 else "transfer2"
    return _report(ev, identity, lhs, rhs, lhs_terms + rhs_terms, passed=lhs == rhs and compressible)


def verify_contraction(emb, site: WyeSite, identity: str = "contraction") -> IdentityReport:
    """Per-element invariance under Y-contraction.

    For every γ of G_Y and every preimage γ′ in G_△, a₂ (knots) or lk²
    (links) of f(γ) must equal that of φ(f)(γ′). The report sides are the
    totals over all instances; mismatching rows carry a trailing ``!``.

    Raises:
        ContractionError: If the wye cannot be contracted
    """
    ev = _evaluator(emb)
    g_delta = y_delta(ev.graph, site)
    contracted = EmbeddingEvaluator(contract_y(ev.embedding, site), ev.check, ev.direction_seed)
    terms = []
    passed = True
    for element in enumerate_elements(ev.graph):
        name, before = ev.invariant(element)
        for pre in phi_preimage(g_delta, site.triangle, element, site.x):
            _, after = contracted.invariant(pre)
            if before != after:
                passed = False
                name_shown = f"{name}!"
            else:
                name_shown = name
            terms.append(Term(f"{element.key()}<-{pre.key()}", 1, name_shown, before, after))
    lhs = sum(t.value for t in terms)
    rhs = sum(t.contribution for t in terms)
    return _report(ev, identity, lhs, rhs, terms, passed=passed)


IDENTITY_KINDS: Dict[str, Optional[IdentityKind]] = {
    "cg1": IdentityKind.K6,
    "cg2": IdentityKind.K7,
    "nrefine": None,
    "main1": IdentityKind.K6,
    "main2": IdentityKind.K7,
    "corollary1": IdentityKind.K6,
    "corollary2": IdentityKind.K7,
    "transfer1": IdentityKind.K6,
    "transfer2": IdentityKind.K7,
    "contraction1": IdentityKind.K6,
    "contraction2": IdentityKind.K7,
}


class VerificationTask(NamedTuple):
    """One identity on one member for one seed."""

    identity: str
    member: str
    seed: int
    check: bool = False


def trial_seeds(seed: int, trials: int) -> List[int]:
    """Independent per-trial seeds split from one master seed.

    Example:
        ```python
        trial_seeds(0, 3)  # three 32-bit seeds, identical on every run
        ```
    """
    if trials < 0:
        raise ValueError(f"Trial count must be non-negative, got {trials}")
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1)[0]) for child in children]


def _needs_witness(identity: str) -> bool:
    return identity.startswith(("transfer", "contraction"))


def resolve_members(identity: str, member: Optional[str] = "all") -> List[str]:
    """Member names an identity runs on.

    Args:
        identity: Identity id
        member: A member name, alias or certificate prefix, or "all"

    Raises:
        ValueError: For unknown identities, members of the other family
            ("identity kind mismatch"), or members the identity cannot use
    """
    if identity not in IDENTITY_KINDS:
        raise ValueError(f"Unknown identity {identity!r}. Must be one of: {', '.join(IDENTITY_KINDS)}")
    kind = IDENTITY_KINDS[identity]
    if identity in ("cg1", "cg2", "nrefine"):
        roots = [k.value for k in IdentityKind] if kind is None else [kind.value]
        if member in (None, "all"):
            return roots
        root, found = find_member(member)
        if found.name not in roots:
            if kind is not None and root != kind.value:
                raise ValueError(f"identity kind mismatch: {identity} is {kind.value}-type but {found.name} is in the {root} family")
            raise ValueError(f"{identity} runs on {' and '.join(roots)} only, not {found.name}")
        return [found.name]

    family = load_family(kind.value)
    if member in (None, "all"):
        return [
            m.name for m in family
            if m.delta_y_reachable and not (_needs_witness(identity) and not m.witness)
        ]
    root, found = find_member(member)
    if root != kind.value:
        raise ValueError(f"identity kind mismatch: {identity} is {kind.value}-type but {found.name} is in the {root} family")
    if not found.delta_y_reachable:
        raise ValueError(f"{found.name} is not reachable by ΔY-exchanges alone; {identity} needs a derived weight table")
    if _needs_witness(identity) and not found.witness:
        raise ValueError(f"{identity} needs a member with at least one ΔY step, got {found.name}")
    return [found.name]


@lru_cache(maxsize=None)
def _member(name: str) -> Tuple[str, FamilyMember]:
    return find_member(name)


@lru_cache(maxsize=None)
def member_weights(name: str, drop_last: bool = False) -> WeightMap:
    """Derived weight table of a ΔY-reachable member, optionally one step short."""
    root, member = _member(name)
    sequence = member.delta_y_sequence
    return derive_weights(root, sequence[:-1] if drop_last else sequence)


def run_task(task: VerificationTask) -> IdentityReport:
    """Sample the embedding for a task and run its identity."""
    _, member = _member(task.member)
    ev = EmbeddingEvaluator(random_embedding(member.graph, task.seed), check=task.check)
    identity = task.identity
    if identity == "cg1":
        return verify_cg1(ev)
    if identity == "cg2":
        return verify_cg2(ev)
    if identity == "nrefine":
        return verify_nrefine(ev)
    if identity.startswith("main"):
        return verify_main(ev, member_weights(member.name))
    if identity.startswith("corollary"):
        return verify_corollary(ev, member_weights(member.name))
    w = member_weights(member.name, drop_last=True)
    site = WyeSite.at(member.graph, w.host.fresh_vertex())
    if identity.startswith("transfer"):
        return verify_transfer(ev, site, w)
    return verify_contraction(ev, site, identity)


def build_tasks(identity: str, member: Optional[str], trials: int, seed: int, check: bool = False) -> List[VerificationTask]:
    """Tasks for every resolved member and trial seed, member-major."""
    seeds = trial_seeds(seed, trials)
    return [
        VerificationTask(identity, name, s, check)
        for name in resolve_members(identity, member)
        for s in seeds
    ]


def run_trials(tasks: Sequence[VerificationTask], jobs: int = 1) -> List[IdentityReport]:
    """Run tasks, in a process pool when ``jobs > 1``; results keep task order."""
    if jobs < 1:
        raise ValueError(f"Job count must be at least 1, got {jobs}")
    logger.info(f"Running {len(tasks)} verification task(s) with {jobs} job(s)")
    if jobs == 1 or len(tasks) < 2:
        return [run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_task, tasks))
