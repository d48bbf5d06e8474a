"""Text formats for graphs, cycle lists, weight tables, embeddings, diagrams and reports.

This module provides functionality to:
- Write and read graph files (``graph <name> <n>`` then one ``u v`` per line)
- Write and read cycle lists (one cycle per line, pair components split by ``|``)
- Write and read weight tables (``weights <host> <kind> <constant>`` header,
  then ``key<TAB>weight`` lines)
- Write and read embedding files (``embedding <graph> <seed>``, vertex lines
  ``v x y z`` with rationals as ``p/q``, bend lines ``bend u v x y z ...``)
- Write and read Gauss-code diagram files (one component per line, tokens
  ``±c<id>{o|u}``, an empty component is ``.``)
- Render verification reports as tabular text and as JSON lines

Blank lines and lines starting with ``#`` are ignored by every reader.
"""

import json
import logging
import re
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core.cycles import CycleSetElement, parse_element
from ..core.diagram import LinkDiagram, Visit
from ..core.graph import Graph
from ..core.spatial import PLEmbedding
from ..core.verifier import IdentityReport
from ..core.weights import IdentityKind, WeightMap

logger = logging.getLogger(__name__)

_GAUSS_TOKEN = re.compile(r"^([+-])c(\d+)([ou])$")


def _lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            out.append((number, line))
    return out


def _label(name: str) -> str:
    return name.replace(" ", "_") if name else "graph"


def format_graph(g: Graph) -> str:
    lines = [f"graph {_label(g.name)} {g.order}"]
    lines += [f"{a} {b}" for a, b in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Read a graph file.

    Vertices are the edge endpoints; if the header counts more, the smallest
    unused labels are added as isolated vertices.

    Raises:
        ValueError: On a malformed header or edge line
    """
    lines = _lines(text)
    if not lines:
        raise ValueError("Graph file is empty")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ValueError(f"Line {number}: expected 'graph <name> <n>', got {header!r}")
    try:
        n = int(parts[2])
        edges = []
        for number, line in lines[1:]:
            a, b = line.split()
            edges.append((int(a), int(b)))
    except ValueError as e:
        raise ValueError(f"Line {number}: malformed graph line: {e}") from e
    vertices = {v for e in edges for v in e}
    label = 0
    while len(vertices) < n:
        if label not in vertices:
            vertices.add(label)
        label += 1
    if len(vertices) != n:
        raise ValueError(f"Header declares {n} vertices but edges use {len(vertices)}")
    return Graph.from_edges(edges, vertices=vertices, name=parts[1])


def format_cycle_list(elements: Iterable[CycleSetElement]) -> str:
    lines = [" | ".join(" ".join(map(str, c.vertices)) for c in el.components) for el in elements]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_cycle_list(text: str) -> List[CycleSetElement]:
    out = []
    for number, line in _lines(text):
        try:
            out.append(parse_element(line))
        except ValueError as e:
            raise ValueError(f"Line {number}: {e}") from e
    return out


def format_weights(w: WeightMap) -> str:
    """Header line then one ``key<TAB>weight`` line per nonzero entry, in canonical order."""
    lines = [f"weights {_label(w.host.name)} {w.kind.value} {w.constant}"]
    lines += [f"{element.key()}\t{weight}" for element, weight in w.items()]
    return "\n".join(lines) + "\n"


def parse_weights(text: str, host: Graph) -> WeightMap:
    """Read a weight table for ``host``.

    Raises:
        ValueError: On malformed lines or keys that are not cycle sets of ``host``
    """
    lines = _lines(text)
    if not lines:
        raise ValueError("Weight file is empty")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "weights":
        raise ValueError(f"Line {number}: expected 'weights <host> <kind> <constant>', got {header!r}")
    try:
        kind = IdentityKind(parts[2])
        constant = int(parts[3])
    except ValueError as e:
        raise ValueError(f"Line {number}: bad weight header: {e}") from e
    weights = {}
    for number, line in lines[1:]:
        try:
            key, value = line.split("\t") if "\t" in line else line.rsplit(None, 1)
            weights[parse_element(key)] = int(value)
        except ValueError as e:
            raise ValueError(f"Line {number}: malformed weight line {line!r}: {e}") from e
    w = WeightMap(host, kind, constant, weights)
    w.validate()
    return w


def _coord(value: Fraction) -> str:
    return str(Fraction(value))


def format_embedding(emb: PLEmbedding) -> str:
    seed = "-" if emb.seed is None else str(emb.seed)
    lines = [f"embedding {_label(emb.graph.name)} {seed}"]
    for v in emb.graph.vertices:
        lines.append(f"{v} " + " ".join(_coord(c) for c in emb.points[v]))
    for (a, b), pts in sorted(emb.bends.items()):
        coords = " ".join(_coord(c) for p in pts for c in p)
        lines.append(f"bend {a} {b} {coords}")
    return "\n".join(lines) + "\n"


def embedding_header(text: str) -> Tuple[str, Optional[int]]:
    """Graph name and seed from an embedding file header."""
    lines = _lines(text)
    if not lines:
        raise ValueError("Embedding file is empty")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "embedding":
        raise ValueError(f"Line {number}: expected 'embedding <graph> <seed>', got {header!r}")
    try:
        seed = None if parts[2] == "-" else int(parts[2])
    except ValueError as e:
        raise ValueError(f"Line {number}: bad seed {parts[2]!r}") from e
    return parts[1], seed


def parse_embedding(text: str, graph: Graph) -> PLEmbedding:
    """Read an embedding file for ``graph``.

    Raises:
        ValueError: On malformed lines, or if the result is not an embedding
    """
    name, seed = embedding_header(text)
    if graph.name and name != _label(graph.name):
        logger.warning(f"Embedding file names graph {name!r}, reading it for {graph}")
    points = {}
    bends = {}
    for number, line in _lines(text)[1:]:
        parts = line.split()
        try:
            if parts[0] == "bend":
                a, b = int(parts[1]), int(parts[2])
                coords = [Fraction(c) for c in parts[3:]]
                if not coords or len(coords) % 3:
                    raise ValueError("bend coordinates must come in triples")
                bends[(a, b)] = [tuple(coords[i:i + 3]) for i in range(0, len(coords), 3)]
            else:
                if len(parts) != 4:
                    raise ValueError("expected 'v x y z'")
                points[int(parts[0])] = tuple(Fraction(c) for c in parts[1:])
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Line {number}: malformed embedding line {line!r}: {e}") from e
    emb = PLEmbedding(graph, points, bends, seed=seed)
    reason = emb.invalid_reason()
    if reason is not None:
        raise ValueError(f"Embedding file does not describe an embedding: {reason}")
    return emb


def _visit_token(v: Visit) -> str:
    return f"{'+' if v.sign > 0 else '-'}c{v.crossing}{'o' if v.over else 'u'}"


def format_diagram(d: LinkDiagram) -> str:
    lines = [" ".join(_visit_token(v) for v in comp) or "." for comp in d.components]
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> LinkDiagram:
    """Read a Gauss-code diagram file.

    Raises:
        ValueError: On malformed tokens or an inconsistent crossing table
    """
    components = []
    for number, line in _lines(text):
        if line == ".":
            components.append([])
            continue
        visits = []
        for token in line.split():
            m = _GAUSS_TOKEN.match(token)
            if not m:
                raise ValueError(f"Line {number}: malformed Gauss token {token!r}")
            visits.append(Visit(int(m.group(2)), 1 if m.group(1) == "+" else -1, m.group(3) == "o"))
        components.append(visits)
    if not components:
        raise ValueError("Diagram file has no components")
    return LinkDiagram(components)


def format_report(report: IdentityReport, breakdown: bool = False) -> str:
    """One tab-separated summary line, optionally followed by the term breakdown."""
    status = "PASS" if report.passed else "FAIL"
    seed = "-" if report.seed is None else str(report.seed)
    lines = [f"{report.identity}\t{report.graph}\t{seed}\t{report.lhs}\t{report.rhs}\t{status}"]
    if breakdown:
        for t in report.terms:
            lines.append(f"  {t.key}\t{t.weight}\t{t.invariant}\t{t.value}\t{t.contribution}")
    return "\n".join(lines)


REPORT_HEADER = "identity\tgraph\tseed\tlhs\trhs\tstatus"


def report_json(report: IdentityReport) -> str:
    return json.dumps(report.to_record(), sort_keys=True, ensure_ascii=False)


def format_reports_json(reports: Sequence[IdentityReport]) -> str:
    return "".join(report_json(r) + "\n" for r in reports)
