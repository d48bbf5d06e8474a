"""Command-line front end.

Subcommands:
- families: list the ΔY (optionally ΔY/YΔ) family of K6 or K7
- weights: derive the weight table of a ΔY sequence or member
- embed: sample (or build linearly) an embedding of a member
- invariants: lk, Conway polynomial, a₂ and Arf of a diagram or of the cycle
  sets of an embedded member
- verify: run an identity over seeded random embeddings

Stdout carries only report content, which is identical for identical flags.
Logs go to stderr. Exit codes: 0 pass, 1 identity failure, 2 usage error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from .core.cycles import Cycle, enumerate_elements, parse_element
from .core.family import ROOTS, family_closure, find_member
from .core.graph import TriangleSite
from .core.invariants import conway_polynomial, conway_a2, linking_number
from .core.spatial import linear_embedding, random_embedding
from .core.verifier import IDENTITY_KINDS, EmbeddingEvaluator, build_tasks, run_trials
from .core.weights import derive_weights
from .utils import config
from .utils.formats import (
    REPORT_HEADER,
    format_cycle_list,
    format_embedding,
    format_graph,
    format_report,
    format_reports_json,
    format_weights,
    parse_diagram,
    parse_embedding,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class Command:
    """A parsed invocation.

    Attributes:
        name: Subcommand name
        options: Flag values, paths included
        handler: Function running the subcommand
    """

    name: str
    options: Dict[str, Any] = field(default_factory=dict)
    handler: Optional[Callable[[argparse.Namespace], int]] = None

    def run(self) -> int:
        return self.handler(argparse.Namespace(**self.options))


def parse_sequence(text: str) -> List[TriangleSite]:
    """Parse ``"0-1-2,0-3-6"`` into triangle sites; ``""`` or ``"-"`` is empty.

    Raises:
        ValueError: On a malformed triple
    """
    text = text.strip()
    if text in ("", "-"):
        return []
    sites = []
    for i, part in enumerate(text.split(","), start=1):
        try:
            labels = [int(v) for v in part.strip().split("-")]
            if len(labels) != 3:
                raise ValueError("expected three vertex labels")
            sites.append(TriangleSite(*labels))
        except ValueError as e:
            raise ValueError(f"Step {i} ({part!r}) is malformed: {e}") from e
    return sites


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {out}")


def cmd_families(args: argparse.Namespace) -> int:
    """Print one row per family member; optionally write graph and cycle files."""
    family = family_closure(args.root, args.include_ydelta)
    print("name\torder\tsize\twitness\tcertificate\taliases")
    for m in family:
        print(
            f"{m.name}\t{m.graph.order}\t{m.graph.size}\t{m.witness_text()}\t"
            f"{m.certificate.digest()}\t{','.join(m.aliases) or '-'}"
        )
        if args.out:
            out = Path(args.out)
            _write(str(out / f"{m.name}.graph"), format_graph(m.graph))
            _write(str(out / f"{m.name}.cycles"), format_cycle_list(enumerate_elements(m.graph)))
    return EXIT_PASS


def cmd_weights(args: argparse.Namespace) -> int:
    """Derive a weight table from a root and a sequence, or from a member's witness."""
    if args.member:
        root, member = find_member(args.member)
        if args.root and args.root != root:
            raise ValueError(f"{member.name} is in the {root} family, not {args.root}")
        sequence = member.delta_y_sequence
    else:
        if not args.root:
            raise ValueError("weights needs --root with --sequence, or --member")
        root = args.root
        sequence = parse_sequence(args.sequence or "")
    w = derive_weights(root, sequence)
    if args.member:
        w.host = w.host.with_name(member.name)
    _write(args.out, format_weights(w))
    if args.out:
        for (shape, weight), count in sorted(w.histogram().items(), key=lambda kv: (str(kv[0][0]), kv[0][1])):
            print(f"{shape}\t{weight}\t{count}")
    return EXIT_PASS


def _member_embedding(args: argparse.Namespace):
    _, member = find_member(args.member)
    if getattr(args, "embedding", None):
        return parse_embedding(Path(args.embedding).read_text(encoding="utf-8"), member.graph)
    if getattr(args, "linear", False):
        return linear_embedding(member.graph)
    return random_embedding(member.graph, args.seed)


def cmd_embed(args: argparse.Namespace) -> int:
    _write(args.out, format_embedding(_member_embedding(args)))
    return EXIT_PASS


def _describe_diagram(d, check: bool) -> List[str]:
    lines = [f"components\t{d.component_count}", f"crossings\t{d.crossing_count}"]
    poly = conway_polynomial(d)
    lines.append(f"conway\t{poly.as_expr()}")
    if d.component_count == 1:
        a2 = conway_a2(d, check=check)
        lines += [f"a2\t{a2}", f"arf\t{a2 % 2}"]
    elif d.component_count == 2:
        lk = linking_number(d)
        lines += [f"lk\t{lk}", f"lk2\t{lk * lk}"]
    return lines


def cmd_invariants(args: argparse.Namespace) -> int:
    """Print invariants of a diagram file or of cycle sets of an embedded member."""
    if args.diagram:
        d = parse_diagram(Path(args.diagram).read_text(encoding="utf-8"))
        print("\n".join(_describe_diagram(d, args.check)))
        return EXIT_PASS
    if not args.member:
        raise ValueError("invariants needs --diagram or --member")
    ev = EmbeddingEvaluator(_member_embedding(args), check=args.check)
    elements = [parse_element(k) for k in args.element] if args.element else enumerate_elements(ev.graph)
    print("element\tinvariant\tvalue")
    for element in elements:
        if isinstance(element, Cycle):
            print(f"{element.key()}\ta2\t{ev.a2(element)}")
        else:
            print(f"{element.key()}\tlk\t{ev.lk(element)}")
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    """Run one identity over seeded embeddings; exit 1 if any report fails."""
    tasks = build_tasks(args.id, args.member, args.trials, args.seed, args.check)
    reports = run_trials(tasks, args.jobs)
    print(REPORT_HEADER)
    for report in reports:
        print(format_report(report, breakdown=args.breakdown or (args.show_failures and not report.passed)))
    passed = sum(r.passed for r in reports)
    print(f"# {passed}/{len(reports)} passed")
    records = format_reports_json(reports)
    if args.json:
        _write(args.json, records)
    if args.save:
        path = config.reports_dir() / f"{args.id}-{args.member or 'all'}-{args.seed}-{args.trials}.jsonl"
        path.write_text(records, encoding="utf-8")
        logger.info(f"Saved {len(reports)} report(s) to {path}")
    return EXIT_PASS if passed == len(reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conwaygordon",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug detail to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list a ΔY / YΔ family")
    p.add_argument("--root", required=True, choices=list(ROOTS))
    p.add_argument("--include-ydelta", action="store_true", help="also allow YΔ-exchanges")
    p.add_argument("--out", help="directory for one graph file and one cycle list per member")
    p.set_defaults(handler=cmd_families)

    p = sub.add_parser("weights", help="derive a weight table")
    p.add_argument("--root", choices=list(ROOTS))
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--sequence", help="comma-separated triangles, e.g. 0-1-2,0-3-6")
    source.add_argument("--member", help="member name, alias or certificate prefix")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(handler=cmd_weights)

    p = sub.add_parser("embed", help="write an embedding of a member")
    p.add_argument("--member", required=True)
    p.add_argument("--seed", type=int, default=config.default_seed())
    p.add_argument("--linear", action="store_true", help="moment-curve embedding instead of a random one")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(handler=cmd_embed)

    p = sub.add_parser("invariants", help="compute knot and link invariants")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--diagram", help="Gauss-code diagram file")
    source.add_argument("--member", help="member whose cycle sets are evaluated")
    p.add_argument("--embedding", help="embedding file (default: random embedding from --seed)")
    p.add_argument("--seed", type=int, default=config.default_seed())
    p.add_argument("--element", action="append", help="cycle key such as 0-1-2 or 0-1-2|3-4-5; repeatable")
    p.add_argument("--check", action="store_true", help="cross-check a2 against the skein oracle")
    p.set_defaults(handler=cmd_invariants, linear=False)

    p = sub.add_parser("verify", help="verify an identity on sampled embeddings")
    p.add_argument("--id", required=True, choices=list(IDENTITY_KINDS))
    p.add_argument("--member", default="all", help="member name, alias, certificate prefix, or 'all'")
    p.add_argument("--trials", type=int, default=config.default_trials())
    p.add_argument("--seed", type=int, default=config.default_seed())
    p.add_argument("--jobs", type=int, default=config.default_jobs())
    p.add_argument("--json", help="write one JSON record per report to this path")
    p.add_argument("--save", action="store_true", help="also save JSON records under the app data directory")
    p.add_argument("--breakdown", action="store_true", help="print every term of every report")
    p.add_argument("--show-failures", action="store_true", help="print the terms of failing reports")
    p.add_argument("--check", action="store_true", help="cross-check a2 against the skein oracle")
    p.set_defaults(handler=cmd_verify)
    return parser


def parse_command(argv: Optional[Sequence[str]] = None) -> Command:
    args = build_parser().parse_args(argv)
    options = vars(args).copy()
    handler = options.pop("handler")
    name = options.pop("command")
    return Command(name, options, handler)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        command = parse_command(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if command.options.get("verbose") else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return command.run()
    except ValueError as e:
        logger.error(f"{command.name} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"{command.name} cross-check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
