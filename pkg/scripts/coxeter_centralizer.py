"""
Command-line frontend: analyze a Coxeter diagram and compute, verify or
brute-force the centralizer of one of its simple reflections.

    python scripts/coxeter_centralizer.py centralize --builtin E:8 --reflection e1
    python scripts/coxeter_centralizer.py brute --diagram my.cox --reflection a --json
"""

import sys, argparse
import json
import logging
from pathlib import Path
from typing import Optional, TextIO

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import LOG_LEVEL, MAX_ORDER, ORDER_BOUND, TOLERANCE
from lib.builtinDiagrams import builtin_diagram, builtin_names
from lib.coxeterDiagram import CoxeterDiagram, parse_diagram
from lib.errors import ConflictingCertificates, CoxeterError, UnsupportedCycles
from services.centralizer_service import CentralizerResult, CentralizerService
from services.diagram_analysis_service import DiagramAnalysisService
from services.tits_verification_service import BruteForceOracle, TitsVerificationService

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="coxeter_centralizer", description="Centralizers of reflections in Coxeter groups")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def with_diagram(sub: argparse.ArgumentParser, reflection: bool) -> argparse.ArgumentParser:
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--diagram", type=Path, help="Diagram file (vertex/edge lines)")
        source.add_argument("--builtin", help="Builtin diagram name, e.g. A:5, E:8, Y555")
        if reflection:
            sub.add_argument("--reflection", required=True, help="Simple reflection (vertex name)")
        sub.add_argument("--json", action="store_true", help="Emit JSON instead of text")
        return sub

    with_diagram(verbs.add_parser("info", help="Odd components and spherical type"), reflection=False)

    centralize = with_diagram(verbs.add_parser("centralize", help="Structure of C_W(s)"), reflection=True)
    centralize.add_argument("--dot", type=Path, help="Write the W_Omega diagram as DOT")
    centralize.add_argument("--all-words", action="store_true", help="Emit the r-word of every arrow")
    centralize.add_argument("--tail-classes", action="store_true", help="List the tail classes and their fusion")

    blowup = with_diagram(verbs.add_parser("blowup", help="W_Omega diagram of a single-edge tree"), reflection=False)
    blowup.add_argument("--dot", type=Path, help="Write the diagram as DOT")

    verify = with_diagram(verbs.add_parser("verify", help="Check the generator words numerically"), reflection=True)
    verify.add_argument("--tol", type=float, default=TOLERANCE)
    verify.add_argument("--order-bound", type=int, default=ORDER_BOUND)

    brute = with_diagram(verbs.add_parser("brute", help="Brute-force oracle for finite groups"), reflection=True)
    brute.add_argument("--max-order", type=int, default=MAX_ORDER)

    builtin = verbs.add_parser("builtin", help="Print a builtin diagram")
    builtin.add_argument("name", nargs="?", help="Builtin name; omit to list them")
    builtin.add_argument("--json", action="store_true")
    return parser


def load_diagram(args: argparse.Namespace) -> CoxeterDiagram:
    if args.builtin is not None:
        return builtin_diagram(args.builtin)
    return parse_diagram(args.diagram.read_text(encoding="utf-8"))


# --- verbs ---


def run_info(args, out: TextIO) -> int:
    d = load_diagram(args)
    analysis = DiagramAnalysisService(d)
    components = analysis.odd_components()
    summary = analysis.recognize_spherical()
    if args.json:
        payload = {
            "rank": d.rank,
            "odd_components": [
                {"base": c.base, "members": list(c.members), "cycle_rank": c.cycle_rank} for c in components
            ],
            "reflection_classes": len(components),
            "spherical": {"types": list(summary.components), "order": summary.order} if summary.spherical else None,
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK

    out.write(f"rank: {d.rank}\n")
    out.write(f"odd components: {len(components)}\n")
    for c in components:
        out.write(f"  {c.base}: {' '.join(c.members)} (cycle rank {c.cycle_rank})\n")
    out.write(f"reflection classes: {len(components)}\n")
    out.write(f"spherical: {summary}\n")
    return EXIT_OK


def _centralize_text(result: CentralizerResult, args, service: CentralizerService) -> list[str]:
    lines = [f"reflection: {result.reflection}", f"gamma rank: {result.gamma_rank}", "gamma words:"]
    lines += [f"  {w}" for w in result.gamma_words]
    if not result.diagram_supported:
        lines.append(f"domega: {result.domega}")
    else:
        lines.append(f"domega: {result.domega.rank} vertices, {result.spherical_summary}")
        lines += [f"  {line}" for line in result.domega.to_text().splitlines() if line]
        lines.append("class words:")
        lines += [f"  {cid}: {w}" for cid, w in result.class_words.items()]
    if args.all_words:
        lines.append("r-words:")
        lines += [f"  {a.name}: {w}" for a, w in result.generators.r_words.items()]
    if args.tail_classes:
        class_of = {a: c.id for c in result.classes for a in c.members}
        lines.append("tail classes:")
        for tail in service.fuse_arrow_classes(result.reflection, tails_only=True):
            members = " ".join(a.name for a in tail.members)
            lines.append(f"  {tail.id}: {members} -> {class_of[tail.representative]}")
    return lines


def run_centralize(args, out: TextIO) -> int:
    d = load_diagram(args)
    service = CentralizerService(d)
    result = service.centralizer_diagram(args.reflection)
    if not result.diagram_supported and (args.dot or args.tail_classes):
        raise UnsupportedCycles(args.reflection, result.gamma_rank)

    if args.dot:
        args.dot.write_text(result.domega.to_dot("DOmega"), encoding="utf-8")
        logger.info(f"Wrote W_Omega diagram to {args.dot}")

    if args.json:
        payload = result.to_dict(all_words=args.all_words)
        if args.tail_classes:
            payload["tail_classes"] = {
                t.id: [a.name for a in t.members]
                for t in service.fuse_arrow_classes(args.reflection, tails_only=True)
            }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(_centralize_text(result, args, service)) + "\n")
    return EXIT_OK


def run_blowup(args, out: TextIO) -> int:
    domega = CentralizerService(load_diagram(args)).blowup_fast_path()
    if args.dot:
        args.dot.write_text(domega.to_dot("DOmega"), encoding="utf-8")
    if args.json:
        out.write(json.dumps(domega.to_dict(), indent=2) + "\n")
    else:
        out.write(domega.to_text())
    return EXIT_OK


def run_verify(args, out: TextIO) -> int:
    service = TitsVerificationService(load_diagram(args), args.tol, args.order_bound)
    checks = service.verify_generators(args.reflection)
    if args.json:
        payload = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("".join(f"{c}\n" for c in checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INTERNAL


def run_brute(args, out: TextIO) -> int:
    d = load_diagram(args)
    oracle = BruteForceOracle(d, args.reflection, max_order=args.max_order)
    result = CentralizerService(d).centralizer_diagram(args.reflection)
    closure_equal = oracle.closure_equals_centralizer(result.generators.all_words())
    predicted = None
    if result.diagram_supported and result.spherical_summary.spherical:
        predicted = 2 * result.spherical_summary.order

    if args.json:
        payload = {
            "group_order": oracle.group_order,
            "centralizer_order": oracle.centralizer_order,
            "predicted_order": predicted,
            "reflection_classes": [list(c) for c in oracle.reflection_classes()],
            "generators_closure": "EQUAL" if closure_equal else "DIFFERENT",
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"group order: {oracle.group_order}\n")
        out.write(f"centralizer order: {oracle.centralizer_order}\n")
        out.write(f"predicted order: {predicted if predicted is not None else 'n/a'}\n")
        out.write(f"reflection classes: {len(oracle.reflection_classes())}\n")
        out.write(f"generators closure: {'EQUAL' if closure_equal else 'DIFFERENT'}\n")
    consistent = closure_equal and predicted in (None, oracle.centralizer_order)
    return EXIT_OK if consistent else EXIT_INTERNAL


def run_builtin(args, out: TextIO) -> int:
    if args.name is None:
        out.write("".join(f"{name}\n" for name in builtin_names()))
        return EXIT_OK
    d = builtin_diagram(args.name)
    out.write(json.dumps(d.to_dict(), indent=2) + "\n" if args.json else d.to_text())
    return EXIT_OK


VERBS = {
    "info": run_info,
    "centralize": run_centralize,
    "blowup": run_blowup,
    "verify": run_verify,
    "brute": run_brute,
    "builtin": run_builtin,
}


def execute(argv: Optional[list[str]] = None, stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
        return VERBS[args.verb](args, stdout)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EXIT_INPUT
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except ConflictingCertificates as e:
        stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL
    except (CoxeterError, OSError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_INPUT


def main() -> None:
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(execute())


if __name__ == "__main__":
    main()
