"""Command-line entry point.

Graphs travel as graph6, one per line; reports are JSON on stdout and logs go
to stderr. Exit codes: 0 ok, 1 violations found, 2 usage error, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from contextlib import contextmanager
from typing import IO, Iterator

from . import __version__
from .cycles import CycleError, cycle_spectrum, extendability_report, nonextendable_cycles
from .enumeration import connected_graph_stream
from .families import FAMILIES, CATALOG, FamilyError, family_graph, named, recognize_exception
from .graph import Graph, GraphError, degree_profile
from .graph6 import Graph6Error, encode, read_path, write_graphs
from .harness import (
    THEOREMS,
    CampaignError,
    CampaignOptions,
    check_orders,
    default_threads,
    run_campaign,
)
from .iso import UnsupportedSizeError
from .lemmas import LemmaReport, cycle_lemmas, degree2_deletion_check, graph_lemmas
from .local import local_profile
from .reduction import ReductionError, Variant, check_variant, gadget_transform

log = logging.getLogger("lociso")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


def _num(x: float) -> float | int | str:
    if x == math.inf:
        return "inf"
    return int(x) if float(x).is_integer() else x


@contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(out: IO[str], obj: dict) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _check_record(g: Graph) -> dict:
    lp = local_profile(g)
    dp = degree_profile(g)
    return {
        "graph6": encode(g),
        "n": g.n,
        "edges": g.edge_count,
        "min_degree": dp.min_degree,
        "max_degree": dp.max_degree,
        "degree_sequence": list(dp.sequence),
        "degree_two_vertices": list(dp.degree_two),
        "neighbourhood_diameters": [_num(d) for d in lp.diameters],
        "local_k": _num(lp.min_k),
        "locally_connected": lp.locally_connected,
        "locally_traceable": lp.locally_traceable,
        "locally_hamiltonian": lp.locally_hamiltonian,
        "locally_isometric": lp.locally_isometric,
    }


def _spectrum_record(g: Graph) -> dict:
    s = cycle_spectrum(g)
    return {
        "graph6": encode(g),
        "n": g.n,
        "girth": s.girth,
        "circumference": s.circumference,
        "lengths": sorted(s.achieved_lengths),
        "weakly_pancyclic": s.weakly_pancyclic,
        "pancyclic": s.pancyclic,
    }


def _extend_record(g: Graph) -> dict:
    r = extendability_report(g)
    w = r.witness_nonextendable_cycle
    return {
        "graph6": encode(g),
        "n": g.n,
        "acyclic": r.acyclic,
        "cycle_extendable": r.cycle_extendable,
        "every_vertex_on_triangle": r.every_vertex_on_triangle,
        "fully_cycle_extendable": r.fully_cycle_extendable,
        "nonextendable_cycle": list(w.vertices) if w is not None else None,
    }


def _classify_record(g: Graph) -> dict:
    exc = recognize_exception(g)
    return {"graph6": encode(g), "n": g.n, "class": str(exc), "exceptional": exc.is_exceptional}


PER_GRAPH = {
    "check": _check_record,
    "spectrum": _spectrum_record,
    "extend": _extend_record,
    "classify": _classify_record,
}


def _per_graph(args: argparse.Namespace) -> int:
    fn = PER_GRAPH[args.command]
    count = 0
    with _output(args.output) as out:
        for g in read_path(args.input):
            _emit(out, fn(g))
            count += 1
    log.info("%s: %d graph(s)", args.command, count)
    return EXIT_OK


def _generate(args: argparse.Namespace) -> int:
    if args.name:
        g = named(args.name)
    elif args.family and args.order is not None:
        g = family_graph(args.family, args.order)
    else:
        raise _Usage("generate needs --name, or --family with --order")
    with _output(args.output) as out:
        write_graphs([g], out)
    return EXIT_OK


def _enumerate(args: argparse.Namespace) -> int:
    lo = args.min_order if args.min_order is not None else args.order
    hi = args.max_order if args.max_order is not None else args.order
    if lo is None or hi is None:
        raise _Usage("enumerate needs --order, or --min-order and --max-order")
    total = 0
    with _output(args.output) as out:
        for n in range(lo, hi + 1):
            stream = connected_graph_stream(n)
            if args.locally_isometric:
                from .local import is_locally_isometric

                stream = stream.where(is_locally_isometric)
            if args.max_degree is not None:
                stream = stream.where(lambda g, d=args.max_degree: g.max_degree <= d)
            total += write_graphs(stream, out)
    log.info("enumerate: %d graph(s) of order %d..%d", total, lo, hi)
    return EXIT_OK


def _reduce(args: argparse.Namespace) -> int:
    variant = Variant.parse(args.variant)
    sources = [named(args.name)] if args.name else list(read_path(args.input))
    failed = False
    label_lines: list[str] = []
    with _output(args.output) as out:
        for g in sources:
            inst = gadget_transform(g, None, variant)
            label_lines.append(f"# {encode(inst.graph)}")
            label_lines += inst.label_map_lines()
            if not args.check:
                out.write(encode(inst.graph) + "\n")
                continue
            c = check_variant(g, None, variant)
            rec = {
                "source": encode(g),
                "reduced": encode(inst.graph),
                "variant": variant.value,
                "order": c.order,
                "edges": inst.graph.edge_count,
                "max_degree": c.max_degree,
                "local_k": _num(c.local_bound),
                "locally_isometric": c.local_bound <= 2,
                "degree_ok": c.degree_ok,
                "local_bound_ok": c.local_bound_ok,
                "structure_ok": c.structure_ok,
                "ham_source": c.ham_source,
                "ham_reduced": c.ham_reduced,
                "equivalence_ok": c.equivalence_ok,
                "lift_ok": c.lift_ok,
                "project_ok": c.project_ok,
                "skipped": c.skipped,
                "ok": c.ok,
            }
            failed |= not c.ok
            _emit(out, rec)
    if args.labels:
        with open(args.labels, "w") as fh:
            fh.write("\n".join(label_lines) + "\n")
    return EXIT_VIOLATION if failed else EXIT_OK


def _verify(args: argparse.Namespace) -> int:
    if args.theorem:
        return _verify_campaign(args)
    if not (args.lemmas or args.degree2):
        raise _Usage("verify needs --theorem, --lemmas or --degree2")
    total = LemmaReport()
    cycles = 0
    for g in read_path(args.input):
        if args.lemmas:
            graph_lemmas(g, report=total)
            for c in nonextendable_cycles(g):
                cycles += 1
                cycle_lemmas(g, c, report=total)
        if args.degree2:
            total.merge(degree2_deletion_check(g))
    doc = {
        "nonextendable_cycles": cycles,
        "lemma_checks": dict(sorted(total.checked.items())),
        "violations": [v.as_dict() for v in total.violations],
    }
    with _output(args.output) as out:
        out.write(json.dumps(doc, indent=2) + "\n")
    log.info("lemmas: %d checks, %d violation(s)", sum(total.checked.values()), len(total.violations))
    return EXIT_VIOLATION if total.violations else EXIT_OK


def _verify_campaign(args: argparse.Namespace) -> int:
    corpus = None if args.input is None else list(read_path(args.input))
    lo = args.min_order if args.min_order is not None else 1
    hi = args.max_order
    if hi is None:
        hi = max((g.n for g in corpus), default=lo) if corpus is not None else 8
    check_orders(lo, hi, corpus is not None)
    threads = args.threads if args.threads is not None else default_threads()
    opts = CampaignOptions(lemmas=args.lemmas, degree2=args.degree2)
    rep = run_campaign(args.theorem, (lo, hi), corpus, threads=threads, options=opts)
    with _output(args.output) as out:
        out.write(json.dumps(rep.as_dict(), indent=2) + "\n")
    print(
        f"{rep.theorem} n={lo}..{hi}: scanned {rep.scanned}, filtered {rep.filtered}, "
        f"conforming {rep.conforming}, exceptions {rep.exception_tally}, "
        f"violations {len(rep.violations)}, lemma violations {len(rep.lemma_violations)}",
        file=sys.stderr,
    )
    return EXIT_OK if rep.ok else EXIT_VIOLATION


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lociso", description="Locally isometric graph toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def io_args(sp: argparse.ArgumentParser, input_default: str | None = "-") -> None:
        sp.add_argument("input", nargs="?", default=input_default, help="graph6 file, '-' for stdin")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    helps = {
        "check": "neighbourhood diameters, local properties and degrees",
        "spectrum": "girth, circumference and cycle lengths",
        "extend": "cycle extendability report",
        "classify": "match against the exceptional families",
    }
    for name, text in helps.items():
        io_args(sub.add_parser(name, help=text))

    sp = sub.add_parser("generate", help="emit a family member or catalog graph as graph6")
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--order", type=int)
    sp.add_argument("--name", choices=sorted(CATALOG))
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("enumerate", help="connected graphs up to isomorphism as graph6")
    sp.add_argument("--order", type=int)
    sp.add_argument("--min-order", type=int)
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--locally-isometric", action="store_true")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("-o", "--output")

    sp = sub.add_parser("reduce", help="gadget transform of cubic bipartite graphs")
    io_args(sp)
    sp.add_argument("--variant", required=True, type=str.lower, choices=["g1", "g2"])
    sp.add_argument("--name", choices=sorted(CATALOG))
    sp.add_argument("--check", action="store_true", help="verify degree, local bound and Hamiltonicity")
    sp.add_argument("--labels", help="write the gadget label map to this file")

    sp = sub.add_parser("verify", help="theorem campaigns and lemma checks")
    io_args(sp, input_default=None)
    sp.add_argument("--theorem", choices=sorted(THEOREMS))
    sp.add_argument("--min-order", type=int)
    sp.add_argument("--max-order", type=int)
    sp.add_argument("--lemmas", action="store_true", help="run the lemma suite on every non-extendable cycle")
    sp.add_argument("--degree2", action="store_true", help="run the degree-2 deletion check")
    sp.add_argument("--threads", type=int, help="worker processes (default: $LOCISO_THREADS or CPU count)")
    return p


HANDLERS = {
    "check": _per_graph,
    "spectrum": _per_graph,
    "extend": _per_graph,
    "classify": _per_graph,
    "generate": _generate,
    "enumerate": _enumerate,
    "reduce": _reduce,
    "verify": _verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.command == "verify" and args.input is None and not args.theorem:
        args.input = "-"
    try:
        return HANDLERS[args.command](args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"lociso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"lociso: graph6 error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK
    except (FamilyError, ReductionError, UnsupportedSizeError, CampaignError, GraphError, CycleError, OSError) as exc:
        print(f"lociso: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
