"""Exhaustive verification campaigns over graph corpora."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cycles import cycle_spectrum, extendability_report, nonextendable_cycles
from .enumeration import MAX_STREAM_ORDER, connected_graph_stream
from .families import NOT_EXCEPTIONAL, ExceptionClass, recognize_exception
from .graph import Graph, has_true_twins_of_degree
from .graph6 import decode, encode
from .iso import MAX_CERT_ORDER, UnsupportedSizeError, canonical_certificate
from .lemmas import LemmaReport, cycle_lemmas, degree2_deletion_check, graph_lemmas
from .local import is_locally_isometric

log = logging.getLogger(__name__)

THREADS_ENV = "LOCISO_THREADS"


class CampaignError(ValueError):
    """Unknown theorem id or a corpus outside the supported range."""


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    min_order: int
    max_degree_ok: Callable[[int], bool]
    needs_connected: bool = True
    no_top_twins: bool = False
    # hypotheses that need the extendability report (non-FCE graphs only)
    only_non_fce: bool = False
    min_order_from_degree: bool = False


THEOREMS: dict[str, Theorem] = {
    t.id: t
    for t in (
        Theorem("delta4", "non-FCE connected locally isometric graphs with max degree <= 4 are K2 + 3K1",
                1, lambda d: d <= 4),
        Theorem("thm3_1", "connected locally isometric, max degree 5, n >= 6: FCE or a singly/doubly shuttered highrise",
                6, lambda d: d == 5),
        Theorem("thm4_1", "connected locally isometric, max degree 6, no true twins of degree 6: FCE or K_{2,4} + K_1",
                1, lambda d: d == 6, no_top_twins=True),
        Theorem("cor4_2", "connected locally isometric, max degree 6, n >= 8, not FCE: has a degree-2 vertex",
                8, lambda d: d == 6, only_non_fce=True),
        Theorem("thm4_5", "locally isometric, max degree <= 6, n >= max degree + 1: weakly pancyclic",
                1, lambda d: d <= 6, needs_connected=False, min_order_from_degree=True),
        Theorem("cor3_2", "locally isometric, max degree <= 5, n > max degree: weakly pancyclic",
                1, lambda d: d <= 5, needs_connected=False, min_order_from_degree=True),
        Theorem("lem4_3", "locally isometric, n = 7, max degree 6: weakly pancyclic",
                7, lambda d: d == 6, needs_connected=False),
    )
}


@dataclass
class CampaignOptions:
    lemmas: bool = False
    degree2: bool = False


@dataclass
class CampaignReport:
    theorem: str
    range: tuple[int, int]
    scanned: int = 0
    filtered: int = 0
    conforming: int = 0
    filtered_out: dict[str, int] = field(default_factory=dict)
    exceptions: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    lemma_checks: dict[str, int] = field(default_factory=dict)
    lemma_violations: list[dict] = field(default_factory=list)
    nonextendable_cycles: int = 0
    elapsed_ms: int = 0

    @property
    def exception_tally(self) -> dict[str, int]:
        tally: dict[str, int] = {}
        for e in self.exceptions:
            tally[e["class"]] = tally.get(e["class"], 0) + 1
        return dict(sorted(tally.items()))

    @property
    def ok(self) -> bool:
        return not self.violations and not self.lemma_violations

    def merge(self, other: "CampaignReport") -> None:
        self.scanned += other.scanned
        self.filtered += other.filtered
        self.conforming += other.conforming
        for k, v in other.filtered_out.items():
            self.filtered_out[k] = self.filtered_out.get(k, 0) + v
        for k, v in other.lemma_checks.items():
            self.lemma_checks[k] = self.lemma_checks.get(k, 0) + v
        self.exceptions += other.exceptions
        self.violations += other.violations
        self.lemma_violations += other.lemma_violations
        self.nonextendable_cycles += other.nonextendable_cycles

    def finalize(self) -> None:
        self.exceptions.sort(key=lambda e: (e["n"], e["key"]))
        self.violations.sort(key=lambda e: (e["n"], e["key"], e["reason"]))
        self.lemma_violations.sort(key=lambda e: (e["graph6"], e["lemma"], str(e["witness"])))
        self.filtered_out = dict(sorted(self.filtered_out.items()))
        self.lemma_checks = dict(sorted(self.lemma_checks.items()))

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "theorem": self.theorem,
            "statement": THEOREMS[self.theorem].statement,
            "range": list(self.range),
            "scanned": self.scanned,
            "filtered": self.filtered,
            "conforming": self.conforming,
            "filtered_out": self.filtered_out,
            "exceptions": self.exceptions,
            "exception_tally": self.exception_tally,
            "violations": self.violations,
        }
        if self.lemma_checks or self.lemma_violations:
            out["nonextendable_cycles"] = self.nonextendable_cycles
            out["lemma_checks"] = self.lemma_checks
            out["lemma_violations"] = self.lemma_violations
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def graph_key(g: Graph) -> str:
    """Order-stable key: canonical certificate when available, else the raw graph6."""
    if g.n <= MAX_CERT_ORDER:
        return canonical_certificate(g).hex()
    return "g6:" + encode(g)


def _reject(rep: CampaignReport, reason: str) -> None:
    rep.filtered_out[reason] = rep.filtered_out.get(reason, 0) + 1


def _run_lemmas(g: Graph, rep: CampaignReport, opts: CampaignOptions) -> None:
    if opts.lemmas:
        acc = LemmaReport()
        graph_lemmas(g, report=acc)
        for c in nonextendable_cycles(g):
            rep.nonextendable_cycles += 1
            cycle_lemmas(g, c, report=acc)
        _absorb(rep, acc)
    if opts.degree2:
        _absorb(rep, degree2_deletion_check(g))


def _absorb(rep: CampaignReport, acc: LemmaReport) -> None:
    for k, v in acc.checked.items():
        rep.lemma_checks[k] = rep.lemma_checks.get(k, 0) + v
    rep.lemma_violations += [v.as_dict() for v in acc.violations]


def classify(theorem: Theorem, g: Graph, rep: CampaignReport, opts: CampaignOptions) -> None:
    """Count ``g`` into exactly one bucket of ``rep``."""
    rep.scanned += 1
    d = g.max_degree
    # cheapest first: order and degree, connectivity, local isometry, twins, cycles
    if g.n < theorem.min_order or (theorem.min_order_from_degree and g.n < d + 1):
        return _reject(rep, "order")
    if not theorem.max_degree_ok(d):
        return _reject(rep, "max_degree")
    if theorem.needs_connected and not g.is_connected():
        return _reject(rep, "connected")
    if not is_locally_isometric(g):
        return _reject(rep, "locally_isometric")
    if theorem.no_top_twins and has_true_twins_of_degree(g, 6):
        return _reject(rep, "true_twins")

    ext = None
    if theorem.id in ("delta4", "thm3_1", "thm4_1", "cor4_2"):
        ext = extendability_report(g)
        if theorem.only_non_fce and ext.fully_cycle_extendable:
            return _reject(rep, "fully_cycle_extendable")
    rep.filtered += 1
    key = graph_key(g)

    def violation(reason: str) -> None:
        rep.violations.append({"n": g.n, "key": key, "graph6": encode(g), "reason": reason})

    if theorem.id in ("thm4_5", "cor3_2", "lem4_3"):
        spec = cycle_spectrum(g)
        if spec.weakly_pancyclic:
            rep.conforming += 1
        else:
            violation(f"not weakly pancyclic: girth {spec.girth}, circumference {spec.circumference}, "
                      f"lengths {sorted(spec.achieved_lengths)}")
    elif theorem.id == "cor4_2":
        if 2 in g.degrees():
            rep.conforming += 1
        else:
            violation("not fully cycle extendable and no vertex of degree 2")
    else:
        assert ext is not None
        if ext.fully_cycle_extendable:
            rep.conforming += 1
        else:
            exc = recognize_exception(g) if g.n <= MAX_CERT_ORDER else NOT_EXCEPTIONAL
            if _allowed(theorem.id, exc):
                rep.exceptions.append({"n": g.n, "key": key, "graph6": encode(g), "class": str(exc)})
            else:
                why = "not fully cycle extendable"
                if ext.witness_nonextendable_cycle is not None:
                    why += f"; non-extendable cycle {list(ext.witness_nonextendable_cycle.vertices)}"
                elif not ext.every_vertex_on_triangle:
                    why += "; a vertex lies on no triangle"
                violation(why + f"; recognised as {exc}")
    if ext is not None and not ext.fully_cycle_extendable:
        _run_lemmas(g, rep, opts)
    elif opts.degree2:
        _absorb(rep, degree2_deletion_check(g))


def _allowed(theorem_id: str, exc: ExceptionClass) -> bool:
    if theorem_id == "delta4":
        return exc.tag == "K2JoinK3bar"
    if theorem_id == "thm3_1":
        return exc.tag in ("SinglyShuttered", "DoublyShuttered")
    if theorem_id == "thm4_1":
        return exc.tag == "K24PlusK1"
    return False


def _shard_worker(args: tuple[str, list[str], CampaignOptions, tuple[int, int]]) -> CampaignReport:
    theorem_id, lines, opts, rng = args
    theorem = THEOREMS[theorem_id]
    rep = CampaignReport(theorem_id, rng)
    for line in lines:
        classify(theorem, decode(line), rep, opts)
    return rep


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV, env)
    return os.cpu_count() or 1


def builtin_corpus(min_order: int, max_order: int) -> Iterable[Graph]:
    if min_order < 1 or max_order > MAX_STREAM_ORDER or min_order > max_order:
        raise CampaignError(
            f"built-in corpus covers orders 1..{MAX_STREAM_ORDER}; got {min_order}..{max_order}"
        )
    for n in range(min_order, max_order + 1):
        yield from connected_graph_stream(n)


def run_campaign(
    theorem_id: str,
    orders: tuple[int, int],
    corpus: Iterable[Graph] | None = None,
    threads: int = 1,
    options: CampaignOptions | None = None,
) -> CampaignReport:
    """Check one theorem on every corpus graph whose order lies in ``orders`` (inclusive).

    Without ``corpus`` the built-in connected-graph enumeration is used.
    Reports do not depend on ``threads``.
    """
    if theorem_id not in THEOREMS:
        raise CampaignError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}")
    lo, hi = orders
    opts = options or CampaignOptions()
    theorem = THEOREMS[theorem_id]
    start = time.perf_counter()
    graphs = builtin_corpus(lo, hi) if corpus is None else (g for g in corpus if lo <= g.n <= hi)
    rep = CampaignReport(theorem_id, (lo, hi))
    if threads <= 1:
        for g in graphs:
            classify(theorem, g, rep, opts)
    else:
        lines = [encode(g) for g in graphs]
        shards = [lines[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_shard_worker, [(theorem_id, s, opts, (lo, hi)) for s in shards]):
                rep.merge(part)
    rep.finalize()
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
    log.info(
        "%s n=%d..%d: scanned %d, filtered %d, conforming %d, exceptions %s, violations %d (%d ms)",
        theorem_id, lo, hi, rep.scanned, rep.filtered, rep.conforming,
        rep.exception_tally or "{}", len(rep.violations), rep.elapsed_ms,
    )
    return rep


def check_orders(lo: int, hi: int, corpus_given: bool) -> None:
    if lo > hi:
        raise CampaignError(f"empty order range {lo}..{hi}")
    if not corpus_given and hi > MAX_STREAM_ORDER:
        raise UnsupportedSizeError(
            f"built-in enumeration stops at n = {MAX_STREAM_ORDER}; pass a graph6 corpus for larger orders"
        )


def campaign_exception_names(rep: CampaignReport) -> list[str]:
    return [e["class"] for e in rep.exceptions]


def family_checks(orders: Sequence[int]) -> list[dict]:
    """S_n and D_n are weakly pancyclic and not fully cycle extendable at each order."""
    from .families import doubly_shuttered, doubly_shuttered_defined, singly_shuttered

    out = []
    for n in orders:
        gens = [("SinglyShuttered", singly_shuttered)]
        if doubly_shuttered_defined(n):
            gens.append(("DoublyShuttered", doubly_shuttered))
        for tag, make in gens:
            g = make(n)
            spec = cycle_spectrum(g)
            ext = extendability_report(g)
            out.append({
                "class": f"{tag}({n})",
                "weakly_pancyclic": spec.weakly_pancyclic,
                "fully_cycle_extendable": ext.fully_cycle_extendable,
                "locally_isometric": is_locally_isometric(g),
                "ok": spec.weakly_pancyclic and not ext.fully_cycle_extendable,
            })
    return out
