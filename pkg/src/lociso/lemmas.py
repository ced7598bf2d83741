"""Runtime checks of the structural facts about non-extendable cycles.

Lemma ids:

* ``2.1.1``-``2.1.4``: two attachment vertices ``v_i``, ``v_j`` sharing an
  off-cycle neighbour ``x`` (any graph).
* ``2.2.1``, ``2.2.2``: a degree-6 cycle vertex with exactly one off-cycle
  neighbour in a locally isometric graph with maximum degree 6.
* ``2.3``: neighbours of a maximum-degree vertex have two common neighbours
  with it, when no true twins of maximum degree exist.
* ``2.4``: a neighbour missing ``deg(v) - 2`` others in ``N(v)`` forces a
  universal vertex there (a true twin of ``v`` at maximum degree).
* ``2.5``: a vertex adjacent to all of ``S`` and to nothing else near ``S``
  has neighbourhood exactly ``S``.
* ``4.4``: deleting a degree-2 vertex keeps local isometry and drops the
  circumference by at most one.

Every check records how many instances it examined and why it was skipped,
so a clean result is never vacuous by accident.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cycles import Cycle, CycleError, circumference, is_extendable
from .graph import Graph, bits, delete_vertex, has_true_twins_of_degree, popcount
from .graph6 import encode
from .local import is_locally_isometric

CYCLE_LEMMAS = ("2.1.1", "2.1.2", "2.1.3", "2.1.4", "2.2.1", "2.2.2")
GRAPH_LEMMAS = ("2.3", "2.4", "2.5")
ALL_LEMMAS = CYCLE_LEMMAS + GRAPH_LEMMAS + ("4.4",)
MAX_DELETION_ORDER = 16


class LemmaPreconditionError(ValueError):
    """The cycle handed to the suite is extendable (or Hamiltonian)."""


@dataclass(frozen=True)
class LemmaViolation:
    lemma: str
    graph6: str
    cycle: tuple[int, ...] | None
    witness: tuple[tuple[str, int], ...]
    expected: str
    observed: str

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "graph6": self.graph6,
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "witness": dict(self.witness),
            "expected": self.expected,
            "observed": self.observed,
        }


@dataclass
class LemmaReport:
    violations: list[LemmaViolation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "LemmaReport") -> None:
        self.violations.extend(other.violations)
        for k, v in other.checked.items():
            self.checked[k] = self.checked.get(k, 0) + v

    def _count(self, lemma: str) -> None:
        self.checked[lemma] = self.checked.get(lemma, 0) + 1


class _Ctx:
    """Shared state for one (graph, cycle) evaluation."""

    def __init__(self, g: Graph, seq: tuple[int, ...] | None, report: LemmaReport, negate: frozenset[str]):
        self.g = g
        self.seq = seq
        self.report = report
        self.negate = negate
        self._g6: str | None = None

    @property
    def g6(self) -> str:
        if self._g6 is None:
            self._g6 = encode(self.g)
        return self._g6

    def assert_(self, lemma: str, holds: bool, witness: dict[str, int], expected: str) -> None:
        self.report._count(lemma)
        if lemma in self.negate:
            holds = not holds
        if not holds:
            self.report.violations.append(
                LemmaViolation(lemma, self.g6, self.seq, tuple(sorted(witness.items())), expected, "does not hold")
            )


def _attachment_pairs(g: Graph, seq: tuple[int, ...]) -> Iterable[tuple[int, int, int]]:
    """(i, j, x) with i < j cycle positions whose vertices share off-cycle neighbour x."""
    on = 0
    for v in seq:
        on |= 1 << v
    t = len(seq)
    for x in bits(g.full_mask & ~on):
        pos = [i for i in range(t) if g.adj[x] >> seq[i] & 1]
        for i, j in combinations(pos, 2):
            yield i, j, x


def _lemma_2_1(ctx: _Ctx) -> None:
    g, seq = ctx.g, ctx.seq
    t = len(seq)

    def v(k: int) -> int:
        return seq[k % t]

    def adj(a: int, b: int) -> bool:
        return g.has_edge(a, b)

    for i, j, x in _attachment_pairs(g, seq):
        w = {"i": i, "j": j, "x": x}
        ctx.assert_("2.1.1", (j - i) % t not in (1, t - 1), w, "attachment vertices sharing x are not consecutive")
        ctx.assert_(
            "2.1.2",
            not adj(v(i + 1), v(j + 1)) and not adj(v(i - 1), v(j - 1)),
            w,
            "v_{i+1} !~ v_{j+1} and v_{i-1} !~ v_{j-1}",
        )
        for a, b in ((i, j), (j, i)):
            wo = {"i": a, "j": b, "x": x}
            if adj(v(a - 1), v(a + 1)):
                ctx.assert_(
                    "2.1.3",
                    not adj(v(b - 1), v(a)) and not adj(v(b + 1), v(a)),
                    wo,
                    "v_{i-1} ~ v_{i+1} implies v_{j-1} !~ v_i and v_{j+1} !~ v_i",
                )
            if (b - a) % t == 2:
                mid = v(a + 1)
                # path v_{i+2} -> ... -> v_i forward along the cycle
                path = [v(a + 2 + s) for s in range(t - 1)]
                ok = not any(adj(mid, p) and adj(mid, q) for p, q in zip(path, path[1:]))
                ctx.assert_("2.1.4", ok, wo, "v_{i+1} has no two consecutive neighbours on v_{i+2} -> v_i")


def _lemma_2_2(ctx: _Ctx) -> None:
    g, base = ctx.g, ctx.seq
    t = len(base)
    on = 0
    for u in base:
        on |= 1 << u
    for r in range(t):
        for orient in (1, -1):
            seq = [base[(r + orient * s) % t] for s in range(t)]
            v0 = seq[0]
            if g.degree(v0) != 6:
                continue
            off = g.adj[v0] & ~on
            if popcount(off) != 1:
                continue
            x = off.bit_length() - 1
            pos = sorted(k for k in range(2, t - 1) if g.adj[v0] >> seq[k] & 1)
            if len(pos) != 3:
                continue
            i, j, k = pos
            v1, vl = seq[1], seq[t - 1]
            target = (1 << x) | (1 << v1) | (1 << vl)

            def hits(a: int) -> bool:
                return g.adj[seq[a]] & target == target

            w = {"v0": v0, "i": i, "j": j, "k": k, "x": x}
            if hits(k):
                ctx.assert_("2.2.1", k + 1 == t - 1, w, "v_k ~ {x, v_1, v_{t-1}} implies k + 1 = t - 1")
            if hits(i):
                ctx.assert_("2.2.1", i == 2, w, "v_i ~ {x, v_1, v_{t-1}} implies i = 2")
            if hits(j):
                vj = seq[j]
                twins = g.closed_mask(v0) == g.closed_mask(vj) and g.degree(vj) == 6
                ctx.assert_("2.2.2", twins, w, "v_j ~ {x, v_1, v_{t-1}} implies v_0, v_j true twins of degree 6")


def _lemma_2_3(ctx: _Ctx) -> None:
    g = ctx.g
    d = g.max_degree
    for v in range(g.n):
        if g.degree(v) != d:
            continue
        for x in bits(g.adj[v]):
            ctx.assert_(
                "2.3",
                popcount(g.adj[x] & g.adj[v]) >= 2,
                {"v": v, "x": x},
                "x has two neighbours in N(v) - {x}",
            )


def _lemma_2_4(ctx: _Ctx) -> None:
    g = ctx.g
    d = g.max_degree
    for v in range(g.n):
        nb = g.adj[v]
        k = popcount(nb)
        if k < 2:
            continue
        for x in bits(nb):
            away = nb & ~g.adj[x] & ~(1 << x)
            if popcount(away) < k - 2:
                continue
            for s in combinations(list(bits(away)), k - 2):
                smask = sum(1 << u for u in s)
                rest = nb & ~smask & ~(1 << x)
                y = rest.bit_length() - 1
                universal = nb & ~(1 << y) & ~g.adj[y] == 0
                w = {"v": v, "x": x, "y": y}
                ctx.assert_("2.4", universal, w, "y is universal in <N(v)>")
                if universal and k == d:
                    ctx.assert_("2.4", g.closed_mask(y) == g.closed_mask(v), w, "y and v are true twins")


def _lemma_2_5(ctx: _Ctx) -> None:
    g = ctx.g
    adj = g.adj
    full = g.full_mask
    nbhd = [0] * (1 << g.n)
    # N(S) by low-bit recurrence over all subsets
    for s in range(1, 1 << g.n):
        low = s & -s
        nbhd[s] = nbhd[s ^ low] | adj[low.bit_length() - 1]
    for s in range(1, 1 << g.n):
        for w in bits(full & ~s):
            if adj[w] & s != s:
                continue
            near = nbhd[s] & ~s & ~(1 << w)
            if adj[w] & near:
                continue
            ctx.assert_("2.5", adj[w] == s, {"S": s, "w": w}, "N(w) = S")


def _check_nonextendable(g: Graph, c: Cycle) -> None:
    try:
        ext = is_extendable(g, c)
    except CycleError as exc:
        raise LemmaPreconditionError(str(exc)) from None
    if ext:
        raise LemmaPreconditionError(f"cycle {list(c.vertices)} is extendable")


def graph_lemmas(g: Graph, negate: Iterable[str] = (), report: LemmaReport | None = None) -> LemmaReport:
    """Lemmas 2.3-2.5: statements about the graph alone."""
    report = report if report is not None else LemmaReport()
    ctx = _Ctx(g, None, report, frozenset(negate))
    if not is_locally_isometric(g):
        for lem in GRAPH_LEMMAS:
            report.skipped[lem] = "graph is not locally isometric"
        return report
    if g.n < 3 or has_true_twins_of_degree(g, g.max_degree):
        report.skipped["2.3"] = "order < 3 or true twins of maximum degree present"
    else:
        _lemma_2_3(ctx)
    _lemma_2_4(ctx)
    if g.n > 16:
        report.skipped["2.5"] = "subset sweep limited to n <= 16"
    else:
        _lemma_2_5(ctx)
    return report


def cycle_lemmas(g: Graph, c: Cycle, negate: Iterable[str] = (), report: LemmaReport | None = None) -> LemmaReport:
    """Lemmas 2.1 and 2.2 for one non-extendable cycle."""
    _check_nonextendable(g, c)
    report = report if report is not None else LemmaReport()
    ctx = _Ctx(g, tuple(c.vertices), report, frozenset(negate))
    _lemma_2_1(ctx)
    if is_locally_isometric(g) and g.max_degree == 6:
        _lemma_2_2(ctx)
    else:
        report.skipped.setdefault("2.2", "needs a locally isometric graph with maximum degree 6")
    return report


def lemma_suite(g: Graph, c: Cycle, negate: Iterable[str] = ()) -> LemmaReport:
    """All cycle and graph lemmas for ``g`` and its non-extendable cycle ``c``.

    ``negate`` flips the expected outcome of the named lemma ids; it exists so
    tests can confirm the checker actually reports failures.
    """
    report = cycle_lemmas(g, c, negate)
    graph_lemmas(g, negate, report)
    return report


def degree2_deletion_check(g: Graph, negate: Iterable[str] = ()) -> LemmaReport:
    report = LemmaReport()
    if g.n > MAX_DELETION_ORDER:
        report.skipped["4.4"] = f"circumference budget is n <= {MAX_DELETION_ORDER}"
        return report
    if not is_locally_isometric(g):
        report.skipped["4.4"] = "graph is not locally isometric"
        return report
    low = [u for u in range(g.n) if g.degree(u) == 2]
    if not low:
        report.skipped["4.4"] = "no vertex of degree 2"
        return report
    ctx = _Ctx(g, None, report, frozenset(negate))
    c_g = circumference(g) or 0
    for u in low:
        h, _ = delete_vertex(g, u)
        li = is_locally_isometric(h)
        c_h = circumference(h) or 0
        ctx.assert_("4.4", li, {"u": u}, "G - u is locally isometric")
        ctx.assert_("4.4", c_g <= c_h + 1, {"u": u, "c(G)": c_g, "c(G-u)": c_h}, "c(G) <= c(G - u) + 1")
    return report


def replay(violation: LemmaViolation, negate: Iterable[str] = ()) -> bool:
    """True when re-running the lemma on the recorded witness fails again."""
    from .graph6 import decode

    g = decode(violation.graph6)
    if violation.lemma == "4.4":
        rep = degree2_deletion_check(g, negate)
    elif violation.cycle is None:
        rep = graph_lemmas(g, negate)
    else:
        rep = cycle_lemmas(g, Cycle.of(g, violation.cycle), negate)
    return any(v.lemma == violation.lemma and v.witness == violation.witness for v in rep.violations)
