"""Finite-dimensionality deciders for sets of homogeneous derivations.

Type I sets (x^a d_i) are finite exactly when every vertex lying on a directed
cycle of the generator graph has weight zero.  Type II sets (x^p sum beta_j
x_j d_j) of positive weight are finite exactly when they admit an ordering in
which

1) proportional beta(i), beta(j) satisfy <beta(i), p(i) - p(j)> = 0, and
2) for non-proportional i before j: <beta(j), p(i)> = 0 and some r >= 0 has
   <beta(i), p(j) + r p(i)> = 0.

Condition 2) is a property of each unordered pair and the chosen orientation,
so the existential over orderings reduces to acyclicity of the digraph of
forced precedences.  Weight-zero type II generators never change the verdict
and are carried along as spectators.

Generator indices in reports are 0-based positions in the input sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    AlgebraError,
    HomogeneousDerivation,
    LaurentOnly,
    TypeI,
    TypeII,
    as_type1,
    as_type2,
    classify,
    is_zero_vector,
    InvalidElementError,
    pairing,
    proportional,
)
from .graphs import (
    CycleWitness,
    DiGraph,
    build_gamma_type1,
    build_gamma_type2,
    cycle_vertices,
    find_cycle_through,
    strongly_connected_components,
    topological_order,
)


class PreconditionError(AlgebraError):
    pass


class Verdict(str, Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class EmptyWitness:
    dimension: int = 0


@dataclass(frozen=True)
class Type1Finite:
    """Vertices on directed cycles of the generator graph and their (zero) weights."""

    cycle_vertices: Tuple[int, ...]
    weights: Tuple[int, ...]


@dataclass(frozen=True)
class Type2Finite:
    order: Tuple[int, ...]
    r_table: Dict[Tuple[int, int], int]
    spectators: Tuple[int, ...] = ()


@dataclass(frozen=True)
class InfiniteWitness:
    """Why the algebra is infinite.

    ``lemma`` is one of ``theorem-1`` (cycle through a positive-weight type I
    generator), ``l2`` (proportional pair with unequal pairings), ``l3`` (no
    r >= 0 exists), ``l4`` (both minimal r, s positive) or ``l5`` (cycle of
    forced precedences).  ``vertices`` is the pair or the closed cycle.
    """

    lemma: str
    vertices: Tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class UndecidedReason:
    reason: str
    recommendation: str = "run the closure semidecision (closure command)"


Witness = Union[EmptyWitness, Type1Finite, Type2Finite, InfiniteWitness, UndecidedReason]


@dataclass(frozen=True)
class DecisionReport:
    verdict: Verdict
    kind: str
    witness: Witness


# --- pairwise arithmetic ----------------------------------------------------


def find_r(beta: Sequence[Fraction], p_self: Sequence[int], p_other: Sequence[int]) -> Optional[int]:
    """Smallest r >= 0 with <beta, p_other + r p_self> = 0, or None."""
    if is_zero_vector(beta):
        raise InvalidElementError("beta must be nonzero")
    other = pairing(beta, p_other)
    if other == 0:
        return 0
    own = pairing(beta, p_self)
    if own == 0:
        return None
    ratio = -other / own
    if ratio.denominator == 1 and ratio > 0:
        return int(ratio)
    return None


def orientation_feasible(i_gen, j_gen) -> bool:
    """Whether placing ``i_gen`` before ``j_gen`` satisfies condition 2)."""
    gi, gj = as_type2(i_gen), as_type2(j_gen)
    if proportional(gi.beta, gj.beta):
        raise PreconditionError("orientation is only defined for non-proportional beta")
    return pairing(gj.beta, gi.p) == 0 and find_r(gi.beta, gi.p, gj.p) is not None


# --- deciders ---------------------------------------------------------------


def decide_type1(gens: Sequence) -> DecisionReport:
    t = [as_type1(g) for g in gens]
    g = build_gamma_type1(t)
    on_cycles = sorted(cycle_vertices(g))
    bad = [v for v in on_cycles if t[v].weight != 0]
    if not bad:
        return DecisionReport(
            Verdict.FINITE,
            "type1",
            Type1Finite(tuple(on_cycles), tuple(t[v].weight for v in on_cycles)),
        )
    v = bad[0]
    cycle = find_cycle_through(g, v)
    return DecisionReport(
        Verdict.INFINITE,
        "type1",
        InfiniteWitness(
            "theorem-1",
            tuple(cycle),
            f"generator {v} of weight {t[v].weight} lies on a directed cycle",
        ),
    )


def _pair_failure(t: Sequence[TypeII], i: int, j: int) -> InfiniteWitness:
    r_ij = find_r(t[i].beta, t[i].p, t[j].p)
    r_ji = find_r(t[j].beta, t[j].p, t[i].p)
    if r_ij is None:
        return InfiniteWitness("l3", (i, j), f"no r >= 0 with <beta({i}), p({j}) + r p({i})> = 0")
    if r_ji is None:
        return InfiniteWitness("l3", (j, i), f"no r >= 0 with <beta({j}), p({i}) + r p({j})> = 0")
    return InfiniteWitness("l4", (i, j), f"minimal r = {r_ij} and s = {r_ji} are both positive")


def decide_type2(gens: Sequence) -> DecisionReport:
    t = [as_type2(g) for g in gens]
    live = [k for k, g in enumerate(t) if g.weight > 0]
    spectators = tuple(k for k, g in enumerate(t) if g.weight == 0)

    for a, i in enumerate(live):
        for j in live[a + 1:]:
            if proportional(t[i].beta, t[j].beta):
                diff = tuple(x - y for x, y in zip(t[i].p, t[j].p))
                value = pairing(t[i].beta, diff)
                if value != 0:
                    return DecisionReport(
                        Verdict.INFINITE,
                        "type2",
                        InfiniteWitness("l2", (i, j), f"<beta({i}), p({i}) - p({j})> = {value} != 0"),
                    )

    local = {k: pos for pos, k in enumerate(live)}
    forced = set()
    for a, i in enumerate(live):
        for j in live[a + 1:]:
            if proportional(t[i].beta, t[j].beta):
                continue
            fwd = orientation_feasible(t[i], t[j])
            back = orientation_feasible(t[j], t[i])
            if not fwd and not back:
                return DecisionReport(Verdict.INFINITE, "type2", _pair_failure(t, i, j))
            if fwd and not back:
                forced.add((local[i], local[j]))
            elif back and not fwd:
                forced.add((local[j], local[i]))

    result = topological_order(DiGraph(len(live), frozenset(forced)))
    if isinstance(result, CycleWitness):
        cycle = tuple(live[v] for v in result.cycle)
        return DecisionReport(
            Verdict.INFINITE,
            "type2",
            InfiniteWitness("l5", cycle, "the forced precedences contain a directed cycle"),
        )
    order = tuple(live[v] for v in result.order)
    r_table = {}
    for a, i in enumerate(order):
        for j in order[a + 1:]:
            if not proportional(t[i].beta, t[j].beta):
                r_table[(i, j)] = find_r(t[i].beta, t[i].p, t[j].p)
    return DecisionReport(Verdict.FINITE, "type2", Type2Finite(order, r_table, spectators))


def decide(gens: Sequence[HomogeneousDerivation]) -> DecisionReport:
    if not gens:
        return DecisionReport(Verdict.FINITE, "empty", EmptyWitness())
    classes = [classify(g) for g in gens]
    laurent = [k for k, c in enumerate(classes) if isinstance(c, LaurentOnly)]
    if laurent:
        return DecisionReport(
            Verdict.UNDECIDED,
            "laurent",
            UndecidedReason(f"generators {laurent} are Laurent-only (not polynomial vector fields)"),
        )
    kinds = {type(c) for c in classes}
    if kinds == {TypeI}:
        return decide_type1(classes)
    if kinds == {TypeII}:
        return decide_type2(classes)
    return DecisionReport(
        Verdict.UNDECIDED,
        "mixed",
        UndecidedReason("mixed type I and type II generators; no criterion is known"),
    )


# --- witness re-validation ---------------------------------------------------


def check_witness(gens: Sequence, report: DecisionReport) -> bool:
    """Re-evaluate a report's witness against the raw conditions it claims."""
    w = report.witness
    if isinstance(w, Type2Finite):
        t = [as_type2(g) for g in gens]
        live = sorted(k for k, g in enumerate(t) if g.weight > 0)
        if sorted(w.order) != live:
            return False
        pos = {k: n for n, k in enumerate(w.order)}
        for i in live:
            for j in live:
                if i == j:
                    continue
                if proportional(t[i].beta, t[j].beta):
                    diff = tuple(x - y for x, y in zip(t[i].p, t[j].p))
                    if pairing(t[i].beta, diff) != 0:
                        return False
                elif pos[i] < pos[j]:
                    r = w.r_table.get((i, j))
                    if r is None or r < 0 or pairing(t[j].beta, t[i].p) != 0:
                        return False
                    if pairing(t[i].beta, tuple(y + r * x for x, y in zip(t[i].p, t[j].p))) != 0:
                        return False
        return True
    if isinstance(w, Type1Finite):
        t = [as_type1(g) for g in gens]
        g = build_gamma_type1(t)
        return set(w.cycle_vertices) == cycle_vertices(g) and all(t[v].weight == 0 for v in w.cycle_vertices)
    if isinstance(w, InfiniteWitness):
        return _check_infinite(gens, w)
    return True


def _check_infinite(gens: Sequence, w: InfiniteWitness) -> bool:
    if w.lemma == "theorem-1":
        t = [as_type1(g) for g in gens]
        g = build_gamma_type1(t)
        cyc = w.vertices
        closed = len(cyc) >= 2 and cyc[0] == cyc[-1]
        edges_ok = all((u, v) in g.edges for u, v in zip(cyc, cyc[1:]))
        return closed and edges_ok and any(t[v].weight > 0 for v in cyc)
    t = [as_type2(g) for g in gens]
    if w.lemma == "l2":
        i, j = w.vertices
        diff = tuple(x - y for x, y in zip(t[i].p, t[j].p))
        return proportional(t[i].beta, t[j].beta) and pairing(t[i].beta, diff) != 0
    if w.lemma == "l3":
        i, j = w.vertices
        return not proportional(t[i].beta, t[j].beta) and find_r(t[i].beta, t[i].p, t[j].p) is None
    if w.lemma == "l4":
        i, j = w.vertices
        r = find_r(t[i].beta, t[i].p, t[j].p)
        s = find_r(t[j].beta, t[j].p, t[i].p)
        return r is not None and s is not None and r >= 1 and s >= 1
    if w.lemma == "l5":
        cyc = w.vertices
        if len(cyc) < 3 or cyc[0] != cyc[-1]:
            return False
        # each step u -> v must be a forced precedence: v before u is infeasible
        return all(
            not proportional(t[u].beta, t[v].beta) and not orientation_feasible(t[v], t[u])
            for u, v in zip(cyc, cyc[1:])
        )
    return False


# --- diagnostics --------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    lemma: str
    vertices: Tuple[int, ...]
    detail: str


def pairwise_diagnostics(gens: Sequence) -> List[Finding]:
    """Necessary conditions that fail, pair by pair, plus cycles of the pairing graph."""
    t = [as_type2(g) for g in gens]
    live = [k for k, g in enumerate(t) if g.weight > 0]
    out: List[Finding] = []
    for a, i in enumerate(live):
        for j in live[a + 1:]:
            bi, bj = t[i].beta, t[j].beta
            if proportional(bi, bj):
                diff = tuple(x - y for x, y in zip(t[i].p, t[j].p))
                if pairing(bi, diff) != 0:
                    out.append(Finding("l2", (i, j), "proportional beta with <beta, p(i)> != <beta, p(j)>"))
                continue
            r = find_r(bi, t[i].p, t[j].p)
            s = find_r(bj, t[j].p, t[i].p)
            if r is None:
                out.append(Finding("l3", (i, j), f"no r >= 0 with <beta({i}), r p({i}) + p({j})> = 0"))
            if s is None:
                out.append(Finding("l3", (j, i), f"no r >= 0 with <beta({j}), r p({j}) + p({i})> = 0"))
            if r is not None and s is not None and r >= 1 and s >= 1:
                out.append(Finding("l4", (i, j), f"minimal r = {r}, s = {s}; one of them must be 0"))
    g = build_gamma_type2([t[k] for k in live])
    for comp in strongly_connected_components(g):
        if len(comp) > 1:
            cycle = find_cycle_through(g, comp[0])
            out.append(Finding("l5", tuple(live[v] for v in cycle), "directed cycle in the pairing graph"))
    return out
