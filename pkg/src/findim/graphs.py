"""Directed graphs attached to finite sets of homogeneous derivations.

Three graphs are built here:

* ``build_gamma_type1``: on type I generators x^{a(s)} d_{i(s)}; edge s -> j iff
  the i(s)-th exponent of a(j) is positive.
* ``build_gamma_type2``: on type II generators; edge i -> j iff beta(i), beta(j)
  are not proportional and <beta(i), p(j)> != 0.
* ``build_variable_graph``: on the variables; edge s -> j iff some generator
  x^a d_j has a_s > 0.

Vertices are 0-based; DOT output numbers them from 1.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from .algebra import as_type1, as_type2, pairing, proportional

Edge = Tuple[int, int]


@dataclass(frozen=True)
class DiGraph:
    vertex_count: int
    edges: FrozenSet[Edge] = frozenset()
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("one label per vertex required")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    def successors(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in sorted(self.edges):
            out[u].append(v)
        return out

    def relabeled(self, perm: Sequence[int]) -> "DiGraph":
        """The graph with vertex v renamed to perm[v]."""
        return DiGraph(self.vertex_count, frozenset((perm[u], perm[v]) for u, v in self.edges))


def build_gamma_type1(gens: Sequence, labels: Optional[Sequence[str]] = None) -> DiGraph:
    t = [as_type1(g) for g in gens]
    edges = {(s, j) for s in range(len(t)) for j in range(len(t)) if t[j].a[t[s].i] > 0}
    return DiGraph(len(t), frozenset(edges), tuple(labels) if labels else None)


def build_gamma_type2(gens: Sequence, labels: Optional[Sequence[str]] = None) -> DiGraph:
    t = [as_type2(g) for g in gens]
    edges = set()
    for i, gi in enumerate(t):
        for j, gj in enumerate(t):
            if i != j and not proportional(gi.beta, gj.beta) and pairing(gi.beta, gj.p) != 0:
                edges.add((i, j))
    return DiGraph(len(t), frozenset(edges), tuple(labels) if labels else None)


def build_variable_graph(gens: Sequence, n: Optional[int] = None) -> DiGraph:
    t = [as_type1(g) for g in gens]
    if n is None:
        if not t:
            raise ValueError("ambient dimension required for an empty generator set")
        n = len(t[0].a)
    edges = {(s, g.i) for g in t for s in range(n) if g.a[s] > 0}
    return DiGraph(n, frozenset(edges))


def strongly_connected_components(g: DiGraph) -> List[List[int]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    succ = g.successors()
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0
    for root in range(g.vertex_count):
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, k = work[-1]
            if k < len(succ[v]):
                work[-1] = (v, k + 1)
                w = succ[v][k]
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def cycle_vertices(g: DiGraph) -> FrozenSet[int]:
    out: Set[int] = {u for u, v in g.edges if u == v}
    for comp in strongly_connected_components(g):
        if len(comp) > 1:
            out.update(comp)
    return frozenset(out)


def find_cycle_through(g: DiGraph, v: int) -> Optional[List[int]]:
    """Shortest directed cycle through ``v`` as [v, ..., v], or None."""
    succ = g.successors()
    prev: Dict[int, int] = {}
    queue = deque([v])
    seen = {v}
    while queue:
        u = queue.popleft()
        for w in succ[u]:
            if w == v:
                path = [u]
                while path[-1] != v:
                    path.append(prev[path[-1]])
                return path[::-1] + [v]
            if w not in seen:
                seen.add(w)
                prev[w] = u
                queue.append(w)
    return None


@dataclass(frozen=True)
class Ordering:
    order: Tuple[int, ...]


@dataclass(frozen=True)
class CycleWitness:
    cycle: Tuple[int, ...]


def topological_order(g: DiGraph) -> Union[Ordering, CycleWitness]:
    """Kahn's algorithm, always releasing the smallest available vertex first."""
    succ = g.successors()
    indeg = [0] * g.vertex_count
    for _, v in g.edges:
        indeg[v] += 1
    heap = [v for v in range(g.vertex_count) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for w in succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == g.vertex_count:
        return Ordering(tuple(order))
    start = min(cycle_vertices(g))
    return CycleWitness(tuple(find_cycle_through(g, start)))


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: DiGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.vertex_count):
        if g.labels is not None:
            lines.append(f"  {v + 1} [label={_dot_id(g.labels[v])}];")
        else:
            lines.append(f"  {v + 1};")
    for u, v in sorted(g.edges):
        lines.append(f"  {u + 1} -> {v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
