"""The constructive cycle-count upper bound and the bound report.

The chordless cycles of a digraph (directed and undirected alike) form a
graph of their own: one vertex per cycle, an edge when two cycles share an
underlying edge. Coloring odd directed cycles 1, even directed cycles 2 and
undirected cycles 0, every color-1 vertex gets a shortest path through
color-2 interiors to a color-1-or-0 endpoint (or, isolated from such ends,
one arc of its own cycle). Subdividing the digraph arcs under those paths'
edges breaks the parity of every odd chordless cycle while touching even
chordless cycles an even number of times, at a total cost of at most one
arc per directed chordless cycle.

The construction works block by block (cycles never cross cut vertices).
Its output is validated rather than trusted: if odd directed cycles survive
the subdivision the instance is escalated to exact search, and if even that
finds no kernel the instance is recorded as an evidence event.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .digraph import (
    Digraph,
    blocks,
    chordless_cycles_underlying,
    chordless_directed_cycles,
    has_odd_directed_cycle,
    subdivide,
)
from .errors import BudgetExhausted
from .kernels import as_budget, find_kernel, kappa, lower_bound_terminal_scc
from .mono import emit


@dataclass(frozen=True)
class CycleVertex:
    """One chordless cycle: its vertices in order, orientation kind, the
    bound construction's color, and its underlying edge set."""

    vertices: tuple[int, ...]
    kind: str  # "directed-odd" | "directed-even" | "undirected"
    color: int  # 1 odd directed, 2 even directed, 0 undirected
    edges: frozenset = field(hash=False)

    @property
    def directed(self) -> bool:
        return self.color != 0


@dataclass(frozen=True)
class CycleGraph:
    """The cycle-sharing graph of one digraph (or block): cycles as
    vertices, adjacency by shared underlying edge."""

    cycles: tuple[CycleVertex, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def shared_edges(self, i: int, j: int) -> frozenset:
        return self.cycles[i].edges & self.cycles[j].edges


def _cycle_edges(vertices: tuple[int, ...]) -> frozenset:
    n = len(vertices)
    return frozenset(
        frozenset((vertices[t], vertices[(t + 1) % n])) for t in range(n)
    )


def build_cycle_graph(d: Digraph) -> CycleGraph:
    """All chordless cycles of D with the bound's coloring. Directed cycles
    (two-arc ones included) come from the induced-directed enumeration;
    undirected chordless cycles from the underlying one."""
    cycles: list[CycleVertex] = []
    for cyc in chordless_directed_cycles(d):
        color = 1 if len(cyc) % 2 == 1 else 2
        kind = "directed-odd" if color == 1 else "directed-even"
        cycles.append(CycleVertex(cyc, kind, color, _cycle_edges(cyc)))
    for und in chordless_cycles_underlying(d):
        if und.kind == "undirected":
            cycles.append(
                CycleVertex(und.vertices, "undirected", 0, _cycle_edges(und.vertices))
            )
    adjacency = tuple(
        tuple(
            j
            for j in range(len(cycles))
            if j != i and cycles[i].edges & cycles[j].edges
        )
        for i in range(len(cycles))
    )
    return CycleGraph(tuple(cycles), adjacency)


def _gamma_path(cg: CycleGraph, v: int) -> tuple[tuple[int, int], ...] | None:
    """Shortest path (as cycle-graph edges) from the color-1 vertex v to a
    color-1-or-0 endpoint through color-2 interiors; None if no such path."""
    parent = {v: None}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in cg.adjacency[u]:
            if w in parent:
                continue
            parent[w] = u
            if cg.cycles[w].color in (0, 1):
                edges = []
                node = w
                while parent[node] is not None:
                    edges.append((parent[node], node))
                    node = parent[node]
                return tuple(reversed(edges))
            queue.append(w)
    return None


def _own_arc_on_edge(d: Digraph, cyc: CycleVertex, edge: frozenset) -> int | None:
    """The arc id the (directed) cycle itself uses on the given underlying
    edge, following the cycle's orientation; None for undirected cycles."""
    if not cyc.directed:
        return None
    order = cyc.vertices
    n = len(order)
    for t in range(n):
        a, b = order[t], order[(t + 1) % n]
        if frozenset((a, b)) == edge:
            return d.arc_index[(a, b)]
    return None


def _smallest_cycle_arc(d: Digraph, cyc: CycleVertex) -> int:
    order = cyc.vertices
    n = len(order)
    return min(d.arc_index[(order[t], order[(t + 1) % n])] for t in range(n))


def _arcs_for_cycle_graph_edge(d: Digraph, cg: CycleGraph, i: int, j: int) -> set[int]:
    """Arc ids to subdivide for one cycle-graph edge: on the smallest shared
    underlying edge, each directed endpoint cycle's own arc. Antiparallel
    traversals therefore subdivide both arcs of the pair, so each cycle's
    parity changes; undirected endpoints impose no orientation."""
    shared = cg.shared_edges(i, j)
    edge = min(shared, key=sorted)
    arcs = set()
    for c in (cg.cycles[i], cg.cycles[j]):
        own = _own_arc_on_edge(d, c, edge)
        if own is not None:
            arcs.add(own)
    if not arcs:
        u, v = sorted(edge)
        idx = d.arc_index
        arcs.add(min(idx[a] for a in ((u, v), (v, u)) if a in idx))
    return arcs


def cycle_bound_subdivision_set(d: Digraph, events=None) -> tuple[int, ...]:
    """Arc ids whose subdivision the cycle-count bound prescribes.

    Per block: one shortest qualifying path per odd directed chordless
    cycle (deduplicated, so one path may serve both of its endpoints),
    degenerate single own-arc choice for odd cycles with no qualifying
    path; the arcs under all chosen path edges, mapped back to the host
    digraph. If odd directed cycles survive the subdivision, the instance
    is escalated to exact kernel search and recorded; a failed search is
    recorded as a potential counterexample.
    """
    chosen: set[int] = set()
    for block in blocks(d):
        bd = block.digraph
        if len(bd.arcs) == 0:
            continue
        cg = build_cycle_graph(bd)
        gamma: set[tuple[tuple[int, int], ...]] = set()
        for i, cyc in enumerate(cg.cycles):
            if cyc.color != 1:
                continue
            path = _gamma_path(cg, i)
            if path is None:
                chosen.add(block.arc_ids[_smallest_cycle_arc(bd, cyc)])
                continue
            # one path may serve both of its color-1 endpoints
            canon = min(path, tuple((b, a) for (a, b) in reversed(path)))
            gamma.add(canon)
        for path in sorted(gamma):
            for (i, j) in path:
                for local in _arcs_for_cycle_graph_edge(bd, cg, i, j):
                    chosen.add(block.arc_ids[local])
    lam = tuple(sorted(chosen))
    sub = subdivide(d, lam)
    if has_odd_directed_cycle(sub):
        emit(
            events,
            "cycle-bound-escalation",
            instance=d.to_dict(),
            subdivided=list(lam),
        )
        if find_kernel(sub) is None:
            emit(
                events,
                "cycle-bound-construction-invalid",
                instance=d.to_dict(),
                subdivided=list(lam),
            )
    return lam


def bound_report(d: Digraph, budget=None, events=None) -> dict:
    """Bracket the subdivision number from both sides: the terminal-
    component lower bound, the exact value when the budget allows, the
    chordless directed cycle count, and the constructive set's size with
    its validation flag. A broken inequality among the upper bounds is
    recorded as an evidence event; only lower ≤ exact, which is solver
    soundness, is a hard assertion."""
    budget = as_budget(budget)
    lower = lower_bound_terminal_scc(d, budget)
    try:
        exact = kappa(d, budget).kappa
    except BudgetExhausted:
        exact = None
    cic = len(chordless_directed_cycles(d))
    lam = cycle_bound_subdivision_set(d, events)
    valid = find_kernel(subdivide(d, lam)) is not None
    if exact is not None:
        assert lower <= exact, "terminal-component bound exceeds the exact value"
        if valid and exact > len(lam):
            emit(
                events,
                "bound-inequality-violation",
                pair="exact>constructive",
                instance=d.to_dict(),
                exact=exact,
                constructive=len(lam),
            )
    if len(lam) > cic:
        emit(
            events,
            "bound-inequality-violation",
            pair="constructive>cic",
            instance=d.to_dict(),
            constructive=len(lam),
            cic=cic,
        )
    return {
        "lower": lower,
        "exact": exact,
        "cic": cic,
        "constructive": len(lam),
        "constructive_valid": valid,
    }
