"""Finite loop-free digraphs with arc subdivision and cycle structure.

Vertices are 0..n-1; arcs are ordered (tail, head) pairs kept in a fixed list
so that an arc's position doubles as its identifier. All the searches in this
package run on bitmask adjacency, so the class precomputes in/out neighbor
masks lazily and keeps them cached (instances are treated as immutable).

Subdivision replaces an arc (u, v) by a path u -> w -> v through a fresh
vertex w. The `provenance` map remembers which original arc each such middle
vertex replaced, which later lets colored machinery and certificates point
back at the arc that was cut.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

Arc = tuple[int, int]


class Digraph:
    """A loop-free simple digraph with identified arcs."""

    __slots__ = ("n", "arcs", "provenance", "_cache")

    def __init__(self, n: int, arcs, provenance: dict[int, Arc] | None = None):
        arcs = [(int(u), int(v)) for (u, v) in arcs]
        if n < 0:
            raise InputError(f"vertex count must be >= 0, got {n}")
        seen = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"loop at vertex {u} not allowed")
            if (u, v) in seen:
                raise InputError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(arcs)
        prov = dict(provenance or {})
        for w in prov:
            if not (0 <= w < n):
                raise InputError(f"provenance vertex {w} out of range")
        self.provenance: dict[int, Arc] = prov
        self._cache: dict = {}
        for w in prov:
            if self.out_degree(w) != 1 or self.in_degree(w) != 1:
                raise InputError(
                    f"provenance vertex {w} must have in- and out-degree 1"
                )

    # -- derived adjacency ------------------------------------------------

    @property
    def out_mask(self) -> list[int]:
        masks = self._cache.get("out_mask")
        if masks is None:
            masks = [0] * self.n
            for u, v in self.arcs:
                masks[u] |= 1 << v
            self._cache["out_mask"] = masks
        return masks

    @property
    def in_mask(self) -> list[int]:
        masks = self._cache.get("in_mask")
        if masks is None:
            masks = [0] * self.n
            for u, v in self.arcs:
                masks[v] |= 1 << u
            self._cache["in_mask"] = masks
        return masks

    @property
    def out_nbrs(self) -> list[list[int]]:
        nbrs = self._cache.get("out_nbrs")
        if nbrs is None:
            nbrs = [[] for _ in range(self.n)]
            for u, v in self.arcs:
                nbrs[u].append(v)
            self._cache["out_nbrs"] = nbrs
        return nbrs

    @property
    def in_nbrs(self) -> list[list[int]]:
        nbrs = self._cache.get("in_nbrs")
        if nbrs is None:
            nbrs = [[] for _ in range(self.n)]
            for u, v in self.arcs:
                nbrs[v].append(u)
            self._cache["in_nbrs"] = nbrs
        return nbrs

    @property
    def arc_index(self) -> dict[Arc, int]:
        idx = self._cache.get("arc_index")
        if idx is None:
            idx = {a: i for i, a in enumerate(self.arcs)}
            self._cache["arc_index"] = idx
        return idx

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_index

    def out_degree(self, v: int) -> int:
        return len(self.out_nbrs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_nbrs[v])

    # -- misc -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"

    def induced(self, vertices) -> "InducedSubdigraph":
        """Induced subdigraph on `vertices`, with maps back to the host."""
        verts = sorted(set(int(v) for v in vertices))
        for v in verts:
            if not (0 <= v < self.n):
                raise InputError(f"vertex {v} out of range")
        new_id = {v: i for i, v in enumerate(verts)}
        sub_arcs = []
        arc_map = []
        for i, (u, v) in enumerate(self.arcs):
            if u in new_id and v in new_id:
                sub_arcs.append((new_id[u], new_id[v]))
                arc_map.append(i)
        sub = Digraph(len(verts), sub_arcs)
        return InducedSubdigraph(sub, tuple(verts), tuple(arc_map))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_dict(cls, obj: dict) -> "Digraph":
        try:
            n = int(obj["n"])
            arcs = [(int(u), int(v)) for u, v in obj["arcs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed digraph object: {exc}") from exc
        return cls(n, arcs)


@dataclass(frozen=True)
class InducedSubdigraph:
    """An induced subdigraph plus maps from its ids back to the host's."""

    digraph: Digraph
    vertices: tuple[int, ...]  # new vertex id -> original vertex id
    arc_ids: tuple[int, ...]  # new arc id -> original arc id


def subdivide(d: Digraph, arc_ids) -> Digraph:
    """Subdivide the given arcs, one fresh middle vertex per arc.

    Middle vertices are numbered d.n, d.n+1, ... in increasing arc-id order.
    The first half of a subdivided arc keeps the original arc's id slot, so
    untouched arcs keep their identifiers; second halves are appended after
    all original slots. Provenance entries for pre-existing middle vertices
    are carried over.
    """
    chosen = sorted(set(int(a) for a in arc_ids))
    for a in chosen:
        if not (0 <= a < len(d.arcs)):
            raise InputError(f"arc id {a} out of range")
    middle = {a: d.n + i for i, a in enumerate(chosen)}
    new_arcs = list(d.arcs)
    for a in chosen:
        u, v = d.arcs[a]
        new_arcs[a] = (u, middle[a])
    for a in chosen:
        _, v = d.arcs[a]
        new_arcs.append((middle[a], v))
    provenance = dict(d.provenance)
    for a in chosen:
        provenance[middle[a]] = d.arcs[a]
    return Digraph(d.n + len(chosen), new_arcs, provenance)


# -- strongly connected structure ------------------------------------------


@dataclass(frozen=True)
class SCCResult:
    """Components sorted by minimum member id, plus their condensation."""

    components: tuple[tuple[int, ...], ...]
    condensation: Digraph  # vertex i = components[i]
    terminal: tuple[bool, ...]  # no out-arcs in the condensation
    component_of: tuple[int, ...]  # vertex -> component index


def strongly_connected_components(d: Digraph) -> SCCResult:
    """Tarjan's algorithm, iterative to dodge recursion limits."""
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    out = d.out_nbrs
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(out[v])):
                w = out[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comps.sort(key=lambda c: c[0])
    comp_of = [0] * n
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    cond_arcs = sorted(
        {
            (comp_of[u], comp_of[v])
            for u, v in d.arcs
            if comp_of[u] != comp_of[v]
        }
    )
    condensation = Digraph(len(comps), cond_arcs)
    terminal = tuple(condensation.out_degree(i) == 0 for i in range(len(comps)))
    return SCCResult(
        components=tuple(tuple(c) for c in comps),
        condensation=condensation,
        terminal=terminal,
        component_of=tuple(comp_of),
    )


def has_odd_directed_cycle(d: Digraph) -> bool:
    """True iff some directed cycle has odd length.

    A strongly connected digraph has an odd directed cycle exactly when the
    underlying graph of its arcs is non-bipartite, so we two-color each
    component and look for a parity clash.
    """
    scc = strongly_connected_components(d)
    color = [-1] * d.n
    for comp in scc.components:
        if len(comp) == 1:
            continue
        comp_set = set(comp)
        nbrs: dict[int, list[int]] = {v: [] for v in comp}
        for u, v in d.arcs:
            if u in comp_set and v in comp_set:
                nbrs[u].append(v)
                nbrs[v].append(u)
        root = comp[0]
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for w in nbrs[v]:
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return True
    return False


# -- chordless cycles -------------------------------------------------------


def chordless_directed_cycles(d: Digraph) -> list[tuple[int, ...]]:
    """All induced directed cycles (length >= 2), canonically ordered.

    A cycle qualifies when D has no arc between two of its vertices besides
    the cycle's own arcs. Each cycle is reported once, rotated so its minimum
    vertex comes first, and the list is sorted lexicographically.
    """
    out_mask = d.out_mask
    in_mask = d.in_mask
    cycles: list[tuple[int, ...]] = []

    def extend(start: int, path: list[int], path_mask: int):
        last = path[-1]
        for x in d.out_nbrs[last]:
            if x < start or (path_mask >> x) & 1:
                continue
            b_in = in_mask[x] & path_mask
            b_out = out_mask[x] & path_mask
            if b_in != (1 << last):
                continue  # a second arc into x from the path is a chord
            if b_out == 0:
                extend(start, path + [x], path_mask | (1 << x))
            elif b_out == (1 << start):
                cycles.append(tuple(path + [x]))
            # any other arc from x back into the path would be a chord

    for s in range(d.n):
        extend(s, [s], 1 << s)
    cycles.sort()
    return cycles


@dataclass(frozen=True)
class UnderlyingCycle:
    """A chordless cycle of the underlying simple graph, with orientation tag.

    kind is "directed-odd" / "directed-even" when the arcs traverse the cycle
    consistently in some direction, else "undirected". The vertex tuple starts
    at the cycle's minimum vertex; for tag "undirected" the direction is the
    lexicographically smaller of the two traversals, for directed tags the
    traversal follows the arcs.
    """

    vertices: tuple[int, ...]
    kind: str

    @property
    def length(self) -> int:
        return len(self.vertices)


def _underlying_adjacency(d: Digraph) -> list[int]:
    adj = [0] * d.n
    for u, v in d.arcs:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def chordless_cycles_underlying(d: Digraph) -> list[UnderlyingCycle]:
    """Chordless cycles (length >= 3) of the underlying simple graph.

    Antiparallel arc pairs collapse to one undirected edge and are not
    reported as 2-cycles. Enumeration: induced paths grown from each cycle's
    minimum vertex, second vertex smaller than the closing vertex so each
    cycle appears in a single traversal direction.
    """
    adj = _underlying_adjacency(d)
    found: list[tuple[int, ...]] = []

    def grow(start: int, path: list[int], path_mask: int):
        last = path[-1]
        x = adj[last]
        while x:
            w = (x & -x).bit_length() - 1
            x &= x - 1
            if w <= start or (path_mask >> w) & 1:
                continue
            inner = adj[w] & path_mask & ~(1 << last) & ~(1 << start)
            if inner:
                continue  # chord back into the path interior
            if len(path) >= 2 and (adj[w] >> start) & 1:
                if w > path[1]:  # canonical direction: second < last
                    found.append(tuple(path + [w]))
                continue  # extending past a closing vertex would chord
            grow(start, path + [w], path_mask | (1 << w))

    for s in range(d.n):
        grow(s, [s], 1 << s)

    out_mask = d.out_mask
    result = []
    for verts in found:
        k = len(verts)
        fwd = all(
            (out_mask[verts[i]] >> verts[(i + 1) % k]) & 1 for i in range(k)
        )
        bwd = all(
            (out_mask[verts[(i + 1) % k]] >> verts[i]) & 1 for i in range(k)
        )
        if fwd or bwd:
            seq = verts if fwd else (verts[0],) + tuple(reversed(verts[1:]))
            kind = "directed-odd" if k % 2 else "directed-even"
            result.append(UnderlyingCycle(seq, kind))
        else:
            # enumeration already emits the lex-smaller traversal direction
            result.append(UnderlyingCycle(verts, "undirected"))
    result.sort(key=lambda c: c.vertices)
    return result


# -- blocks ------------------------------------------------------------------


def blocks(d: Digraph) -> list[InducedSubdigraph]:
    """Biconnected components of the underlying graph, as induced subdigraphs.

    Bridges come back as 2-vertex blocks and isolated vertices as singletons.
    Any arc whose endpoints both lie in a block belongs to it, so induced
    subdigraphs capture blocks exactly. Ordered by (min vertex, size).
    """
    nbr_sets: list[set[int]] = [set() for _ in range(d.n)]
    for u, v in d.arcs:
        nbr_sets[u].add(v)
        nbr_sets[v].add(u)
    adj = [sorted(s) for s in nbr_sets]

    visited = [False] * d.n
    depth = [0] * d.n
    low = [0] * d.n
    vertex_blocks: list[set[int]] = []
    edge_stack: list[tuple[int, int]] = []

    for root in range(d.n):
        if visited[root]:
            continue
        if not adj[root]:
            vertex_blocks.append({root})
            visited[root] = True
            continue
        work: list[tuple[int, int, int]] = [(root, -1, 0)]
        visited[root] = True
        while work:
            v, parent, pi = work.pop()
            if pi < len(adj[v]):
                work.append((v, parent, pi + 1))
                w = adj[v][pi]
                if not visited[w]:
                    edge_stack.append((v, w))
                    visited[w] = True
                    depth[w] = depth[v] + 1
                    low[w] = depth[w]
                    work.append((w, v, 0))
                elif w != parent and depth[w] < depth[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], depth[w])
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= depth[parent]:
                        comp: set[int] = set()
                        while True:
                            e = edge_stack.pop()
                            comp.update(e)
                            if e == (parent, v):
                                break
                        vertex_blocks.append(comp)

    vertex_blocks.sort(key=lambda c: (min(c), len(c)))
    return [d.induced(c) for c in vertex_blocks]


# -- DOT export ---------------------------------------------------------------

_DOT_PALETTE = (
    "black",
    "crimson",
    "royalblue",
    "forestgreen",
    "darkorange",
    "purple",
    "teal",
    "saddlebrown",
)


def to_dot(d: Digraph, colors=None, name: str = "D") -> str:
    """Render as Graphviz DOT. Middle (subdivision) vertices draw as squares;
    arc colors, when given, map into a fixed palette modulo its size."""
    lines = [f"digraph {name} {{"]
    for v in range(d.n):
        if v in d.provenance:
            lines.append(f'  {v} [shape=square, width=0.18, label="{v}"];')
        else:
            lines.append(f'  {v} [shape=circle, label="{v}"];')
    for i, (u, v) in enumerate(d.arcs):
        if colors is not None:
            c = _DOT_PALETTE[colors[i] % len(_DOT_PALETTE)]
            lines.append(f'  {u} -> {v} [color="{c}", label="{colors[i]}"];')
        else:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
