"""Kernels by monochromatic paths: the loop-pattern specialization.

When every arc of the pattern is a loop, admissible walks are exactly the
monochromatic walks, so independence and absorption are phrased through
single-color paths. This module covers the structures with closed-form or
constructive answers in that setting: directed cycles, digraphs with one
underlying cycle, theta shapes (a directed cycle plus a directed chord
path), and split-root products of a tree with a family of pieces.

Constructions are proof-shaped but never trusted blind: every candidate set
is revalidated against the walk checkers, and when a construction does not
hold for an instance the code falls back to exact search and records an
evidence event, so closed-form failures surface as data instead of wrong
answers.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .digraph import Digraph
from .errors import ContractError, InputError, TheoremViolation
from .kernels import KappaResult, KernelCertificate, as_budget
from .hcolored import (
    ColoredDigraph,
    PatternDigraph,
    find_h_kernel,
    h_certificate,
    h_reachability,
    induced_colored,
    subdivide_colored,
)


def emit(events, kind: str, **data) -> None:
    """Append an evidence record to an optional event sink."""
    if events is not None:
        events.append({"kind": kind, **data})


@dataclass(frozen=True)
class LoopPattern:
    """The pattern whose arcs are exactly the loops: one per color."""

    m: int

    def pattern(self) -> PatternDigraph:
        return PatternDigraph.all_loops(self.m)


def is_loop_pattern(pattern: PatternDigraph) -> bool:
    return pattern.arcs == frozenset((c, c) for c in range(pattern.m))


def ensure_loop_pattern(cd: ColoredDigraph) -> None:
    if not is_loop_pattern(cd.pattern):
        raise InputError(
            "operation requires the loop pattern (every color's loop, nothing else)"
        )


def is_heterochromatic(cd: ColoredDigraph) -> bool:
    """All arc colors pairwise distinct."""
    return len(set(cd.colors)) == len(cd.colors)


# -- monochromatic neighborhoods ------------------------------------------


def _color_reach(cd: ColoredDigraph, sources, forward: bool, active=None) -> set:
    """Vertices connected to `sources` by a monochromatic path, following
    arcs forward or backward, optionally restricted to an active set."""
    if active is None:
        active = range(cd.base.n)
    active = set(active)
    idx = cd.base.arc_index
    step = cd.base.out_nbrs if forward else cd.base.in_nbrs
    found: set[int] = set()
    sources = [int(v) for v in sources]
    for s in sources:
        for c in range(cd.pattern.m):
            queue = deque([s])
            seen = {s}
            while queue:
                v = queue.popleft()
                for w in step[v]:
                    arc = (v, w) if forward else (w, v)
                    if w in seen or w not in active or cd.colors[idx[arc]] != c:
                        continue
                    seen.add(w)
                    found.add(w)
                    queue.append(w)
    return found - set(sources)


def color_out_neighborhood(cd: ColoredDigraph, vertices, closed: bool = False) -> set:
    """Vertices reachable from `vertices` by a monochromatic path.
    `vertices` may be a single vertex or an iterable; `closed` adds the
    sources themselves."""
    sources = [vertices] if isinstance(vertices, int) else list(vertices)
    out = _color_reach(cd, sources, forward=True)
    return out | set(sources) if closed else out


def color_in_neighborhood(cd: ColoredDigraph, vertices, closed: bool = False) -> set:
    """Vertices with a monochromatic path into `vertices`."""
    sources = [vertices] if isinstance(vertices, int) else list(vertices)
    out = _color_reach(cd, sources, forward=False)
    return out | set(sources) if closed else out


# -- directed cycles --------------------------------------------------------


def directed_cycle_order(d: Digraph) -> tuple[int, ...]:
    """Vertices of a directed cycle in arc order starting from vertex 0;
    raises InputError if D is not a single directed cycle."""
    if d.n < 2:
        raise InputError("a directed cycle needs at least 2 vertices")
    for v in range(d.n):
        if len(d.out_nbrs[v]) != 1 or len(d.in_nbrs[v]) != 1:
            raise InputError(f"vertex {v} does not have in- and out-degree 1")
    order = [0]
    v = d.out_nbrs[0][0]
    while v != 0:
        order.append(v)
        v = d.out_nbrs[v][0]
    if len(order) != d.n:
        raise InputError("digraph is a union of several cycles, not one")
    return tuple(order)


def _cycle_runs(colors: list[int]) -> list[tuple[int, int]]:
    """Maximal blocks of cyclically consecutive equal colors, as
    (start index, length) pairs; a single block means one color overall."""
    n = len(colors)
    if len(set(colors)) == 1:
        return [(0, n)]
    start = next(i for i in range(n) if colors[i] != colors[i - 1])
    runs = []
    i = start
    while True:
        j = i
        length = 1
        while colors[(j + 1) % n] == colors[j % n]:
            j += 1
            length += 1
        runs.append((i % n, length))
        i = j + 1
        if i % n == start:
            break
    return runs


def colored_cycle_h_kernel(cd: ColoredDigraph, events=None) -> KernelCertificate | None:
    """Kernel by monochromatic paths of a colored directed cycle.

    One maximal same-color block of two or more arcs (everything else
    properly colored): take every second vertex walking backward from the
    vertex just before the block, stopping at the block's far end or one
    vertex earlier, whichever parity allows. A single color overall: any one
    vertex. Otherwise fall back to exact search, which finds the alternating
    set on properly colored even cycles and correctly reports none on
    properly colored odd ones. Constructed sets are revalidated; on failure
    the instance is flagged and the search answer wins.
    """
    ensure_loop_pattern(cd)
    order = directed_cycle_order(cd.base)
    n = cd.base.n
    idx = cd.base.arc_index
    colors = [cd.colors[idx[(order[i], order[(i + 1) % n])]] for i in range(n)]
    runs = _cycle_runs(colors)
    long_runs = [r for r in runs if r[1] >= 2]
    if len(runs) > 1 and len(long_runs) == 1:
        start, length = long_runs[0]
        # label x_1..x_n so arcs (x_1,x_2)..(x_{k-1},x_k) are the block
        k = length + 1
        j = k - 1 if (n - k) % 2 == 1 else k
        members = [order[(start + t - 1) % n] for t in range(j, n + 1, 2)]
        cert = h_certificate(cd, members)
        if cert is not None:
            return cert
        emit(
            events,
            "cycle-construction-invalid",
            instance=cd.to_dict(),
            candidate=sorted(members),
        )
    cert = find_h_kernel(cd)
    if cert is None and any(r[1] >= 2 for r in runs):
        emit(events, "cycle-existence-violation", instance=cd.to_dict())
    return cert


# -- theta shapes -----------------------------------------------------------


def theta_parts(d: Digraph) -> tuple[int, int, tuple, tuple, tuple]:
    """Decompose a theta shape: two vertices joined by three internally
    disjoint directed paths, two running x to y and one y to x (a directed
    cycle plus a directed chord path). Returns (x, y, first x-to-y path,
    second x-to-y path, y-to-x path) as vertex sequences; raises InputError
    if D is not of this shape."""
    fork = [v for v in range(d.n) if len(d.out_nbrs[v]) == 2 and len(d.in_nbrs[v]) == 1]
    meet = [v for v in range(d.n) if len(d.in_nbrs[v]) == 2 and len(d.out_nbrs[v]) == 1]
    plain = [
        v for v in range(d.n) if len(d.out_nbrs[v]) == 1 and len(d.in_nbrs[v]) == 1
    ]
    if len(fork) != 1 or len(meet) != 1 or len(plain) != d.n - 2:
        raise InputError("degrees do not match a cycle with a directed chord path")
    x, y = fork[0], meet[0]

    def follow(start: int, stop: int) -> tuple[int, ...]:
        path = [x, start]
        v = start
        while v != stop:
            if v in (x, y) or len(path) > d.n + 1:
                raise InputError("paths do not run between the two branch vertices")
            v = d.out_nbrs[v][0]
            path.append(v)
        return tuple(path)

    a = follow(d.out_nbrs[x][0], y)
    b = follow(d.out_nbrs[x][1], y)
    back = [y]
    v = d.out_nbrs[y][0]
    while v != x:
        back.append(v)
        if len(back) > d.n + 1:
            raise InputError("the return path does not close at the branch vertex")
        v = d.out_nbrs[v][0]
    back.append(x)
    seen = set(a) | set(b) | set(back)
    interior_overlap = (set(a) & set(b)) - {x, y}
    if len(seen) != d.n or interior_overlap:
        raise InputError("the three paths are not internally disjoint or miss vertices")
    return x, y, a, b, tuple(back)


def theta_h_kappa(cd: ColoredDigraph, budget=None, events=None) -> KappaResult:
    """Minimum subdivisions for a theta shape to gain a kernel by
    monochromatic paths: zero or one, with a subdivision witness. A shape
    needing more would contradict the stated bound, so that outcome raises
    with the serialized instance as payload."""
    ensure_loop_pattern(cd)
    theta_parts(cd.base)
    budget = as_budget(budget)
    cert = find_h_kernel(cd, budget)
    if cert is not None:
        return KappaResult(
            kappa=0, witness=(), kernel=cert, subdivided=cd.base, mode="h-walks"
        )
    for aid in range(len(cd.base.arcs)):
        budget.spend()
        sub = subdivide_colored(cd, (aid,))
        cert = find_h_kernel(sub, budget)
        if cert is not None:
            return KappaResult(
                kappa=1,
                witness=(aid,),
                kernel=cert,
                subdivided=sub.base,
                mode="h-walks",
            )
    emit(events, "theta-bound-violation", instance=cd.to_dict())
    raise TheoremViolation(
        "theta shape admits no kernel by monochromatic paths after any single subdivision",
        payload={"instance": cd.to_dict()},
    )


# -- split-root products ------------------------------------------------------


@dataclass(frozen=True)
class SplitRootSpec:
    """A tree orientation, distinguished vertices to split, one colored
    piece per distinguished vertex, and for each an attachment row mapping
    that vertex's incident tree arcs (in arc-id order) to piece vertices.

    Tree arcs keep their own colors (`tree_colors`, default all zero).
    """

    tree: Digraph
    distinguished: tuple[int, ...]
    pieces: tuple[ColoredDigraph, ...]
    attachments: tuple[tuple[int, ...], ...]
    tree_colors: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.tree
        und = {frozenset(a) for a in t.arcs}
        if len(und) != len(t.arcs):
            raise InputError("tree orientation contains a two-arc cycle")
        if len(und) != t.n - 1:
            raise InputError(f"{len(und)} underlying edges on {t.n} vertices is not a tree")
        parent = list(range(t.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in t.arcs:
            parent[find(u)] = find(v)
        if len({find(v) for v in range(t.n)}) != 1:
            raise InputError("tree orientation is not connected")
        if len(set(self.distinguished)) != len(self.distinguished):
            raise InputError("distinguished vertices repeat")
        if not (len(self.distinguished) == len(self.pieces) == len(self.attachments)):
            raise InputError("distinguished, pieces and attachments differ in length")
        if self.pieces:
            first = self.pieces[0].pattern
            for p in self.pieces[1:]:
                if p.pattern != first:
                    raise InputError("pieces use different patterns")
        colors = self.tree_colors or (0,) * len(t.arcs)
        if len(colors) != len(t.arcs):
            raise InputError("one color per tree arc required")
        for i, v in enumerate(self.distinguished):
            if not (0 <= v < t.n):
                raise InputError(f"distinguished vertex {v} out of range")
            slots = self.incident_arcs(v)
            row = self.attachments[i]
            if len(row) != len(slots):
                raise InputError(
                    f"vertex {v} has {len(slots)} incident tree arcs but {len(row)} attachments"
                )
            if len(set(row)) != len(row):
                raise InputError(f"attachment row for vertex {v} repeats a piece vertex")
            for w in row:
                if not (0 <= w < self.pieces[i].base.n):
                    raise InputError(f"attachment vertex {w} outside piece {i}")

    def incident_arcs(self, v: int) -> tuple[int, ...]:
        return tuple(
            aid for aid, (a, b) in enumerate(self.tree.arcs) if v in (a, b)
        )

    @property
    def pattern(self) -> PatternDigraph:
        if self.pieces:
            return self.pieces[0].pattern
        return PatternDigraph.all_loops(max(self.tree_colors, default=0) + 1)

    def to_dict(self) -> dict:
        return {
            "tree": self.tree.to_dict(),
            "distinguished": list(self.distinguished),
            "pieces": [p.to_dict() for p in self.pieces],
            "attachments": [list(r) for r in self.attachments],
            "tree_colors": list(self.tree_colors or (0,) * len(self.tree.arcs)),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "SplitRootSpec":
        return cls(
            tree=Digraph.from_dict(obj["tree"]),
            distinguished=tuple(int(v) for v in obj["distinguished"]),
            pieces=tuple(ColoredDigraph.from_dict(p) for p in obj["pieces"]),
            attachments=tuple(tuple(int(w) for w in r) for r in obj["attachments"]),
            tree_colors=tuple(int(c) for c in obj.get("tree_colors", [])),
        )


@dataclass(frozen=True)
class _Assembly:
    colored: ColoredDigraph
    piece_vertex_offset: tuple[int, ...]
    piece_arc_offset: tuple[int, ...]
    plain_of: dict  # non-distinguished tree vertex -> product vertex
    piece_vertices: tuple[frozenset, ...]


def _assemble(spec: SplitRootSpec) -> _Assembly:
    v_off, a_off = [], []
    nv = na = 0
    for p in spec.pieces:
        v_off.append(nv)
        a_off.append(na)
        nv += p.base.n
        na += len(p.base.arcs)
    dset = set(spec.distinguished)
    plain_of = {}
    for v in range(spec.tree.n):
        if v not in dset:
            plain_of[v] = nv
            nv += 1
    where = {v: i for i, v in enumerate(spec.distinguished)}

    def endpoint(v: int, arc_id: int) -> int:
        if v in plain_of:
            return plain_of[v]
        i = where[v]
        slot = spec.incident_arcs(v).index(arc_id)
        return v_off[i] + spec.attachments[i][slot]

    arcs: list[tuple[int, int]] = []
    colors: list[int] = []
    for i, p in enumerate(spec.pieces):
        arcs.extend((v_off[i] + u, v_off[i] + w) for u, w in p.base.arcs)
        colors.extend(p.colors)
    tree_colors = spec.tree_colors or (0,) * len(spec.tree.arcs)
    for aid, (u, w) in enumerate(spec.tree.arcs):
        arcs.append((endpoint(u, aid), endpoint(w, aid)))
        colors.append(tree_colors[aid])
    cd = ColoredDigraph(Digraph(nv, arcs), tuple(colors), spec.pattern)
    piece_vertices = tuple(
        frozenset(range(v_off[i], v_off[i] + p.base.n))
        for i, p in enumerate(spec.pieces)
    )
    return _Assembly(cd, tuple(v_off), tuple(a_off), plain_of, piece_vertices)


def split_root_build(spec: SplitRootSpec) -> ColoredDigraph:
    """Glue the pieces onto the split tree: piece vertices first (piece
    order), then the surviving plain tree vertices; piece arcs first, then
    tree arcs rerouted to the attachment vertices."""
    return _assemble(spec).colored


def split_root_h_kernel(
    spec: SplitRootSpec, piece_results=None, budget=None, events=None
) -> tuple[tuple[int, ...], KernelCertificate]:
    """Subdivide each piece by its own witness and assemble a kernel by
    monochromatic paths of the glued product, peeling the way the bound's
    argument does: a piece receiving no outside arcs contributes its kernel
    and everything absorbed into it goes away; otherwise current sinks join
    and their color in-neighborhoods go away. The peel's candidate is
    revalidated; if it fails, exact search on the same subdivision takes
    over, and if even that lacks a kernel, other subdivision sets within the
    same size budget are swept before declaring the bound violated.

    piece_results: per piece, (arc ids to subdivide, members of a kernel of
    the subdivided piece). Computed via the sweeping solver when omitted.
    """
    from .hcolored import h_kappa  # local import to keep module load light

    asm = _assemble(spec)
    product = asm.colored
    budget = as_budget(budget)
    if piece_results is None:
        piece_results = []
        for p in spec.pieces:
            res = h_kappa(p, budget)
            piece_results.append((res.witness, res.kernel.members))
    if len(piece_results) != len(spec.pieces):
        raise InputError("one (arcs, members) pair per piece required")

    lam_global: list[int] = []
    for i, (lam_i, members_i) in enumerate(piece_results):
        lam_i = tuple(sorted(set(int(a) for a in lam_i)))
        sub_i = subdivide_colored(spec.pieces[i], lam_i)
        if h_certificate(sub_i, members_i) is None:
            raise InputError(f"piece {i}: members are not a kernel of the subdivided piece")
        lam_global.extend(asm.piece_arc_offset[i] + a for a in lam_i)
    lam_global = sorted(lam_global)
    p_sub = subdivide_colored(product, lam_global)
    mid_global = {aid: product.base.n + t for t, aid in enumerate(lam_global)}

    # piece vertex sets inside the subdivided product, middles included
    piece_sets = []
    member_sets = []
    for i, (lam_i, members_i) in enumerate(piece_results):
        lam_i = sorted(set(int(a) for a in lam_i))
        verts = set(asm.piece_vertices[i])
        local_mid = {}
        for t, a in enumerate(lam_i):
            g = mid_global[asm.piece_arc_offset[i] + a]
            verts.add(g)
            local_mid[spec.pieces[i].base.n + t] = g
        piece_sets.append(verts)
        member_sets.append(
            {
                local_mid[v] if v in local_mid else asm.piece_vertex_offset[i] + v
                for v in members_i
            }
        )

    active = set(range(p_sub.base.n))
    candidate: set[int] = set()
    done = [False] * len(spec.pieces)
    piece_of = {}
    for i, verts in enumerate(piece_sets):
        for v in verts:
            piece_of[v] = i
    while active:
        progressed = False
        for i in range(len(spec.pieces)):
            if done[i] or not piece_sets[i] <= active:
                continue
            fed = any(
                u in active and u not in piece_sets[i]
                for (u, w) in p_sub.base.arcs
                if w in piece_sets[i]
            )
            if not fed:
                candidate |= member_sets[i]
                gone = _color_reach(p_sub, member_sets[i], forward=False, active=active)
                active -= gone | member_sets[i]
                done[i] = True
                progressed = True
                break
        if progressed:
            continue
        sinks = {
            v
            for v in active
            if not any(w in active for w in p_sub.base.out_nbrs[v])
        }
        plain_sinks = {v for v in sinks if v not in piece_of} or sinks
        if not plain_sinks:
            break
        candidate |= plain_sinks
        gone = _color_reach(p_sub, plain_sinks, forward=False, active=active)
        active -= gone | plain_sinks

    cert = h_certificate(p_sub, candidate) if not active else None
    if cert is not None:
        return tuple(lam_global), cert
    emit(
        events,
        "split-root-peel-fallback",
        spec=spec.to_dict(),
        candidate=sorted(candidate),
        leftover=sorted(active),
    )
    cert = find_h_kernel(p_sub, budget)
    if cert is not None:
        return tuple(lam_global), cert
    emit(events, "split-root-witness-replaced", spec=spec.to_dict(), subdivided=lam_global)
    cap = len(lam_global)
    arc_count = len(product.base.arcs)
    for size in range(cap + 1):
        for combo in itertools.combinations(range(arc_count), size):
            budget.spend()
            alt = subdivide_colored(product, combo)
            cert = find_h_kernel(alt, budget)
            if cert is not None:
                return tuple(combo), cert
    raise TheoremViolation(
        "no subdivision within the piecewise budget yields a kernel of the product",
        payload={"spec": spec.to_dict(), "budget": cap},
    )


# -- digraphs with a single underlying cycle ---------------------------------


def unicyclic_h_kernel(cd: ColoredDigraph, events=None) -> KernelCertificate | None:
    """Kernel by monochromatic paths of a digraph whose underlying graph has
    exactly one cycle: peel sinks (each joins the kernel and absorbs its
    color in-neighborhood), then solve what remains exactly. The answer is
    none exactly when the leftover directed cycle admits no kernel, which at
    this shape means an odd properly colored cycle with nothing hanging off
    it."""
    ensure_loop_pattern(cd)
    d = cd.base
    und = {frozenset(a) for a in d.arcs}
    if len(und) != len(d.arcs):
        raise InputError("two-arc cycles make the underlying cycle ambiguous")
    if len(und) != d.n:
        raise InputError(
            f"{len(und)} underlying edges on {d.n} vertices: not exactly one cycle"
        )
    deg = {v: 0 for v in range(d.n)}
    for e in und:
        for v in e:
            deg[v] += 1
    if any(c == 0 for c in deg.values()):
        raise InputError("underlying graph is disconnected")

    active = set(range(d.n))
    members: set[int] = set()
    while True:
        sinks = {
            v for v in active if not any(w in active for w in d.out_nbrs[v])
        }
        if not sinks:
            break
        members |= sinks
        gone = _color_reach(cd, sinks, forward=False, active=active)
        active -= gone | sinks
    if active:
        rest, host = induced_colored(cd, active)
        sub_cert = find_h_kernel(rest)
        if sub_cert is None:
            return None
        members |= {host[v] for v in sub_cert.members}
    cert = h_certificate(cd, members)
    if cert is not None:
        return cert
    emit(events, "unicyclic-peel-fallback", instance=cd.to_dict(), candidate=sorted(members))
    return find_h_kernel(cd)
