"""Arc-colored digraphs and kernels by pattern-admissible walks.

Arcs carry colors drawn from the vertices of a pattern digraph H; a walk is
admissible (an "H-walk") when every pair of consecutive arc colors is an arc
of H. Single arcs always qualify. Reachability by H-walks is computed on a
product automaton whose states are (vertex, color of the arc just used), so
one BFS per source settles every query and keeps parent pointers for
reconstructing a witness walk.

An H-kernel is a vertex set with no H-walk between distinct members in
either direction and an H-walk from every outsider into the set. Both
conditions only consult the reachability relation, so H-kernels of D are
exactly the plain kernels of the reach digraph, and the bitmask search from
the plain solver is reused unchanged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .digraph import Digraph, strongly_connected_components, subdivide
from .errors import ContractError, InputError
from .kernels import (
    KappaResult,
    KernelCertificate,
    as_budget,
    enumerate_kernels,
    find_kernel,
)

import itertools


@dataclass(frozen=True)
class PatternDigraph:
    """The color pattern H: vertices are colors, arcs are admissible
    color successions; loops allowed."""

    m: int
    arcs: frozenset

    def __post_init__(self):
        if self.m < 0:
            raise InputError(f"color count must be nonnegative, got {self.m}")
        for a in self.arcs:
            if len(a) != 2:
                raise InputError(f"pattern arc {a!r} is not a pair")
            c1, c2 = a
            if not (0 <= c1 < self.m and 0 <= c2 < self.m):
                raise InputError(f"pattern arc {a} out of color range 0..{self.m - 1}")

    @classmethod
    def from_arcs(cls, m: int, arcs) -> "PatternDigraph":
        return cls(m, frozenset((int(a), int(b)) for a, b in arcs))

    @classmethod
    def empty(cls, m: int) -> "PatternDigraph":
        return cls(m, frozenset())

    @classmethod
    def all_loops(cls, m: int) -> "PatternDigraph":
        return cls(m, frozenset((c, c) for c in range(m)))

    def has(self, c1: int, c2: int) -> bool:
        return (c1, c2) in self.arcs

    def successors(self, c: int) -> tuple[int, ...]:
        return tuple(sorted(b for (a, b) in self.arcs if a == c))

    @property
    def arc_empty(self) -> bool:
        return not self.arcs

    @property
    def loop_only(self) -> bool:
        return all(a == b for (a, b) in self.arcs)

    def to_dict(self) -> dict:
        return {"m": self.m, "arcs": sorted(self.arcs)}

    @classmethod
    def from_dict(cls, obj: dict) -> "PatternDigraph":
        return cls.from_arcs(int(obj["m"]), obj.get("arcs", []))


@dataclass(frozen=True)
class ColoredDigraph:
    """A digraph with one color per arc, indexed by arc id."""

    base: Digraph
    colors: tuple[int, ...]
    pattern: PatternDigraph

    def __post_init__(self):
        if len(self.colors) != len(self.base.arcs):
            raise InputError(
                f"{len(self.colors)} colors for {len(self.base.arcs)} arcs"
            )
        for aid, c in enumerate(self.colors):
            if not (0 <= c < self.pattern.m):
                raise InputError(
                    f"arc {self.base.arcs[aid]} colored {c}, outside 0..{self.pattern.m - 1}"
                )

    def color_of(self, arc_id: int) -> int:
        return self.colors[arc_id]

    def out_palette(self, v: int) -> frozenset:
        """The set of colors on v's out-arcs."""
        idx = self.base.arc_index
        return frozenset(
            self.colors[idx[(v, w)]] for w in self.base.out_nbrs[v]
        )

    def to_dict(self) -> dict:
        obj = self.base.to_dict()
        obj["colors"] = list(self.colors)
        obj["H"] = self.pattern.to_dict()
        return obj

    @classmethod
    def from_dict(cls, obj: dict) -> "ColoredDigraph":
        base = Digraph.from_dict(obj)
        if "colors" not in obj or "H" not in obj:
            raise InputError("colored digraph needs 'colors' and 'H' fields")
        return cls(
            base=base,
            colors=tuple(int(c) for c in obj["colors"]),
            pattern=PatternDigraph.from_dict(obj["H"]),
        )


class HReach:
    """The walk-reachability relation of a colored digraph, with realizers.

    States (v, c) mean "standing at v, having just used an arc of color c";
    from each source the BFS runs once, expanding states in sorted order so
    witness walks are deterministic.
    """

    __slots__ = ("n", "relation", "_parents", "_cd")

    def __init__(self, cd: ColoredDigraph):
        d = cd.base
        pattern = cd.pattern
        idx = d.arc_index
        self.n = d.n
        self._cd = cd
        self.relation = [0] * d.n
        self._parents = []
        out_nbrs = d.out_nbrs
        for u in range(d.n):
            parents: dict[tuple[int, int], tuple[int, int] | None] = {}
            queue = deque()
            for w in out_nbrs[u]:
                c = cd.colors[idx[(u, w)]]
                if (w, c) not in parents:
                    parents[(w, c)] = None
                    queue.append((w, c))
                    self.relation[u] |= 1 << w
            while queue:
                v, c = queue.popleft()
                for w in out_nbrs[v]:
                    c2 = cd.colors[idx[(v, w)]]
                    if pattern.has(c, c2) and (w, c2) not in parents:
                        parents[(w, c2)] = (v, c)
                        queue.append((w, c2))
                        self.relation[u] |= 1 << w
            self._parents.append(parents)

    def reaches(self, u: int, v: int) -> bool:
        return bool((self.relation[u] >> v) & 1)

    def walk(self, u: int, v: int) -> tuple[int, ...] | None:
        """One admissible walk from u to v as a vertex sequence, or None."""
        if not self.reaches(u, v):
            return None
        parents = self._parents[u]
        # the BFS reached v first through the earliest-queued state
        best = None
        for (w, c) in parents:
            if w == v:
                best = (w, c)
                break
        seq = []
        state = best
        while state is not None:
            seq.append(state[0])
            state = parents[state]
        seq.append(u)
        seq.reverse()
        return tuple(seq)


def h_reachability(cd: ColoredDigraph) -> HReach:
    """Compute the H-walk reachability relation once; queries are O(1)."""
    return HReach(cd)


def reach_digraph(reach: HReach) -> Digraph:
    """The relation as a digraph (diagonal dropped): H-kernels of the
    colored digraph are exactly plain kernels of this one."""
    arcs = []
    for u in range(reach.n):
        rel = reach.relation[u] & ~(1 << u)
        m = rel
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            arcs.append((u, v))
    return Digraph(reach.n, arcs)


def h_is_independent(reach: HReach, members) -> bool:
    """No admissible walk between distinct members, in either direction."""
    members = list(members)
    for u in members:
        for v in members:
            if u != v and reach.reaches(u, v):
                return False
    return True


def h_is_absorbent(reach: HReach, members) -> bool:
    """Every non-member has an admissible walk into the set."""
    mask = 0
    for v in members:
        mask |= 1 << v
    for u in range(reach.n):
        if (mask >> u) & 1:
            continue
        if not (reach.relation[u] & mask):
            return False
    return True


def check_h_certificate(cd: ColoredDigraph, cert: KernelCertificate) -> bool:
    """Revalidate an h-walks certificate against fresh reachability."""
    reach = h_reachability(cd)
    members = set(cert.members)
    if not h_is_independent(reach, members):
        return False
    if not h_is_absorbent(reach, members):
        return False
    for v, w in cert.absorbed_by.items():
        if v in members or w not in members or not reach.reaches(v, w):
            return False
    return set(cert.absorbed_by) == set(range(cd.base.n)) - members


def _h_certificate(cd: ColoredDigraph, reach: HReach, members: tuple[int, ...]) -> KernelCertificate:
    mask = 0
    for v in members:
        mask |= 1 << v
    absorbed_by = {}
    walks = {}
    for v in range(cd.base.n):
        if (mask >> v) & 1:
            continue
        hit = reach.relation[v] & mask
        w = (hit & -hit).bit_length() - 1
        absorbed_by[v] = w
        walks[v] = reach.walk(v, w)
    return KernelCertificate(
        members=members, mode="h-walks", absorbed_by=absorbed_by, walks=walks
    )


def find_h_kernel(cd: ColoredDigraph, budget=None) -> KernelCertificate | None:
    """The lexicographically smallest H-kernel, or None."""
    reach = h_reachability(cd)
    plain = find_kernel(reach_digraph(reach), budget)
    if plain is None:
        return None
    return _h_certificate(cd, reach, plain.members)


def h_kernel_exists(cd: ColoredDigraph, budget=None) -> bool:
    return find_kernel(reach_digraph(h_reachability(cd)), budget) is not None


def enumerate_h_kernels(cd: ColoredDigraph, budget=None) -> list[tuple[int, ...]]:
    """All H-kernels as sorted member tuples."""
    return enumerate_kernels(reach_digraph(h_reachability(cd)), budget)


def induced_colored(cd: ColoredDigraph, vertices) -> tuple["ColoredDigraph", tuple[int, ...]]:
    """Induced colored subdigraph plus the host ids of its vertices
    (ascending), so results can be mapped back."""
    sub = cd.base.induced(vertices)
    colors = tuple(cd.colors[a] for a in sub.arc_ids)
    return ColoredDigraph(sub.digraph, colors, cd.pattern), sub.vertices


def h_certificate(cd: ColoredDigraph, members, reach: HReach | None = None) -> KernelCertificate | None:
    """Certificate for a candidate member set, or None if it is not an
    H-kernel."""
    if reach is None:
        reach = h_reachability(cd)
    members = tuple(sorted(set(int(v) for v in members)))
    if not (h_is_independent(reach, members) and h_is_absorbent(reach, members)):
        return None
    return _h_certificate(cd, reach, members)


def _second_color(pattern: PatternDigraph, c: int, arc) -> int:
    """Color for the second half of a subdivided arc of color c."""
    if pattern.has(c, c) or pattern.arc_empty or pattern.loop_only:
        return c
    succ = pattern.successors(c)
    if not succ:
        raise ContractError(
            f"arc {arc} has color {c} with no admissible successor color"
        )
    return succ[0]


def subdivide_colored(cd: ColoredDigraph, arc_ids) -> ColoredDigraph:
    """Subdivide arcs, coloring both halves so each split arc remains an
    admissible 2-walk: keep the color when its loop exists (or the pattern
    makes colors irrelevant: no arcs, or loops only), else give the second
    half the smallest admissible successor color."""
    arc_ids = sorted(set(int(a) for a in arc_ids))
    base = subdivide(cd.base, arc_ids)
    colors = list(cd.colors)
    for aid in arc_ids:
        c = cd.colors[aid]
        colors.append(_second_color(cd.pattern, c, cd.base.arcs[aid]))
    return ColoredDigraph(base=base, colors=tuple(colors), pattern=cd.pattern)


def h_kappa(cd: ColoredDigraph, budget=None) -> KappaResult:
    """Minimum number of arc subdivisions yielding an H-kernel, with a
    lexicographically minimal witness.

    Sweeps arc subsets by cardinality then id order. The sweep is capped by
    the full arc set; subdividing everything splits every walk step into an
    admissible pair, which at desk scale always admits an H-kernel (checked,
    not assumed: exhaustion raises).
    """
    budget = as_budget(budget)
    m = len(cd.base.arcs)
    for size in range(m + 1):
        for combo in itertools.combinations(range(m), size):
            budget.spend()
            sub = subdivide_colored(cd, combo)
            cert = find_h_kernel(sub, budget)
            if cert is not None:
                return KappaResult(
                    kappa=size,
                    witness=tuple(combo),
                    kernel=cert,
                    subdivided=sub.base,
                    mode="h-walks",
                )
    raise ContractError("subdivision sweep failed beyond the full arc set")


def minimal_spanning_arcs(d: Digraph) -> tuple[int, ...]:
    """One out-arc per non-sink vertex (smallest arc id): the smallest
    spanning subdigraph preserving which vertices are sinks."""
    idx = d.arc_index
    chosen = []
    for v in range(d.n):
        nbrs = d.out_nbrs[v]
        if nbrs:
            chosen.append(min(idx[(v, w)] for w in nbrs))
    return tuple(sorted(chosen))


def validate_spanning(d: Digraph, arc_ids) -> tuple[int, ...]:
    """Check the sink-preservation condition: a vertex has no out-arc in the
    chosen set exactly when it has none in D."""
    arc_ids = sorted(set(int(a) for a in arc_ids))
    for aid in arc_ids:
        if not (0 <= aid < len(d.arcs)):
            raise InputError(f"arc id {aid} out of range")
    has_out = [False] * d.n
    for aid in arc_ids:
        has_out[d.arcs[aid][0]] = True
    for v in range(d.n):
        if bool(d.out_nbrs[v]) != has_out[v]:
            raise InputError(
                f"vertex {v} is a sink in the spanning subdigraph but not in D"
                if d.out_nbrs[v]
                else f"vertex {v} is a sink in D but the spanning subdigraph gives it an out-arc"
            )
    return tuple(arc_ids)


@dataclass(frozen=True)
class PartialSubdivision:
    """Subdivision of only a spanning subdigraph's arcs, colored per the
    split-arc rule; untouched arcs keep their colors."""

    result: ColoredDigraph
    spanning: tuple[int, ...]
    middle_of: dict = field(hash=False)
    original: ColoredDigraph = field(hash=False)

    def subdivision_map(self) -> list[dict]:
        return [
            {"arc": list(self.original.base.arcs[aid]), "middle": w}
            for aid, w in sorted(self.middle_of.items())
        ]

    def halves_of(self, arc_id: int) -> tuple[int, int]:
        """Arc ids in the result of the two halves of a subdivided arc."""
        if arc_id not in self.middle_of:
            raise InputError(f"arc id {arc_id} was not subdivided")
        second = len(self.original.base.arcs) + self.spanning.index(arc_id)
        return arc_id, second

    def middle_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.middle_of.values()))

    def original_sinks(self) -> tuple[int, ...]:
        d = self.original.base
        return tuple(v for v in range(d.n) if not d.out_nbrs[v])


def partial_subdivision(cd: ColoredDigraph, arc_ids) -> PartialSubdivision:
    """Subdivide exactly the arcs of a spanning subdigraph G: middle vertices
    appear for A(G) only, arcs outside G pass through untouched."""
    spanning = validate_spanning(cd.base, arc_ids)
    result = subdivide_colored(cd, spanning)
    middle_of = {aid: cd.base.n + i for i, aid in enumerate(spanning)}
    return PartialSubdivision(
        result=result, spanning=spanning, middle_of=middle_of, original=cd
    )


@dataclass(frozen=True)
class ClosureDigraph:
    """Reachability among subdivision middle vertices, as a digraph on
    indices 0..k-1; middles[i] translates back to the partial subdivision."""

    base: Digraph
    middles: tuple[int, ...]
    origin: PartialSubdivision = field(hash=False)


def is_transitive(d: Digraph) -> bool:
    out = d.out_mask
    for u in range(d.n):
        m = out[u]
        probe = m
        while probe:
            v = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            if out[v] & ~m & ~(1 << u):
                return False
    return True


def closure_digraph(ps: PartialSubdivision) -> ClosureDigraph:
    """Project reachability of the partial subdivision onto its middle
    vertices. Concatenation through a middle vertex (in-degree one equals
    out-degree one) keeps walks admissible, so the result must be
    transitive; a failure here means the reachability relation is broken."""
    middles = tuple(sorted(ps.middle_of.values()))
    pos = {w: i for i, w in enumerate(middles)}
    reach = h_reachability(ps.result)
    arcs = []
    for i, wi in enumerate(middles):
        for j, wj in enumerate(middles):
            if i != j and reach.reaches(wi, wj):
                arcs.append((i, j))
    base = Digraph(len(middles), arcs)
    if not is_transitive(base):
        raise ContractError(
            "middle-vertex reachability projection is not transitive"
        )
    return ClosureDigraph(base=base, middles=middles, origin=ps)


def kernel_of_transitive(d: Digraph) -> KernelCertificate:
    """Kernel of a transitive digraph: the minimum-id vertex of each
    terminal strong component. Terminal components of a transitive digraph
    have no arcs between them, and transitivity turns every path into the
    kernel into a single arc."""
    if not is_transitive(d):
        raise ContractError("digraph is not transitive")
    scc = strongly_connected_components(d)
    members = []
    for ci, comp in enumerate(scc.components):
        if scc.terminal[ci]:
            members.append(comp[0])
    members = tuple(sorted(members))
    mask = 0
    for v in members:
        mask |= 1 << v
    absorbed_by = {}
    for v in range(d.n):
        if (mask >> v) & 1:
            continue
        hit = d.out_mask[v] & mask
        if not hit:
            raise ContractError(f"vertex {v} is not absorbed; digraph not transitive?")
        absorbed_by[v] = (hit & -hit).bit_length() - 1
    return KernelCertificate(members=members, mode="plain", absorbed_by=absorbed_by)


def splits_admissible(ps: PartialSubdivision) -> bool:
    """Whether every split arc is an admissible 2-walk, i.e. the pair of
    half colors is an arc of the pattern. This is what lets walks
    concatenate through middle vertices; the degenerate colorings (pattern
    with no arcs, or loops only with the color's loop missing) break it."""
    pattern = ps.original.pattern
    for aid in ps.spanning:
        first, second = ps.halves_of(aid)
        if not pattern.has(ps.result.colors[first], ps.result.colors[second]):
            return False
    return True


def palette_bound(ps: PartialSubdivision) -> tuple[int, int]:
    """The smallest k with every out-palette of the partial subdivision at
    most k colors, and the vertex count it is measured against."""
    r = ps.result
    k = max((len(r.out_palette(v)) for v in range(r.base.n)), default=0)
    return max(1, k), r.base.n


def check_palette_bound(ps: PartialSubdivision) -> None:
    k, nv = palette_bound(ps)
    if nv < 2 * k + 3:
        raise ContractError(
            f"palette bound violated: |V| = {nv} < 2k+3 = {2 * k + 3} at the smallest feasible k = {k}"
        )


def closure_h_kernel(ps: PartialSubdivision, force: bool = False) -> KernelCertificate:
    """Assemble an H-kernel of the partial subdivision from the closure
    digraph: take the transitive kernel over middle vertices, add the
    original sinks, and drop middle members that already reach a sink.

    The palette-size hypothesis (|V| at least 2k+3) and split-arc
    admissibility are checked unless `force` is set; the output is
    revalidated either way.
    """
    if not force:
        check_palette_bound(ps)
        if not splits_admissible(ps):
            raise ContractError(
                "some split arc is not an admissible 2-walk; walks cannot "
                "concatenate through its middle vertex"
            )
    closure = closure_digraph(ps)
    n1 = set(closure.middles[i] for i in kernel_of_transitive(closure.base).members)
    b = set(ps.original_sinks())
    reach = h_reachability(ps.result)
    b_mask = 0
    for v in b:
        b_mask |= 1 << v
    n2 = set(a for a in n1 if reach.relation[a] & b_mask)
    members = tuple(sorted(b | (n1 - n2)))
    if not (h_is_independent(reach, members) and h_is_absorbent(reach, members)):
        raise ContractError(
            f"closure construction produced a non-H-kernel: {members}"
        )
    return _h_certificate(ps.result, reach, members)


def unique_h_kernel_check(ps: PartialSubdivision) -> int:
    """Count the H-kernels of a partial subdivision of an acyclic digraph
    (expected: exactly one)."""
    d = ps.original.base
    scc = strongly_connected_components(d)
    if len(scc.components) != d.n:
        raise ContractError("base digraph has a directed cycle")
    check_palette_bound(ps)
    if not splits_admissible(ps):
        raise ContractError("some split arc is not an admissible 2-walk")
    return len(enumerate_h_kernels(ps.result))
