"""Verification suites: every stated result, re-checked at desk scale.

Each suite streams `VerificationReport` records — one per instance — that
compare a predicted value (a closed form, a bound, or an oracle) against
what the solvers actually compute. Identical seeds give byte-identical
JSONL, mismatches carry the full serialized instance for reproduction, and
long sweeps are resumable by skipping through the last finished id.

The fourteen suites, in order: cycles, roses, stars, tournaments, grids,
pithaya, mixed, two-gadget-star, cycle-bound, closure, colored-cycles,
theta, split-root, solver-oracle.
"""

from __future__ import annotations

import json
import random
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from .bounds import bound_report, cycle_bound_subdivision_set
from .digraph import Digraph, chordless_directed_cycles, subdivide
from .errors import BudgetExhausted, ContractError, TheoremViolation
from .families import (
    gen_Rn,
    gen_Sn,
    gen_cycle,
    gen_mixed,
    gen_pithaya,
    gen_theta,
    gen_tournament,
    gen_tri_grid,
    presets,
)
from .hcolored import (
    ColoredDigraph,
    PatternDigraph,
    closure_h_kernel,
    enumerate_h_kernels,
    find_h_kernel,
    h_kappa,
    check_palette_bound,
    minimal_spanning_arcs,
    partial_subdivision,
    splits_admissible,
    unique_h_kernel_check,
)
from .kernels import enumerate_kernels, find_kernel, kappa, tournament_kappa
from .mono import SplitRootSpec, split_root_h_kernel, theta_h_kappa


@dataclass
class VerificationReport:
    """One instance's verdict: what was predicted, what was computed, and
    whether they agree. Mismatches carry the serialized instance."""

    id: str
    family: str
    predicted: object
    reference: str
    computed: object
    status: str  # "match" | "mismatch" | "skipped-budget"
    seconds: float
    instance: dict | None = None

    def to_dict(self, include_seconds: bool = False) -> dict:
        record = {
            "id": self.id,
            "family": self.family,
            "predicted": self.predicted,
            "reference": self.reference,
            "computed": self.computed,
            "status": self.status,
        }
        if include_seconds:
            record["seconds"] = round(self.seconds, 6)
        if self.instance is not None:
            record["instance"] = self.instance
        return record

    def to_line(self, include_seconds: bool = False) -> str:
        return json.dumps(
            self.to_dict(include_seconds), sort_keys=True, separators=(",", ":")
        )


def _report(rid, family, predicted, reference, computed, started, instance=None):
    status = "match" if predicted == computed else "mismatch"
    return VerificationReport(
        id=rid,
        family=family,
        predicted=predicted,
        reference=reference,
        computed=computed,
        status=status,
        seconds=time.perf_counter() - started,
        instance=instance if status == "mismatch" else None,
    )


def _skipped(rid, family, predicted, reference, started):
    return VerificationReport(
        id=rid,
        family=family,
        predicted=predicted,
        reference=reference,
        computed=None,
        status="skipped-budget",
        seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# naive oracles (independent code paths: plain sets and subset loops, no
# bitmask search, no shared reachability machinery)


def naive_kernels(d: Digraph) -> list[tuple[int, ...]]:
    """Every kernel of d by brute subset enumeration, lexicographic."""
    arcs = set(d.arcs)
    found = []
    for size in range(d.n + 1):
        for members in combinations(range(d.n), size):
            s = set(members)
            if any((u, v) in arcs for u in s for v in s):
                continue
            if all(
                any((x, v) in arcs for v in s) for x in range(d.n) if x not in s
            ):
                found.append(members)
    return sorted(found)


def naive_h_reach(cd: ColoredDigraph) -> list[set[int]]:
    """For each vertex, the set of vertices an admissible walk reaches,
    by plain breadth-first search over (vertex, last color) states."""
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(cd.base.n)}
    for i, (u, v) in enumerate(cd.base.arcs):
        out[u].append((v, cd.colors[i]))
    reach: list[set[int]] = []
    for s in range(cd.base.n):
        seen = set(out[s])
        hit = {v for (v, _) in seen}
        queue = deque(seen)
        while queue:
            v, c = queue.popleft()
            for (w, c2) in out[v]:
                if cd.pattern.has(c, c2) and (w, c2) not in seen:
                    seen.add((w, c2))
                    hit.add(w)
                    queue.append((w, c2))
        reach.append(hit)
    return reach


def naive_h_kernels(cd: ColoredDigraph) -> list[tuple[int, ...]]:
    """Every admissible-walk kernel of cd by brute subset enumeration."""
    reach = naive_h_reach(cd)
    n = cd.base.n
    found = []
    for size in range(n + 1):
        for members in combinations(range(n), size):
            s = set(members)
            if any(u != v and v in reach[u] for u in s for v in s):
                continue
            if all(any(v in reach[x] for v in s) for x in range(n) if x not in s):
                found.append(members)
    return sorted(found)


# ---------------------------------------------------------------------------
# corpus builders


def _random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    arcs = [
        (u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p
    ]
    return Digraph(n, arcs)


def _random_colored(rng: random.Random, d: Digraph, m: int) -> ColoredDigraph:
    colors = tuple(rng.randrange(m) for _ in d.arcs)
    pattern_arcs = frozenset(
        (a, b) for a in range(m) for b in range(m) if rng.random() < 0.5
    )
    return ColoredDigraph(d, colors, PatternDigraph(m, pattern_arcs))


def closure_corpus(count: int = 200, seed: int = 42, acyclic: bool = False):
    """Partial subdivisions meeting the closure construction's hypotheses:
    smallest-out-arc spanning choice, vertex count at least 2k+3 for the
    palette size k, and every split arc an admissible two-step walk."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 8)
        m = rng.randint(1, 3)
        if acyclic:
            arcs = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.35
            ]
        else:
            arcs = [
                (u, v)
                for u in range(n)
                for v in range(n)
                if u != v and rng.random() < 0.3
            ]
        if not arcs:
            continue
        d = Digraph(n, arcs)
        cd = _random_colored(rng, d, m)
        try:
            ps = partial_subdivision(cd, minimal_spanning_arcs(d))
            check_palette_bound(ps)
        except ContractError:
            continue
        if not splits_admissible(ps):
            continue
        out.append(ps)
    return out


def theta_corpus(count: int = 200, seed: int = 1234, max_vertices: int = 12):
    """Seeded colored theta shapes within the vertex budget."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        la, lb, lc = (rng.randint(1, 5) for _ in range(3))
        if la == 1 and lc == 1:
            continue
        if 2 + (la - 1) + (lb - 1) + (lc - 1) > max_vertices:
            continue
        m = rng.randint(1, 3)
        inst = gen_theta(la, lb, lc, colors=m, seed=rng.randrange(10**6))
        out.append(inst.digraph)
    return out


def _colored_cycle_piece(rng: random.Random, length: int, m: int) -> ColoredDigraph:
    base = gen_cycle(length).digraph
    colors = tuple(rng.randrange(m) for _ in base.arcs)
    return ColoredDigraph(base, colors, PatternDigraph.all_loops(m))


def split_root_corpus(count: int = 50, seed: int = 999):
    """Seeded split-root specs whose pieces are colored cycles and thetas."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, 3)
        t = rng.randint(max(k, 2), k + 3)
        arcs = []
        for j in range(1, t):
            p = rng.randrange(j)
            arcs.append((p, j) if rng.random() < 0.5 else (j, p))
        tree = Digraph(t, arcs)
        distinguished = tuple(sorted(rng.sample(range(t), k)))
        m = rng.randint(1, 3)
        pieces = []
        attachments = []
        for v in distinguished:
            deg = sum(1 for (a, b) in arcs if v in (a, b))
            if rng.random() < 0.5:
                piece = _colored_cycle_piece(rng, rng.randint(max(3, deg), 6), m)
            else:
                while True:
                    la, lb, lc = (rng.randint(1, 4) for _ in range(3))
                    if la == 1 and lc == 1:
                        continue
                    nv = 2 + (la - 1) + (lb - 1) + (lc - 1)
                    if deg <= nv <= 10:
                        break
                piece = gen_theta(
                    la, lb, lc, colors=m, seed=rng.randrange(10**6)
                ).digraph
            pieces.append(piece)
            attachments.append(tuple(rng.sample(range(piece.base.n), deg)))
        tree_colors = tuple(rng.randrange(m) for _ in arcs)
        out.append(
            SplitRootSpec(tree, distinguished, tuple(pieces), tuple(attachments), tree_colors)
        )
    return out


def four_piece_product(colors: int = 3, seed: int = 2026) -> SplitRootSpec:
    """The showcase split-root product: a nine-arc tree carrying two
    directed cycles and two theta shapes, with seeded arc colors. Its
    piece-sum bound is at most four subdivisions."""
    rng = random.Random(seed)
    # tree vertices: 0,2,5,6 are distinguished; 1,3,4,7,8,9 stay plain
    tree = Digraph(
        10,
        [
            (0, 1),
            (1, 2),
            (3, 2),
            (3, 4),
            (4, 5),
            (6, 2),
            (7, 6),
            (6, 8),
            (0, 9),
        ],
    )
    theta_b = gen_theta(3, 3, 2, colors=colors, seed=rng.randrange(10**6)).digraph
    cycle_c = _colored_cycle_piece(rng, 6, colors)
    cycle_a = _colored_cycle_piece(rng, 3, colors)
    theta_d = gen_theta(4, 2, 2, colors=colors, seed=rng.randrange(10**6)).digraph
    tree_colors = tuple(rng.randrange(colors) for _ in tree.arcs)
    return SplitRootSpec(
        tree,
        (0, 2, 5, 6),
        (theta_b, cycle_c, cycle_a, theta_d),
        ((4, 3), (0, 1, 3), (1,), (3, 0, 4)),
        tree_colors,
    )


# ---------------------------------------------------------------------------
# suites


@dataclass
class SuiteOptions:
    max_n: int | None = None
    count: int | None = None
    seed: int | None = None
    budget: int | None = None

    def resolved(self, max_n=None, count=None, seed=None):
        return (
            self.max_n if self.max_n is not None else max_n,
            self.count if self.count is not None else count,
            self.seed if self.seed is not None else seed,
        )


def _suite_cycles(opts: SuiteOptions) -> Iterator[VerificationReport]:
    max_n, _, _ = opts.resolved(max_n=9)
    for n in range(2, max_n + 1):
        started = time.perf_counter()
        inst = gen_cycle(n)
        try:
            computed = kappa(inst.digraph, opts.budget).kappa
        except BudgetExhausted:
            yield _skipped(f"cycles-n{n}", "cycle", n % 2, "parity closed form", started)
            continue
        yield _report(
            f"cycles-n{n}", "cycle", n % 2, "parity closed form", computed,
            started, inst.to_dict(),
        )


def _suite_roses(opts: SuiteOptions) -> Iterator[VerificationReport]:
    max_n, _, _ = opts.resolved(max_n=5)
    for n in range(1, max_n + 1):
        started = time.perf_counter()
        inst = gen_Rn(n)
        try:
            computed = kappa(inst.digraph, opts.budget).kappa
        except BudgetExhausted:
            yield _skipped(f"roses-n{n}", "rose", 1, "shared-arc closed form", started)
            continue
        yield _report(
            f"roses-n{n}", "rose", 1, "shared-arc closed form", computed,
            started, inst.to_dict(),
        )


def _suite_stars(opts: SuiteOptions) -> Iterator[VerificationReport]:
    max_n, _, _ = opts.resolved(max_n=4)
    for n in range(2, max_n + 1):
        started = time.perf_counter()
        inst = gen_Sn(n)
        try:
            computed = kappa(inst.digraph, opts.budget).kappa
        except BudgetExhausted:
            yield _skipped(
                f"stars-n{n}", "star", n, "one subdivision per petal cycle", started
            )
            continue
        yield _report(
            f"stars-n{n}", "star", n, "one subdivision per petal cycle", computed,
            started, inst.to_dict(),
        )


def _suite_tournaments(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=200, seed=0)
    for s in range(count):
        started = time.perf_counter()
        n = (s % 6) + 1
        inst = gen_tournament(n, seed=seed + s)
        predicted = tournament_kappa(inst.digraph)
        try:
            computed = kappa(inst.digraph, opts.budget).kappa
        except BudgetExhausted:
            yield _skipped(
                f"tournaments-{s:04d}", "tournament", predicted,
                "minimum-absorbent-size closed form", started,
            )
            continue
        yield _report(
            f"tournaments-{s:04d}", "tournament", predicted,
            "minimum-absorbent-size closed form", computed, started, inst.to_dict(),
        )


def _suite_grids(opts: SuiteOptions) -> Iterator[VerificationReport]:
    max_n, _, _ = opts.resolved(max_n=5)
    for m, reference in ((2, "even-row-count closed form (ceil of n/2)"),
                         (3, "odd-row-count closed form")):
        for n in range(2, max_n + 1):
            started = time.perf_counter()
            inst = gen_tri_grid(n, m)
            predicted = -(-n // 2) if m == 2 else 1
            try:
                computed = kappa(inst.digraph, opts.budget).kappa
            except BudgetExhausted:
                yield _skipped(f"grids-t{n}x{m}", "tri-grid", predicted, reference, started)
                continue
            yield _report(
                f"grids-t{n}x{m}", "tri-grid", predicted, reference, computed,
                started, inst.to_dict(),
            )
    for m in (4, 5):
        started = time.perf_counter()
        inst = gen_tri_grid(3, m)
        try:
            rep = bound_report(inst.digraph, opts.budget)
        except BudgetExhausted:
            yield _skipped(
                f"grids-t3x{m}-sandwich", "tri-grid", True, "bound sandwich", started
            )
            continue
        holds = (
            rep["exact"] is not None
            and rep["lower"] <= rep["exact"] <= rep["cic"]
        )
        yield _report(
            f"grids-t3x{m}-sandwich", "tri-grid", True, "bound sandwich",
            holds, started, inst.to_dict(),
        )


def _suite_pithaya(opts: SuiteOptions) -> Iterator[VerificationReport]:
    for rid, p_list in (("pithaya-p3", (3,)), ("pithaya-p3x3", (3, 3))):
        started = time.perf_counter()
        inst = gen_pithaya(p_list)
        predicted = len(p_list) + 1
        try:
            computed = kappa(inst.digraph, opts.budget).kappa
        except BudgetExhausted:
            yield _skipped(rid, "pithaya", predicted, "junction-count closed form", started)
            continue
        yield _report(
            rid, "pithaya", predicted, "junction-count closed form", computed,
            started, inst.to_dict(),
        )


def _suite_mixed(opts: SuiteOptions) -> Iterator[VerificationReport]:
    for n, m_list in ((1, (1,)), (2, (1, 1)), (2, (1, 2))):
        started = time.perf_counter()
        inst = gen_mixed(n, m_list)
        predicted = {"kappa": n, "cic": sum(m_list)}
        try:
            computed = {
                "kappa": kappa(inst.digraph, opts.budget).kappa,
                "cic": len(chordless_directed_cycles(inst.digraph)),
            }
        except BudgetExhausted:
            yield _skipped(
                f"mixed-n{n}m{sum(m_list)}", "mixed", predicted,
                "gadget-substitution closed form", started,
            )
            continue
        yield _report(
            f"mixed-n{n}m{sum(m_list)}", "mixed", predicted,
            "gadget-substitution closed form", computed, started, inst.to_dict(),
        )


def _suite_two_gadget_star(opts: SuiteOptions) -> Iterator[VerificationReport]:
    started = time.perf_counter()
    inst = presets()["two-gadget-star"]
    predicted = {"kappa": 2, "cic": 7}
    try:
        computed = {
            "kappa": kappa(inst.digraph, opts.budget).kappa,
            "cic": len(chordless_directed_cycles(inst.digraph)),
        }
    except BudgetExhausted:
        yield _skipped(
            "two-gadget-star-0000", "two-gadget-star", predicted,
            "preset exact values", started,
        )
        return
    yield _report(
        "two-gadget-star-0000", "two-gadget-star", predicted,
        "preset exact values", computed, started, inst.to_dict(),
    )


def _suite_cycle_bound(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=300, seed=20260814)
    rng = random.Random(seed)
    for i in range(count):
        started = time.perf_counter()
        n = rng.randint(2, 12)
        p = rng.choice([0.15, 0.25, 0.35])
        d = _random_digraph(rng, n, p)
        events: list[dict] = []
        lam = cycle_bound_subdivision_set(d, events)
        cic = len(chordless_directed_cycles(d))
        invalid = sum(
            1 for e in events if e["kind"] == "cycle-bound-construction-invalid"
        )
        computed = {
            "within_cic": len(lam) <= cic,
            "kernel_after": find_kernel(subdivide(d, lam)) is not None,
            "construction_invalid": invalid,
        }
        predicted = {"within_cic": True, "kernel_after": True, "construction_invalid": 0}
        yield _report(
            f"cycle-bound-{i:04d}", "random", predicted,
            "chordless directed cycle count bound", computed, started, d.to_dict(),
        )


def _suite_closure(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=200, seed=42)
    for i, ps in enumerate(closure_corpus(count, seed)):
        started = time.perf_counter()
        predicted = {"valid": True, "exists": True}
        try:
            closure_h_kernel(ps)
            computed = {
                "valid": True,
                "exists": find_h_kernel(ps.result) is not None,
            }
        except ContractError:
            computed = {"valid": False, "exists": find_h_kernel(ps.result) is not None}
        yield _report(
            f"closure-{i:04d}", "partial-subdivision", predicted,
            "closure construction on the partial subdivision", computed,
            started, ps.result.to_dict(),
        )
    acyclic_count = max(1, (count * 120) // 200)
    for i, ps in enumerate(closure_corpus(acyclic_count, seed=77, acyclic=True)):
        started = time.perf_counter()
        computed = unique_h_kernel_check(ps)
        yield _report(
            f"closure-acyclic-{i:04d}", "partial-subdivision", 1,
            "uniqueness on acyclic bases", computed, started, ps.result.to_dict(),
        )


def _properly_colored(colors: tuple[int, ...]) -> bool:
    n = len(colors)
    return all(colors[i] != colors[(i + 1) % n] for i in range(n))


def _suite_colored_cycles(opts: SuiteOptions) -> Iterator[VerificationReport]:
    from .mono import colored_cycle_h_kernel

    max_n, _, _ = opts.resolved(max_n=7)
    idx = 0
    for n in range(2, max_n + 1):
        base = gen_cycle(n).digraph
        for colors in product(range(3), repeat=n):
            started = time.perf_counter()
            cd = ColoredDigraph(base, colors, PatternDigraph.all_loops(3))
            predicted = not (_properly_colored(colors) and n % 2 == 1)
            cert = colored_cycle_h_kernel(cd)
            yield _report(
                f"colored-cycles-{idx:05d}", "colored-cycle", predicted,
                "repeated-color existence, all-distinct-consecutive odd nonexistence",
                cert is not None, started, cd.to_dict(),
            )
            idx += 1


def _suite_theta(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=200, seed=1234)
    for i, cd in enumerate(theta_corpus(count, seed)):
        started = time.perf_counter()
        try:
            computed = theta_h_kappa(cd, opts.budget).kappa <= 1
        except TheoremViolation:
            computed = False
        except BudgetExhausted:
            yield _skipped(
                f"theta-{i:04d}", "theta", True, "single-subdivision bound", started
            )
            continue
        yield _report(
            f"theta-{i:04d}", "theta", True, "single-subdivision bound",
            computed, started, cd.to_dict(),
        )


def _suite_split_root(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=50, seed=999)
    for i, spec in enumerate(split_root_corpus(count, seed)):
        started = time.perf_counter()
        try:
            piece_sweeps = [h_kappa(p, opts.budget) for p in spec.pieces]
            piece_results = [(r.witness, r.kernel.members) for r in piece_sweeps]
            lam, cert = split_root_h_kernel(spec, piece_results, opts.budget)
        except BudgetExhausted:
            yield _skipped(
                f"split-root-{i:04d}", "split-root", True, "piece-sum bound", started
            )
            continue
        except TheoremViolation:
            yield _report(
                f"split-root-{i:04d}", "split-root", True, "piece-sum bound",
                False, started, spec.to_dict(),
            )
            continue
        bound = sum(r.kappa for r in piece_sweeps)
        computed = len(lam) <= bound and cert is not None
        yield _report(
            f"split-root-{i:04d}", "split-root", True, "piece-sum bound",
            computed, started, spec.to_dict(),
        )
    started = time.perf_counter()
    spec = four_piece_product()
    try:
        lam, cert = split_root_h_kernel(spec, budget=opts.budget)
        computed = len(lam) <= 4 and cert is not None
    except (TheoremViolation, BudgetExhausted):
        computed = False
    yield _report(
        "split-root-four-piece", "split-root", True,
        "piece-sum bound on the four-piece product", computed, started,
        spec.to_dict(),
    )


def _suite_solver_oracle(opts: SuiteOptions) -> Iterator[VerificationReport]:
    _, count, seed = opts.resolved(count=500, seed=13)
    rng = random.Random(seed)
    for i in range(count):
        started = time.perf_counter()
        n = rng.randint(1, 10)
        d = _random_digraph(rng, n, rng.choice([0.15, 0.3, 0.5]))
        predicted = naive_kernels(d)
        computed = list(enumerate_kernels(d))
        yield _report(
            f"solver-oracle-k-{i:04d}", "random", predicted,
            "exhaustive subset enumeration", computed, started, d.to_dict(),
        )
    rng = random.Random(seed + 1)
    for i in range(count):
        started = time.perf_counter()
        n = rng.randint(1, 10)
        d = _random_digraph(rng, n, rng.choice([0.15, 0.3, 0.5]))
        cd = _random_colored(rng, d, rng.randint(1, 3))
        predicted = naive_h_kernels(cd)
        computed = list(enumerate_h_kernels(cd))
        yield _report(
            f"solver-oracle-h-{i:04d}", "random", predicted,
            "exhaustive subset enumeration", computed, started, cd.to_dict(),
        )


SUITES = {
    "cycles": _suite_cycles,
    "roses": _suite_roses,
    "stars": _suite_stars,
    "tournaments": _suite_tournaments,
    "grids": _suite_grids,
    "pithaya": _suite_pithaya,
    "mixed": _suite_mixed,
    "two-gadget-star": _suite_two_gadget_star,
    "cycle-bound": _suite_cycle_bound,
    "closure": _suite_closure,
    "colored-cycles": _suite_colored_cycles,
    "theta": _suite_theta,
    "split-root": _suite_split_root,
    "solver-oracle": _suite_solver_oracle,
}


def run_suite(
    name: str,
    max_n: int | None = None,
    count: int | None = None,
    seed: int | None = None,
    budget: int | None = None,
    skip_until: str | None = None,
) -> Iterator[VerificationReport]:
    """Stream one suite's reports in instance order. With skip_until, drop
    every report up to and including that id (resume semantics)."""
    if name not in SUITES:
        raise KeyError(f"unknown suite: {name}")
    opts = SuiteOptions(max_n=max_n, count=count, seed=seed, budget=budget)
    skipping = skip_until is not None
    for report in SUITES[name](opts):
        if skipping:
            if report.id == skip_until:
                skipping = False
            continue
        yield report
