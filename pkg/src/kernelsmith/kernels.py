"""Exact kernel search and the kernel subdivision number.

A kernel is a vertex set that is independent (no arc between two members, in
either direction) and absorbent (every non-member sends an arc into it). The
searches here run on bitmasks: a branch-and-bound picks the first unabsorbed
vertex and branches over which member of its closed out-neighborhood joins
the kernel, excluding tried candidates so each kernel is visited once. Since
no kernel contains another, the lexicographically smallest kernel (as a
sorted vertex list) is exactly the one maximizing the membership bit string,
which a prefix-forcing greedy recovers with n existence queries.

kappa(D) is the least number of arcs whose subdivision produces a digraph
with a kernel; the sweep tries arc subsets by cardinality then lexicographic
id order, shortcutting through the odd-cycle-free case where a kernel always
exists and is built directly (richardson_kernel) instead of searched for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .digraph import Digraph, has_odd_directed_cycle, subdivide, strongly_connected_components
from .errors import BudgetExhausted, ContractError, InputError


class Budget:
    """Counts search node expansions; raises once past the cap.

    Expansions are machine-independent: one per branch-and-bound node and one
    per candidate arc subset in a subdivision sweep.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        if limit is not None and limit <= 0:
            raise InputError(f"budget limit must be positive, got {limit}")
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(
                f"node budget of {self.limit} exhausted"
            )


def as_budget(budget) -> Budget:
    if budget is None:
        return Budget(None)
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


def _vertex_mask(d: Digraph, members) -> int:
    mask = 0
    for v in members:
        v = int(v)
        if not (0 <= v < d.n):
            raise InputError(f"vertex {v} out of range for n={d.n}")
        mask |= 1 << v
    return mask


def is_independent(d: Digraph, members) -> bool:
    """No arc joins two members, in either direction."""
    mask = _vertex_mask(d, members)
    out = d.out_mask
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if out[v] & mask:
            return False
    return True


def is_absorbent(d: Digraph, members) -> bool:
    """Every non-member has an arc into the set."""
    mask = _vertex_mask(d, members)
    out = d.out_mask
    rest = ((1 << d.n) - 1) & ~mask
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if not (out[v] & mask):
            return False
    return True


@dataclass
class KernelCertificate:
    """A kernel plus evidence: for each non-member, the member absorbing it.

    mode is "plain" for arc absorption or "h-walks" when absorption runs
    along walks whose color sequences the pattern digraph accepts; in that
    mode `walks` carries one realizing walk (vertex sequence) per non-member.
    """

    members: tuple[int, ...]
    mode: str = "plain"
    absorbed_by: dict[int, int] = field(default_factory=dict)
    walks: dict[int, tuple[int, ...]] | None = None

    def member_mask(self) -> int:
        mask = 0
        for v in self.members:
            mask |= 1 << v
        return mask

    def to_dict(self) -> dict:
        obj = {
            "members": list(self.members),
            "mode": self.mode,
            "absorbed_by": {str(k): v for k, v in sorted(self.absorbed_by.items())},
        }
        if self.walks is not None:
            obj["walks"] = {str(k): list(w) for k, w in sorted(self.walks.items())}
        return obj


def check_certificate(d: Digraph, cert: KernelCertificate) -> bool:
    """Revalidate a plain certificate against the digraph from scratch."""
    members = set(cert.members)
    if not is_independent(d, members):
        return False
    if not is_absorbent(d, members):
        return False
    for v, w in cert.absorbed_by.items():
        if v in members or w not in members or not d.has_arc(v, w):
            return False
    return set(cert.absorbed_by) == set(range(d.n)) - members


def _search_masks(d: Digraph):
    out = d.out_mask
    inm = d.in_mask
    closed_out = [out[v] | (1 << v) for v in range(d.n)]
    conflict = [out[v] | inm[v] for v in range(d.n)]
    return closed_out, conflict, inm


def _kernel_search(
    d: Digraph,
    budget: Budget,
    forced_in: int = 0,
    forced_out: int = 0,
    collect: list | None = None,
) -> int | None:
    """Core branch and bound over membership.

    Returns a kernel mask extending forced_in and avoiding forced_out, or
    None. With `collect` given, explores exhaustively, appending every such
    kernel mask, and returns None.
    """
    n = d.n
    full = (1 << n) - 1
    closed_out, conflict, inm = _search_masks(d)

    if forced_in & forced_out:
        return None
    conf_mask = 0
    absorbed = 0
    m = forced_in
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if conflict[v] & forced_in:
            return None
        conf_mask |= conflict[v]
        absorbed |= inm[v]

    def rec(members: int, absorbed: int, excluded: int, conf_mask: int):
        budget.spend()
        avail = full & ~(excluded | conf_mask)
        # dead vertex: unabsorbed, and no viable member could ever absorb it
        rest = full & ~absorbed & ~members
        probe = rest
        while probe:
            u = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            if not (closed_out[u] & avail):
                return None
        if not rest:
            if collect is not None:
                collect.append(members)
                return None
            return members
        u = (rest & -rest).bit_length() - 1
        cands = closed_out[u] & avail
        while cands:
            w_bit = cands & -cands
            cands &= cands - 1
            w = w_bit.bit_length() - 1
            got = rec(
                members | w_bit,
                absorbed | inm[w],
                excluded,
                conf_mask | conflict[w],
            )
            if got is not None:
                return got
            excluded |= w_bit
            avail &= ~w_bit
        return None

    return rec(forced_in, absorbed, forced_out, conf_mask)


def _lex_min_kernel_mask(d: Digraph, budget: Budget) -> int | None:
    """Greedy prefix forcing: kernels form an antichain, so the lex-min
    sorted member list is the kernel whose membership bit string is maximal,
    recoverable by asking one existence query per vertex."""
    if _kernel_search(d, budget) is None:
        return None
    forced_in = 0
    forced_out = 0
    for v in range(d.n):
        bit = 1 << v
        if forced_in & bit or forced_out & bit:
            continue
        if _kernel_search(d, budget, forced_in | bit, forced_out) is not None:
            forced_in |= bit
        else:
            forced_out |= bit
    return forced_in


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _certificate_from_mask(d: Digraph, mask: int) -> KernelCertificate:
    members = _mask_to_tuple(mask)
    absorbed_by = {}
    for v in range(d.n):
        if (mask >> v) & 1:
            continue
        hit = d.out_mask[v] & mask
        absorbed_by[v] = (hit & -hit).bit_length() - 1
    return KernelCertificate(members=members, mode="plain", absorbed_by=absorbed_by)


def find_kernel(d: Digraph, budget=None) -> KernelCertificate | None:
    """The lexicographically smallest kernel of D, or None."""
    budget = as_budget(budget)
    mask = _lex_min_kernel_mask(d, budget)
    if mask is None:
        return None
    return _certificate_from_mask(d, mask)


def kernel_exists(d: Digraph, budget=None) -> bool:
    return _kernel_search(d, as_budget(budget)) is not None


def enumerate_kernels(d: Digraph, budget=None):
    """All kernels of D as sorted member tuples, in lexicographic order."""
    budget = as_budget(budget)
    collected: list[int] = []
    _kernel_search(d, budget, collect=collected)
    return sorted(_mask_to_tuple(m) for m in collected)


def richardson_kernel(d: Digraph) -> KernelCertificate:
    """Build a kernel of a digraph with no odd directed cycle, searchlessly.

    Repeatedly take the terminal components of the still-active subdigraph:
    each is strongly connected without odd cycles, so directed distance from
    its minimum vertex two-colors it with every arc crossing classes. The
    even class joins the kernel, the odd class is absorbed by it, and every
    active vertex with an arc into the new members is absorbed too.
    """
    if has_odd_directed_cycle(d):
        raise ContractError("digraph has an odd directed cycle")
    out_mask = d.out_mask
    members = 0
    absorbed = 0
    active = (1 << d.n) - 1
    while active:
        sub = d.induced(_mask_to_tuple(active))
        scc = strongly_connected_components(sub.digraph)
        new_members = 0
        for ci, comp in enumerate(scc.components):
            if not scc.terminal[ci]:
                continue
            comp_orig = [sub.vertices[v] for v in comp]
            comp_set = set(comp)
            # BFS parity from the minimum-id vertex, inside the component
            root = comp[0]
            level = {root: 0}
            frontier = [root]
            while frontier:
                nxt = []
                for v in frontier:
                    for w in sub.digraph.out_nbrs[v]:
                        if w in comp_set and w not in level:
                            level[w] = level[v] + 1
                            nxt.append(w)
                frontier = nxt
            for v in comp:
                if level[v] % 2 == 0:
                    new_members |= 1 << sub.vertices[v]
            for ov in comp_orig:
                active &= ~(1 << ov)
        members |= new_members
        m = new_members
        newly_absorbed = 0
        for v in range(d.n):
            if (active >> v) & 1 and out_mask[v] & members:
                newly_absorbed |= 1 << v
        active &= ~newly_absorbed
        absorbed |= newly_absorbed
    cert = _certificate_from_mask(d, members)
    if not check_certificate(d, cert):
        raise ContractError("parity construction produced a non-kernel")
    return cert


@dataclass
class KappaResult:
    """A minimal subdivision witness and the kernel it unlocks."""

    kappa: int
    witness: tuple[int, ...]  # arc ids of D, sorted
    kernel: KernelCertificate  # kernel of the subdivided digraph
    subdivided: Digraph
    mode: str = "plain"

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "witness": list(self.witness),
            "mode": self.mode,
            "kernel": self.kernel.to_dict(),
        }


def lower_bound_terminal_scc(d: Digraph, budget=None) -> int:
    """Sum of kappa over the terminal strong components.

    Kernels restrict to kernels on terminal components, and subdividing arcs
    elsewhere cannot help them, so the sum bounds kappa(D) from below. When D
    is itself strongly connected the bound degenerates to kappa(D) and is
    reported as 0 instead of recursing. On budget exhaustion the partial sum
    accumulated so far is returned.
    """
    budget = as_budget(budget)
    scc = strongly_connected_components(d)
    if len(scc.components) <= 1:
        return 0
    total = 0
    for ci, comp in enumerate(scc.components):
        if not scc.terminal[ci]:
            continue
        sub = d.induced(comp)
        try:
            total += kappa(sub.digraph, budget, use_lower_bound=False).kappa
        except BudgetExhausted:
            break
    return total


def kappa(d: Digraph, budget=None, use_lower_bound: bool = True) -> KappaResult:
    """Exact kernel subdivision number with a minimal lexicographic witness.

    Sweeps arc subsets by cardinality then lexicographic id order. Each
    candidate is first screened for odd directed cycles: if none remain the
    kernel is constructed directly; otherwise the exact search runs. The
    sweep cannot pass |A(D)|: subdividing every arc doubles every cycle
    length, so the full subdivision is odd-cycle-free.
    """
    budget = as_budget(budget)
    m = len(d.arcs)
    start = 0
    if use_lower_bound:
        start = lower_bound_terminal_scc(d, budget)
    for size in range(start, m + 1):
        for combo in itertools.combinations(range(m), size):
            budget.spend()
            ds = subdivide(d, combo)
            if has_odd_directed_cycle(ds):
                if _kernel_search(ds, budget) is None:
                    continue
            cert = find_kernel(ds, budget)
            if cert is None:
                cert = richardson_kernel(ds)
            return KappaResult(
                kappa=size,
                witness=tuple(combo),
                kernel=cert,
                subdivided=ds,
            )
    raise ContractError("subdivision sweep failed beyond the full arc set")


def min_absorbent_number(d: Digraph) -> int:
    """Size of a smallest absorbent set (independence not required)."""
    n = d.n
    out = d.out_mask
    full = (1 << n) - 1
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            rest = full & ~mask
            ok = True
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if not (out[v] & mask):
                    ok = False
                    break
            if ok:
                return size
    return n


def is_tournament(d: Digraph) -> bool:
    index = d.arc_index
    for u in range(d.n):
        for v in range(u + 1, d.n):
            if ((u, v) in index) == ((v, u) in index):
                return False
    return True


def tournament_kappa(d: Digraph) -> int:
    """Closed form for tournaments: alpha(alpha-1)/2 over the minimum
    absorbent set size alpha."""
    if not is_tournament(d):
        raise ContractError("digraph is not a tournament")
    alpha = min_absorbent_number(d)
    return alpha * (alpha - 1) // 2
