"""Deterministic generators for the digraph families with stated
subdivision numbers, each bundled with its predicted value so the
verification harness can compare prediction against exact computation.

Predictions attach only where a closed form is stated for those
parameters; they are claims to verify, not guarantees. Every generator is
deterministic given its parameters (and seed where one applies).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .digraph import Digraph
from .errors import InputError
from .hcolored import ColoredDigraph, PatternDigraph
from .kernels import tournament_kappa


@dataclass(frozen=True)
class FamilyInstance:
    """A generated digraph (plain or colored), its family tag, the
    generator parameters, and an optional predicted value."""

    digraph: object  # Digraph | ColoredDigraph
    family: str
    params: dict = field(hash=False)
    predicted: dict | None = field(default=None, hash=False)

    @property
    def base(self) -> Digraph:
        d = self.digraph
        return d.base if isinstance(d, ColoredDigraph) else d

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "predicted": dict(self.predicted) if self.predicted else None,
            "digraph": self.digraph.to_dict(),
        }


def gen_cycle(n: int) -> FamilyInstance:
    """Directed cycle; its subdivision number is its parity."""
    if n < 2:
        raise InputError(f"directed cycle needs n >= 2, got {n}")
    d = Digraph(n, [(i, (i + 1) % n) for i in range(n)])
    return FamilyInstance(
        d,
        "cycle",
        {"n": n},
        {"quantity": "kappa", "value": n % 2, "source": "parity closed form"},
    )


def gen_Rn(n: int) -> FamilyInstance:
    """n triangles sharing the arc (y, x): vertices x, y, z_1..z_n with
    arcs (y,x) and (x,z_i), (z_i,y). One subdivision always suffices."""
    if n < 1:
        raise InputError(f"rose needs n >= 1 petals, got {n}")
    arcs = [(1, 0)]
    for i in range(n):
        z = 2 + i
        arcs += [(0, z), (z, 1)]
    d = Digraph(2 + n, arcs)
    return FamilyInstance(
        d,
        "R_n",
        {"n": n},
        {"quantity": "kappa", "value": 1, "source": "shared-arc closed form"},
    )


def gen_Sn(n: int, cycle_lengths=None) -> FamilyInstance:
    """An out-oriented star whose leaves are odd directed cycles: the hub
    sends one arc into each cycle. Every cycle needs its own subdivision,
    so the predicted value is the number of cycles."""
    if n < 2:
        raise InputError(f"star of cycles needs n >= 2, got {n}")
    lengths = tuple(cycle_lengths) if cycle_lengths is not None else (3,) * n
    if len(lengths) != n:
        raise InputError(f"{n} cycles but {len(lengths)} lengths")
    for ln in lengths:
        if ln < 3 or ln % 2 == 0:
            raise InputError(f"cycle length {ln} is not an odd number >= 3")
    arcs = []
    nxt = 1
    for ln in lengths:
        first = nxt
        for t in range(ln):
            arcs.append((first + t, first + (t + 1) % ln))
        arcs.append((0, first))
        nxt += ln
    d = Digraph(nxt, arcs)
    return FamilyInstance(
        d,
        "S_n",
        {"n": n, "cycle_lengths": list(lengths)},
        {"quantity": "kappa", "value": n, "cic": n, "source": "one subdivision per petal cycle"},
    )


def gen_tournament(n: int, seed: int = 0) -> FamilyInstance:
    """Seeded pseudorandom orientation of the complete graph. The
    prediction alpha(alpha-1)/2 over the minimum absorbent set size is
    computed exactly and attached."""
    if n < 1:
        raise InputError(f"tournament needs n >= 1, got {n}")
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    d = Digraph(n, arcs)
    return FamilyInstance(
        d,
        "tournament",
        {"n": n, "seed": seed},
        {
            "quantity": "kappa",
            "value": tournament_kappa(d),
            "source": "minimum-absorbent-size closed form",
        },
    )


def gen_tri_grid(n: int, m: int) -> FamilyInstance:
    """Triangulated strip of n columns and m rows where every unit triangle
    is a directed 3-cycle: all rows run left to right; between rows j and
    j+1 the verticals and diagonals alternate direction with the parity of
    j (odd j: verticals come down and diagonals go up-left; even j:
    verticals go up and diagonals come down-left).

    Predictions attach for the row counts with stated closed forms: 1 for
    m in {3, 5}, and the ceiling of n/2 for m in {2, 4}.
    """
    if n <= 1:
        raise InputError(f"grid needs n > 1 columns, got {n}")
    if m < 2:
        raise InputError(f"grid needs m >= 2 rows, got {m}")

    def vid(j: int, p: int) -> int:
        return (j - 1) * n + (p - 1)

    arcs = []
    for j in range(1, m + 1):
        for p in range(1, n):
            arcs.append((vid(j, p), vid(j, p + 1)))
    for j in range(1, m):
        if j % 2 == 1:
            for q in range(1, n + 1):
                arcs.append((vid(j + 1, q), vid(j, q)))
            for p in range(2, n + 1):
                arcs.append((vid(j, p), vid(j + 1, p - 1)))
        else:
            for p in range(1, n + 1):
                arcs.append((vid(j, p), vid(j + 1, p)))
            for q in range(2, n + 1):
                arcs.append((vid(j + 1, q), vid(j, q - 1)))
    d = Digraph(n * m, arcs)
    predicted = None
    if m in (3, 5):
        predicted = {"quantity": "kappa", "value": 1, "source": "odd-row-count closed form"}
    elif m in (2, 4):
        predicted = {
            "quantity": "kappa",
            "value": -(-n // 2),
            "source": "even-row-count closed form (ceil of n/2)",
        }
    return FamilyInstance(d, "tri-grid", {"n": n, "m": m}, predicted)


def gen_pithaya(p_list, table_only: bool = False) -> FamilyInstance:
    """Chain of junctions a_1..a_{s+1} joined by segments of parallel
    three-vertex strands (x_j, y_j, z_j for j = 1..p_i), orientation
    alternating with the parity of j: odd strands point junction -> x -> y
    and junction -> z -> y, even strands reverse every arc. Odd strands
    also send arcs to the y of each neighboring strand, matching the drawn
    instances. `table_only` drops those y-to-y arcs, which leaves an
    acyclic digraph (kept for inspection; no prediction attached).

    The predicted value (junction count) attaches only to the drawn form.
    """
    p_list = tuple(int(p) for p in p_list)
    if not p_list:
        raise InputError("at least one segment required")
    for p in p_list:
        if p < 3:
            raise InputError(f"segment width {p} < 3")
    s = len(p_list)
    ids = {}
    nxt = s + 1
    for i, pi in enumerate(p_list):
        for j in range(1, pi + 1):
            for name in ("x", "y", "z"):
                ids[(name, i, j)] = nxt
                nxt += 1
    arcs = []
    for i, pi in enumerate(p_list):
        a, b = i, i + 1
        for j in range(1, pi + 1):
            x, y, z = ids[("x", i, j)], ids[("y", i, j)], ids[("z", i, j)]
            if j % 2 == 1:
                arcs += [(a, x), (x, y), (b, z), (z, y)]
            else:
                arcs += [(x, a), (y, x), (z, b), (y, z)]
        if not table_only:
            for j in range(1, pi + 1, 2):
                if j + 1 <= pi:
                    arcs.append((ids[("y", i, j)], ids[("y", i, j + 1)]))
                if j - 1 >= 1:
                    arcs.append((ids[("y", i, j)], ids[("y", i, j - 1)]))
    d = Digraph(nxt, arcs)
    predicted = None
    if not table_only:
        predicted = {
            "quantity": "kappa",
            "value": s + 1,
            "source": "junction-count closed form",
        }
    return FamilyInstance(
        d, "pithaya", {"p": list(p_list), "table_only": table_only}, predicted
    )


def gen_theta(
    len_a: int,
    len_b: int,
    len_chord: int,
    coloring=None,
    colors: int = 2,
    seed: int = 0,
) -> FamilyInstance:
    """Directed cycle (x-to-y path of len_a arcs, y-to-x path of len_b
    arcs) plus a directed chord path x-to-y of len_chord arcs, colored for
    monochromatic-path kernels. Coloring is explicit or seeded. The stated
    bound is at most one subdivision."""
    for name, ln in (("len_a", len_a), ("len_b", len_b), ("len_chord", len_chord)):
        if ln < 1:
            raise InputError(f"{name} must be >= 1, got {ln}")
    if len_a == 1 and len_chord == 1:
        raise InputError("two single-arc x-to-y routes would be parallel arcs")
    arcs: list[tuple[int, int]] = []
    nxt = 2

    def path(src: int, dst: int, ln: int) -> None:
        nonlocal nxt
        prev = src
        for _ in range(ln - 1):
            arcs.append((prev, nxt))
            prev = nxt
            nxt += 1
        arcs.append((prev, dst))

    path(0, 1, len_a)
    path(1, 0, len_b)
    path(0, 1, len_chord)
    d = Digraph(nxt, arcs)
    if coloring is not None:
        coloring = tuple(int(c) for c in coloring)
        m = max(colors, max(coloring, default=0) + 1)
    else:
        rng = random.Random(seed)
        m = colors
        coloring = tuple(rng.randrange(m) for _ in arcs)
    cd = ColoredDigraph(d, coloring, PatternDigraph.all_loops(m))
    return FamilyInstance(
        cd,
        "theta",
        {
            "len_a": len_a,
            "len_b": len_b,
            "len_chord": len_chord,
            "colors": m,
            "seed": seed,
        },
        {"quantity": "h_kappa", "upper": 1, "source": "single-subdivision bound"},
    )


def gen_mixed(n: int, m_list) -> FamilyInstance:
    """Out-oriented star whose i-th leaf is the n-petal gadget of gen_Rn
    with m_i petals; the hub arc enters the gadget's x vertex. Realizes any
    (cycle count, subdivision number) pair: the chordless odd directed
    cycle count is the petal total and the predicted value is the number
    of gadgets."""
    m_list = tuple(int(m) for m in m_list)
    if n < 1:
        raise InputError(f"need n >= 1 gadgets, got {n}")
    if len(m_list) != n:
        raise InputError(f"{n} gadgets but {len(m_list)} petal counts")
    for m in m_list:
        if m < 1:
            raise InputError(f"petal count {m} < 1")
    arcs = []
    nxt = 1
    for m in m_list:
        x, y = nxt, nxt + 1
        arcs.append((0, x))
        arcs.append((y, x))
        for t in range(m):
            z = nxt + 2 + t
            arcs += [(x, z), (z, y)]
        nxt += 2 + m
    d = Digraph(nxt, arcs)
    return FamilyInstance(
        d,
        "mixed",
        {"n": n, "m_list": list(m_list)},
        {
            "quantity": "kappa",
            "value": n,
            "cic": sum(m_list),
            "source": "gadget-substitution closed form",
        },
    )


def presets() -> dict:
    """Hand-recorded drawn instances used by the verification suites."""
    six = Digraph(
        6,
        [
            (1, 0), (0, 5), (5, 4), (4, 3), (3, 2), (2, 1),
            (0, 2), (1, 3), (2, 4), (3, 5), (4, 0),
            (0, 3), (5, 2), (1, 4), (5, 1),
        ],
    )
    star = Digraph(
        12,
        [
            (3, 4), (3, 0), (5, 4), (6, 5), (4, 6), (2, 1), (0, 2), (7, 5),
            (1, 0), (8, 0), (2, 8), (2, 9), (9, 0), (10, 5), (4, 7), (4, 10),
            (11, 5), (4, 11),
        ],
    )
    return {
        "six-tournament": FamilyInstance(
            six,
            "tournament",
            {"preset": "six-tournament"},
            {
                "quantity": "kappa",
                "value": 1,
                "source": "minimum-absorbent-size closed form",
            },
        ),
        "two-gadget-star": FamilyInstance(
            star,
            "mixed",
            {"preset": "two-gadget-star"},
            {
                "quantity": "kappa",
                "value": 2,
                "cic": 7,
                "source": "drawn two-gadget star",
            },
        ),
    }
