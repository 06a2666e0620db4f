"""Shared strategies and brute-force helpers for the test battery."""

from itertools import permutations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kernelsmith import ColoredDigraph, Digraph, PatternDigraph

settings.register_profile(
    "det",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if pairs:
        arcs = draw(
            st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
        )
    else:
        arcs = []
    return Digraph(n, sorted(arcs))


@st.composite
def colored_digraphs(draw, min_n: int = 1, max_n: int = 6, max_colors: int = 3):
    d = draw(digraphs(min_n, max_n))
    m = draw(st.integers(1, max_colors))
    colors = tuple(draw(st.integers(0, m - 1)) for _ in d.arcs)
    pattern_pairs = [(a, b) for a in range(m) for b in range(m)]
    pattern = draw(
        st.lists(st.sampled_from(pattern_pairs), unique=True, max_size=len(pattern_pairs))
    )
    return ColoredDigraph(d, colors, PatternDigraph(m, frozenset(pattern)))


def isomorphic(d1: Digraph, d2: Digraph) -> bool:
    """Brute-force digraph isomorphism; intended for n <= 8."""
    if d1.n != d2.n or len(d1.arcs) != len(d2.arcs):
        return False
    target = set(d2.arcs)
    degrees2 = sorted((len(d2.out_nbrs[v]), len(d2.in_nbrs[v])) for v in range(d2.n))
    degrees1 = sorted((len(d1.out_nbrs[v]), len(d1.in_nbrs[v])) for v in range(d1.n))
    if degrees1 != degrees2:
        return False
    for perm in permutations(range(d1.n)):
        if all((perm[u], perm[v]) in target for (u, v) in d1.arcs):
            return True
    return False
