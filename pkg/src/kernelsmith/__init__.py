"""Exact kernels, kernel subdivision numbers, and kernels by admissible
walks for finite digraphs, with generators for the benchmark families and
verification suites that re-check every closed form at desk scale."""

from .digraph import (
    Digraph,
    InducedSubdigraph,
    UnderlyingCycle,
    blocks,
    chordless_cycles_underlying,
    chordless_directed_cycles,
    has_odd_directed_cycle,
    strongly_connected_components,
    subdivide,
    to_dot,
)
from .errors import BudgetExhausted, ContractError, InputError, TheoremViolation
from .kernels import (
    Budget,
    KappaResult,
    KernelCertificate,
    check_certificate,
    enumerate_kernels,
    find_kernel,
    is_absorbent,
    is_independent,
    is_tournament,
    kappa,
    kernel_exists,
    lower_bound_terminal_scc,
    min_absorbent_number,
    richardson_kernel,
    tournament_kappa,
)
from .hcolored import (
    ColoredDigraph,
    HReach,
    PartialSubdivision,
    PatternDigraph,
    closure_digraph,
    closure_h_kernel,
    enumerate_h_kernels,
    find_h_kernel,
    h_certificate,
    h_kappa,
    h_kernel_exists,
    h_reachability,
    minimal_spanning_arcs,
    partial_subdivision,
    splits_admissible,
    subdivide_colored,
    unique_h_kernel_check,
)
from .mono import (
    LoopPattern,
    SplitRootSpec,
    color_in_neighborhood,
    color_out_neighborhood,
    colored_cycle_h_kernel,
    is_heterochromatic,
    split_root_build,
    split_root_h_kernel,
    theta_h_kappa,
    theta_parts,
    unicyclic_h_kernel,
)
from .families import (
    FamilyInstance,
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
from .bounds import CycleGraph, bound_report, build_cycle_graph, cycle_bound_subdivision_set
from .harness import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExhausted",
    "ColoredDigraph",
    "ContractError",
    "CycleGraph",
    "Digraph",
    "FamilyInstance",
    "HReach",
    "InducedSubdigraph",
    "InputError",
    "KappaResult",
    "KernelCertificate",
    "LoopPattern",
    "PartialSubdivision",
    "PatternDigraph",
    "SplitRootSpec",
    "TheoremViolation",
    "UnderlyingCycle",
    "VerificationReport",
    "blocks",
    "bound_report",
    "build_cycle_graph",
    "check_certificate",
    "chordless_cycles_underlying",
    "chordless_directed_cycles",
    "closure_digraph",
    "closure_h_kernel",
    "color_in_neighborhood",
    "color_out_neighborhood",
    "colored_cycle_h_kernel",
    "cycle_bound_subdivision_set",
    "enumerate_h_kernels",
    "enumerate_kernels",
    "find_h_kernel",
    "find_kernel",
    "gen_Rn",
    "gen_Sn",
    "gen_cycle",
    "gen_mixed",
    "gen_pithaya",
    "gen_theta",
    "gen_tournament",
    "gen_tri_grid",
    "h_certificate",
    "h_kappa",
    "h_kernel_exists",
    "h_reachability",
    "has_odd_directed_cycle",
    "is_absorbent",
    "is_heterochromatic",
    "is_independent",
    "is_tournament",
    "kappa",
    "kernel_exists",
    "lower_bound_terminal_scc",
    "min_absorbent_number",
    "minimal_spanning_arcs",
    "partial_subdivision",
    "presets",
    "richardson_kernel",
    "run_suite",
    "split_root_build",
    "split_root_h_kernel",
    "splits_admissible",
    "strongly_connected_components",
    "subdivide",
    "subdivide_colored",
    "theta_h_kappa",
    "theta_parts",
    "to_dot",
    "tournament_kappa",
    "unicyclic_h_kernel",
    "unique_h_kernel_check",
]
