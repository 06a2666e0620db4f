"""Tests for the monochromatic-path structure results: colored cycles,
theta shapes, split-tree products, and single-cycle digraphs."""

import itertools

import pytest

from kernelsmith import (
    ColoredDigraph,
    Digraph,
    InputError,
    LoopPattern,
    PatternDigraph,
    SplitRootSpec,
    TheoremViolation,
    colored_cycle_h_kernel,
    enumerate_h_kernels,
    gen_theta,
    h_kappa,
    split_root_build,
    split_root_h_kernel,
    theta_h_kappa,
    theta_parts,
    unicyclic_h_kernel,
)
from kernelsmith.hcolored import check_h_certificate, h_kernel_exists
from kernelsmith.mono import (
    color_in_neighborhood,
    color_out_neighborhood,
    directed_cycle_order,
    ensure_loop_pattern,
    is_heterochromatic,
    is_loop_pattern,
)


def loop_cycle(colors, m=3):
    n = len(colors)
    d = Digraph(n, [(i, (i + 1) % n) for i in range(n)])
    return ColoredDigraph(d, tuple(colors), PatternDigraph.all_loops(m))


class TestLoopPattern:
    def test_loop_pattern_factory(self):
        assert LoopPattern(2).pattern() == PatternDigraph.all_loops(2)
        assert is_loop_pattern(PatternDigraph.all_loops(3))
        assert not is_loop_pattern(PatternDigraph.empty(2))
        assert not is_loop_pattern(PatternDigraph.from_arcs(2, [(0, 0), (0, 1), (1, 1)]))

    def test_ensure_loop_pattern(self):
        d = Digraph(2, [(0, 1)])
        bad = ColoredDigraph(d, (0,), PatternDigraph.from_arcs(2, [(0, 1)]))
        with pytest.raises(InputError, match="loop pattern"):
            ensure_loop_pattern(bad)
        ensure_loop_pattern(ColoredDigraph(d, (0,), PatternDigraph.all_loops(1)))

    def test_heterochromatic(self):
        assert is_heterochromatic(loop_cycle([0, 1, 2]))
        assert not is_heterochromatic(loop_cycle([0, 1, 0]))


class TestColorNeighborhoods:
    def path(self, colors):
        d = Digraph(len(colors) + 1, [(i, i + 1) for i in range(len(colors))])
        return ColoredDigraph(d, tuple(colors), PatternDigraph.all_loops(2))

    def test_monochromatic_path_reaches_through(self):
        cd = self.path([0, 0])
        assert color_in_neighborhood(cd, 2) == {0, 1}
        assert color_out_neighborhood(cd, 0) == {1, 2}

    def test_color_change_blocks(self):
        cd = self.path([0, 1])
        assert color_in_neighborhood(cd, 2) == {1}
        assert color_out_neighborhood(cd, 0) == {1}

    def test_closed_adds_sources(self):
        cd = self.path([0, 1])
        assert color_in_neighborhood(cd, 2, closed=True) == {1, 2}
        assert color_in_neighborhood(cd, [], closed=True) == set()

    def test_set_of_sources(self):
        cd = self.path([0, 1])
        assert color_in_neighborhood(cd, [1, 2]) == {0}


class TestDirectedCycleOrder:
    def test_orders_from_zero(self):
        d = Digraph(4, [(2, 3), (0, 1), (3, 0), (1, 2)])
        assert directed_cycle_order(d) == (0, 1, 2, 3)

    def test_rejects_non_cycles(self):
        with pytest.raises(InputError):
            directed_cycle_order(Digraph(3, [(0, 1), (1, 2)]))
        with pytest.raises(InputError):
            directed_cycle_order(Digraph(1, []))
        two_cycles = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        with pytest.raises(InputError):
            directed_cycle_order(two_cycles)


class TestColoredCycle:
    def test_single_long_block_formula(self):
        cert = colored_cycle_h_kernel(loop_cycle([0, 0, 1, 0, 1]))
        assert cert is not None and cert.members == (2, 4)
        cert = colored_cycle_h_kernel(loop_cycle([0, 0, 0, 1, 2]))
        assert cert is not None and cert.members == (2, 4)

    def test_monochromatic_cycle_single_vertex(self):
        cert = colored_cycle_h_kernel(loop_cycle([0, 0, 0, 0]))
        assert cert is not None and cert.members == (0,)

    def test_properly_colored_parity(self):
        assert colored_cycle_h_kernel(loop_cycle([0, 1, 2])) is None
        cert = colored_cycle_h_kernel(loop_cycle([0, 1, 0, 1]))
        assert cert is not None and cert.members == (0, 2)

    def test_construction_emits_no_events_on_clean_inputs(self):
        events = []
        colored_cycle_h_kernel(loop_cycle([0, 0, 1, 0, 1]), events=events)
        colored_cycle_h_kernel(loop_cycle([0, 1, 2]), events=events)
        assert events == []

    def test_requires_loop_pattern(self):
        d = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        cd = ColoredDigraph(d, (0, 1, 0), PatternDigraph.from_arcs(2, [(0, 1), (1, 0)]))
        with pytest.raises(InputError):
            colored_cycle_h_kernel(cd)

    def test_exhaustive_small_matches_search(self):
        for n in (3, 4, 5):
            for colors in itertools.product((0, 1), repeat=n):
                cd = loop_cycle(colors, m=2)
                cert = colored_cycle_h_kernel(cd)
                kernels = enumerate_h_kernels(cd)
                if cert is None:
                    assert kernels == []
                else:
                    assert cert.members in kernels
                    assert check_h_certificate(cd, cert)


class TestThetaParts:
    def test_handmade(self):
        d = Digraph(6, [(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (1, 5), (5, 0)])
        x, y, a, b, back = theta_parts(d)
        assert (x, y) == (0, 1)
        assert a == (0, 2, 1)
        assert b == (0, 3, 4, 1)
        assert back == (1, 5, 0)

    def test_generated(self):
        inst = gen_theta(2, 2, 1)
        assert inst.base.n == 4
        x, y, a, b, back = theta_parts(inst.base)
        assert (x, y) == (0, 1)
        assert a == (0, 2, 1) and b == (0, 1) and back == (1, 3, 0)

    def test_rejects_non_theta(self):
        with pytest.raises(InputError):
            theta_parts(Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
        with pytest.raises(InputError):
            theta_parts(Digraph(3, [(0, 1), (1, 2), (2, 0)]))


class TestThetaKappa:
    def test_monochromatic_theta_needs_nothing(self):
        inst = gen_theta(2, 2, 1)
        cd = ColoredDigraph(
            inst.base, (0,) * len(inst.base.arcs), PatternDigraph.all_loops(1)
        )
        res = theta_h_kappa(cd)
        assert res.kappa == 0 and res.kernel.members == (0,)

    def test_generated_instances_stay_within_one(self):
        from kernelsmith.harness import theta_corpus

        hist = {}
        for cd in theta_corpus(count=50, seed=1234):
            res = theta_h_kappa(cd)
            hist[res.kappa] = hist.get(res.kappa, 0) + 1
            sub = cd if not res.witness else None
            if sub is not None:
                assert check_h_certificate(sub, res.kernel)
        assert hist == {0: 49, 1: 1}

    def test_rejects_non_theta(self):
        d = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        cd = ColoredDigraph(d, (0, 0, 0), PatternDigraph.all_loops(1))
        with pytest.raises(InputError):
            theta_h_kappa(cd)


def mono_triangle() -> ColoredDigraph:
    return ColoredDigraph(
        Digraph(3, [(0, 1), (1, 2), (2, 0)]), (0, 0, 0), PatternDigraph.all_loops(1)
    )


class TestSplitRootSpec:
    def good(self) -> SplitRootSpec:
        tri = mono_triangle()
        return SplitRootSpec(Digraph(2, [(0, 1)]), (0, 1), (tri, tri), ((0,), (0,)))

    def test_dict_roundtrip(self):
        spec = self.good()
        obj = spec.to_dict()
        assert SplitRootSpec.from_dict(obj).to_dict() == obj
        assert set(obj) == {"tree", "distinguished", "pieces", "attachments", "tree_colors"}

    def test_tree_validation(self):
        tri = mono_triangle()
        with pytest.raises(InputError, match="two-arc cycle"):
            SplitRootSpec(Digraph(2, [(0, 1), (1, 0)]), (), (), ())
        with pytest.raises(InputError, match="not a tree"):
            SplitRootSpec(Digraph(3, [(0, 1)]), (), (), ())
        with pytest.raises(InputError, match="not connected"):
            SplitRootSpec(Digraph(4, [(0, 1), (1, 2), (2, 0)]), (), (), ())
        with pytest.raises(InputError, match="repeat"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (0, 0), (tri, tri), ((0,), (0,)))

    def test_row_validation(self):
        tri = mono_triangle()
        with pytest.raises(InputError, match="differ in length"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (0,), (tri, tri), ((0,),))
        with pytest.raises(InputError, match="incident tree arcs"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (0,), (tri,), ((0, 1),))
        with pytest.raises(InputError, match="outside piece"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (0,), (tri,), ((7,),))
        with pytest.raises(InputError, match="out of range"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (5,), (tri,), ((0,),))

    def test_pattern_consistency(self):
        tri = mono_triangle()
        other = ColoredDigraph(tri.base, (0, 0, 0), PatternDigraph.all_loops(2))
        with pytest.raises(InputError, match="different patterns"):
            SplitRootSpec(Digraph(2, [(0, 1)]), (0, 1), (tri, other), ((0,), (0,)))

    def test_tree_colors_length(self):
        tri = mono_triangle()
        with pytest.raises(InputError, match="one color per tree arc"):
            SplitRootSpec(
                Digraph(2, [(0, 1)]), (0, 1), (tri, tri), ((0,), (0,)), (0, 0)
            )


class TestSplitRootBuild:
    def test_dumbbell_layout(self):
        tri = mono_triangle()
        spec = SplitRootSpec(Digraph(2, [(0, 1)]), (0, 1), (tri, tri), ((0,), (0,)))
        prod = split_root_build(spec)
        assert prod.base.n == 6
        assert prod.base.arcs == (
            (0, 1), (1, 2), (2, 0),
            (3, 4), (4, 5), (5, 3),
            (0, 3),
        )
        assert prod.colors == (0,) * 7

    def test_plain_tree_vertices_survive(self):
        tri = mono_triangle()
        spec = SplitRootSpec(Digraph(3, [(0, 1), (1, 2)]), (0,), (tri,), ((0,),))
        prod = split_root_build(spec)
        # piece occupies 0..2; plain tree vertices 1, 2 become 3, 4
        assert prod.base.n == 5
        assert (0, 3) in prod.base.arcs and (3, 4) in prod.base.arcs


class TestSplitRootKernel:
    def test_dumbbell_needs_no_subdivision(self):
        tri = mono_triangle()
        spec = SplitRootSpec(Digraph(2, [(0, 1)]), (0, 1), (tri, tri), ((0,), (0,)))
        lam, cert = split_root_h_kernel(spec)
        assert lam == ()
        assert cert.members == (3,)
        assert check_h_certificate(split_root_build(spec), cert)

    def test_piece_results_are_validated(self):
        tri = mono_triangle()
        spec = SplitRootSpec(Digraph(2, [(0, 1)]), (0, 1), (tri, tri), ((0,), (0,)))
        with pytest.raises(InputError, match="one .arcs, members. pair per piece"):
            split_root_h_kernel(spec, piece_results=[((), (0,))])
        with pytest.raises(InputError, match="not a kernel"):
            split_root_h_kernel(spec, piece_results=[((), (0, 1)), ((), (0,))])

    def test_budget_can_exceed_piecewise_sum(self):
        # A piece whose only kernel is pinned down by its colors: gluing a
        # tree arc out of the unique kernel's attachment vertex into a fresh
        # sink removes every kernel of the product, so no subdivision set of
        # the pieces' total size (zero) works and the sweep reports the
        # violated bound.
        piece = ColoredDigraph(
            Digraph(4, [(0, 2), (2, 3), (3, 1), (1, 0), (0, 1)]),
            (0, 1, 2, 2, 0),
            PatternDigraph.all_loops(3),
        )
        res = h_kappa(piece)
        assert res.kappa == 0 and res.kernel.members == (1, 2)
        assert enumerate_h_kernels(piece) == [(1, 2)]
        spec = SplitRootSpec(Digraph(2, [(0, 1)]), (0,), (piece,), ((1,),), (1,))
        events = []
        with pytest.raises(TheoremViolation) as exc:
            split_root_h_kernel(spec, events=events)
        assert sorted(exc.value.payload) == ["budget", "spec"]
        assert exc.value.payload["budget"] == 0
        assert [e["kind"] for e in events] == [
            "split-root-peel-fallback",
            "split-root-witness-replaced",
        ]
        assert h_kappa(split_root_build(spec)).kappa == 1


class TestUnicyclic:
    def test_properly_colored_odd_cycle_alone_has_none(self):
        assert unicyclic_h_kernel(loop_cycle([0, 1, 2])) is None

    def test_pendant_sink_restores_existence(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
        cd = ColoredDigraph(d, (0, 1, 2, 0), PatternDigraph.all_loops(3))
        cert = unicyclic_h_kernel(cd)
        assert cert is not None and cert.members == (2, 3)
        assert check_h_certificate(cd, cert)

    def test_even_cycle_with_trees(self):
        d = Digraph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (5, 4), (2, 6)])
        cd = ColoredDigraph(d, (0, 0, 1, 1, 0, 1, 0), PatternDigraph.all_loops(2))
        cert = unicyclic_h_kernel(cd)
        assert cert is not None and cert.members == (3, 5, 6)
        assert check_h_certificate(cd, cert)

    def test_input_validation(self):
        digon = ColoredDigraph(
            Digraph(2, [(0, 1), (1, 0)]), (0, 0), PatternDigraph.all_loops(1)
        )
        with pytest.raises(InputError, match="two-arc cycles"):
            unicyclic_h_kernel(digon)
        tree = ColoredDigraph(
            Digraph(3, [(0, 1), (0, 2)]), (0, 0), PatternDigraph.all_loops(1)
        )
        with pytest.raises(InputError, match="not exactly one cycle"):
            unicyclic_h_kernel(tree)

    def test_matches_search_on_random_shapes(self):
        import random

        rng = random.Random(5)
        for _ in range(40):
            cyc = rng.randint(3, 5)
            extra = rng.randint(0, 3)
            n = cyc + extra
            arcs = [(i, (i + 1) % cyc) for i in range(cyc)]
            for v in range(cyc, n):
                anchor = rng.randrange(v)
                arcs.append((v, anchor) if rng.random() < 0.5 else (anchor, v))
            d = Digraph(n, arcs)
            cd = ColoredDigraph(
                d,
                tuple(rng.randrange(3) for _ in arcs),
                PatternDigraph.all_loops(3),
            )
            cert = unicyclic_h_kernel(cd)
            assert (cert is not None) == h_kernel_exists(cd)
            if cert is not None:
                assert check_h_certificate(cd, cert)
