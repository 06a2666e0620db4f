"""Tests for the verification harness: reports, naive oracles, corpora,
and suite streaming."""

import json

import pytest

from kernelsmith import (
    ColoredDigraph,
    Digraph,
    PatternDigraph,
    enumerate_h_kernels,
    enumerate_kernels,
    gen_cycle,
    split_root_build,
    split_root_h_kernel,
)
from kernelsmith.harness import (
    SUITES,
    VerificationReport,
    closure_corpus,
    four_piece_product,
    naive_h_kernels,
    naive_h_reach,
    naive_kernels,
    run_suite,
    split_root_corpus,
    theta_corpus,
)


class TestVerificationReport:
    def make(self, **kw):
        base = dict(
            id="x-0000",
            family="cycle",
            predicted=1,
            reference="ref",
            computed=1,
            status="match",
            seconds=0.1234567,
        )
        base.update(kw)
        return VerificationReport(**base)

    def test_seconds_are_opt_in_and_rounded(self):
        rep = self.make()
        assert "seconds" not in rep.to_dict()
        assert rep.to_dict(include_seconds=True)["seconds"] == 0.123457

    def test_instance_field_is_opt_out(self):
        assert "instance" not in self.make().to_dict()
        rep = self.make(status="mismatch", instance={"n": 2})
        assert rep.to_dict()["instance"] == {"n": 2}

    def test_line_is_compact_sorted_json(self):
        line = self.make().to_line()
        assert line == json.loads(json.dumps(line))  # plain string
        obj = json.loads(line)
        assert list(obj) == sorted(obj)
        assert ": " not in line and ", " not in line


class TestNaiveOracles:
    def test_naive_kernels_on_even_cycle(self):
        d = gen_cycle(6).base
        assert naive_kernels(d) == [(0, 2, 4), (1, 3, 5)]
        assert naive_kernels(d) == enumerate_kernels(d)

    def test_naive_kernels_on_odd_cycle(self):
        assert naive_kernels(gen_cycle(5).base) == []

    def test_naive_h_reach_respects_pattern(self):
        d = Digraph(3, [(0, 1), (1, 2)])
        cd = ColoredDigraph(d, (0, 1), PatternDigraph.all_loops(2))
        reach = naive_h_reach(cd)
        assert reach[0] == {1}
        assert reach[1] == {2}
        open_ = ColoredDigraph(d, (0, 1), PatternDigraph.from_arcs(2, [(0, 1)]))
        assert naive_h_reach(open_)[0] == {1, 2}

    def test_naive_h_kernels_matches_solver(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        cd = ColoredDigraph(d, (0, 1, 0, 1), PatternDigraph.all_loops(2))
        assert naive_h_kernels(cd) == enumerate_h_kernels(cd)


class TestCorpora:
    def test_closure_corpus_deterministic(self):
        a = closure_corpus(count=3, seed=42)
        b = closure_corpus(count=3, seed=42)
        assert [ps.result.to_dict() for ps in a] == [ps.result.to_dict() for ps in b]
        assert [ps.result.base.n for ps in a] == [15, 14, 10]

    def test_theta_corpus_sizes(self):
        corpus = theta_corpus(count=10, seed=1234, max_vertices=12)
        assert len(corpus) == 10
        assert all(cd.base.n <= 12 for cd in corpus)

    def test_split_root_corpus_specs_build(self):
        corpus = split_root_corpus(count=5, seed=999)
        assert len(corpus) == 5
        for spec in corpus:
            prod = split_root_build(spec)
            assert prod.base.n >= spec.tree.n

    def test_four_piece_product_shape(self):
        spec = four_piece_product()
        assert spec.tree.n == 10
        assert len(spec.pieces) == 4
        prod = split_root_build(spec)
        assert prod.base.n == 29 and len(prod.base.arcs) == 34
        lam, cert = split_root_h_kernel(spec)
        assert lam == ()
        assert cert.members == (2, 5, 6, 7, 10, 13, 17, 18, 27, 28)


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            list(run_suite("nope"))

    def test_all_suites_registered(self):
        assert sorted(SUITES) == [
            "closure",
            "colored-cycles",
            "cycle-bound",
            "cycles",
            "grids",
            "mixed",
            "pithaya",
            "roses",
            "solver-oracle",
            "split-root",
            "stars",
            "theta",
            "tournaments",
            "two-gadget-star",
        ]

    def test_id_formats(self):
        assert [r.id for r in run_suite("cycles", max_n=3)] == ["cycles-n2", "cycles-n3"]
        assert [r.id for r in run_suite("roses", max_n=2)] == ["roses-n1", "roses-n2"]
        assert [r.id for r in run_suite("tournaments", count=2)] == [
            "tournaments-0000",
            "tournaments-0001",
        ]
        assert [r.id for r in run_suite("pithaya")] == ["pithaya-p3", "pithaya-p3x3"]
        assert [r.id for r in run_suite("mixed")] == [
            "mixed-n1m1",
            "mixed-n2m2",
            "mixed-n2m3",
        ]
        assert [r.id for r in run_suite("solver-oracle", count=1)] == [
            "solver-oracle-k-0000",
            "solver-oracle-h-0000",
        ]

    def test_cycles_suite_matches(self):
        reps = list(run_suite("cycles", max_n=6))
        assert all(r.status == "match" for r in reps)
        assert [r.computed for r in reps] == [0, 1, 0, 1, 0]

    def test_mismatch_carries_instance(self):
        reps = list(run_suite("grids", max_n=3))
        bad = [r for r in reps if r.status == "mismatch"]
        assert [r.id for r in bad] == ["grids-t3x2"]
        assert bad[0].instance is not None
        assert bad[0].instance["family"] == "tri-grid"
        good = [r for r in reps if r.status == "match"]
        assert all(r.instance is None for r in good)

    def test_line_stream_is_deterministic(self):
        first = [r.to_line() for r in run_suite("closure", count=2)]
        second = [r.to_line() for r in run_suite("closure", count=2)]
        assert first == second
        assert all("seconds" not in json.loads(line) for line in first)

    def test_timed_lines_differ_only_in_seconds(self):
        rep = next(iter(run_suite("cycles", max_n=2)))
        timed = json.loads(rep.to_line(include_seconds=True))
        plain = json.loads(rep.to_line())
        assert set(timed) - set(plain) == {"seconds"}

    def test_skip_until_drops_through_the_id(self):
        full = [r.id for r in run_suite("cycles", max_n=6)]
        resumed = [r.id for r in run_suite("cycles", max_n=6, skip_until="cycles-n4")]
        assert resumed == full[full.index("cycles-n4") + 1 :]

    def test_skip_until_unmatched_yields_nothing(self):
        assert list(run_suite("cycles", max_n=4, skip_until="cycles-n99")) == []

    def test_budget_marks_skipped(self):
        reps = list(run_suite("tournaments", count=8, budget=3))
        statuses = {r.status for r in reps}
        assert "skipped-budget" in statuses
        skipped = [r for r in reps if r.status == "skipped-budget"]
        assert all(r.computed is None for r in skipped)

    def test_split_root_tiny(self):
        reps = list(run_suite("split-root", count=3))
        assert [r.id for r in reps] == [
            "split-root-0000",
            "split-root-0001",
            "split-root-0002",
            "split-root-four-piece",
        ]
        assert all(r.status == "match" for r in reps)
