"""End-to-end acceptance battery.

Fourteen checks, one per stated result or machinery guarantee, each at its
stated scale with its own wall-time ceiling. Every check prints a single
verdict line (shown in the run summary) before asserting, so a red check
still reports its counts. The verdict counts instances whose computed value
equals the stated one; nothing is loosened when the two disagree — a FAIL
line plus the serialized instance in the suite stream is the record.
"""

import time

from kernelsmith import (
    chordless_directed_cycles,
    gen_Rn,
    gen_Sn,
    gen_cycle,
    gen_mixed,
    gen_pithaya,
    gen_tournament,
    gen_tri_grid,
    kappa,
    presets,
    tournament_kappa,
)
from kernelsmith.bounds import bound_report
from kernelsmith.harness import run_suite


def verdict(num: int, name: str, good: int, total: int, started: float) -> float:
    elapsed = time.perf_counter() - started
    status = "PASS" if good == total else "FAIL"
    print(f"criterion {num} ({name}): {status} — {good}/{total} match, {elapsed:.2f}s")
    return elapsed


def test_criterion_01_cycles():
    started = time.perf_counter()
    results = [(n, kappa(gen_cycle(n).base).kappa) for n in range(2, 10)]
    good = sum(1 for n, k in results if k == n % 2)
    elapsed = verdict(1, "cycles", good, len(results), started)
    assert good == len(results), results
    assert elapsed < 1.0


def test_criterion_02_roses():
    started = time.perf_counter()
    results = [(n, kappa(gen_Rn(n).base).kappa) for n in range(1, 6)]
    good = sum(1 for _, k in results if k == 1)
    elapsed = verdict(2, "roses", good, len(results), started)
    assert good == len(results), results
    assert elapsed < 1.0


def test_criterion_03_stars():
    started = time.perf_counter()
    results = [(n, kappa(gen_Sn(n).base).kappa) for n in range(2, 5)]
    good = sum(1 for n, k in results if k == n)
    elapsed = verdict(3, "stars", good, len(results), started)
    assert good == len(results), results
    assert elapsed < 30.0


def test_criterion_04_tournaments():
    started = time.perf_counter()
    good = total = 0
    bad = []
    for s in range(200):
        n = (s % 6) + 1
        d = gen_tournament(n, seed=s).base
        total += 1
        if kappa(d).kappa == tournament_kappa(d):
            good += 1
        else:
            bad.append(s)
    elapsed = verdict(4, "tournaments", good, total, started)
    assert good == total, bad
    assert elapsed < 60.0


def test_criterion_05_grids():
    started = time.perf_counter()
    items = []
    for n in range(2, 6):
        items.append((f"t{n}x2", kappa(gen_tri_grid(n, 2).base).kappa, -(-n // 2)))
    for n in range(2, 6):
        items.append((f"t{n}x3", kappa(gen_tri_grid(n, 3).base).kappa, 1))
    for m in (4, 5):
        rep = bound_report(gen_tri_grid(3, m).base)
        holds = rep["exact"] is not None and rep["lower"] <= rep["exact"] <= rep["cic"]
        items.append((f"t3x{m}-sandwich", holds, True))
    good = sum(1 for _, got, want in items if got == want)
    elapsed = verdict(5, "grids", good, len(items), started)
    assert good == len(items), [i for i in items if i[1] != i[2]]
    assert elapsed < 60.0


def test_criterion_06_pithaya():
    started = time.perf_counter()
    items = [
        ("p3", kappa(gen_pithaya((3,)).base).kappa, 2),
        ("p3x3", kappa(gen_pithaya((3, 3)).base).kappa, 3),
    ]
    good = sum(1 for _, got, want in items if got == want)
    elapsed = verdict(6, "pithaya", good, len(items), started)
    assert good == len(items), items
    assert elapsed < 300.0


def test_criterion_07_mixed():
    started = time.perf_counter()
    items = []
    for n, m_list in ((1, (1,)), (2, (1, 1)), (2, (1, 2))):
        d = gen_mixed(n, m_list).base
        cic = len(chordless_directed_cycles(d))
        items.append(((n, m_list), (kappa(d).kappa, cic), (n, sum(m_list))))
    good = sum(1 for _, got, want in items if got == want)
    elapsed = verdict(7, "mixed", good, len(items), started)
    assert good == len(items), items
    assert elapsed < 60.0


def test_criterion_08_two_gadget_star():
    started = time.perf_counter()
    d = presets()["two-gadget-star"].base
    got = (kappa(d).kappa, len(chordless_directed_cycles(d)))
    good = 1 if got == (2, 7) else 0
    elapsed = verdict(8, "two-gadget-star", good, 1, started)
    assert got == (2, 7), got
    assert elapsed < 30.0


def suite_counts(name: str) -> tuple[int, int, list]:
    good = total = 0
    bad = []
    for report in run_suite(name):
        total += 1
        if report.status == "match":
            good += 1
        else:
            bad.append(report.id)
    return good, total, bad


def test_criterion_09_cycle_bound():
    started = time.perf_counter()
    good, total, bad = suite_counts("cycle-bound")
    elapsed = verdict(9, "cycle-bound", good, total, started)
    assert total == 300
    assert good == total, bad
    assert elapsed < 300.0


def test_criterion_10_closure():
    started = time.perf_counter()
    good, total, bad = suite_counts("closure")
    elapsed = verdict(10, "closure", good, total, started)
    assert total == 320  # 200 general + 120 acyclic-uniqueness
    assert good == total, bad
    assert elapsed < 300.0


def test_criterion_11_colored_cycles():
    started = time.perf_counter()
    good, total, bad = suite_counts("colored-cycles")
    elapsed = verdict(11, "colored-cycles", good, total, started)
    assert total == 3276  # all colorings of C_2..C_7 with up to 3 colors
    assert good == total, bad
    assert elapsed < 120.0


def test_criterion_12_theta():
    started = time.perf_counter()
    good, total, bad = suite_counts("theta")
    elapsed = verdict(12, "theta", good, total, started)
    assert total == 200
    assert good == total, bad
    assert elapsed < 300.0


def test_criterion_13_split_root():
    started = time.perf_counter()
    good, total, bad = suite_counts("split-root")
    elapsed = verdict(13, "split-root", good, total, started)
    assert total == 51  # 50 seeded specs plus the drawn four-piece shape
    assert good == total, bad
    assert elapsed < 300.0


def test_criterion_14_solver_oracle():
    started = time.perf_counter()
    good, total, bad = suite_counts("solver-oracle")
    elapsed = verdict(14, "solver-oracle", good, total, started)
    assert total == 1000  # 500 plain + 500 by admissible walks
    assert good == total, bad
    assert elapsed < 300.0
