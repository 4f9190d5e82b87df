"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

The lines are also collected and repeated in the terminal summary, so they
show up without ``-s``.
"""
import math
import random
import time
from fractions import Fraction as F

import pytest

from diamondrate import load_fixture
from diamondrate.block_oracle import OracleConfig, alpha_block, gamma_block, min_labels_search
from diamondrate.bounds import (alpha, best_ns_code_expected_length, gamma,
                                ns_code_length_lower_bound, rate_report)
from diamondrate.coding_schemes import (arith_scheme, arith_structure_check, check_zero_error,
                                        expected_lengths, gf2_scheme)
from diamondrate.equivalence import scalar_partition, v_count
from diamondrate.majorization import entropy, is_majorized
from diamondrate.pair_structure import pair_index_set, preimage_count_given_a3
from conftest import random_pmf, robin_hood

RESULTS: list[str] = []
FIXTURE_NAMES = ("gf3", "arithsum", "gf2sum")


def report(n, checks):
    failing = [name for name, ok in checks.items() if not ok]
    line = f"criterion {n:>2}: {'PASS' if not failing else 'FAIL'}"
    if failing:
        line += " (failing: " + "; ".join(failing) + ")"
    RESULTS.append(line)
    print(line)
    assert not failing, line


def test_criterion_01_gf3_partitions():
    t0 = time.perf_counter()
    f = load_fixture("gf3")
    side1 = [scalar_partition(f, 1, a3).classes for a3 in range(3)]
    side2 = [scalar_partition(f, 2, a3).classes for a3 in range(3)]
    checks = {
        "side-1 partitions": side1 == [((0,), (1,), (2,)), ((0, 1), (2,)), ((1, 2), (0,))],
        "side-2 partitions": side2 == [((0,), (1,), (2,)), ((1, 2), (0,)), ((0, 1), (2,))],
        "V table side 1 = (3,2,2)": [v_count(f, 1, a) for a in range(3)] == [3, 2, 2],
        "V table side 2 = (3,2,2)": [v_count(f, 2, a) for a in range(3)] == [3, 2, 2],
    }
    checks["runtime < 1 s"] = time.perf_counter() - t0 < 1
    report(1, checks)


def test_criterion_02_gf3_bounds():
    t0 = time.perf_counter()
    rep = rate_report(load_fixture("gf3"), 2)
    formula = 1 - (4 / 9) * math.log(2, 3)
    checks = {
        "r1_lb = 1 - (4/9)log3(2)": abs(rep.r1_lb - formula) <= 1e-12,
        "r1_lb within 1e-6 of 0.719615": abs(rep.r1_lb - 0.719615) <= 1e-6,
        "alpha within 1e-9 of 8/9 + log2(3)/3": abs(rep.alpha - (8 / 9 + math.log2(3) / 3)) <= 1e-9,
        "2*sum_rate_avg_lb within 1e-4 of 1.7725": abs(2 * rep.sum_rate_avg_lb - 1.7725) <= 1e-4,
    }
    checks["runtime < 1 s"] = time.perf_counter() - t0 < 1
    report(2, checks)


def test_criterion_03_pair_tables():
    f = load_fixture("gf3")
    expected = {
        (0, 0): {(1, 1), (2, 2), (3, 3)}, (0, 1): {(1, 3), (2, 1), (3, 2)},
        (0, 2): {(1, 2), (2, 3), (3, 1)}, (1, 0): {(1, 1), (1, 2), (2, 1)},
        (1, 1): {(2, 2)}, (1, 2): set(), (2, 0): {(2, 2)},
        (2, 1): {(1, 1), (1, 2), (2, 1)}, (2, 2): set(),
    }
    got = {}
    for (a3, b) in expected:
        got[(a3, b)] = (set(pair_index_set(f, a3, b).as_dict())
                        if preimage_count_given_a3(f, b, a3) else set())
    h10 = pair_index_set(f, 1, 0).as_dict()
    checks = {
        "table matches": got == expected,
        "|V12(1,0)| = 3": len(got[(1, 0)]) == 3,
        "h(1,1)=4, h(1,2)=h(2,1)=2": h10 == {(1, 1): 4, (1, 2): 2, (2, 1): 2},
        "h(2,2)=1 at (a3,b)=(2,0)": pair_index_set(f, 2, 0).as_dict() == {(2, 2): 1},
    }
    report(3, checks)


def test_criterion_04_arith_bounds():
    t0 = time.perf_counter()
    rep = rate_report(load_fixture("arithsum"), 2)
    checks = {
        "gamma = 1": abs(rep.gamma_1 - 1) <= 1e-12 and abs(rep.gamma_2 - 1) <= 1e-12,
        "alpha = 0.5": abs(rep.alpha - 0.5) <= 1e-12,
        "2*sum_rate_avg_lb within 1e-4 of 2.31128": abs(2 * rep.sum_rate_avg_lb - 2.31128) <= 1e-4,
    }
    checks["runtime < 1 s"] = time.perf_counter() - t0 < 1
    report(4, checks)


def test_criterion_05_gf2_tightness():
    t0 = time.perf_counter()
    f = load_fixture("gf2sum")
    rep = rate_report(f, 2)
    bounds_ok = all(abs(v - 1) <= 1e-12 for v in
                    (rep.r3_sum_lb, rep.r1_lb, rep.r2_lb, rep.sum_rate_avg_lb))
    zero_error, rates = True, True
    for k in range(1, 7):
        for c in range(k + 1):
            code = gf2_scheme(k, c)
            zero_error &= check_zero_error(code, f)
            rates &= expected_lengths(code, f).exact_rates() == (F(c, k), F(k - c, k), 1, 1)
    checks = {"all four lower bounds = 1": bounds_ok, "zero-error for k <= 6": zero_error,
              "rates (c/k, 1-c/k, 1, 1)": rates}
    checks["runtime < 5 s"] = time.perf_counter() - t0 < 5
    report(5, checks)


def test_criterion_06_oracle_equivalence():
    t0 = time.perf_counter()
    checks = {}
    for name in FIXTURE_NAMES:
        f = load_fixture(name)
        for k in (1, 2, 3):
            cfg = OracleConfig(k=k)
            ok = all(abs(gamma_block(f, u, cfg) - gamma(f, u)) <= 1e-9 for u in (1, 2))
            ok &= abs(alpha_block(f, cfg) - alpha(f)) <= 1e-9
            checks[f"{name} k={k}"] = ok
    checks["runtime < 30 s"] = time.perf_counter() - t0 < 30
    report(6, checks)


def test_criterion_07_min_labels():
    t0 = time.perf_counter()
    checks = {}
    for name in FIXTURE_NAMES:
        f = load_fixture(name)
        checks[name] = all(min_labels_search(f, u, a3) == v_count(f, u, a3)
                           for u in (1, 2) for a3 in range(f.a_size))
    checks["runtime < 10 s"] = time.perf_counter() - t0 < 10
    report(7, checks)


def test_criterion_08_ns_length_suite():
    rng = random.Random(8)
    violations = 0
    for _ in range(1000):
        p = random_pmf(rng, max_len=64)
        z = rng.choice((2, 3, 4))
        length = float(best_ns_code_expected_length(p, z))
        if length < ns_code_length_lower_bound(entropy(p, z), z):
            violations += 1
    report(8, {f"zero violations (got {violations})": violations == 0})


def test_criterion_09_schur_concavity_suite():
    rng = random.Random(9)
    violations = not_comparable = 0
    for _ in range(1000):
        q = random_pmf(rng, max_len=64)
        p = robin_hood(q, rng.randint(0, 60), rng, pad=rng.randint(0, 4))
        if not is_majorized(p, q):
            not_comparable += 1
        elif entropy(p, 2) < entropy(q, 2) - 1e-12:
            violations += 1
    report(9, {f"zero violations (got {violations})": violations == 0,
               "all pairs comparable": not_comparable == 0})


def test_criterion_10_arith_scheme():
    t0 = time.perf_counter()
    f = load_fixture("arithsum")
    exhaustive = all(check_zero_error(arith_scheme(k), f) for k in (2, 4, 6))
    structural = arith_structure_check(16)
    ratio = expected_lengths(arith_scheme(16)).e_len_1 / 16
    checks = {
        "exhaustive zero-error k <= 6": exhaustive,
        "structural zero-error k = 16": structural,
        f"e_len_1/k = {float(ratio):.4f} in [1.25, 1.375]": F(5, 4) <= ratio <= F(11, 8),
    }
    checks["runtime < 60 s"] = time.perf_counter() - t0 < 60
    report(10, checks)


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.write_line("")
        for line in RESULTS:
            reporter.write_line(line)
