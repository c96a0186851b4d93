"""One test per acceptance criterion, at the stated sizes and time limits.

Each test prints a PASS/FAIL line (also collected into the terminal summary).
"""

import time

import pytest

from branchdepth.matroid import uniform
from branchdepth.suites import measure_uniform_cd, run_suite

import brute

# criterion -> (suite names, time limit in seconds)
CRITERIA = {
    1: (["main-td"], 120),
    2: (["constants"], 30),
    3: (["cd-bounds"], 300),
    4: (["seymour"], 300),
    5: (["fund"], 600),
    6: (["path"], 120),
    7: (["rd-to-td"], 300),
    8: (["shrub"], 600),
    9: (["axioms"], 300),
    10: (["wqo"], 600),
}


def report(log, number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    log.append(line)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    names, limit = CRITERIA[number]
    results = [run_suite(name) for name in names]
    seconds = sum(r.seconds for r in results)
    ok = all(r.ok for r in results) and seconds < limit
    checked = sum(r.checked for r in results)
    detail = f"{'+'.join(names)}: {checked} checks in {seconds:.1f}s (limit {limit}s)"
    failures = [r.counterexample for r in results if not r.ok]
    if failures:
        detail += f" first counterexample {failures[0]}"
    report(acceptance_log, number, ok, detail)
    assert ok, detail


def test_criterion_11_uniform_contraction_depth(acceptance_log):
    start = time.perf_counter()
    measured = measure_uniform_cd(6)
    oracle = {
        n: brute.matroid_depth(n, lambda s, m=uniform(n - 1, n): m.rank(sum(1 << i for i in s)), ("contract",))
        for n in range(2, 7)
    }
    ok = measured == oracle
    table = ", ".join(f"n={n}: {measured[n]} (n+1={n + 1})" for n in sorted(measured))
    agrees = all(measured[n] == n + 1 for n in measured)
    detail = (
        f"cd(U(n-1,n)) {table}; matches brute-force oracle: {ok}; "
        f"matches n+1: {agrees} in {time.perf_counter() - start:.1f}s"
    )
    report(acceptance_log, 11, ok, detail)
    assert ok, detail
