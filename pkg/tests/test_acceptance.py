"""Exit criteria.  Every comparison is exact (zero tolerance).

Run with ``pytest tests/test_acceptance.py``; one PASS/FAIL line per
criterion is printed in the terminal summary.  ``python
tests/test_acceptance.py`` prints the same lines without pytest.
"""

import itertools
import subprocess
import sys
import time

import pytest

from slitplane import gf
from slitplane import identities as idt
from slitplane.gf import ClosedFormQuery
from slitplane.walks import endpoint_series, enumerate_walks, full_series

RESULTS: list[str] = []


def _all_pass(reports):
    bad = [r for r in reports if not r.passed]
    return not bad, ", ".join(f"{r.identity_name}: {r.first_mismatch}" for r in bad)


def criterion_1():
    start = time.perf_counter()
    table = enumerate_walks(14)
    ok = gf.build_S(14) == full_series(table)
    elapsed = time.perf_counter() - start
    return ok and elapsed < 60, f"S vs DP, all (i, j), n <= 14, {elapsed:.2f}s"


def criterion_2():
    table = enumerate_walks(14)
    anchors = {(1, 1): 1, (2, 2): 3, (1, 2): 7}
    for (i, n), want in anchors.items():
        if table.count(2 * n, -i, -i) != want or gf.closed_form_a_diag_neg(ClosedFormQuery(i, n)) != want:
            return False, f"anchor a_(-{i},-{i})({2 * n}) != {want}"
    r = idt.check_closed_form_neg(14)
    return r.passed, "1 <= i <= 4, i <= n <= 7" + (f" mismatch {r.first_mismatch}" if not r.passed else "")


def criterion_3():
    r = idt.check_diagonal_correction(14)
    printed = idt.check_printed_diag_pos(14)
    mm = printed.first_mismatch
    witness_ok = (
        printed.status == idt.KNOWN
        and mm is not None
        and (mm.n, mm.exponents, mm.lhs, mm.rhs) == (2, (1, 1), 9, 2)
    )
    return r.passed and witness_ok, "delta + closed form = DP; printed form flagged at (1,1): 9 vs 2"


def criterion_4():
    r = idt.check_decomposition(24)
    return r.passed and r.order == 24, "F = F_plus + 1 + F_minus(1/y) to t^24, y-supports split"


def criterion_5():
    r1 = idt.check_theorem2_random(20, seed=0, count=50)
    r2 = idt.check_lagrange_classical(12)
    ok = r1.passed and r2.passed and r1.order == 20
    return ok, "50 seeded instances to t^20; classical Lagrange n <= 12"


def criterion_6():
    reports = [idt.check_u_dual_definition(30), idt.check_t_from_s(30)]
    reports += idt.u_fact_reports(30)
    reports.append(idt.check_DE_product(24))
    reports += [idt.check_e_proof2(i, 24) for i in range(1, 5)]
    reports.append(idt.check_half_integer_all(12))
    reports += [idt.check_conj8_slice(i, 24) for i in range(1, 6)]
    reports.append(idt.check_second_proof_derivative(24))
    reports.append(idt.check_second_proof_antiderivative(24))
    kernel = idt.check_kernel_derivation_of_F(16)
    reports.append(kernel)
    printed_DE = idt.check_DE_product_printed(24)
    ok, bad = _all_pass(reports)
    ok = ok and kernel.order == 16 and printed_DE.status == idt.KNOWN
    return ok, f"{len(reports)} identities exact" + (f"; failing: {bad}" if bad else "")


def criterion_7():
    ok = gf.build_s(14) == endpoint_series(enumerate_walks(14), 0, 1)
    return ok, "s = S_{0,1} through t^14"


def _listed_rows(N):
    steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    rows = {(0, 0, 0, 1)}
    for n in range(1, N + 1):
        counts = {}
        for word in itertools.product(steps, repeat=n):
            i = j = 0
            for di, dj in word:
                i, j = i + di, j + dj
                if j == 0 and i <= 0:
                    break
            else:
                counts[i, j] = counts.get((i, j), 0) + 1
        rows |= {(n, i, j, c) for (i, j), c in counts.items()}
    return rows


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "slitplane", *args], capture_output=True)


def criterion_8():
    c14a, c14b = _cli("check", "--order", "14"), _cli("check", "--order", "14")
    c24 = _cli("check", "--order", "24")
    tab_a, tab_b = _cli("table", "--order", "4"), _cli("table", "--order", "4")
    lines = tab_a.stdout.decode().splitlines()
    rows = {tuple(int(v) for v in line.split(",")) for line in lines[1:]}
    forced = {(1, 0, 1, 1), (1, 1, 0, 1), (1, 0, -1, 1), (2, -1, -1, 1), (4, -2, -2, 3)}
    ok = (
        c14a.returncode == 0
        and c24.returncode == 0
        and tab_a.returncode == 0
        and lines[0] == "n,i,j,count"
        and forced <= rows
        and rows == _listed_rows(4)
        and c14a.stdout == c14b.stdout
        and tab_a.stdout == tab_b.stdout
    )
    return ok, "check --order 14/24 exit 0; table --order 4 equals exhaustive listing; byte-deterministic"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 9)])
def test_criterion(criterion):
    ok, detail = criterion()
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion.__name__.replace('_', ' ')}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for c in CRITERIA:
        ok, detail = c()
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {c.__name__.replace('_', ' ')}: {detail}")
    sys.exit(1 if failures else 0)
