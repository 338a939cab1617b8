from __future__ import annotations

from helpers import ACCEPTANCE

TITLES = {
    1: "Goppa [64,56,4] example over F_9/F_3",
    2: "LCD family [4*3^m, 3^m], m = 0, 1, 2",
    3: "self-orthogonal family [4*3^m, 3^m], m = 0, 1, 2",
    4: "self-dual family [6*3^m, 3^(m+1)], m = 0, 1",
    5: "ACar over F_17, [42, 22, 5]",
    6: "theorem property suites (>= 200 instances each)",
    7: "EAQECC: MDS at t = 1, bounds at t = 2",
    8: "Goppa dimension and distance bounds (>= 500 instances)",
}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        parts = ACCEPTANCE.get(n)
        if not parts:
            terminalreporter.write_line(f"criterion {n}: NOT RUN  {TITLES[n]}")
            continue
        ok = all(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}")
        for name, good, detail in parts:
            terminalreporter.write_line(f"    [{'ok' if good else 'FAIL'}] {name}: {detail}")
