"""Collects acceptance outcomes and prints one verdict line per criterion."""

import re

CRITERIA = {
    1: "shear map undone by the mirrored base, residual <= 1e-9",
    2: "left and right shear formulas agree, residual <= 1e-10",
    3: "bordered embedding reproduces the block map with fixed inertia, 1e-9",
    4: "dual block map inverts the block map across all classes, 1e-9",
    5: "gated pairs stay ordered both ways; strict pairs stay strict",
    6: "spectral whole-interval criterion matches dense sampling",
    7: "translated-base and conjugated-base identities, residual <= 1e-9",
    8: "congruence factor reproduces the shear image of the base, 1e-8",
    9: "component membership criterion matches randomized path search",
    10: "cayley round trip, negated-inverse involution, rational inverses",
    11: "black-box parameter recovery, 1e-5 finite-difference / 1e-7 exact",
    12: "class census {2:6,3:10,4:15,5:21,6:28}; rank pairs separate classes",
    13: "effect automorphisms: endpoints, interval, order, four factors",
    14: "embedding fixture keeps order and flags the far endpoint",
    15: "divided-difference verdicts consistent with direct matrix pairs",
    16: "integral-representation evaluation: margins and spectral agreement",
    17: "byte-identical reports modulo timing; lossless matrix files",
}

_ACCEPT = re.compile(r"test_acceptance\.py::test_c(\d+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _ACCEPT.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call":
        _results[k] = report.passed
    elif report.when == "setup" and (report.failed or report.skipped):
        _results[k] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(_results):
        status = "PASS" if _results[k] else "FAIL"
        terminalreporter.write_line(f"criterion {k:02d}: {status}  {CRITERIA.get(k, '')}")
