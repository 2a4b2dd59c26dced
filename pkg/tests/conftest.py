import numpy as np
import pytest

from rotoflex import ga, golden, signals


def brute_blade_product(a: int, b: int) -> tuple[int, int]:
    """Concatenate index lists, bubble sort counting swaps, contract pairs."""
    seq = [j for j in range(a.bit_length()) if a >> j & 1]
    seq += [j for j in range(b.bit_length()) if b >> j & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
                changed = True
    out = []
    for j in seq:
        if out and out[-1] == j:
            out.pop()  # s_j s_j = +1
        else:
            out.append(j)
    mask = 0
    for j in out:
        mask |= 1 << j
    return mask, sign


def brute_product(a: ga.Multivector, b: ga.Multivector) -> dict[int, float]:
    acc: dict[int, float] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m, s = brute_blade_product(ma, mb)
            acc[m] = acc.get(m, 0.0) + s * ca * cb
    return acc


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def case1():
    x = signals.to_vector(golden.CASE1_SOURCE)
    return golden.CASE1_CIRCUIT, x, golden.CASE1_SOURCE.omega


@pytest.fixture
def case2():
    x = signals.to_vector(golden.CASE2_SOURCE)
    return golden.CASE2_CIRCUIT, x, golden.CASE2_SOURCE.omega


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


_criteria: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when != "call" and not (report.failed or report.skipped):
        return
    number, title = props["criterion"]
    entry = _criteria.setdefault(number, {"title": title, "failed": [], "count": 0})
    if report.when == "call":
        entry["count"] += 1
    if report.failed:
        entry["failed"].append(report.nodeid.split("::", 1)[-1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"[{status}] criterion {number}: {entry['title']} ({entry['count']} checks)"
        if entry["failed"]:
            line += " failing: " + ", ".join(entry["failed"])
        terminalreporter.write_line(line)
