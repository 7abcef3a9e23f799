import itertools

import pytest


def brute_nonadjacent(d):
    """Non-adjacent pairs of H_d straight from the definition, via bit strings."""
    strings = ["".join(bits) for bits in itertools.product("01", repeat=d)]
    out = []
    for a, b in itertools.combinations(strings, 2):
        if sum(x != y for x, y in zip(a, b)) >= 2:
            out.append((a, b))
    return out


@pytest.fixture
def h2_pairs():
    # (00, 11) and (01, 10) as integers with position 1 in bit 0
    return {frozenset((0, 3)), frozenset((1, 2))}


ACCEPTANCE = {}


def record_acceptance(number, ok, detail):
    """Remember one criterion verdict; printed in the terminal summary."""
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
