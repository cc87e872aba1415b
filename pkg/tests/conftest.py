import pytest

from grasstwist.field import PrimeField, make_rng

P = (1 << 61) - 1


@pytest.fixture
def F():
    return PrimeField(P)


@pytest.fixture
def rng():
    return make_rng(12345)


# acceptance criteria: one line each in the terminal summary
ACCEPTANCE = {}


def record(number, ok, detail):
    ACCEPTANCE[number] = ("PASS" if ok else "FAIL", detail)
    print("criterion %d: %s - %s" % (number, "PASS" if ok else "FAIL", detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, verdict, detail))
