import pytest

from shardsec.params import validate

# Rows of the published years-to-fail table, in table order.
TABLE_ROWS = [
    dict(N=1000, K=800, M=200, M_sel=200, n=100, r="0.333", R="0.20", N_s=365),
    dict(N=1000, K=800, M=200, M_sel=200, n=100, r="0.333", R="0.20", N_s=185),
    dict(N=1400, K=800, M=200, M_sel=200, n=200, r="0.333", R="0.20", N_s=365),
    dict(N=1000, K=800, M=200, M_sel=200, n=100, r="0.333", R="0.15", N_s=365),
    dict(N=1000, K=800, M=250, M_sel=250, n=100, r="0.333", R="0.20", N_s=365),
    dict(N=1000, K=800, M=250, M_sel=250, n=100, r="0.333", R="0.20", N_s=185),
    dict(N=1000, K=800, M=250, M_sel=125, n=100, r="0.333", R="0.20", N_s=185),
    dict(N=1000, K=800, M=250, M_sel=125, n=80, r="0.333", R="0.20", N_s=185),
]


@pytest.fixture
def row1():
    return validate(TABLE_ROWS[0])


def small_params(n, lam, m_sel, r="1/2", M=None, N=None):
    """Small valid parameter vector with K = lam * n."""
    K = lam * n
    M = m_sel if M is None else M
    N = K + 1 if N is None else N
    return validate(dict(N=N, K=K, M=M, M_sel=m_sel, n=n, r=r, R="1/4", N_s=1))


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
