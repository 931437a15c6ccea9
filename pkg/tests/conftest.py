from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from endoq.model import QueueingProblem, RequeueingProblem

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_report(request):
    """Per-criterion verdicts, printed in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    report = config.stash.get(_ACCEPTANCE_KEY, None)
    if not report:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(report):
        passed, detail = report[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


# -- shared strategies ---------------------------------------------------------

def weights(min_n=1, max_n=5, max_w=20):
    return st.lists(st.integers(1, max_w), min_size=min_n, max_size=max_n).map(
        lambda ws: tuple(sorted(ws, reverse=True)))


costs = st.fractions(min_value=0, max_value=120, max_denominator=4)


@st.composite
def queue_problems(draw, min_n=1, max_n=5):
    return QueueingProblem(draw(weights(min_n, max_n)), draw(costs))


@st.composite
def requeue_problems(draw, min_n=1, max_n=5, ordered=False, m0=None):
    q = draw(queue_problems(min_n, max_n))
    machines = m0 if m0 is not None else draw(st.integers(1, q.n))
    machines = min(machines, q.n)
    order = list(range(1, q.n + 1)) if ordered else draw(st.permutations(range(1, q.n + 1)))
    return RequeueingProblem.from_order(q, machines, order)


EXAMPLE1 = (20, 15, 10, 5)
EXAMPLE2 = (20, 15, 13, 13, 5)
EXAMPLE3 = (13, 7, 6, 1)


def example1(b) -> QueueingProblem:
    return QueueingProblem(EXAMPLE1, Fraction(b))


def example2() -> RequeueingProblem:
    return RequeueingProblem.from_order(QueueingProblem(EXAMPLE2, 18), 1, [1, 2, 3, 4, 5])


def example3() -> RequeueingProblem:
    return RequeueingProblem.from_order(QueueingProblem(EXAMPLE3, 15), 1, [4, 3, 2, 1])
