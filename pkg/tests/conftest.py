import pytest
from hypothesis import settings

from sparsepaving import build_mk, build_tictactoe, build_vamos, graph_prism, path_graph, random_sparse_paving, validate

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def small_instances():
    """Named instances with n <= 10, used by the exhaustive oracle tests."""
    out = {
        "M3": build_mk(3),
        "M3*": build_tictactoe(),
        "vamos": build_vamos(),
        "P3-prism": graph_prism(path_graph(3)),
        "U44": validate(4, 4, []),
        "U04": validate(4, 0, []),
        "rank1-loop": validate(3, 1, [[0]]),
    }
    for seed in range(6):
        n = 6 + seed % 5
        r = 2 + seed % (n - 2)
        out[f"rand-{seed}"] = random_sparse_paving(n, r, 12, seed)
    return out


SMALL = small_instances()


@pytest.fixture(params=sorted(SMALL), ids=sorted(SMALL))
def small(request):
    return SMALL[request.param]


@pytest.fixture
def m3():
    return build_mk(3)


@pytest.fixture
def vamos():
    return build_vamos()


@pytest.fixture
def ttt():
    return build_tictactoe()


# -- acceptance summary ------------------------------------------------------

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _ACCEPTANCE.append((report.nodeid.split("::", 1)[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
