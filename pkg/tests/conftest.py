import random

import pytest

from linkcob.forms import BilinearForm

SEED = 20240101

CRITERIA = {
    1: "exactness fixtures",
    2: "reflexivity suite",
    3: "symmetry suite",
    4: "counterexample gate",
    5: "stabilization suite",
    6: "Witt search vs brute force",
    7: "SNF/HNF oracle",
    8: "convention robustness",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n = mark.args[0]
    results = item.config._criteria
    ok, secs = results.get(n, (True, 0.0))
    if rep.failed:
        ok = False
    if rep.when == "call":
        secs += rep.duration
    results[n] = (ok, secs)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, secs = results[n]
        terminalreporter.write_line(
            f"criterion {n} ({CRITERIA[n]}): {'PASS' if ok else 'FAIL'}  [{secs:.2f} s]")


@pytest.fixture(params=["right", "left"])
def adjoint(request):
    """Both matrix conventions for the adjoint map."""
    return request.param


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_matrix(rng, rows, cols, bound):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def random_form(rng, max_rank=4, bound=3, epsilon=None, adjoint="right"):
    m = rng.randint(0, max_rank)
    eps = epsilon if epsilon is not None else rng.choice((1, -1))
    return BilinearForm(random_matrix(rng, m, m, bound), eps, adjoint)
