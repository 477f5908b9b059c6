import pytest

from matchedpairs import fleet

# Pairs used by the exhaustive per-pair tests; conj_S3 (36 cells, 1296-dim double) is
# covered separately where cost allows.
SMALL = list(fleet.SMALL)
ALL = list(fleet.BUILDERS)


@pytest.fixture(params=SMALL)
def small_pair(request):
    return request.param, fleet.get(request.param)


@pytest.fixture(params=ALL)
def any_pair(request):
    return request.param, fleet.get(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if RESULTS[n] else 'FAIL'}")
