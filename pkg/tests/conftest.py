import pytest

from drinfeldkit.fields import GF
from drinfeldkit.polys import Poly


def field_for(q):
    for p in (2, 3, 5, 7):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return GF(p, e)
    raise ValueError(q)


@pytest.fixture(params=[2, 3, 4])
def Fq(request):
    return field_for(request.param)


def P(F, s):
    return Poly.parse(F, s)


# -- acceptance reporting -------------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, text = mark.args
    prev = _ACCEPTANCE.get(n, (True, text))
    ok = prev[0] and not rep.failed
    _ACCEPTANCE[n] = (ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, text = _ACCEPTANCE[n]
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
