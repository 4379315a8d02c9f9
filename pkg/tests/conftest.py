import pytest

from surf10.constructions import build_family, certify


class FamilyCache:
    """Builds each family once per session (seed 0, default prime)."""

    def __init__(self):
        self._built = {}
        self._reports = {}

    def construction(self, f):
        if f not in self._built:
            self._built[f] = build_family(f, seed=0)
        return self._built[f]

    def ideal(self, f):
        return self.construction(f).ideal

    def report(self, f):
        if f not in self._reports:
            c = self.construction(f)
            self._reports[f] = certify(c.ideal, f, seed=0, verdict=c.smoothness)
        return self._reports[f]


@pytest.fixture(scope="session")
def families():
    return FamilyCache()


@pytest.fixture(scope="session")
def acceptance_log(request):
    log = {}
    request.config._acceptance_log = log
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = getattr(config, "_acceptance_log", None)
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(log):
        ok, title, detail = log[k]
        word = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d} {word}  {title}: {detail}")
