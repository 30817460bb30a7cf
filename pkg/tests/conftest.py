import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cgsieve.factorbase import build_factor_base  # noqa: E402
from cgsieve.numfield import make_field  # noqa: E402
from cgsieve.pip import PipContext  # noqa: E402
from cgsieve.pipeline import default_config, run_classgroup  # noqa: E402
from cgsieve.sieve import SieveRegion, collect_relations  # noqa: E402

PIP_FIELDS = {
    "x2+5": [5, 0, 1],
    "x2+1": [1, 0, 1],
    "x2+x+6": [6, 1, 1],
    "x3-x-1": [-1, -1, 0, 1],
}


@pytest.fixture(scope="session")
def f5():
    return make_field([5, 0, 1])


@pytest.fixture(scope="session")
def fb5(f5):
    return build_factor_base(f5, 10)


@pytest.fixture(scope="session")
def sweep5(f5, fb5):
    """Full sweep t=1, S=30 over the B=10 base of X^2+5."""
    return collect_relations(f5, fb5, SieveRegion(1, 30), target=10**9)


@pytest.fixture(scope="session")
def cubic():
    return make_field([-1, -1, 0, 1])


@pytest.fixture(scope="session")
def pip_runs():
    """Default class group run and PIP context for each PIP test field."""
    out = {}
    for name, T in PIP_FIELDS.items():
        field = make_field(T, label=name)
        run = run_classgroup(field, default_config(field))
        out[name] = (field, run, PipContext(field, run.fb, run.relations.relations))
    return out


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request, capsys):
    """Call with (number, title, ok, seconds, limit); records and prints one line."""

    def report(num, title, ok, seconds, limit=None):
        within = limit is None or seconds < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        line = f"[{status}] {num:2d}. {title}: {seconds:.2f}s{budget}"
        request.config.acceptance_lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok and within

    return report
