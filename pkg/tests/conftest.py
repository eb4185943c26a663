import pytest


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def criterion(request):
    lines = request.config.acceptance_lines

    def record(n, title, ok, detail=""):
        line = "criterion %2d %-4s %s%s" % (n, "PASS" if ok else "FAIL", title, " (%s)" % detail if detail else "")
        lines[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
