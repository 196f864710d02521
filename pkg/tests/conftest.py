"""Shared pytest helpers: a recorder that emits one PASS/FAIL line per
acceptance criterion and repeats them in the terminal summary."""

RESULTS = []


def record(number, name, passed, detail=""):
    verdict = "PASS" if passed else "FAIL"
    line = f"ACCEPTANCE {number} ({name}): {verdict}"
    if detail:
        line += f" -- {detail}"
    RESULTS.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
