from collections import defaultdict

import pytest

_ACCEPTANCE: dict[int, list[tuple[bool, str]]] = defaultdict(list)


@pytest.fixture
def record():
    """Record a sub-result of an acceptance criterion for the end-of-run summary."""
    def _record(criterion: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[criterion].append((bool(ok), detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        results = _ACCEPTANCE[crit]
        ok = all(r for r, _ in results)
        failed = [d for r, d in results if not r]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({sum(r for r, _ in results)}/{len(results)} checks)"
        if failed:
            line += "  failing: " + "; ".join(failed)
        terminalreporter.write_line(line)
