from __future__ import annotations

import pytest

from lrkm import precision


@pytest.fixture(autouse=True)
def _standard_precision(monkeypatch):
    # tests choose their precision explicitly
    monkeypatch.delenv(precision.ENV_VAR, raising=False)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
