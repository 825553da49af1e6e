from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

# acceptance results collected by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}  {detail}")


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile (or load from cache) the kernels once, outside any timed region."""
    from wordlab import Word
    from wordlab.complexity import complexity_sequence
    from wordlab.enumeration import count_sequences

    complexity_sequence(Word.from_str("0110"))
    count_sequences(2, 4)
    count_sequences(3, 4, canonical=False)
