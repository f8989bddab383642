from __future__ import annotations

from hypothesis import HealthCheck, settings

from instances import ACCEPTANCE

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k}: {ACCEPTANCE[k]}")
