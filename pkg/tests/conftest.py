import time

_SESSION_START = time.perf_counter()


def session_elapsed() -> float:
    return time.perf_counter() - _SESSION_START


def pytest_terminal_summary(terminalreporter):
    terminalreporter.write_line(
        f"suite wall-clock: {session_elapsed():.1f} s (budget 60 s)")
