import types

from gammaratio import verify


def negated(fn):
    def flipped(*args, **kwargs):
        return -fn(*args, **kwargs)

    return flipped


def mutated_impl(*names):
    """default_impl() with the named functions sign-flipped."""
    impl = vars(verify.default_impl()).copy()
    for name in names:
        impl[name] = negated(impl[name])
    return types.SimpleNamespace(**impl)


# Lines recorded by the acceptance module, echoed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
