import pytest
from hypothesis import settings

# property tests own their randomness: fixed seed derivation, no deadline
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("repro")

from rbfrk.methods import MethodId  # noqa: E402

ALL_IDS = list(MethodId)
RBF_IDS = [m for m in MethodId if m.is_rbf]


@pytest.fixture(params=ALL_IDS, ids=lambda m: m.value)
def method_id(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import test_acceptance as acc

    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.summary_line(k))
        for name, ok, detail in acc.RESULTS[k]:
            if not ok:
                terminalreporter.write_line(f"    {name}: {detail}")
