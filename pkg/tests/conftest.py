import pytest

from fiblike import BACKENDS, RecurrenceParams, get_kernels

# (A, B, C, f0, f1) of the five worked examples
EXAMPLES = {
    1: (3.0, 1.8, -1.0, 1.0, 5.0),
    2: (3.0, 1.0, -1.0, 1.0, 5.0),
    3: (3.0, 0.0, -1.0, 1.0, 5.0),
    4: (3.0, -1.0, -1.0, 1.0, 5.0),
    5: (3.0, -1.5, -1.0, 1.0, 5.0),
}


@pytest.fixture
def example_params():
    return {k: RecurrenceParams(*v) for k, v in EXAMPLES.items()}


@pytest.fixture(params=BACKENDS)
def backend(request):
    return get_kernels(request.param)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.RESULTS):
        status, text = test_acceptance.RESULTS[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {text}")
