import numpy as np
import pytest

from gyrobn import make_ops

# one representative per family and curvature sign
DESCRIPTORS = [
    "stereo:K=-1:n=8",
    "stereo:K=1:n=8",
    "radius:K=-1:n=8",
    "radius:K=1:n=8",
    "klein:K=-1:n=8",
    "grass-onb:n=10:p=3",
    "grass-pp:n=6:p=2",
    "spd-aim:n=4",
    "spd-lem:n=4",
    "spd-lcm:n=4",
    "correlation:n=5",
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=DESCRIPTORS)
def ops(request):
    return make_ops(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
