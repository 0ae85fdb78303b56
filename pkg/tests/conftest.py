import pytest

from qfriction import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile (or load from cache) every kernel once so timed tests
    # measure computation, not compilation
    kernels.warm_up()
