import pytest

from qso3.qscalar import generic_ctx, root_of_unity_ctx


@pytest.fixture(scope="session")
def q13():
    return generic_ctx(q=1.3)


@pytest.fixture(scope="session")
def q4():
    return generic_ctx(q=4.0)


@pytest.fixture(scope="session")
def qphase():
    import numpy as np

    return generic_ctx(q=np.exp(0.37j))


@pytest.fixture(scope="session")
def p5():
    return root_of_unity_ctx(5, 1)


@pytest.fixture(scope="session")
def p8():
    return root_of_unity_ctx(8, 1)
