import pytest

from graphbench import enumerate_connected_nonisomorphic


@pytest.fixture(scope="session")
def corpus6():
    return enumerate_connected_nonisomorphic(6)


@pytest.fixture(scope="session")
def corpus7():
    return enumerate_connected_nonisomorphic(7)


@pytest.fixture(scope="session")
def corpus_small():
    """All connected classes on 1..5 vertices."""
    graphs = []
    for n in range(1, 6):
        graphs.extend(enumerate_connected_nonisomorphic(n))
    return graphs
