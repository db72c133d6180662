import pytest

from turan34.construction import complex_from_layout, enumerate_construction4


@pytest.fixture(scope="session")
def families():
    """layouts + compiled systems for every n up to 14, computed once."""
    out = {}
    for n in range(3, 15):
        layouts = enumerate_construction4(n)
        out[n] = [(lay, complex_from_layout(lay)) for lay in layouts]
    return out
