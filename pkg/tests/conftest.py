import functools

import numpy as np
import pytest

from schemekit.constructors import build
from schemekit.spectrum import compute_spectrum


@functools.lru_cache(maxsize=None)
def built(name):
    return build(name)


@functools.lru_cache(maxsize=None)
def spectrum_of(name):
    b = built(name)
    return compute_spectrum(b.tensor, scheme=b.scheme)


def adjacency_stack(scheme):
    return np.stack([scheme.adjacency(i) for i in range(scheme.rank)])


SMALL_FAMILIES = [
    "k2",
    "k3",
    "c5",
    "z3",
    "z4",
    "dodecahedron",
    "hamming:3,2",
    "johnson:5,2",
    "nbjohnson:2,3,2",
    "extension(k3,2)",
    "extension(z3,2)",
    "power(k2,3)",
    "composition(k3,c5)",
    "genjohnson(k3,3,2)",
    "attenuated:2,2,1,1",
]


@pytest.fixture(params=SMALL_FAMILIES)
def family(request):
    return request.param


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        # a criterion that raised before reporting still gets its FAIL line
        terminalreporter.write_line(ACCEPTANCE_RESULTS.get(n, f"criterion {n:>2}: FAIL  did not complete"))
