import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pencilalg.algebra import Algebra, registry  # noqa: E402

# every algebra the structural suites run over
CORPUS = ("L1", "L2", "T2", "D", "C2", "M2", "T3", "Dn(3)", "dsum(L1,L1)", "dsum(T2,D)", "Tn(2)", "C2+D")
# corpus members with a nonvanishing characteristic form
NONDEGENERATE = CORPUS


def perturbed_t2() -> Algebra:
    """T2 with y·x = x + y (the -1 dropped)."""
    return Algebra.from_products(
        ["1", "x", "y"],
        {("x", "x"): {"x": 1}, ("y", "x"): {"x": 1, "y": 1}, ("y", "y"): {"y": 1}},
        unity="1",
    )


def matrix_unit_subalgebra(units) -> Algebra:
    """Span of the given matrix units (i, j), assumed closed under multiplication."""
    names = [f"E{i}{j}" for i, j in units]
    prods = {}
    for i, j in units:
        for k, l in units:
            if j == k:
                prods[(f"E{i}{j}", f"E{k}{l}")] = {f"E{i}{l}": 1}
    return Algebra.from_products(names, prods)


# unital, index 1, H of dimension 2 and 3
A5 = ((1, 1), (2, 2), (3, 3), (1, 2), (1, 3))
A7 = ((1, 1), (2, 2), (3, 3), (4, 4), (1, 2), (1, 3), (1, 4))


@pytest.fixture(scope="session")
def t2():
    return registry("T2")


@pytest.fixture(scope="session")
def m2():
    return registry("M2")


def random_invertible(n: int, seed: int, bound: int = 5):
    """Seeded random integer matrix with nonzero determinant."""
    import numpy as np

    from pencilalg.exact import Matrix

    rng = np.random.default_rng(np.random.SeedSequence([7919, seed]))
    while True:
        p = Matrix([[int(x) for x in rng.integers(-bound, bound + 1, size=n)] for _ in range(n)])
        if p.det() != 0:
            return p
