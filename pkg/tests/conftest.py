import pytest

from toricbases import SparseIntMatrix
from toricbases.oracle import two_by_two_minors_matrix


@pytest.fixture(scope="session")
def twisted_cubic() -> SparseIntMatrix:
    return SparseIntMatrix.from_dense([[1, 1, 1, 1], [0, 1, 2, 3]])


@pytest.fixture(scope="session")
def k22() -> SparseIntMatrix:
    return two_by_two_minors_matrix(2, 2)


@pytest.fixture(scope="session")
def k23() -> SparseIntMatrix:
    return two_by_two_minors_matrix(2, 3)


# conformally minimal kernel vectors of the twisted cubic matrix, frozen from
# the exhaustive oracle (saturates at bound 3)
TWISTED_CUBIC_GRAVER = frozenset(
    {
        (-2, 3, 0, -1),
        (-1, 0, 3, -2),
        (-1, 1, 1, -1),
        (-1, 2, -1, 0),
        (0, -1, 2, -1),
        (0, 1, -2, 1),
        (1, -2, 1, 0),
        (1, -1, -1, 1),
        (1, 0, -3, 2),
        (2, -3, 0, 1),
    }
)

# reduced basis of the twisted cubic under the graded order, frozen from the
# definitional oracle at bound 3 (identical under lex)
TWISTED_CUBIC_RGB = frozenset(
    {
        ((0, 1, 0, 1), (0, 0, 2, 0)),
        ((1, 0, 0, 1), (0, 1, 1, 0)),
        ((1, 0, 1, 0), (0, 2, 0, 0)),
    }
)
