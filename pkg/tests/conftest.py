import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from ghdist.space import validate_space, one_point_space, line_space  # noqa: E402


@pytest.fixture
def pt():
    return one_point_space()


@pytest.fixture
def two1():
    return validate_space([[0, 1], [1, 0]])


@pytest.fixture
def two3():
    return validate_space([[0, 3], [3, 0]])


@pytest.fixture
def line013():
    return line_space([0, 1, 3])
