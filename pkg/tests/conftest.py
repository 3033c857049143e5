import numpy as np
import pytest

from invlp.model import CostStructure, EnsembleData, ForwardProblem


@pytest.fixture
def square():
    """Box 1 <= x1 <= 7, 1 <= x2 <= 7 in >= row form."""
    return ForwardProblem(
        A=np.array([[-1.0, 0.0], [0.0, -1.0], [1.0, 0.0], [0.0, 1.0]]),
        b=np.array([-7.0, -7.0, 1.0, 1.0]),
    )


@pytest.fixture
def xhat1():
    return EnsembleData(np.array([[3.75, 2.0], [4.0, 2.25], [4.25, 2.0]]))


@pytest.fixture
def xhat2():
    return EnsembleData(np.array([[1.5, 2.0], [4.0, 6.25], [6.5, 2.0]]))


@pytest.fixture
def cone():
    """Two-row cone through the origin; b = 0."""
    return ForwardProblem(
        A=np.array([[1.0, -1.0], [-1.0, -1.0]]), b=np.array([0.0, 0.0])
    )


@pytest.fixture
def shifted_cone():
    """Same geometry with nonzero right-hand sides (usable by the
    relative-gap solver, which rejects b = 0)."""
    return ForwardProblem(
        A=np.array([[1.0, -1.0], [-1.0, -1.0]]), b=np.array([-1.0, -1.0])
    )


def pentagon(u: float, v: float) -> ForwardProblem:
    """Five-row region with one 45-degree facet and a box part: the slanted
    row, x1 <= 7, x2 <= v, x1 >= u, x2 >= 1."""
    return ForwardProblem(
        A=np.array([
            [-0.71, 0.71],
            [-1.0, 0.0],
            [0.0, -1.0],
            [1.0, 0.0],
            [0.0, 1.0],
        ]),
        b=np.array([-2.83, -7.0, -v, u, 1.0]),
    )


@pytest.fixture
def pentagon_points():
    return EnsembleData(np.array([[5.0, 2.5], [4.75, 3.75], [5.5, 3.0]]))


@pytest.fixture
def heatmap_region():
    """Region with two slanted facets used by the sweep experiments."""
    return ForwardProblem(
        A=np.array([
            [0.71, 0.71],
            [0.71, -0.71],
            [-1.0, 0.0],
            [0.0, -1.0],
            [0.0, 1.0],
        ]),
        b=np.array([4.24, -2.83, -7.0, -7.0, 1.0]),
    )


@pytest.fixture
def heatmap_fixed_points():
    return np.array([[2.0, 5.0], [3.0, 6.0], [5.0, 4.0]])


@pytest.fixture
def identity_structured():
    """Two-objective structured problem whose unique zero-loss weights are
    (0.5, 0.5) for the data {(2,0), (0,2)}."""
    fp = ForwardProblem(
        A=np.array([[1.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]),
        b=np.array([2.0, -3.0, -3.0]),
        cost_structure=CostStructure(C=np.eye(2)),
        x_nonneg=True,
    )
    data = EnsembleData(np.array([[2.0, 0.0], [0.0, 2.0]]))
    return fp, data
