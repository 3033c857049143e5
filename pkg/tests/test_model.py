import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlp.errors import ValidationError
from invlp.model import (
    ALL_BELOW,
    ALL_FEASIBLE,
    MIXED,
    EnsembleData,
    ForwardProblem,
    centroid,
    classify,
    validate_problem,
)


def test_validate_ok(square, xhat1):
    report = validate_problem(square, EnsembleData(np.array([[3.75, 2.0]])))
    assert report.ok and report.problems == []


def test_validate_zero_row(xhat1):
    fp = ForwardProblem(A=np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]]),
                        b=np.zeros(3))
    report = validate_problem(fp, xhat1)
    assert not report.ok
    assert any("zero row 1" in p for p in report.problems)


def test_validate_dimension_mismatch(square):
    report = validate_problem(square, EnsembleData(np.array([[1.0, 2.0, 3.0]])))
    assert not report.ok
    assert any("dimension" in p for p in report.problems)


def test_constructor_rejects_misshapen():
    with pytest.raises(ValidationError):
        ForwardProblem(A=np.ones((2, 2)), b=np.ones(3))
    with pytest.raises(ValidationError):
        EnsembleData(np.zeros((0, 2)))
    with pytest.raises(ValidationError):
        EnsembleData([[1.0, 2.0], [1.0, 2.0, 3.0]])  # ragged
    with pytest.raises(ValidationError):
        ForwardProblem(A=[["a", "b"]], b=[1.0])


def test_centroid_examples():
    data = EnsembleData(np.array([[3.75, 2.0], [4.0, 2.25], [4.25, 2.0]]))
    assert np.allclose(centroid(data), [4.0, 2.0 + 1.0 / 12.0])
    assert np.allclose(centroid(EnsembleData(np.array([[5.0, 2.5]]))), [5.0, 2.5])
    assert np.allclose(centroid(EnsembleData(np.array([[1.0, 0.0], [-1.0, 0.0]]))), 0.0)


def test_classify_square_feasible(square, xhat1):
    assert classify(square, xhat1).tag == ALL_FEASIBLE


def test_classify_cone(cone):
    assert classify(cone, EnsembleData(np.array([[1.0, 3.0]]))).tag == ALL_BELOW
    cls = classify(cone, EnsembleData(np.array([[3.0, 0.0]])))
    assert cls.tag == MIXED
    assert np.allclose(cls.per_point_residuals, [[3.0, -3.0]])


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(4))), st.permutations(list(range(3))))
def test_classify_permutation_invariant(row_order, point_order):
    A = np.array([[-1.0, 0.0], [0.0, -1.0], [1.0, 0.0], [0.0, 1.0]])
    b = np.array([-7.0, -7.0, 1.0, 1.0])
    pts = np.array([[3.75, 2.0], [0.0, 0.0], [10.0, 2.0]])
    base = classify(ForwardProblem(A=A, b=b), EnsembleData(pts)).tag
    permuted = classify(
        ForwardProblem(A=A[row_order], b=b[row_order]),
        EnsembleData(pts[point_order]),
    ).tag
    assert base == permuted


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_centroid_stays_feasible(seed):
    from invlp.instances import feasible_instance

    fp, data = feasible_instance(seed, n=2, m=5, Q=4)
    res = fp.A @ centroid(data) - fp.b
    assert res.min() >= -1e-8
