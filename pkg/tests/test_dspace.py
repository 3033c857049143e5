import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlp.adg import solve_adg
from invlp.dspace import dsp_row_values, solve_dsp
from invlp.errors import InfeasibleForward
from invlp.instances import feasible_instance
from invlp.model import EnsembleData, ForwardProblem


def test_row_values_square(square, xhat1):
    values = dsp_row_values(square, xhat1, np.inf)
    assert np.allclose(values, [9.0, 14.75, 9.0, 3.25], atol=1e-8)


def test_square_inf_matches_adg(square, xhat1):
    fit = solve_dsp(square, xhat1, np.inf)
    assert fit.active_row == 3
    assert fit.z_star == pytest.approx(3.25, abs=1e-8)


def test_square_euclidean(square, xhat1):
    fit = solve_dsp(square, xhat1, 2.0)
    assert fit.active_row == 3
    assert fit.z_star == pytest.approx(3.25, abs=1e-8)


def test_on_facet_zero(square):
    data = EnsembleData(np.array([[2.0, 1.0], [5.0, 1.0]]))
    fit = solve_dsp(square, data, 2.0)
    assert fit.z_star == pytest.approx(0.0, abs=1e-9)
    assert fit.active_row == 3


def test_vertex_singleton_two_zero_rows(square):
    values = dsp_row_values(square, EnsembleData(np.array([[1.0, 1.0]])), np.inf)
    assert (np.abs(values) < 1e-9).sum() == 2


def test_heatmap_region_smallest_row(heatmap_region, heatmap_fixed_points):
    values = dsp_row_values(heatmap_region, EnsembleData(heatmap_fixed_points), 2.0)
    assert int(np.argmin(values)) == 1  # the 45-degree facet


def test_structured_row_solution(square, xhat1):
    fit = solve_dsp(square, xhat1, 2.0)
    # imputed cost is always a normalized constraint row
    i = fit.active_row
    assert np.allclose(fit.c_star, square.A[i] / np.abs(square.A[i]).sum())
    # each perturbed point lands on the face and stays feasible
    for q in range(xhat1.Q):
        moved = xhat1.points[q] - fit.eps[q]
        assert np.all(square.A @ moved >= square.b - 1e-8)
        assert float(square.A[i] @ moved) == pytest.approx(square.b[i], abs=1e-8)


def test_empty_region():
    fp = ForwardProblem(A=np.array([[1.0, 0.0], [-1.0, 0.0]]), b=np.array([2.0, -1.0]))
    with pytest.raises(InfeasibleForward):
        solve_dsp(fp, EnsembleData(np.array([[0.0, 0.0]])), 2.0)


def test_empty_faces_skipped(square, xhat1):
    fp = ForwardProblem(
        A=np.vstack([square.A, [[1.0, 0.0]]]),
        b=np.concatenate([square.b, [-5.0]]),
    )
    values = dsp_row_values(fp, xhat1, np.inf)
    assert np.isinf(values[4])
    fit = solve_dsp(fp, xhat1, np.inf)
    assert fit.z_star == pytest.approx(3.25, abs=1e-8)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1.0, 2.0, np.inf]))
def test_dominates_absolute_gap_on_feasible(seed, p):
    fp, data = feasible_instance(seed, n=2, m=5, Q=3)
    z_p = solve_dsp(fp, data, p).z_star
    z_a = solve_adg(fp, data).z_star
    assert z_p >= z_a - 1e-8
