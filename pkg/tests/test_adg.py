import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pentagon
from invlp.adg import (
    AdgConfig,
    mixed_point_construction,
    row_gap_sums,
    solve_adg,
    solve_adg_feasible,
    solve_adg_general,
)
from invlp.errors import DegeneratePair, DimensionTooLarge
from invlp.geometry import vec_norm
from invlp.instances import feasible_instance, mixed_instance
from invlp.model import EnsembleData, ForwardProblem


def _check_certificate(fp, data, fit, tol=1e-7):
    """The defining identities every absolute-gap result must satisfy."""
    assert vec_norm(fit.c_star, 1.0) == pytest.approx(1.0, abs=1e-7) or \
        vec_norm(fit.c_star, np.inf) == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(fp.A.T @ fit.y_star, fit.c_star, atol=tol)
    assert fit.y_star.min() >= -1e-9
    bty = float(fp.b @ fit.y_star)
    gaps = data.points @ fit.c_star - bty
    if fit.eps.shape == gaps.shape:
        assert np.allclose(gaps, fit.eps, atol=tol)
    assert fit.z_star == pytest.approx(float(np.abs(gaps).sum()), abs=tol)


def test_example_row_sums(square, xhat1):
    assert np.allclose(row_gap_sums(square, xhat1, 1.0), [9.0, 14.75, 9.0, 3.25])


def test_square_xhat1(square, xhat1):
    fit = solve_adg(square, xhat1)
    assert np.array_equal(fit.c_star, [0.0, 1.0])
    assert fit.z_star == pytest.approx(3.25, abs=1e-9)
    assert fit.path == "adg_feasible_centroid"
    _check_certificate(square, xhat1, fit)


def test_square_xhat2(square, xhat2):
    fit = solve_adg(square, xhat2)
    assert np.array_equal(fit.c_star, [0.0, 1.0])
    assert fit.z_star == pytest.approx(7.25, abs=1e-9)


def test_pentagon_wide(pentagon_points):
    fit = solve_adg(pentagon(-2.0, 10.0), pentagon_points)
    assert np.allclose(fit.c_star, [-0.5, 0.5], atol=1e-12)
    assert fit.z_star == pytest.approx(2.9788732394366, abs=1e-9)


def test_pentagon_tight_row_sums(pentagon_points):
    fp = pentagon(4.0, 4.0)
    sums = row_gap_sums(fp, pentagon_points, 1.0)
    assert np.allclose(sums, [2.97887324, 5.75, 2.75, 3.25, 6.25], atol=1e-6)
    fit = solve_adg(fp, pentagon_points)
    assert fit.active_row == 2
    assert fit.z_star == pytest.approx(2.75, abs=1e-12)


def test_singleton_on_facet(square):
    fit = solve_adg(square, EnsembleData(np.array([[4.0, 1.0]])))
    assert fit.z_star == pytest.approx(0.0, abs=1e-12)


def test_mixed_point_cone(cone):
    fit = mixed_point_construction(cone, [3.0, 0.0])
    assert np.allclose(fit.c_star, [0.0, -1.0])
    assert np.allclose(fit.y_star, [0.5, 0.5])
    assert fit.z_star == 0.0
    # strong-duality identity of the construction
    assert float(fit.c_star @ [3.0, 0.0] - cone.b @ fit.y_star) == pytest.approx(0.0, abs=1e-9)


def test_mixed_point_degenerate():
    # opposing rows pin x1 = 1; the only over/violated pair cancels exactly
    fp = ForwardProblem(A=np.array([[1.0, 0.0], [-1.0, 0.0]]), b=np.array([1.0, -1.0]))
    with pytest.raises(DegeneratePair):
        mixed_point_construction(fp, [3.0, 0.0])


def test_all_below_cone(cone):
    fit = solve_adg(cone, EnsembleData(np.array([[1.0, 3.0]])))
    assert np.allclose(fit.c_star, [0.5, -0.5])
    assert fit.path == "adg_all_below"
    _check_certificate(cone, EnsembleData(np.array([[1.0, 3.0]])), fit)


def test_all_below_two_points_matches_general(cone):
    data = EnsembleData(np.array([[1.0, 3.0], [3.0, 5.0]]))
    fast = solve_adg(cone, data)
    general = solve_adg_general(cone, data, AdgConfig())
    assert fast.z_star == pytest.approx(general.z_star, abs=1e-9)


def test_on_reversed_facet_zero(cone):
    fit = solve_adg(cone, EnsembleData(np.array([[-2.0, 2.0]])))
    assert fit.z_star == pytest.approx(0.0, abs=1e-12)


def test_mixed_two_points_zero_loss(cone):
    """Two collinear mixed points admit one zero-loss supporting hyperplane;
    the general decomposition must find it."""
    data = EnsembleData(np.array([[3.0, 0.0], [6.0, 0.0]]))
    fit = solve_adg(cone, data)
    assert fit.path == "adg_general_l1"
    assert fit.z_star == pytest.approx(0.0, abs=1e-9)
    from invlp.oracle import oracle_adg

    value, _ = oracle_adg(cone, data)
    assert value == pytest.approx(0.0, abs=1e-6)


def test_general_matches_fast_on_feasible(square, xhat1):
    for norm in (1.0, np.inf):
        cfg = AdgConfig(normalization_norm=norm)
        fast = solve_adg_feasible(square, xhat1, cfg)
        general = solve_adg_general(square, xhat1, cfg)
        assert general.z_star == pytest.approx(fast.z_star, abs=1e-7)


def test_nonneg_cost_single_lp(square, xhat1):
    fit = solve_adg(square, xhat1, AdgConfig(nonneg_cost=True))
    assert fit.path == "adg_nonneg_lp"
    assert np.allclose(fit.c_star, [0.0, 1.0], atol=1e-9)
    assert fit.z_star == pytest.approx(3.25, abs=1e-9)


def test_support_mask(square, xhat1):
    mask = np.array([False, True])
    fit = solve_adg(square, xhat1, AdgConfig(support_mask=mask))
    assert fit.c_star[0] == 0.0
    assert abs(fit.c_star[1]) == pytest.approx(1.0, abs=1e-9)


def test_dimension_guard():
    fp = ForwardProblem(A=np.eye(17), b=np.zeros(17))
    data = EnsembleData(np.ones((1, 17)))
    with pytest.raises(DimensionTooLarge):
        solve_adg_general(fp, data, AdgConfig())


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1.0, np.inf]))
def test_all_below_fast_path_matches_general(seed, norm):
    from invlp.instances import all_below_instance

    fp, data = all_below_instance(seed, n=2, m=4, Q=3)
    cfg = AdgConfig(normalization_norm=norm)
    fast = solve_adg(fp, data, cfg)
    general = solve_adg_general(fp, data, cfg)
    assert fast.path == "adg_all_below"
    assert fast.z_star == pytest.approx(general.z_star, abs=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1.0, np.inf]))
def test_feasible_fast_path_matches_general_random(seed, norm):
    fp, data = feasible_instance(seed, n=3, m=6, Q=3)
    cfg = AdgConfig(normalization_norm=norm)
    fast = solve_adg(fp, data, cfg)
    general = solve_adg_general(fp, data, cfg)
    assert fast.z_star == pytest.approx(general.z_star, abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_centroid_reduction_value(seed):
    """Ensemble loss equals Q times the centroid singleton loss."""
    fp, data = feasible_instance(seed, n=3, m=6, Q=4)
    whole = solve_adg(fp, data)
    single = solve_adg(fp, EnsembleData(data.points.mean(axis=0)[None, :]))
    assert whole.z_star == pytest.approx(data.Q * single.z_star, abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.permutations(list(range(4))))
def test_permutation_invariance(seed, order):
    fp, data = mixed_instance(seed, n=2, m=5, Q=4)
    a = solve_adg(fp, data)
    b = solve_adg(fp, EnsembleData(data.points[order]))
    assert a.z_star == pytest.approx(b.z_star, abs=1e-9)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1.0, np.inf]))
def test_general_matches_oracle_on_mixed(seed, norm):
    from invlp.oracle import oracle_adg

    fp, data = mixed_instance(seed, n=2, m=5, Q=3)
    fit = solve_adg(fp, data, AdgConfig(normalization_norm=norm))
    value, _ = oracle_adg(fp, data, normalization_norm=norm)
    assert fit.z_star == pytest.approx(value, abs=1e-6 + 1e-6 * max(1.0, value))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_general_certificate_on_mixed(seed):
    fp, data = mixed_instance(seed, n=2, m=5, Q=3)
    fit = solve_adg(fp, data)
    _check_certificate(fp, data, fit)
