import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlp import lp
from invlp.lp import GE, LE, EQ, LpProblem, min_abs_deviation, solve_forward, solve_lp


def test_square_facet_optimum(square):
    sol = solve_forward(square, [0.0, 1.0])
    assert sol.status == lp.OPTIMAL
    assert sol.value == pytest.approx(1.0, abs=1e-9)
    assert sol.x[1] == pytest.approx(1.0, abs=1e-9)


def test_square_reversed_cost(square):
    assert solve_forward(square, [0.0, -1.0]).value == pytest.approx(-7.0, abs=1e-9)


def test_zero_cost(square):
    sol = solve_forward(square, [0.0, 0.0])
    assert sol.status == lp.OPTIMAL
    assert sol.value == 0.0
    assert np.all(square.A @ sol.x >= square.b - 1e-8)


def test_unbounded():
    prob = LpProblem(c=[-1.0], A=[[1.0]], rel=[GE], b=[1.0])
    assert solve_lp(prob).status == lp.UNBOUNDED


def test_infeasible():
    prob = LpProblem(c=[0.0], A=[[1.0], [1.0]], rel=[GE, LE], b=[1.0, 0.0])
    assert solve_lp(prob).status == lp.INFEASIBLE


def test_determinism():
    rng = np.random.default_rng(3)
    prob = LpProblem(
        c=rng.normal(size=4),
        A=rng.normal(size=(5, 4)),
        rel=[GE, LE, EQ, GE, LE],
        b=rng.normal(size=5),
        bounds=[(-4.0, 4.0)] * 4,
    )
    a, b = solve_lp(prob), solve_lp(prob)
    assert a.status == b.status
    if a.status == lp.OPTIMAL:
        assert np.array_equal(a.x, b.x)
        assert a.value == b.value


def _dual_value(c, A, b):
    """Hand-built dual of min c'x s.t. Ax >= b: max b'y, A'y = c, y >= 0."""
    m, n = A.shape
    prob = LpProblem(
        c=-b,
        A=A.T,
        rel=[EQ] * n,
        b=c,
        bounds=[(0.0, np.inf)] * m,
    )
    sol = solve_lp(prob)
    return sol


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_strong_duality_spot_check(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    m = int(rng.integers(n + 1, 7))
    from invlp.instances import bounded_polytope

    fp, _ = bounded_polytope(seed, n=n, m=max(m, n + 1))
    c = rng.normal(size=n)
    primal = solve_forward(fp, c)
    if primal.status != lp.OPTIMAL:
        return
    dual = _dual_value(c, fp.A, fp.b)
    assert dual.status == lp.OPTIMAL
    assert -dual.value == pytest.approx(primal.value, abs=1e-7)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_optimal_solutions_satisfy_constraints(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    k = int(rng.integers(1, 6))
    prob = LpProblem(
        c=rng.normal(size=n),
        A=rng.normal(size=(k, n)),
        rel=[(GE, LE, EQ)[int(v)] for v in rng.integers(0, 3, size=k)],
        b=rng.normal(size=k),
        bounds=[(-5.0, 5.0)] * n,
    )
    sol = solve_lp(prob)
    if sol.status != lp.OPTIMAL:
        return
    lhs = prob.A @ sol.x
    for i, r in enumerate(prob.rel):
        if r == GE:
            assert lhs[i] >= prob.b[i] - 1e-8
        elif r == LE:
            assert lhs[i] <= prob.b[i] + 1e-8
        else:
            assert lhs[i] == pytest.approx(prob.b[i], abs=1e-8)
    assert sol.value == pytest.approx(float(prob.c @ sol.x), abs=1e-8)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100_000))
def test_degenerate_rows_handled(seed):
    """Duplicated and linearly dependent rows (redundant equalities force
    artificials to stay basic at zero) must not break the two-phase method."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    base = rng.normal(size=(2, n))
    A = np.vstack([base, base[0], 2.0 * base[1], base.sum(axis=0)])
    x_feas = rng.normal(size=n)
    b = A @ x_feas
    rel = [EQ] * 5
    prob = LpProblem(c=rng.normal(size=n), A=A, rel=rel, b=b,
                     bounds=[(-8.0, 8.0)] * n)
    sol = solve_lp(prob)
    if sol.status == lp.OPTIMAL:
        assert np.abs(A @ sol.x - b).max() < 1e-8
    else:
        assert sol.status == lp.UNBOUNDED or np.abs(x_feas).max() > 8.0


def test_min_abs_deviation_examples():
    assert min_abs_deviation([1, 2, 9]) == (2.0, 8.0)
    t, loss = min_abs_deviation([1, 2, 9], -np.inf, 1.0)
    assert (t, loss) == (1.0, 9.0)
    t, loss = min_abs_deviation([5], 0.0, 3.0)
    assert (t, loss) == (3.0, 2.0)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.floats(-50, 50), min_size=1, max_size=9),
    st.floats(-60, 60),
    st.floats(0, 30),
)
def test_min_abs_deviation_is_minimal(values, lo, width):
    hi = lo + width
    t, loss = min_abs_deviation(values, lo, hi)
    assert lo - 1e-12 <= t <= hi + 1e-12
    v = np.asarray(values, dtype=float)
    for probe in np.linspace(lo, hi, 33):
        assert loss <= np.abs(v - probe).sum() + 1e-9
