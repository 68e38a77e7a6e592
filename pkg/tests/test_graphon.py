import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gspx.graph import new_graph
from gspx.graphon import (
    AnalyticKernel,
    AnalyticSignal,
    GraphonError,
    StepGraphon,
    StepSignal,
    block_index,
    discretize,
    discretize_signal,
    induce_graphon,
    induce_signal,
    step_graphon_from_matrix,
)
from oracles import random_graph_matrix


def test_eval_examples():
    assert AnalyticKernel.constant(0.5).eval(0.1, 0.9) == 0.5
    assert AnalyticKernel.product().eval(0.5, 0.4) == pytest.approx(0.2, abs=1e-15)
    assert StepGraphon(np.array([[0, 1], [1, 0]])).eval(0.25, 0.75) == 1


@pytest.mark.parametrize("u,v", [(-0.1, 0.5), (0.5, 1.2), (np.nan, 0.1)])
def test_eval_rejects_outside_unit_square(u, v):
    with pytest.raises(GraphonError):
        AnalyticKernel.product().eval(u, v)


def test_partition_is_right_open_with_closed_end():
    w = StepGraphon(np.array([[0.0, 0.1], [0.1, 0.2]]))
    assert w.eval(0.5, 0.5) == 0.2
    assert w.eval(0.4999, 0.0) == 0.0
    assert w.eval(1.0, 1.0) == 0.2
    assert list(block_index([0, 0.25, 0.5, 1.0], 4)) == [0, 1, 2, 3]


def test_induce_graphon_examples():
    assert np.array_equal(induce_graphon(new_graph(2, [(0, 1, 1)])).values, [[0, 1], [1, 0]])
    assert np.array_equal(induce_graphon(new_graph(3)).values, np.zeros((3, 3)))
    assert np.array_equal(induce_graphon(new_graph(2, [(0, 1, 0.5)])).values, [[0, 0.5], [0.5, 0]])


def test_induce_graphon_signed_weights():
    w = induce_graphon(new_graph(2, [(0, 1, -0.5)]))
    assert w.range == (-1.0, 1.0)
    assert not w.is_probability


@pytest.mark.parametrize("x", [[1.0, 2.0], [0.0, 0.0], [3.0, -1.0, 4.0]])
def test_induce_signal(x):
    s = induce_signal(x)
    assert s.N == len(x) and np.array_equal(s.values, x)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_induced_blocks_reproduce_shift_operator(n, seed):
    rng = np.random.default_rng(seed)
    g_w = random_graph_matrix(rng, n, weighted=True)
    w = induce_graphon(new_graph(n, [(i, j, g_w[i, j]) for i in range(n) for j in range(i + 1, n) if g_w[i, j]]))
    assert np.array_equal(w.values, g_w)
    # value at two interior points of the same block pair is identical
    j, k = rng.integers(0, n, 2)
    a = (j + rng.uniform(0.01, 0.99, 2)) / n
    b = (k + rng.uniform(0.01, 0.99, 2)) / n
    assert w.eval(a[0], b[0]) == w.eval(a[1], b[1]) == g_w[j, k]


def test_step_graphon_from_matrix():
    assert step_graphon_from_matrix([[0.5]]).eval(0.3, 0.9) == 0.5
    assert step_graphon_from_matrix([[0.5, 0], [0, 0.5]]).eval(0.1, 0.9) == 0
    w = step_graphon_from_matrix([[0.5, -0.5], [-0.5, 0.5]], (-1, 1))
    assert w.eval(0.1, 0.9) == -0.5


def test_step_graphon_from_matrix_errors():
    with pytest.raises(GraphonError):
        step_graphon_from_matrix([[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(GraphonError):
        step_graphon_from_matrix([[0.5, -0.5], [-0.5, 0.5]])


def test_discretize_examples():
    assert np.array_equal(discretize(AnalyticKernel.constant(0.5), 4).values, np.full((4, 4), 0.5))
    assert np.allclose(discretize(AnalyticKernel.product(), 2).values, [[1 / 16, 3 / 16], [3 / 16, 9 / 16]], atol=0, rtol=0)
    assert np.array_equal(discretize_signal(AnalyticSignal.identity(), 2).values, [0.25, 0.75])


def test_discretize_is_exactly_symmetric_for_asymmetric_rounding():
    # symmetric in exact arithmetic, but floating evaluation order differs
    k = AnalyticKernel.from_function(lambda u, v: 0.4 * (((u * 0.3 + v * 0.7) + u * 0.7) + v * 0.3))
    m = (np.arange(37) + 0.5) / 37
    raw = k(m[:, None], m[None, :])
    assert not np.array_equal(raw, raw.T)
    vals = discretize(k, 37).values
    assert np.array_equal(vals, vals.T)


def test_discretize_reproduces_aligned_step_graphon():
    w = StepGraphon(np.array([[0.2, 0.7], [0.7, 0.1]]))
    assert np.array_equal(discretize(w, 6).values, np.kron(w.values, np.ones((3, 3))))


def test_signal_constructors():
    assert AnalyticSignal.constant(2.0).eval(0.3) == 2.0
    assert AnalyticSignal.gaussian(0.5).eval(0.5) == pytest.approx(np.exp(-0.5))
    with pytest.raises(GraphonError):
        AnalyticSignal("bad", lambda u: u, (), np.inf)
    with pytest.raises(GraphonError):
        StepSignal([1.0, np.inf])
    assert StepSignal([1.0, -1.0]).l2_norm() == 1.0
