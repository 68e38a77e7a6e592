import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gspx.graph import Graph, new_graph
from gspx.graphon import AnalyticKernel, StepGraphon, discretize, induce_graphon
from gspx.homomorphism import (
    BudgetError,
    Motif,
    check_norm_sandwich,
    cut_norm_step,
    cycle_density_graph,
    cycle_density_graphon,
    cycle_trace,
    hom_count,
    hom_density_graph,
    hom_density_graphon_mc,
    homomorphism_convergence_trace,
    l2_operator_norm,
)
from gspx.spectral import step_spectrum, wft_numeric
from gspx.graphon import AnalyticSignal
from oracles import cut_norm_bruteforce, hom_count_bruteforce, random_graph_matrix

K3 = new_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
EDGE, TRIANGLE = Motif.named("edge"), Motif.named("triangle")


def complete(n):
    return Graph(np.ones((n, n)) - np.eye(n))


def random_step(rng, N, lo=0.0):
    v = rng.uniform(lo, 1, (N, N))
    return StepGraphon(np.triu(v) + np.triu(v, 1).T, (lo, 1.0))


def test_motif_validation_and_names():
    with pytest.raises(ValueError):
        Motif(2, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Motif(2, ((0, 0),))
    assert Motif.named("C4").cycle_length == 4
    assert TRIANGLE.cycle_length == 3
    assert Motif.named("path3").cycle_length is None
    assert Motif.cycle(2).multigraph


def test_hom_count_examples():
    assert hom_count(EDGE, K3) == 6
    assert hom_count(TRIANGLE, K3) == 6
    assert hom_density_graph(TRIANGLE, K3) == pytest.approx(6 / 27, abs=1e-15)
    for n in (1, 4, 9):
        assert hom_count(Motif.named("node"), complete(n) if n > 1 else new_graph(1)) == n


def test_hom_density_examples():
    assert hom_density_graph(EDGE, K3) == pytest.approx(2 / 3, abs=1e-15)
    assert hom_density_graph(TRIANGLE, new_graph(5)) == 0
    for n in (2, 5, 11):
        assert hom_density_graph(EDGE, complete(n)) == pytest.approx((n - 1) / n, abs=1e-15)


def test_hom_count_budget():
    with pytest.raises(BudgetError):
        hom_count(Motif.named("C5"), complete(60))
    with pytest.raises(BudgetError):
        hom_count(Motif.named("path7"), complete(3))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.sampled_from(["edge", "triangle", "C4", "path4"]), st.booleans(), st.integers(0, 2**32 - 1))
def test_hom_count_matches_literal_enumeration(n, motif, weighted, seed):
    rng = np.random.default_rng(seed)
    A = random_graph_matrix(rng, n, weighted=weighted)
    f = Motif.named(motif)
    got = hom_count(f, Graph(A))
    want = hom_count_bruteforce(f.n, f.edges, A)
    if weighted:
        assert got == pytest.approx(want, abs=1e-9)
    else:
        assert got == want and isinstance(got, int)


def test_cycle_density_graph_examples():
    assert cycle_density_graph(2, new_graph(2, [(0, 1, 1)])) == pytest.approx(0.5, abs=1e-15)
    assert cycle_density_graph(3, K3) == pytest.approx(6 / 27, abs=1e-15)
    bip = new_graph(4, [(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)])
    assert cycle_density_graph(3, bip) == pytest.approx(0, abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_cycle_trace_equals_bruteforce(n, k, seed):
    A = random_graph_matrix(np.random.default_rng(seed), n)
    g = Graph(A)
    assert hom_count(Motif.cycle(k), g) == cycle_trace(k, g)
    assert cycle_density_graph(k, g) == pytest.approx(hom_density_graph(Motif.cycle(k), g), abs=1e-10)


def test_cycle_density_graphon_examples():
    s = step_spectrum(discretize(AnalyticKernel.constant(0.4), 20))
    for k in (2, 3, 5):
        assert cycle_density_graphon(k, s) == pytest.approx(0.4**k, abs=1e-12)
    sp, _ = wft_numeric(AnalyticKernel.product(), AnalyticSignal.constant(1.0), 500)
    assert cycle_density_graphon(2, sp) == pytest.approx(1 / 9, abs=1e-3)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_cycle_density_induced_scaling(n, k, seed):
    g = Graph(random_graph_matrix(np.random.default_rng(seed), n, weighted=True))
    assert cycle_density_graphon(k, step_spectrum(induce_graphon(g))) == pytest.approx(cycle_density_graph(k, g), abs=1e-10)


def test_mc_constant_kernel_is_exact():
    est, se = hom_density_graphon_mc(TRIANGLE, AnalyticKernel.constant(0.5), 1000, seed=1)
    assert est == 0.125 and se == 0


def test_mc_product_kernel_edge():
    est, se = hom_density_graphon_mc(EDGE, AnalyticKernel.product(), 10**6, seed=2)
    assert abs(est - 0.25) <= 4 * se
    assert se < 1e-3


@pytest.mark.parametrize("motif", ["edge", "triangle", "path3", "C4"])
def test_mc_matches_graph_density_on_induced_graphon(motif):
    g = Graph(random_graph_matrix(np.random.default_rng(11), 7))
    f = Motif.named(motif)
    est, se = hom_density_graphon_mc(f, induce_graphon(g), 200_000, seed=3)
    assert abs(est - hom_density_graph(f, g)) <= 4 * se


def test_mc_signed_kernel_warns():
    with pytest.warns(UserWarning):
        hom_density_graphon_mc(EDGE, StepGraphon(np.array([[0.5, -0.5], [-0.5, 0.5]]), (-1, 1)), 100, 0)


def test_cut_norm_examples():
    r = cut_norm_step(StepGraphon(np.full((3, 3), 0.7)))
    assert r.value == pytest.approx(0.7, abs=1e-15) and r.S == r.T == (0, 1, 2)
    r = cut_norm_step(StepGraphon(np.array([[0.5, -0.5], [-0.5, 0.5]]), (-1, 1)))
    assert r.value == pytest.approx(0.125, abs=1e-15)
    assert cut_norm_step(StepGraphon(np.zeros((4, 4)))).value == 0
    with pytest.raises(BudgetError):
        cut_norm_step(StepGraphon(np.zeros((25, 25))))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_cut_norm_matches_pairwise_enumeration(N, seed):
    w = random_step(np.random.default_rng(seed), N, lo=-1.0)
    r = cut_norm_step(w)
    assert r.value == pytest.approx(cut_norm_bruteforce(w.values), abs=1e-12)
    # the reported sets attain the value
    s = np.isin(np.arange(N), r.S).astype(float)
    t = np.isin(np.arange(N), r.T).astype(float)
    assert abs(s @ w.values @ t) / N**2 == pytest.approx(r.value, abs=1e-12)


def test_cut_norm_large_n_chunking():
    # N > 14 exercises the outer chunk loop
    w = random_step(np.random.default_rng(4), 16)
    assert cut_norm_step(w).value == pytest.approx(w.values.mean(), abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_cut_norm_of_nonnegative_graphon_is_its_mean(N, seed):
    w = random_step(np.random.default_rng(seed), N)
    assert cut_norm_step(w).value == pytest.approx(w.values.sum() / N**2, abs=1e-14)


def test_operator_norm_examples():
    assert l2_operator_norm(step_spectrum(StepGraphon(np.full((4, 4), 0.3)))) == pytest.approx(0.3, abs=1e-14)
    assert l2_operator_norm(step_spectrum(induce_graphon(new_graph(2, [(0, 1, 1)])))) == pytest.approx(0.5, abs=1e-15)
    sp, _ = wft_numeric(AnalyticKernel.product(), AnalyticSignal.constant(1.0), 500)
    assert abs(l2_operator_norm(sp) - 1 / 3) <= 5e-3


def test_norm_sandwich_examples():
    r = check_norm_sandwich(StepGraphon(np.full((3, 3), 0.5)))
    assert r.cut == pytest.approx(0.5) and r.opnorm == pytest.approx(0.5) and r.holds
    z = check_norm_sandwich(StepGraphon(np.zeros((3, 3))))
    assert z.cut == 0 and z.opnorm == 0 and z.holds


def test_norm_sandwich_sweep():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        assert check_norm_sandwich(random_step(rng, int(rng.integers(1, 11)))).holds


def test_convergence_trace_edge_constant_kernel():
    rows = homomorphism_convergence_trace(AnalyticKernel.constant(0.5), [EDGE], [10, 50, 200], trials=10, seed=9)
    errs = [r[3] for r in rows]
    assert rows[0][2] == 0.5
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 0.05


def test_convergence_trace_triangle_constant_kernel():
    rows = homomorphism_convergence_trace(AnalyticKernel.constant(0.5), [TRIANGLE], [20, 100], trials=5, seed=1)
    assert rows[0][2] == pytest.approx(0.125, abs=1e-12)
    assert rows[1][3] < rows[0][3] and rows[1][3] < 0.02


def test_convergence_trace_stabilizes_with_trials():
    few = homomorphism_convergence_trace(AnalyticKernel.constant(0.5), [EDGE], [30], trials=40, seed=5)[0]
    many = homomorphism_convergence_trace(AnalyticKernel.constant(0.5), [EDGE], [30], trials=160, seed=6)[0]
    assert abs(few[3] - many[3]) <= 4 * np.hypot(few[4], many[4])
