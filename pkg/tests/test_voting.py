import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tenuregraph import case_study as cs
from tenuregraph.model import ProductivityVector, build_graph, laplacian
from tenuregraph.voting import (
    RngSpec,
    VotingScenario,
    candidate_merit,
    cost,
    cost_gradient,
    gamma_sweep,
    initialize_votes,
    laplacian_quadratic,
    monte_carlo_votes,
    solve_votes,
)

ADJUSTED = cs.P_RAW + np.array([0, 0, 0, 2, 0, 0, 0, 0, 1, 0, 0])


def random_w(rng, n):
    W = rng.random((n, n))
    W = W + W.T
    np.fill_diagonal(W, 0)
    return W


@pytest.fixture(scope="module")
def graph():
    return build_graph(cs.case_study_department(), cs.case_study_params())


# -- merit ----------------------------------------------------------------------

def test_merit_half_pmax():
    p = ProductivityVector([3.5, 1.0], (1, 2))
    assert candidate_merit(p, 7.0, "half-pmax", 1) == 0.0
    p = ProductivityVector(cs.P_RAW, cs.AGENTS)
    assert candidate_merit(p, 7.0, "half-pmax", 1) == pytest.approx((4.127 - 3.5) / 7)
    assert candidate_merit(p, 7.0, "half-pmax", 1) == pytest.approx(0.0896, abs=5e-5)


def test_merit_half_mean():
    p = ProductivityVector(ADJUSTED, cs.AGENTS, adjusted=True)
    assert candidate_merit(p, 7.0, "half-mean", 1) == pytest.approx((4.127 - 25.0 / 22) / 7, abs=1e-9)
    assert candidate_merit(p, 7.0, "half-mean", 1) == pytest.approx(0.4272, abs=5e-5)


def test_merit_clamped_and_fixed():
    p = ProductivityVector([50.0, 1.0], (1, 2))
    assert candidate_merit(p, 7.0, "half-pmax", 1) == 1.0
    assert candidate_merit(p, 7.0, -0.3) == -0.3
    with pytest.raises(ValueError):
        candidate_merit(p, 7.0, 1.5)


# -- initialization -------------------------------------------------------------

class ZeroNoise:
    def uniform(self, lo, hi, size):
        return np.zeros(size)


def test_initial_votes_decided_agents():
    s = cs.case_study_scenario()
    x0 = initialize_votes(s, ProductivityVector(ADJUSTED, cs.AGENTS, True), 0.0896, RngSpec(1), 7.0)
    for a in (6, 10, 11):
        assert x0[a - 1] == -1
    for a in (7, 8):
        assert x0[a - 1] == 1
    assert x0[0] == 1.0 and x0[3] == 0.0
    assert np.all(np.abs(x0[[1, 2, 4, 8]]) <= 0.15)


def test_initial_vote_without_noise():
    s = cs.case_study_scenario()
    x0 = initialize_votes(s, ProductivityVector(ADJUSTED, cs.AGENTS, True), 0.0896, ZeroNoise(), 7.0)
    assert x0[4] == pytest.approx(0.15 * (3.779 / 7) * 0.0896, rel=1e-12)
    assert x0[4] == pytest.approx(0.00726, abs=5e-6)


def test_initial_votes_vanish_with_alpha():
    s = cs.case_study_scenario(alpha=1e-12)
    x0 = initialize_votes(s, ProductivityVector(ADJUSTED, cs.AGENTS, True), 0.5, RngSpec(3), 7.0)
    assert np.all(np.abs(x0[[1, 2, 4, 8]]) < 1e-11)


def test_initial_votes_reject_blend_out_of_range():
    s = cs.case_study_scenario()
    p = ADJUSTED.copy()
    p[4] = 8.0
    with pytest.raises(ValueError):
        initialize_votes(s, ProductivityVector(p, cs.AGENTS, True), 0.1, RngSpec(0), 7.0)


def test_rng_streams_reproducible_and_distinct():
    a = RngSpec(42, 3).generator().uniform(size=5)
    b = RngSpec(42, 3).generator().uniform(size=5)
    c = RngSpec(42, 4).generator().uniform(size=5)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_scenario_partition_validation():
    with pytest.raises(ValueError):
        cs.case_study_scenario(v_plus=frozenset({1, 7, 8}))  # candidate listed as voter
    with pytest.raises(ValueError):
        cs.case_study_scenario(non_voters={})  # chair left out
    with pytest.raises(ValueError):
        cs.case_study_scenario(alpha=0.0)


# -- solver ---------------------------------------------------------------------

def test_solve_identity_case():
    L = laplacian(random_w(np.random.default_rng(0), 5))
    x0 = np.arange(5.0)
    np.testing.assert_array_equal(solve_votes(L, x0, 0.0, 0.0).x, x0)


def test_solve_two_nodes():
    out = solve_votes([[1.0, -1.0], [-1.0, 1.0]], [1.0, -1.0], 0.5, 0.0)
    np.testing.assert_allclose(out.x, [0.5, -0.5], atol=1e-15)


def test_solve_strong_influence_reaches_consensus():
    rng = np.random.default_rng(5)
    L = laplacian(random_w(rng, 8))
    x0 = rng.uniform(-1, 1, 8)
    x = solve_votes(L, x0, 1e6, 0.0).x
    np.testing.assert_allclose(x, np.full(8, x0.mean()), atol=1e-3)


def test_solve_sign_flip(graph):
    x0 = np.random.default_rng(2).uniform(-1, 1, 11)
    a = solve_votes(graph.L, x0, 1.3, 0.2).x
    b = solve_votes(graph.L, -x0, 1.3, 0.2).x
    np.testing.assert_allclose(b, -a, atol=1e-15)


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_votes(np.eye(3), np.ones(2), 1.0)


def test_clamped_solve_holds_boundary(graph):
    s = cs.case_study_scenario()
    x0 = initialize_votes(s, graph.p, 0.09, RngSpec(7), 7.0)
    free = s.undecided_index
    out = solve_votes(graph.L, x0, 1.0, 0.0, free=free)
    fixed = np.setdiff1d(np.arange(11), free)
    np.testing.assert_array_equal(out.x[fixed], x0[fixed])
    assert out.gradient_norm <= 1e-9 * np.max(np.abs(x0))


def test_variance_nonincreasing_in_mu(graph):
    x0 = np.random.default_rng(4).uniform(-1, 1, 11)
    var = [np.var(solve_votes(graph.L, x0, mu, 0.0).x) for mu in (0, 0.01, 0.1, 0.5, 1, 2, 10)]
    assert all(b <= a + 1e-15 for a, b in zip(var, var[1:]))


# -- cost -----------------------------------------------------------------------

def test_cost_at_initial_point():
    rng = np.random.default_rng(8)
    L = laplacian(random_w(rng, 6))
    x0 = rng.normal(size=6)
    assert cost(x0, x0, L, 0.7, 0.0) == pytest.approx(0.5 * 0.7 * x0 @ L @ x0)


def test_cost_regularizer_zero_at_unit_votes():
    x = np.array([1.0, -1.0, 1.0])
    L = np.zeros((3, 3))
    assert cost(x, x, L, 0.0, 5.0) == 0.0


def test_solution_beats_perturbations(graph):
    rng = np.random.default_rng(9)
    x0 = rng.uniform(-1, 1, 11)
    out = solve_votes(graph.L, x0, 1.0, 0.3)
    base = cost(out.x, x0, graph.L, 1.0, 0.3)
    for _ in range(100):
        d = rng.normal(size=11)
        d *= rng.uniform(0, 0.1) / np.linalg.norm(d)
        assert base <= cost(out.x + d, x0, graph.L, 1.0, 0.3)


def test_gradient_matches_finite_differences(graph):
    rng = np.random.default_rng(10)
    x0, x = rng.normal(size=11), rng.normal(size=11)
    g = cost_gradient(x, x0, graph.L, 0.8, 0.2)
    h = 1e-6
    fd = np.array([(cost(x + h * e, x0, graph.L, 0.8, 0.2) - cost(x - h * e, x0, graph.L, 0.8, 0.2)) / (2 * h)
                   for e in np.eye(11)])
    np.testing.assert_allclose(g, fd, rtol=1e-6, atol=1e-6)


# -- quadratic form -------------------------------------------------------------

def test_quadratic_constant_vector():
    W = random_w(np.random.default_rng(1), 5)
    assert laplacian_quadratic(W, np.full(5, 3.3)) == 0.0


def test_quadratic_two_nodes():
    w, a, b = 2.5, 0.7, -1.2
    assert laplacian_quadratic([[0, w], [w, 0]], [a, b]) == pytest.approx(w * (a - b) ** 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 20), st.integers(0, 2**32 - 1))
def test_quadratic_equals_matrix_form(n, seed):
    rng = np.random.default_rng(seed)
    W = random_w(rng, n) * rng.uniform(0.1, 10)
    x = rng.normal(size=n)
    q = x @ laplacian(W) @ x
    assert abs(laplacian_quadratic(W, x) - q) <= 1e-10 * (1 + abs(q))


# -- Monte Carlo and sweeps -----------------------------------------------------

def test_single_trial_equals_one_solve(graph):
    s = cs.case_study_scenario()
    stats = monte_carlo_votes(graph, s, trials=1, seed=11)
    m_c = candidate_merit(graph.p, 7.0, "half-pmax", 1)
    x0 = initialize_votes(s, graph.p, m_c, RngSpec(11, 0), 7.0)
    x = solve_votes(graph.L, x0, s.mu, s.eps).x
    np.testing.assert_allclose(stats.mean, x[s.undecided_index], rtol=1e-12, atol=1e-15)
    assert not stats.std.any()


def test_no_noise_no_spread(graph):
    stats = monte_carlo_votes(graph, cs.case_study_scenario(alpha=1e-14), trials=20, seed=1)
    assert np.all(stats.std < 1e-14)


def test_monte_carlo_deterministic(graph):
    s = cs.case_study_scenario()
    a = monte_carlo_votes(graph, s, 50, 42)
    b = monte_carlo_votes(graph, s, 50, 42)
    assert np.array_equal(a.mean, b.mean) and np.array_equal(a.std, b.std)
    with pytest.raises(ValueError):
        monte_carlo_votes(graph, s, 0, 42)


def test_case_study_monte_carlo_relative_positions(graph):
    stats = monte_carlo_votes(graph, cs.case_study_scenario(), 1000, 42).as_dict()
    assert stats[5][0] > 0
    assert stats[2][0] < stats[5][0]
    assert stats[3][0] < stats[5][0]


@pytest.mark.xfail(strict=True, reason="joint solve keeps every undecided agent on the consensus side; "
                                       "agents 2 and 3 are pulled below agent 5 but not below zero")
def test_case_study_monte_carlo_absolute_signs(graph):
    stats = monte_carlo_votes(graph, cs.case_study_scenario(), 1000, 42).as_dict()
    assert stats[2][0] < 0 and stats[3][0] < 0 and stats[5][0] > 0


def test_eps_keeps_sign_pattern(graph):
    signs = []
    for eps in (0.0, 0.1, 1.0):
        stats = monte_carlo_votes(graph, cs.case_study_scenario(eps=eps), 200, 42)
        signs.append(tuple(np.sign(stats.mean)))
    assert signs[0] == signs[1] == signs[2]


def test_clamped_mode_runs(graph):
    stats = monte_carlo_votes(graph, cs.case_study_scenario(solve_mode="clamped"), 100, 42)
    assert np.all(np.isfinite(stats.mean))


def test_sweep_single_cell_reduces_to_monte_carlo(graph):
    data, params, s = cs.case_study_department(), cs.case_study_params(), cs.case_study_scenario()
    sweep = gamma_sweep(data, params, s, [0.25], [1.0], 30, 7)
    stats = monte_carlo_votes(graph, s, 30, 7).as_dict()
    for a in sweep.agent_ids:
        assert sweep.series(a, 1.0)[0] == stats[a][0]


def test_sweep_orders_agents_by_productivity():
    sweep = gamma_sweep(cs.case_study_department(), cs.case_study_params(), cs.case_study_scenario(),
                        [0.0, 0.5], [1.0], 10, 1)
    assert sweep.agent_ids == (2, 3, 9, 5)
    assert list(sweep.productivity) == sorted(sweep.productivity)
    assert len(list(sweep.rows())) == 2 * 1 * 4


def test_sweep_rejects_empty():
    with pytest.raises(ValueError):
        gamma_sweep(cs.case_study_department(), cs.case_study_params(), cs.case_study_scenario(), [], [1.0], 10, 1)
