"""Committee vote dynamics on the interaction graph.

Undecided members start from a small noisy lean towards the candidate's
merit; the final decisions minimize

    phi(x) = 1/2 (|x - x0|^2 + eps (x - 1)^T (x + 1) + mu x^T L x)

whose stationary point is ``((1 + eps) I + mu L) x = x0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np
from scipy import linalg

from .model import CommitteeGraph, DepartmentData, ModelParams, ProductivityVector, build_graph

__all__ = [
    "VotingScenario",
    "VoteOutcome",
    "RngSpec",
    "MonteCarloStats",
    "SweepResult",
    "candidate_merit",
    "initialize_votes",
    "solve_votes",
    "cost",
    "cost_gradient",
    "laplacian_quadratic",
    "monte_carlo_votes",
    "gamma_sweep",
    "MERIT_MODES",
]

MERIT_MODES = ("half-pmax", "half-mean")


@dataclass(frozen=True)
class VotingScenario:
    """Who votes how, plus the dynamics constants.

    ``merit`` is ``"half-pmax"`` (candidate productivity against half of
    ``p_max``), ``"half-mean"`` (against half the mean productivity) or a
    fixed number in [-1, 1]. ``non_voters`` maps agents that sit in the
    graph but not on the committee (e.g. the chair) to a fixed initial
    decision. ``blend_scale`` picks the denominator used to mix merit and
    noise: the graph's ``p_max`` or the largest productivity.
    """

    agent_ids: tuple
    candidate: object
    v_plus: frozenset
    v_minus: frozenset
    v_undecided: frozenset
    non_voters: Mapping = field(default_factory=dict)
    candidate_x0: float = 1.0
    merit: object = "half-pmax"
    alpha: float = 0.15
    eps: float = 0.0
    mu: float = 1.0
    solve_mode: str = "joint"
    blend_scale: str = "p_max"

    def __post_init__(self):
        ids = tuple(self.agent_ids)
        object.__setattr__(self, "agent_ids", ids)
        for name in ("v_plus", "v_minus", "v_undecided"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "non_voters", dict(self.non_voters))

        groups = [self.v_plus, self.v_minus, self.v_undecided, frozenset(self.non_voters), frozenset([self.candidate])]
        seen = set()
        for g in groups:
            if seen & g:
                raise ValueError(f"agents {sorted(seen & g, key=str)} appear in more than one voting set")
            seen |= g
        if seen != set(ids):
            missing = set(ids) - seen
            extra = seen - set(ids)
            raise ValueError(f"voting sets must partition the agents (missing {sorted(missing, key=str)}, "
                             f"unknown {sorted(extra, key=str)})")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.eps < 0 or self.mu < 0:
            raise ValueError("eps and mu must be nonnegative")
        if self.solve_mode not in ("joint", "clamped"):
            raise ValueError("solve_mode must be 'joint' or 'clamped'")
        if self.blend_scale not in ("p_max", "max_p"):
            raise ValueError("blend_scale must be 'p_max' or 'max_p'")
        if isinstance(self.merit, str):
            if self.merit not in MERIT_MODES:
                raise ValueError(f"merit must be a number or one of {MERIT_MODES}")
        elif abs(float(self.merit)) > 1:
            raise ValueError("fixed merit must lie in [-1, 1]")

    def with_(self, **changes) -> "VotingScenario":
        return replace(self, **changes)

    def indices(self, agents) -> np.ndarray:
        return np.array(sorted(self.agent_ids.index(a) for a in agents), dtype=int)

    @property
    def undecided_index(self) -> np.ndarray:
        return self.indices(self.v_undecided)

    @property
    def decided_index(self) -> np.ndarray:
        return self.indices(set(self.agent_ids) - self.v_undecided)


@dataclass(frozen=True)
class RngSpec:
    """Seed plus stream index of a counter-based (Philox) generator."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        key = (int(self.stream) << 64) | (int(self.seed) & (2**64 - 1))
        return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class VoteOutcome:
    x0: np.ndarray
    x: np.ndarray
    cost_at_solution: float
    gradient_norm: float


def candidate_merit(p: ProductivityVector, p_max: float, mode, candidate=None) -> float:
    """Merit score of the candidate, clamped to [-1, 1]."""
    if not p_max > 0:
        raise ValueError("p_max must be positive")
    if not isinstance(mode, str):
        m = float(mode)
        if abs(m) > 1:
            raise ValueError("fixed merit must lie in [-1, 1]")
        return m
    if candidate is None:
        raise ValueError("candidate is required for computed merit")
    pc = p[candidate]
    if mode == "half-pmax":
        m = (pc - 0.5 * p_max) / p_max
    elif mode == "half-mean":
        m = (pc - p.values.sum() / (2 * len(p))) / p_max
    else:
        raise ValueError(f"unknown merit mode {mode!r}")
    return float(np.clip(m, -1.0, 1.0))


def _base_x0(scenario: VotingScenario) -> np.ndarray:
    ids = scenario.agent_ids
    x0 = np.zeros(len(ids))
    for a in scenario.v_plus:
        x0[ids.index(a)] = 1.0
    for a in scenario.v_minus:
        x0[ids.index(a)] = -1.0
    for a, v in scenario.non_voters.items():
        x0[ids.index(a)] = float(v)
    x0[ids.index(scenario.candidate)] = scenario.candidate_x0
    return x0


def _blend_weights(scenario, p, p_max):
    idx = scenario.undecided_index
    scale = p_max if scenario.blend_scale == "p_max" else float(p.values.max())
    lean = p.values[idx] / scale
    if np.any(lean > 1):
        bad = [scenario.agent_ids[i] for i in idx[lean > 1]]
        raise ValueError(f"undecided agents {bad} have productivity above {scale}; merit/noise blend undefined")
    return idx, lean


def initialize_votes(scenario: VotingScenario, p: ProductivityVector, m_c: float, rng, p_max: float) -> np.ndarray:
    """Initial decision vector.

    Decided agents sit at +/-1, non-voters and the candidate at their fixed
    values, and undecided agent i at ``alpha * (w_i m_c + (1 - w_i) r_i)``
    with ``w_i = p_i / p_max`` and ``r_i ~ U[-1, 1]``.
    """
    x0 = _base_x0(scenario)
    idx, lean = _blend_weights(scenario, p, p_max)
    gen = rng.generator() if isinstance(rng, RngSpec) else rng
    r = gen.uniform(-1.0, 1.0, size=len(idx))
    x0[idx] = scenario.alpha * (lean * m_c + (1.0 - lean) * r)
    return x0


def cost(x, x0, L, mu: float, eps: float) -> float:
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    d = x - x0
    return 0.5 * float(d @ d + eps * (x - 1.0) @ (x + 1.0) + mu * x @ (np.asarray(L) @ x))


def cost_gradient(x, x0, L, mu: float, eps: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return (x - np.asarray(x0, dtype=float)) + eps * x + mu * (np.asarray(L) @ x)


def laplacian_quadratic(W, x) -> float:
    """Pairwise form ``1/2 sum_i sum_{j != i} W_ij (x_i - x_j)^2``."""
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    diff = x[:, None] - x[None, :]
    off = W * (1.0 - np.eye(len(x)))
    return 0.5 * float(np.sum(off * diff * diff))


def _system(L, mu, eps, n):
    return (1.0 + eps) * np.eye(n) + mu * np.asarray(L, dtype=float)


def solve_votes(L, x0, mu: float, eps: float = 0.0, free=None) -> VoteOutcome:
    """Minimize the vote cost.

    With ``free=None`` every agent is solved for jointly. Given an index
    array ``free``, only those entries move and the remaining ones are held
    at their ``x0`` values (a boundary-value solve on the free block).
    """
    L = np.asarray(L, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    n = len(x0)
    if L.shape != (n, n):
        raise ValueError(f"L has shape {L.shape}, x0 has length {n}")
    if mu < 0 or eps < 0:
        raise ValueError("mu and eps must be nonnegative")
    A = _system(L, mu, eps, n)
    if free is None:
        x = linalg.solve(A, x0, assume_a="pos")
        grad = cost_gradient(x, x0, L, mu, eps)
    else:
        free = np.asarray(free, dtype=int)
        fixed = np.setdiff1d(np.arange(n), free)
        x = x0.copy()
        rhs = x0[free] - mu * L[np.ix_(free, fixed)] @ x0[fixed]
        x[free] = linalg.solve(A[np.ix_(free, free)], rhs, assume_a="pos")
        grad = cost_gradient(x, x0, L, mu, eps)[free]
    return VoteOutcome(x0, x, cost(x, x0, L, mu, eps), float(np.max(np.abs(grad), initial=0.0)))


@dataclass(frozen=True)
class MonteCarloStats:
    agent_ids: tuple  # undecided agents, index order
    mean: np.ndarray
    std: np.ndarray
    trials: int
    seed: int
    merit: float

    def as_dict(self) -> dict:
        return {a: (float(m), float(s)) for a, m, s in zip(self.agent_ids, self.mean, self.std)}


def _p_max_for(graph: CommitteeGraph) -> float:
    return graph.params.p_max


def monte_carlo_votes(graph: CommitteeGraph, scenario: VotingScenario, trials: int = 1000, seed: int = 42) -> MonteCarloStats:
    """Mean and standard deviation of each undecided agent's final decision.

    Trial ``t`` draws its noise from ``RngSpec(seed, t)``, so results do not
    depend on evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if tuple(graph.agent_ids) != scenario.agent_ids:
        raise ValueError("graph and scenario disagree on the agent ordering")
    p_max = _p_max_for(graph)
    m_c = candidate_merit(graph.p, p_max, scenario.merit, scenario.candidate)
    X0 = np.column_stack([
        initialize_votes(scenario, graph.p, m_c, RngSpec(seed, t), p_max) for t in range(trials)
    ])
    n = graph.n
    A = _system(graph.L, scenario.mu, scenario.eps, n)
    undecided = scenario.undecided_index
    if scenario.solve_mode == "joint":
        X = linalg.cho_solve(linalg.cho_factor(A), X0)
    else:
        fixed = np.setdiff1d(np.arange(n), undecided)
        X = X0.copy()
        rhs = X0[undecided] - scenario.mu * graph.L[np.ix_(undecided, fixed)] @ X0[fixed]
        X[undecided] = linalg.cho_solve(linalg.cho_factor(A[np.ix_(undecided, undecided)]), rhs)
    Xu = X[undecided]
    return MonteCarloStats(
        tuple(scenario.agent_ids[i] for i in undecided),
        Xu.mean(axis=1),
        Xu.std(axis=1),
        trials,
        seed,
        m_c,
    )


@dataclass(frozen=True)
class SweepResult:
    gammas: tuple
    mus: tuple
    agent_ids: tuple  # undecided agents by ascending productivity
    productivity: tuple
    mean: np.ndarray  # (gamma, mu, agent)
    std: np.ndarray
    trials: int
    seed: int

    def rows(self):
        for gi, g in enumerate(self.gammas):
            for mi, mu in enumerate(self.mus):
                for ai, a in enumerate(self.agent_ids):
                    yield g, mu, a, float(self.mean[gi, mi, ai]), float(self.std[gi, mi, ai]), self.trials

    def series(self, agent, mu):
        """Mean decision of ``agent`` across the gamma axis at a given ``mu``."""
        return self.mean[:, self.mus.index(mu), self.agent_ids.index(agent)]


def gamma_sweep(data: DepartmentData, params: ModelParams, scenario: VotingScenario,
                gammas: Sequence[float], mus: Sequence[float], trials: int = 1000, seed: int = 42) -> SweepResult:
    """Full factorial over inbreeding constant and influence constant.

    The graph is rebuilt for every gamma; every cell reuses the same seed
    so trial t sees the same noise draw everywhere.
    """
    gammas = tuple(float(g) for g in gammas)
    mus = tuple(float(m) for m in mus)
    if not gammas or not mus:
        raise ValueError("gammas and mus must be non-empty")
    mean = np.zeros((len(gammas), len(mus), len(scenario.v_undecided)))
    std = np.zeros_like(mean)
    order = None
    for gi, g in enumerate(gammas):
        graph = build_graph(data, params.with_(gamma=g))
        if order is None:
            und = [scenario.agent_ids[i] for i in scenario.undecided_index]
            order = sorted(und, key=lambda a: (graph.p[a], scenario.agent_ids.index(a)))
            prod = tuple(float(graph.p[a]) for a in order)
        for mi, mu in enumerate(mus):
            stats = monte_carlo_votes(graph, scenario.with_(mu=mu), trials, seed)
            pos = [stats.agent_ids.index(a) for a in order]
            mean[gi, mi] = stats.mean[pos]
            std[gi, mi] = stats.std[pos]
    return SweepResult(gammas, mus, tuple(order), prod, mean, std, trials, seed)
