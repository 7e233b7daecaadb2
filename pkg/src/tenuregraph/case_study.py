"""Embedded 11-agent department and one-call figure reproduction.

Agents are labelled 1..11: candidate 1, chair 4, graduate coordinator 9.
The collaboration table is kept exactly as published, including the one
asymmetric pair (1, 8); it is symmetrized when loaded.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import kendalltau

from .model import DepartmentData, ModelParams, build_graph
from .spectral import (
    DEFAULT_SIGMA,
    FieldGrid,
    InfluenceDiagram,
    default_bounds,
    eigendecompose,
    embed,
    positive_area_fraction,
    sample_field,
)
from .voting import SweepResult, VotingScenario, gamma_sweep

__all__ = [
    "AGENTS",
    "P_RAW",
    "R_RAW",
    "CaseStudy",
    "load_case_study",
    "case_study_department",
    "case_study_scenario",
    "case_study_params",
    "diagram_for",
    "reproduce_figure1",
    "reproduce_figure2",
    "reproduce_figure3",
    "reproduce_figure4",
    "Figure1",
    "Figure3",
    "FIG1_ETAS",
    "FIG1_PMAXES",
    "FIG4_GAMMAS",
    "FIG4_MUS",
]

AGENTS = tuple(range(1, 12))

P_RAW = np.array([4.127, 0.229, 0.930, 1.788, 3.779, 0.789, 4.087, 2.769, 0.138, 2.637, 0.727])

# fmt: off
R_RAW = np.array([
    [0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.891, 1.363, 0.000, 0.441, 0.000],
    [0.000, 0.000, 0.016, 0.000, 0.000, 0.000, 0.185, 0.000, 0.000, 0.000, 0.000],
    [0.000, 0.016, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000],
    [0.000, 0.000, 0.000, 0.000, 0.063, 0.000, 0.812, 0.436, 0.000, 0.385, 0.398],
    [0.000, 0.000, 0.000, 0.063, 0.000, 0.000, 0.526, 0.146, 0.252, 0.000, 0.000],
    [0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.101, 0.000, 0.000, 0.000],
    [0.891, 0.185, 0.000, 0.812, 0.526, 0.000, 0.000, 0.371, 0.000, 0.049, 0.000],
    [1.369, 0.000, 0.000, 0.436, 0.146, 0.101, 0.371, 0.000, 0.117, 0.016, 0.000],
    [0.000, 0.000, 0.000, 0.000, 0.252, 0.000, 0.000, 0.117, 0.000, 0.000, 0.000],
    [0.441, 0.000, 0.000, 0.385, 0.000, 0.000, 0.049, 0.016, 0.000, 0.000, 0.000],
    [0.000, 0.000, 0.000, 0.398, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000, 0.000],
])
# fmt: on

CANDIDATE = 1
CHAIR = 4
COORDINATOR = 9
V_PLUS = frozenset({7, 8})
V_MINUS = frozenset({6, 10, 11})
V_UNDECIDED = frozenset({2, 3, 5, 9})
INBRED = frozenset({2, 3, 4, 11})
ROLES = {CHAIR: "chair", COORDINATOR: "coordinator"}

FIG1_ETAS = (0.20, 0.35, 0.50)
FIG1_PMAXES = (6.0, 9.0, 12.0)
FIG4_GAMMAS = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
FIG4_MUS = (0.5, 1.0, 2.0)
FIG3_CHAIR_MODES = ((0.0, DEFAULT_SIGMA), (1.0, DEFAULT_SIGMA), (2.0, 4 * DEFAULT_SIGMA))


def case_study_params(**overrides) -> ModelParams:
    return ModelParams(eta=0.25, p_max=7.0, gamma=0.25).with_(**overrides)


def case_study_department() -> DepartmentData:
    return DepartmentData(
        agent_ids=AGENTS,
        roles=dict(ROLES),
        inbred_set=INBRED,
        productivity=P_RAW.copy(),
        collaboration=R_RAW.copy(),
    )


def case_study_scenario(**overrides) -> VotingScenario:
    s = VotingScenario(
        agent_ids=AGENTS,
        candidate=CANDIDATE,
        v_plus=V_PLUS,
        v_minus=V_MINUS,
        v_undecided=V_UNDECIDED,
        non_voters={CHAIR: 0.0},
        candidate_x0=1.0,
        merit="half-pmax",
        alpha=0.15,
        eps=0.0,
        mu=1.0,
    )
    return s.with_(**overrides) if overrides else s


@dataclass(frozen=True)
class CaseStudy:
    department: DepartmentData
    scenario: VotingScenario
    params: ModelParams
    R: np.ndarray  # symmetrized
    asymmetry: float
    asymmetric_pairs: tuple


def load_case_study() -> CaseStudy:
    """Embedded dataset with R symmetrized; role increments not yet applied."""
    dept = case_study_department()
    diff = np.abs(R_RAW - R_RAW.T)
    pairs = tuple((AGENTS[i], AGENTS[j]) for i, j in zip(*np.nonzero(np.triu(diff) > 0)))
    R = 0.5 * (R_RAW + R_RAW.T)
    return CaseStudy(dept, case_study_scenario(), case_study_params(), R, float(diff.max()), pairs)


def diagram_for(data: DepartmentData, params: ModelParams, method: str = "jacobi") -> InfluenceDiagram:
    graph = build_graph(data, params)
    decomp = eigendecompose(graph.L, method=method)
    prov = {"eta": params.eta, "p_max": params.p_max, "gamma": params.gamma}
    return embed(decomp, graph.agent_ids, prov)


@dataclass(frozen=True)
class Figure1:
    diagrams: dict  # (eta, p_max) -> InfluenceDiagram
    rank_correlation: dict  # ((eta, p_max), (eta, p_max)) -> Kendall tau
    excluded: tuple

    @property
    def min_rank_correlation(self) -> float:
        return min(self.rank_correlation.values())


def pairwise_distances(diagram: InfluenceDiagram, exclude=()) -> np.ndarray:
    keep = [a for a in diagram.agent_ids if a not in exclude]
    return np.array([diagram.distance(a, b) for a, b in combinations(keep, 2)])


def reproduce_figure1(etas=FIG1_ETAS, p_maxes=FIG1_PMAXES, exclude=(CHAIR, COORDINATOR)) -> Figure1:
    """3x3 grid of diagrams (gamma = 0) and Kendall tau of pairwise distances between cells."""
    data = case_study_department()
    diagrams = {}
    for eta in etas:
        for pm in p_maxes:
            diagrams[(eta, pm)] = diagram_for(data, case_study_params(eta=eta, p_max=pm, gamma=0.0))
    dists = {k: pairwise_distances(d, exclude) for k, d in diagrams.items()}
    corr = {}
    for a, b in combinations(diagrams, 2):
        corr[(a, b)] = float(kendalltau(dists[a], dists[b]).statistic)
    return Figure1(diagrams, corr, tuple(exclude))


def reproduce_figure2(params: ModelParams | None = None) -> InfluenceDiagram:
    return diagram_for(case_study_department(), params or case_study_params())


def field_assignments(scenario: VotingScenario, chair_value: float = 0.0, candidate_value: float = 0.0) -> np.ndarray:
    """Decided agents at +/-1, undecided at 0, chair and candidate as given."""
    ids = scenario.agent_ids
    x = np.zeros(len(ids))
    for a in scenario.v_plus:
        x[ids.index(a)] = 1.0
    for a in scenario.v_minus:
        x[ids.index(a)] = -1.0
    x[ids.index(CHAIR)] = chair_value
    x[ids.index(scenario.candidate)] = candidate_value
    return x


@dataclass(frozen=True)
class Figure3:
    diagram: InfluenceDiagram
    grids: tuple  # FieldGrid per chair mode
    assignments: tuple
    fractions: tuple
    margin: float
    resolution: int


def reproduce_figure3(margin: float = 0.1, resolution: int = 200, candidate_value: float = 0.0,
                      params: ModelParams | None = None) -> Figure3:
    """Chair influence fields for chair decision 0, +1 and +2 (the last with a 4x wider kernel)."""
    diagram = reproduce_figure2(params)
    scenario = case_study_scenario()
    bounds = default_bounds(diagram, margin)
    grids, xs, fracs = [], [], []
    for value, chair_sigma in FIG3_CHAIR_MODES:
        x = field_assignments(scenario, value, candidate_value)
        sigma = np.full(len(x), DEFAULT_SIGMA)
        sigma[AGENTS.index(CHAIR)] = chair_sigma
        grid: FieldGrid = sample_field(diagram, x, sigma, bounds, resolution)
        grids.append(grid)
        xs.append(x)
        fracs.append(positive_area_fraction(grid))
    return Figure3(diagram, tuple(grids), tuple(xs), tuple(fracs), margin, resolution)


def reproduce_figure4(trials: int = 1000, seed: int = 42, gammas=FIG4_GAMMAS, mus=FIG4_MUS,
                      scenario: VotingScenario | None = None, params: ModelParams | None = None) -> SweepResult:
    return gamma_sweep(case_study_department(), params or case_study_params(),
                       scenario or case_study_scenario(), gammas, mus, trials, seed)
