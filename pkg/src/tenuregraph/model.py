"""Committee graph construction.

Scholarship data goes in (per-agent criterion totals and per-pair joint
output), the weighted interaction graph comes out:

    productivity p  ->  social matrix S
    pair output     ->  collaboration matrix R
    inbred set      ->  inbreeding term B
    W = R + S + B,  L = diag(W 1) - W
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "ParameterError",
    "DepartmentData",
    "ModelParams",
    "ProductivityVector",
    "CommitteeGraph",
    "ROLE_INCREMENTS",
    "DEFAULT_WEIGHTS",
    "compute_productivity",
    "apply_role_adjustments",
    "compute_collaboration",
    "symmetrize_pairs",
    "compute_social",
    "compute_inbreeding_term",
    "assemble_weights",
    "laplacian",
    "build_graph",
]

ROLE_INCREMENTS = {"chair": 2.0, "coordinator": 1.0}

# journal articles, all publications, funding
DEFAULT_WEIGHTS = {"JOUR": 0.67, "PUBL": 0.33, "FUND": 1.0}

PRODUCTIVITY_SCALES = ("per-agent-mean", "fraction")
INBREEDING_INDICATORS = ("inbred", "complement")


class ParameterError(ValueError):
    """Model parameters produce an invalid graph (e.g. a nonpositive weight)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class DepartmentData:
    """Raw department description.

    ``criteria`` maps a criterion name to one nonnegative value per agent;
    ``pair_criteria`` maps a criterion name to a symmetric (N, N) array of
    joint output with zero diagonal. ``productivity`` and ``collaboration``
    may carry precomputed values (e.g. published tables) and then take
    precedence over the raw criteria.
    """

    agent_ids: tuple
    criteria: Mapping[str, np.ndarray] = field(default_factory=dict)
    pair_criteria: Mapping[str, np.ndarray] = field(default_factory=dict)
    roles: Mapping = field(default_factory=dict)
    inbred_set: frozenset = frozenset()
    productivity: np.ndarray | None = None
    collaboration: np.ndarray | None = None

    def __post_init__(self):
        ids = tuple(self.agent_ids)
        if len(ids) == 0:
            raise ValueError("department has no agents")
        if len(set(ids)) != len(ids):
            raise ValueError("agent ids must be distinct")
        object.__setattr__(self, "agent_ids", ids)
        n = len(ids)

        crit = {}
        for name, values in self.criteria.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"criterion {name!r} has shape {arr.shape}, expected ({n},)")
            if np.any(arr < 0):
                raise ValueError(f"criterion {name!r} has negative values")
            crit[name] = arr
        object.__setattr__(self, "criteria", crit)

        pairs = {}
        for name, values in self.pair_criteria.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != (n, n):
                raise ValueError(f"pair criterion {name!r} has shape {arr.shape}, expected ({n}, {n})")
            if np.any(arr < 0):
                raise ValueError(f"pair criterion {name!r} has negative values")
            if np.any(np.diag(arr) != 0):
                raise ValueError(f"pair criterion {name!r} has a nonzero diagonal")
            pairs[name] = arr
        object.__setattr__(self, "pair_criteria", pairs)

        unknown = [a for a in self.roles if a not in ids]
        if unknown:
            raise ValueError(f"roles reference unknown agents {unknown}")
        inbred = frozenset(self.inbred_set)
        if not inbred <= set(ids):
            raise ValueError(f"inbred set references unknown agents {sorted(inbred - set(ids), key=str)}")
        object.__setattr__(self, "inbred_set", inbred)

        if self.productivity is not None:
            p = np.asarray(self.productivity, dtype=float)
            if p.shape != (n,) or np.any(p < 0):
                raise ValueError("precomputed productivity must be a nonnegative vector of length N")
            object.__setattr__(self, "productivity", p)
        if self.collaboration is not None:
            r = np.asarray(self.collaboration, dtype=float)
            if r.shape != (n, n) or np.any(r < 0):
                raise ValueError("precomputed collaboration must be a nonnegative (N, N) matrix")
            object.__setattr__(self, "collaboration", r)

    @property
    def n(self) -> int:
        return len(self.agent_ids)

    def index(self, agent) -> int:
        return self.agent_ids.index(agent)


@dataclass(frozen=True)
class ModelParams:
    individual_weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    pair_weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    eta: float = 0.25
    p_max: float = 7.0
    gamma: float = 0.25
    productivity_scale: str = "per-agent-mean"
    inbreeding_indicator: str = "inbred"

    def __post_init__(self):
        for name, w in {**self.individual_weights, **self.pair_weights}.items():
            if w < 0:
                raise ParameterError(f"weight for {name!r} is negative")
        if not 0.0 < self.eta < 1.0:
            raise ParameterError(f"eta must lie in (0, 1), got {self.eta}")
        if not self.p_max > 0:
            raise ParameterError(f"p_max must be positive, got {self.p_max}")
        if self.gamma < 0:
            raise ParameterError(f"gamma must be nonnegative, got {self.gamma}")
        if self.productivity_scale not in PRODUCTIVITY_SCALES:
            raise ParameterError(f"productivity_scale must be one of {PRODUCTIVITY_SCALES}")
        if self.inbreeding_indicator not in INBREEDING_INDICATORS:
            raise ParameterError(f"inbreeding_indicator must be one of {INBREEDING_INDICATORS}")

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class ProductivityVector:
    values: np.ndarray
    agent_ids: tuple
    adjusted: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or len(v) != len(self.agent_ids):
            raise ValueError("productivity length must equal the agent count")
        if np.any(v < 0):
            raise ValueError("productivity entries must be nonnegative")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "agent_ids", tuple(self.agent_ids))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, agent):
        return self.values[self.agent_ids.index(agent)]


@dataclass(frozen=True)
class CommitteeGraph:
    agent_ids: tuple
    p: ProductivityVector
    R: np.ndarray
    S: np.ndarray
    B: np.ndarray
    W: np.ndarray
    L: np.ndarray
    params: ModelParams
    asymmetry: float = 0.0

    @property
    def n(self) -> int:
        return len(self.agent_ids)


def _scale(params: ModelParams, n: int) -> float:
    return float(n) if params.productivity_scale == "per-agent-mean" else 1.0


def _department_totals(data: DepartmentData) -> dict:
    return {name: float(values.sum()) for name, values in data.criteria.items()}


def compute_productivity(data: DepartmentData, params: ModelParams) -> ProductivityVector:
    """Weighted share of department output held by each agent.

    Each criterion contributes ``weight * own / department_total``; in
    ``per-agent-mean`` mode the result is multiplied by the agent count so
    that an average agent scores the sum of the weights. Criteria whose
    department total is zero contribute nothing.
    """
    if data.productivity is not None:
        return ProductivityVector(data.productivity.copy(), data.agent_ids)
    if not data.criteria:
        raise ValueError("no criteria to compute productivity from")

    p = np.zeros(data.n)
    totals = _department_totals(data)
    for name, values in data.criteria.items():
        beta = params.individual_weights.get(name, 0.0)
        if totals[name] > 0 and beta:
            p += beta * (values / totals[name])
    return ProductivityVector(p * _scale(params, data.n), data.agent_ids)


def apply_role_adjustments(p: ProductivityVector, roles: Mapping) -> ProductivityVector:
    """Add the fixed administrative increments (chair +2, coordinator +1)."""
    if p.adjusted:
        raise ValueError("role adjustments already applied")
    values = p.values.copy()
    for agent, role in roles.items():
        if role not in ROLE_INCREMENTS:
            raise ValueError(f"unknown role {role!r} for agent {agent!r}")
        values[p.agent_ids.index(agent)] += ROLE_INCREMENTS[role]
    return ProductivityVector(values, p.agent_ids, adjusted=True)


def symmetrize_pairs(M, tol: float = 1e-12):
    """Average ``M`` with its transpose and zero the diagonal.

    Returns the symmetric matrix and the largest ``|M_ij - M_ji|`` seen.
    Asymmetry above ``tol`` is only reported back; it is never fatal.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    asym = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if asym <= tol:
        out = M.copy()
    else:
        out = 0.5 * (M + M.T)
    np.fill_diagonal(out, 0.0)
    return out, asym


def compute_collaboration(data: DepartmentData, params: ModelParams, tol: float = 1e-9):
    """Collaboration matrix R from joint output.

    Joint output for criterion k is normalized by the department total of
    the matching per-agent criterion, with the same scale convention as
    :func:`compute_productivity`. Asymmetric input is averaged.

    Returns ``(R, asymmetry)``.
    """
    if data.collaboration is not None:
        return symmetrize_pairs(data.collaboration, tol)

    n = data.n
    R = np.zeros((n, n))
    totals = _department_totals(data)
    for name, joint in data.pair_criteria.items():
        if name not in totals:
            raise ValueError(f"pair criterion {name!r} has no per-agent criterion to normalize by")
        alpha = params.pair_weights.get(name, 0.0)
        if totals[name] > 0 and alpha:
            R += alpha * (joint / totals[name])
    R *= _scale(params, n)
    return symmetrize_pairs(R, tol)


def compute_social(p: ProductivityVector, params: ModelParams) -> np.ndarray:
    """Residual-time social interaction ``S_ij = p_max - eta * sqrt(p_i p_j)``."""
    v = p.values
    S = params.p_max - params.eta * np.sqrt(np.outer(v, v))
    np.fill_diagonal(S, 0.0)
    off = ~np.eye(len(v), dtype=bool)
    if np.any(S[off] <= 0):
        i, j = np.argwhere((S <= 0) & off)[0]
        pair = (p.agent_ids[i], p.agent_ids[j])
        raise ParameterError(
            f"social weight for agents {pair[0]} and {pair[1]} is {S[i, j]:.6f} <= 0; "
            f"increase p_max or lower eta",
            pair=pair,
        )
    return S


def compute_inbreeding_term(inbred_set, gamma: float, agent_ids: Sequence, indicator: str = "inbred"):
    """Extra weight ``gamma`` between every pair of flagged agents.

    With ``indicator="inbred"`` the flagged agents are the inbred ones;
    ``"complement"`` flags everyone else instead. The diagonal is zero.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    if indicator not in INBREEDING_INDICATORS:
        raise ValueError(f"indicator must be one of {INBREEDING_INDICATORS}")
    ids = list(agent_ids)
    inbred = set(inbred_set)
    if not inbred <= set(ids):
        raise ValueError("inbred set is not a subset of the agents")
    u = np.array([a in inbred for a in ids], dtype=float)
    if indicator == "complement":
        u = 1.0 - u
    B = gamma * np.outer(u, u)
    np.fill_diagonal(B, 0.0)
    return B


def _check_symmetric_zero_diag(M, name, tol=0.0):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if np.max(np.abs(M - M.T), initial=0.0) > tol * scale:
        raise ValueError(f"{name} is not symmetric")
    if np.any(np.diag(M) != 0):
        raise ValueError(f"{name} has a nonzero diagonal")


def assemble_weights(R, S, B, agent_ids: Sequence | None = None) -> np.ndarray:
    R, S, B = (np.asarray(M, dtype=float) for M in (R, S, B))
    if not R.shape == S.shape == B.shape:
        raise ValueError("R, S and B must have the same shape")
    for M, name in ((R, "R"), (S, "S"), (B, "B")):
        _check_symmetric_zero_diag(M, name)
    W = R + S + B
    off = ~np.eye(len(W), dtype=bool)
    if np.any(W[off] <= 0):
        i, j = np.argwhere((W <= 0) & off)[0]
        ids = list(agent_ids) if agent_ids is not None else list(range(1, len(W) + 1))
        raise ParameterError(
            f"weight between agents {ids[i]} and {ids[j]} is {W[i, j]:.6f} <= 0; graph not fully connected",
            pair=(ids[i], ids[j]),
        )
    return W


def laplacian(W, tol: float = 1e-12) -> np.ndarray:
    W = np.asarray(W, dtype=float)
    _check_symmetric_zero_diag(W, "W", tol)
    if np.any(W < 0):
        raise ValueError("W has negative weights")
    L = -W.copy()
    np.fill_diagonal(L, W.sum(axis=1))
    return L


def build_graph(data: DepartmentData, params: ModelParams, adjust_roles: bool = True) -> CommitteeGraph:
    """Run the whole pipeline from department data to Laplacian."""
    p = compute_productivity(data, params)
    if adjust_roles:
        p = apply_role_adjustments(p, data.roles)
    R, asym = compute_collaboration(data, params)
    S = compute_social(p, params)
    B = compute_inbreeding_term(data.inbred_set, params.gamma, data.agent_ids, params.inbreeding_indicator)
    W = assemble_weights(R, S, B, data.agent_ids)
    return CommitteeGraph(data.agent_ids, p, R, S, B, W, laplacian(W), params, asym)
