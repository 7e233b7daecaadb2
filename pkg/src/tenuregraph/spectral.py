"""Laplacian spectrum, 2-D influence diagrams and Gaussian influence fields."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConvergenceError",
    "SpectralDecomposition",
    "InfluenceDiagram",
    "FieldGrid",
    "jacobi_eigh",
    "normalize_signs",
    "eigendecompose",
    "embed",
    "influence_field",
    "default_bounds",
    "sample_field",
    "positive_area_fraction",
    "DEFAULT_SIGMA",
]

DEFAULT_SIGMA = 4e-4


class ConvergenceError(RuntimeError):
    pass


def jacobi_eigh(A, tol=1e-15, max_sweeps=100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : (n, n) array_like
        Symmetric matrix. Only used through its symmetric part.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol * ||A||_F``.
    max_sweeps : int
        Iteration budget; :class:`ConvergenceError` is raised if exhausted.

    Returns
    -------
    w : (n,) ndarray
        Eigenvalues in ascending order.
    V : (n, n) ndarray
        Orthonormal eigenvectors as columns, matching ``w``.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    norm = np.linalg.norm(A)
    if n < 2 or norm == 0.0:
        w = np.diag(A).copy()
        order = np.argsort(w, kind="stable")
        return w[order], V[:, order]

    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(A[iu] ** 2))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app, aqq = A[p, p], A[q, q]
                # skip rotations that can no longer change the diagonal
                if abs(apq) < 1e-300 or abs(apq) <= 1e-18 * (abs(app) + abs(aqq)):
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        off = np.sqrt(2.0 * np.sum(A[iu] ** 2))
        if off > tol * norm:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")

    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def normalize_signs(V):
    """Flip each column so its largest-magnitude entry is positive.

    Ties go to the lowest row index.
    """
    V = np.array(V, dtype=float)
    rows = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[rows, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    def residual(self, L) -> float:
        """Largest ``||L v_n - lambda_n v_n||_inf`` over all eigenpairs."""
        L = np.asarray(L, dtype=float)
        R = L @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.abs(R)))

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def eigendecompose(L, tol: float = 1e-12, method: str = "jacobi") -> SpectralDecomposition:
    """Full, ascending, sign-normalized spectrum of a symmetric matrix.

    ``method="jacobi"`` uses the in-house cyclic Jacobi solver,
    ``method="lapack"`` defers to :func:`numpy.linalg.eigh`.
    """
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(float(np.max(np.abs(L), initial=0.0)), 1.0)
    if np.max(np.abs(L - L.T), initial=0.0) > tol * scale:
        raise ValueError("matrix is not symmetric")
    if method == "jacobi":
        w, V = jacobi_eigh(L)
    elif method == "lapack":
        w, V = np.linalg.eigh(0.5 * (L + L.T))
    else:
        raise ValueError(f"unknown method {method!r}")
    return SpectralDecomposition(w, normalize_signs(V))


@dataclass(frozen=True)
class InfluenceDiagram:
    points: np.ndarray  # (N, 2)
    agent_ids: tuple
    eigenvalues: tuple = ()
    rotation_ambiguous: bool = False
    provenance: dict = field(default_factory=dict)

    def point(self, agent) -> np.ndarray:
        return self.points[self.agent_ids.index(agent)]

    def distance(self, a, b) -> float:
        return float(np.linalg.norm(self.point(a) - self.point(b)))

    def bbox_diagonal(self) -> float:
        return float(np.linalg.norm(self.points.max(axis=0) - self.points.min(axis=0)))


def embed(decomp: SpectralDecomposition, agent_ids=None, provenance=None, tie_tol: float = 1e-9) -> InfluenceDiagram:
    """Place agent i at ``(v2[i] / lambda2, v3[i] / lambda3)``."""
    w = decomp.eigenvalues
    V = decomp.eigenvectors
    n = len(w)
    if n < 3:
        raise ValueError("need at least 3 agents for a 2-D diagram")
    scale = max(abs(w[-1]), 1.0)
    if w[1] <= 1e-9 * scale:
        raise ValueError("graph is disconnected (second eigenvalue is zero)")
    ambiguous = abs(w[2] - w[1]) <= tie_tol * scale
    if ambiguous:
        warnings.warn("second and third eigenvalues coincide; diagram axes are rotation-ambiguous", stacklevel=2)
    ids = tuple(agent_ids) if agent_ids is not None else tuple(range(1, n + 1))
    pts = np.column_stack([V[:, 1] / w[1], V[:, 2] / w[2]])
    return InfluenceDiagram(pts, ids, (float(w[1]), float(w[2])), bool(ambiguous), dict(provenance or {}))


def _as_sigma(sigma, n):
    s = np.broadcast_to(np.asarray(sigma, dtype=float), (n,)).copy()
    if np.any(s <= 0):
        raise ValueError("sigma must be positive for every agent")
    return s


def _field(points, x, sigma, qx, qy):
    out = np.zeros(np.broadcast(qx, qy).shape)
    for (px, py), xi, si in zip(points, x, sigma):
        if xi == 0.0:
            continue
        out += xi * np.exp(-((qx - px) ** 2 + (qy - py) ** 2) / si)
    return out


def influence_field(diagram: InfluenceDiagram, assignments, sigma, query) -> float:
    """Net influence ``sum_i x_i exp(-|z - z_i|^2 / sigma_i)`` at ``query``."""
    x = np.asarray(assignments, dtype=float)
    n = len(diagram.points)
    if x.shape != (n,):
        raise ValueError("one assignment per agent is required")
    s = _as_sigma(sigma, n)
    q = np.asarray(query, dtype=float)
    return float(_field(diagram.points, x, s, q[0], q[1]))


@dataclass(frozen=True)
class FieldGrid:
    bounds: tuple  # (xmin, xmax, ymin, ymax)
    resolution: int
    values: np.ndarray  # (res, res), values[row=y, col=x]
    sigma: np.ndarray
    xs: np.ndarray
    ys: np.ndarray


def default_bounds(diagram: InfluenceDiagram, margin: float = 0.1):
    """Bounding square of the points, expanded by ``margin`` of its side on every side."""
    lo = diagram.points.min(axis=0)
    hi = diagram.points.max(axis=0)
    centre = 0.5 * (lo + hi)
    side = float(np.max(hi - lo))
    if side == 0.0:
        side = 1.0
    half = 0.5 * side * (1.0 + 2.0 * margin)
    return (centre[0] - half, centre[0] + half, centre[1] - half, centre[1] + half)


def sample_field(diagram: InfluenceDiagram, assignments, sigma, bounds=None, resolution: int = 200) -> FieldGrid:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if bounds is None:
        bounds = default_bounds(diagram)
    xmin, xmax, ymin, ymax = map(float, bounds)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("bounds are degenerate")
    x = np.asarray(assignments, dtype=float)
    n = len(diagram.points)
    if x.shape != (n,):
        raise ValueError("one assignment per agent is required")
    s = _as_sigma(sigma, n)
    # cell centres
    xs = xmin + (np.arange(resolution) + 0.5) * (xmax - xmin) / resolution
    ys = ymin + (np.arange(resolution) + 0.5) * (ymax - ymin) / resolution
    X, Y = np.meshgrid(xs, ys)
    values = _field(diagram.points, x, s, X, Y)
    return FieldGrid((xmin, xmax, ymin, ymax), resolution, values, s, xs, ys)


def positive_area_fraction(grid: FieldGrid) -> float:
    if grid.values.size == 0:
        raise ValueError("empty grid")
    return float(np.count_nonzero(grid.values > 0) / grid.values.size)
