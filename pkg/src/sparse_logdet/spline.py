"""Path-graph Laplacian spline used to extrapolate the estimate sequence.

The known estimates sit on vertices at their pattern densities; one extra
vertex is placed beyond the last density and its value is the least-squares
minimizer of ``||L_u f + L_k g_k||``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NeedTwoPoints, NonIncreasingCoordinates, SaturatedPattern, ZeroNormColumn

INVERSE_SYMMETRIC = "inverse-symmetric"
PSEUDOCODE_RAW = "pseudocode-raw"
VARIANTS = (INVERSE_SYMMETRIC, PSEUDOCODE_RAW)

STEP_FACTOR = 1.5


@dataclass(frozen=True, eq=False)
class SplineProblem:
    x: np.ndarray
    weights: np.ndarray
    laplacian: np.ndarray
    variant: str
    known: np.ndarray | None = None
    value: float | None = None


@dataclass(frozen=True)
class SplineSeries:
    """``S[0]`` is ``S^2``, the extrapolation from the first two estimates."""

    S: tuple[float, ...]

    def at(self, j):
        return self.S[j - 2]


def extrapolation_point(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.size < 2:
        raise NeedTwoPoints("extrapolation needs at least two densities")
    gap = x[-1] - x[-2]
    if gap == 0:
        raise SaturatedPattern("last two densities coincide")
    if gap < 0:
        raise NonIncreasingCoordinates("densities must be strictly increasing")
    return float(x[-1] + STEP_FACTOR * gap)


def build_path_laplacian(x, variant=INVERSE_SYMMETRIC) -> SplineProblem:
    """Laplacian ``Deg - Adj`` of the path graph through ``x``.

    ``inverse-symmetric`` weights each edge by the inverse of its length.
    ``pseudocode-raw`` puts the raw forward gap above the diagonal and the
    backward gap below it (the first backward gap uses ``x_0 = 0``); it is
    not symmetric and exists for comparison only.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size < 3:
        raise NeedTwoPoints("a spline problem needs two known vertices and one unknown")
    gaps = np.diff(x)
    if np.any(gaps <= 0):
        raise NonIncreasingCoordinates("vertex coordinates must be strictly increasing")
    k = x.size
    adj = np.zeros((k, k))
    if variant == INVERSE_SYMMETRIC:
        w = 1.0 / gaps
        idx = np.arange(k - 1)
        adj[idx, idx + 1] = w
        adj[idx + 1, idx] = w
    elif variant == PSEUDOCODE_RAW:
        w = gaps
        back = np.diff(np.concatenate([[0.0], x[:-1]]))
        idx = np.arange(k - 1)
        adj[idx, idx + 1] = gaps
        adj[idx + 1, idx] = back
    else:
        raise ValueError(f"unknown spline variant {variant!r}; choose from {VARIANTS}")
    lap = np.diag(adj.sum(axis=1)) - adj
    return SplineProblem(x=x, weights=w, laplacian=lap, variant=variant)


def solve_single_unknown(lap, known) -> float:
    """Minimize ``||L_u f + L_k g_k||`` over a scalar ``f`` (last column unknown)."""
    lu = lap[:, -1]
    rhs = lap[:, :-1] @ known
    denom = lu @ lu
    if denom == 0:
        raise ZeroNormColumn("unknown vertex column of the Laplacian is zero")
    return float(-(lu @ rhs) / denom)


def extrapolate(D, x, variant=INVERSE_SYMMETRIC, *, return_problem=False):
    """Spline value at ``x_m + 1.5 (x_m - x_{m-1})`` fitted to ``(x_j, D^j)``."""
    D = np.asarray(D, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if D.shape != x.shape:
        raise ValueError("D and x must have the same length")
    if D.size < 2:
        raise NeedTwoPoints("extrapolation needs at least two estimates")
    if np.any(np.diff(x[:-1]) <= 0):
        raise NonIncreasingCoordinates("densities must be strictly increasing")
    nodes = np.append(x, extrapolation_point(x))
    problem = build_path_laplacian(nodes, variant)
    value = solve_single_unknown(problem.laplacian, D)
    if return_problem:
        return value, SplineProblem(
            x=nodes, weights=problem.weights, laplacian=problem.laplacian,
            variant=variant, known=D, value=value,
        )
    return value


def spline_series(D, x, variant=INVERSE_SYMMETRIC) -> SplineSeries:
    """``S^j`` for ``j = 2..m``.

    Once the densities stop growing the pattern is saturated and the
    estimate is already exact, so ``S^j = D^j`` from there on.
    """
    D = np.asarray(D, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if D.size < 2:
        raise NeedTwoPoints("a spline series needs m >= 2")
    out = []
    for j in range(2, D.size + 1):
        if x[j - 1] == x[j - 2]:
            out.append(float(D[j - 1]))
        else:
            out.append(extrapolate(D[:j], x[:j], variant))
    return SplineSeries(tuple(out))
