"""Brute-force references for checking the closed-form results.

Nothing here is used on the solve path.  The implementations deliberately
avoid the semifield helpers so that a bug there cannot hide itself.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import DimensionMismatch, EmptyFeasibleGrid, MissingCaps, Reducible, TooLarge
from .location import LocationInstance

MAX_CYCLE_NODES = 8
MAX_GRID_CELLS = 10**7
DEFAULT_STEP = 0.05
_CHUNK = 1 << 17


@dataclass(frozen=True)
class GridSpec:
    lower: np.ndarray
    upper: np.ndarray
    step: float

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=float)
        upper = np.array(self.upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise DimensionMismatch("grid bounds must be vectors of equal length")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ValueError("grid bounds must be finite")
        if (lower > upper).any():
            raise ValueError("grid lower bound exceeds upper bound")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"grid step must be positive, got {self.step}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "step", float(self.step))

    @property
    def shape(self) -> tuple[int, ...]:
        # The tiny slack keeps an upper bound that is a whole number of steps away.
        return tuple(int(math.floor((u - l) / self.step + 1e-9)) + 1 for l, u in zip(self.lower, self.upper))

    @property
    def cells(self) -> int:
        return math.prod(self.shape)

    @classmethod
    def around(cls, inst: LocationInstance, step: float = DEFAULT_STEP) -> "GridSpec":
        """Box around the points, widened by ``max |w| + 1`` in every coordinate."""
        pad = float(np.max(np.abs(inst.weights))) + 1.0
        return cls(inst.points.min(axis=0) - pad, inst.points.max(axis=0) + pad, step)


def _strongly_connected(adj: list[list[bool]]) -> bool:
    n = len(adj)

    def reach(forward: bool) -> set[int]:
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                edge = adj[i][j] if forward else adj[j][i]
                if edge and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    return len(reach(True)) == n and len(reach(False)) == n


def max_cycle_mean(A: ArrayLike, *, strict: bool = True) -> float:
    """Maximum of weight/length over all elementary cycles, by exhaustive DFS.

    ``strict=False`` skips the irreducibility check; an acyclic support then
    yields the tropical zero.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > MAX_CYCLE_NODES:
        raise TooLarge(f"cycle enumeration is limited to {MAX_CYCLE_NODES} nodes, got {n}")
    weights = A.tolist()
    adj = [[w != -math.inf for w in row] for row in weights]
    if strict and (not _strongly_connected(adj) or (n == 1 and not adj[0][0])):
        raise Reducible("matrix is reducible")

    best = -math.inf
    # Each elementary cycle is found once, from its smallest node.
    for start in range(n):
        stack = [(start, [start], 0.0)]
        while stack:
            node, path, total = stack.pop()
            for nxt in range(start, n):
                if not adj[node][nxt]:
                    continue
                if nxt == start:
                    best = max(best, (total + weights[node][nxt]) / len(path))
                elif nxt not in path:
                    stack.append((nxt, path + [nxt], total + weights[node][nxt]))
    return best


def _objective_block(points: np.ndarray, weights: np.ndarray, xs: np.ndarray) -> np.ndarray:
    dist = np.abs(xs[:, None, :] - points[None, :, :]).max(axis=2)
    return (dist + weights[None, :]).max(axis=1)


def grid_min_objective(
    inst: LocationInstance,
    grid: GridSpec | None = None,
    respect_caps: bool = False,
    *,
    step: float = DEFAULT_STEP,
    eps: float = 1e-9,
    workers: int = 1,
) -> tuple[float, np.ndarray]:
    """Minimum of the objective over every cell of ``grid`` and one argmin.

    Ties resolve to the lexicographically smallest grid index.  With
    ``respect_caps`` cells violating any distance cap are skipped.
    """
    if grid is None:
        grid = GridSpec.around(inst, step)
    if grid.lower.shape[0] != inst.n:
        raise DimensionMismatch(f"grid has dimension {grid.lower.shape[0]}, instance {inst.n}")
    if respect_caps and inst.caps is None:
        raise MissingCaps("respect_caps needs an instance with caps")
    shape = grid.shape
    total = math.prod(shape)
    if total > MAX_GRID_CELLS:
        raise TooLarge(f"grid has {total} cells, limit is {MAX_GRID_CELLS}")

    points, weights = inst.points, inst.weights
    caps = inst.caps if respect_caps else None

    def scan(start: int) -> tuple[float, int]:
        flat = np.arange(start, min(start + _CHUNK, total))
        xs = grid.lower + grid.step * np.stack(np.unravel_index(flat, shape), axis=1)
        values = _objective_block(points, weights, xs)
        if caps is not None:
            dist = np.abs(xs[:, None, :] - points[None, :, :]).max(axis=2)
            values = np.where((dist <= caps[None, :] + eps).all(axis=1), values, np.inf)
        k = int(np.argmin(values))
        return float(values[k]), int(flat[k])

    starts = range(0, total, _CHUNK)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, starts))
    else:
        results = [scan(s) for s in starts]

    # Chunks are in index order, so a strict comparison keeps the earliest tie.
    best_value, best_index = math.inf, -1
    for value, index in results:
        if value < best_value:
            best_value, best_index = value, index
    if best_index < 0:
        raise EmptyFeasibleGrid("no grid cell satisfies every distance cap")
    argmin = grid.lower + grid.step * np.array(np.unravel_index(best_index, shape), dtype=float)
    return best_value, argmin


def span_membership(y: ArrayLike, X: ArrayLike, eps: float = 1e-9) -> bool:
    """Whether ``y = X c`` for the residuated coefficients ``c_k = min_i (y_i - x_ik)``."""
    y = [float(v) for v in np.asarray(y, dtype=float).ravel()]
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.shape[0] != len(y):
        raise DimensionMismatch(f"vector of length {len(y)} vs matrix {X.shape}")
    cols = X.T.tolist()
    coeffs = [min(yi - xi for yi, xi in zip(y, col)) for col in cols]
    for i, yi in enumerate(y):
        combo = max(c + col[i] for c, col in zip(coeffs, cols))
        if abs(combo - yi) > eps:
            return False
    return True
