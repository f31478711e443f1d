"""Minimax single-facility location under the Chebyshev distance.

Given points ``r_1..r_m`` with additive weights ``w_i`` the problem is

    minimize  max_i ( rho(r_i, x) + w_i )

In max-plus terms the objective is ``x^- p + q^- x`` with
``p_k = max_i (r_ik + w_i)`` and ``q_k = min_i (r_ik - w_i)``.  Its optimum is
``lam = max_k (p_k - q_k) / 2``, attained on the whole segment
``alpha (p - lam) + (1 - alpha) (q + lam)`` for ``alpha`` in ``[0, 1]``.

Distance caps ``rho(r_i, x) <= d_i`` fold into the same shape: they are
equivalent to ``x^- p1 + q1^- x <= 0`` and get merged with the objective
normalized by ``lam``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from . import semifield as sf
from . import spectral
from .errors import AlphaOutOfRange, DimensionMismatch, InvalidInstance, MissingCaps


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE_OPTIMAL = "feasible-optimal"
    APPROXIMATE = "approximate"


def _frozen_array(values: ArrayLike, ndim: int, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"{name}: {exc}") from None
    if arr.ndim != ndim:
        raise InvalidInstance(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidInstance(f"{name} must contain only finite numbers")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LocationInstance:
    """``m >= 2`` points in R^n with additive weights and optional distance caps."""

    points: np.ndarray  # shape (m, n)
    weights: np.ndarray = None  # type: ignore[assignment]
    caps: np.ndarray | None = None

    def __post_init__(self) -> None:
        points = _frozen_array(self.points, 2, "points")
        m, n = points.shape
        if m < 2:
            raise InvalidInstance(f"points: need at least 2 points, got {m}")
        if n < 1:
            raise InvalidInstance("points: dimension must be at least 1")
        weights = np.zeros(m) if self.weights is None else self.weights
        weights = _frozen_array(weights, 1, "weights")
        if weights.shape[0] != m:
            raise InvalidInstance(f"weights: expected {m} entries, got {weights.shape[0]}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        if self.caps is not None:
            caps = _frozen_array(self.caps, 1, "caps")
            if caps.shape[0] != m:
                raise InvalidInstance(f"caps: expected {m} entries, got {caps.shape[0]}")
            object.__setattr__(self, "caps", caps)

    @property
    def n(self) -> int:
        return self.points.shape[1]

    @property
    def m(self) -> int:
        return self.points.shape[0]

    def without_caps(self) -> "LocationInstance":
        return LocationInstance(self.points, self.weights)


@dataclass(frozen=True)
class PQPair:
    p: np.ndarray
    q: np.ndarray

    @property
    def q_conj(self) -> np.ndarray:
        return sf.conjugate(self.q)

    @property
    def half_gap(self) -> float:
        """``max_k (p_k - q_k) / 2``, the optimum of ``x^- p + q^- x``."""
        return float(np.max(self.p - self.q)) / 2.0


@dataclass(frozen=True)
class LocationSolution:
    lam: float
    lo: np.ndarray  # alpha = 1 endpoint
    hi: np.ndarray  # alpha = 0 endpoint
    status: Status
    lambda_combined: float | None = None
    extras: dict = field(default_factory=dict, compare=False, repr=False)

    def point_at(self, alpha: float) -> np.ndarray:
        return point_at(self, alpha)


# -------------------------------------------------------------------- metrics


def chebyshev(r: ArrayLike, s: ArrayLike) -> float:
    r, s = np.asarray(r, dtype=float), np.asarray(s, dtype=float)
    if r.shape != s.shape or r.ndim != 1:
        raise DimensionMismatch(f"cannot compare vectors of shapes {r.shape} and {s.shape}")
    return float(np.max(np.abs(r - s)))


def chebyshev_tropical(r: ArrayLike, s: ArrayLike) -> float:
    """The same distance written as ``s^- r + r^- s``."""
    r, s = sf.vector(r), sf.vector(s)
    if r.shape != s.shape:
        raise DimensionMismatch(f"cannot compare vectors of shapes {r.shape} and {s.shape}")
    return sf.trop_add(sf.mat_mul(sf.conjugate(s), r), sf.mat_mul(sf.conjugate(r), s))


def _point(inst: LocationInstance, x: ArrayLike) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (inst.n,):
        raise DimensionMismatch(f"expected a point of dimension {inst.n}, got shape {x.shape}")
    return x


def objective(inst: LocationInstance, x: ArrayLike) -> float:
    """``max_i (rho(r_i, x) + w_i)`` evaluated directly."""
    x = _point(inst, x)
    return float(np.max(np.max(np.abs(inst.points - x), axis=1) + inst.weights))


def objective_pq(pq: PQPair, x: ArrayLike) -> float:
    """``x^- p + q^- x``, i.e. ``max(max_k (p_k - x_k), max_k (x_k - q_k))``."""
    x = np.asarray(x, dtype=float)
    return float(max(np.max(pq.p - x), np.max(x - pq.q)))


# ------------------------------------------------------------------ reduction


def build_pq(inst: LocationInstance) -> PQPair:
    w = inst.weights[:, None]
    return PQPair(p=sf.vector(np.max(inst.points + w, axis=0)), q=sf.vector(np.min(inst.points - w, axis=0)))


def build_cap_pq(inst: LocationInstance) -> PQPair:
    """``p1, q1`` such that every cap holds iff ``x^- p1 + q1^- x <= 0``."""
    if inst.caps is None:
        raise MissingCaps("instance has no distance caps")
    d = inst.caps[:, None]
    return PQPair(p=sf.vector(np.max(inst.points - d, axis=0)), q=sf.vector(np.min(inst.points + d, axis=0)))


def block_matrix(pq: PQPair) -> np.ndarray:
    """The order ``n+1`` matrix ``[[0, q^-], [p, 0]]`` (tropical zeros on the diagonal blocks)."""
    n = pq.p.shape[0]
    A = np.full((n + 1, n + 1), sf.ZERO)
    A[0, 1:] = pq.q_conj
    A[1:, 0] = pq.p
    return sf.matrix(A)


def segment_point_multiplicative(pq: PQPair, lam: float, alpha: float) -> np.ndarray:
    """``lam^(1-2 alpha) p_k^alpha q_k^(1-alpha)`` computed with tropical powers."""
    _check_alpha(alpha)
    scale = sf.trop_pow(lam, 1.0 - 2.0 * alpha)
    return sf.vector(
        [
            sf.trop_mul(scale, sf.trop_mul(sf.trop_pow(pk, alpha), sf.trop_pow(qk, 1.0 - alpha)))
            for pk, qk in zip(pq.p, pq.q)
        ]
    )


# -------------------------------------------------------------------- solvers


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def point_at(sol: LocationSolution, alpha: float) -> np.ndarray:
    alpha = _check_alpha(alpha)
    if alpha == 1.0:
        return sol.lo
    if alpha == 0.0:
        return sol.hi
    return alpha * sol.lo + (1.0 - alpha) * sol.hi


def _segment(pq: PQPair, lam: float) -> tuple[np.ndarray, np.ndarray]:
    lo = pq.p - lam
    # On the coordinate attaining the half gap both ends agree up to an ulp.
    hi = np.maximum(pq.q + lam, lo)
    return sf.vector(lo), sf.vector(hi)


def solve_unconstrained(inst: LocationInstance) -> LocationSolution:
    pq = build_pq(inst)
    lam = pq.half_gap
    lo, hi = _segment(pq, lam)
    return LocationSolution(lam=lam, lo=lo, hi=hi, status=Status.OPTIMAL, extras={"pq": pq})


def solve_spectral(inst: LocationInstance) -> LocationSolution:
    """Solve through the eigenproblem of the block matrix instead of the closed form.

    Used as a cross-check of the reduction.  The extremal vectors ``y`` of
    ``y^- A y`` are rescaled so their first entry is the tropical one, which
    leaves the facility coordinates in ``y[1:]``.
    """
    pq = build_pq(inst)
    A = block_matrix(pq)
    lam = spectral.eigenvalue(A)
    family = spectral.extremal_family(A)
    y_lo, y_hi = family.at(1.0), family.at(0.0)
    lo = sf.vector(y_lo[1:] - y_lo[0])
    hi = sf.vector(y_hi[1:] - y_hi[0])
    return LocationSolution(lam=lam, lo=lo, hi=hi, status=Status.OPTIMAL, extras={"pq": pq, "family": family})


def solve_constrained(inst: LocationInstance, eps: float | None = None) -> LocationSolution:
    """Fold the distance caps into the objective and solve the combined problem.

    When the combined optimum ``lambda_combined`` is (within ``eps``) the
    tropical one, the returned segment is feasible and optimal for the
    unconstrained objective.  Otherwise the segment only minimizes the
    combined function; ``lam`` then holds the true objective at the
    segment midpoint.
    """
    eps = sf._resolve_eps(eps)
    if inst.caps is None:
        raise MissingCaps("solve_constrained needs distance caps")
    pq0 = build_pq(inst)
    lam0 = pq0.half_gap
    pq1 = build_cap_pq(inst)
    pq = PQPair(p=sf.vector(np.maximum(pq0.p - lam0, pq1.p)), q=sf.vector(np.minimum(pq0.q + lam0, pq1.q)))
    lam_c = pq.half_gap
    lo, hi = _segment(pq, lam_c)
    extras = {"pq0": pq0, "pq1": pq1, "pq": pq, "lambda0": lam0}
    if lam_c <= eps:
        return LocationSolution(
            lam=lam0, lo=lo, hi=hi, status=Status.FEASIBLE_OPTIMAL, lambda_combined=lam_c, extras=extras
        )
    midpoint = 0.5 * lo + 0.5 * hi
    return LocationSolution(
        lam=objective(inst, midpoint),
        lo=lo,
        hi=hi,
        status=Status.APPROXIMATE,
        lambda_combined=lam_c,
        extras=extras,
    )


def solve(inst: LocationInstance, eps: float | None = None) -> LocationSolution:
    if inst.caps is None:
        return solve_unconstrained(inst)
    return solve_constrained(inst, eps)


def check_feasible(inst: LocationInstance, x: ArrayLike, eps: float | None = None) -> bool:
    if inst.caps is None:
        raise MissingCaps("feasibility is only defined for instances with caps")
    eps = sf._resolve_eps(eps)
    x = _point(inst, x)
    distances = np.max(np.abs(inst.points - x), axis=1)
    return bool(np.all(distances <= inst.caps + eps))
