"""Eigenvalue and eigenvectors of irreducible max-plus matrices.

The eigenvalue is the maximum over ``m = 1..n`` of ``tr(A^m) / m``.  The
eigenvectors are generated by the columns of

    A^x = (l^-1 A) + (l^-1 A)^2 + ... + (l^-1 A)^n

whose diagonal entry equals the tropical one, after discarding columns that
are already in the span of previously kept ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy.sparse.csgraph import connected_components

from . import semifield as sf
from .errors import AlphaOutOfRange, BottomEntry, DimensionMismatch, Reducible


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    a_cross: np.ndarray
    basis: np.ndarray  # columns generate the eigenspace

    @property
    def eigenvectors(self) -> list[np.ndarray]:
        return [self.basis[:, k] for k in range(self.basis.shape[1])]


@dataclass(frozen=True)
class ExtremalFamily:
    """Minimizers ``x_i = u_i^alpha v_i^(alpha-1)`` of ``x^- A x``.

    ``u`` is an eigenvector of ``A`` and ``v`` an eigenvector of ``A^T``.
    """

    u: np.ndarray
    v: np.ndarray

    def at(self, alpha: float) -> np.ndarray:
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise AlphaOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
        return sf.vector(alpha * self.u + (alpha - 1.0) * self.v)


def is_irreducible(A: ArrayLike) -> bool:
    """True iff the digraph with an edge i->j for every finite a_ij is strongly connected."""
    A = sf._square(A)
    if A.shape[0] == 1:
        return bool(np.isfinite(A[0, 0]))
    ncomp, _ = connected_components(np.isfinite(A), directed=True, connection="strong")
    return ncomp == 1


def _require_irreducible(A: np.ndarray) -> None:
    if not is_irreducible(A):
        raise Reducible("matrix is reducible")


def eigenvalue(A: ArrayLike, *, strict: bool = True) -> float:
    """Unique eigenvalue of an irreducible matrix.

    With ``strict=False`` the irreducibility check is skipped and the same
    formula is evaluated anyway; the result is then the maximum cycle mean
    (tropical zero for an acyclic support).
    """
    A = sf._square(A)
    if strict:
        _require_irreducible(A)
    n = A.shape[0]
    lam = sf.ZERO
    power = A
    for m in range(1, n + 1):
        if m > 1:
            power = sf.mat_mul(power, A)
        lam = sf.trop_add(lam, sf.trop_pow(sf.mat_trace(power), 1.0 / m))
    return lam


def a_cross(A: ArrayLike, lam: float | None = None, *, strict: bool = True) -> np.ndarray:
    A = sf._square(A)
    if strict:
        _require_irreducible(A)
    if lam is None:
        lam = eigenvalue(A, strict=strict)
    scaled = sf.mat_scale(sf.trop_inv(lam), A)
    out = scaled
    power = scaled
    for _ in range(1, A.shape[0]):
        power = sf.mat_mul(power, scaled)
        out = sf.mat_add(out, power)
    return out


def in_span(y: ArrayLike, X: ArrayLike, eps: float | None = None) -> bool:
    """Whether ``y`` is a max-plus combination of the columns of ``X``.

    Uses the residuated (greatest) coefficients ``c_k = min_i (y_i - x_ik)``;
    ``y`` is in the span iff ``X c`` reproduces it.
    """
    eps = sf._resolve_eps(eps)
    y = sf.vector(y)
    X = sf.matrix(X)
    if X.shape[0] != y.shape[0]:
        raise DimensionMismatch(f"vector of length {y.shape[0]} vs matrix {X.shape}")
    # A zero entry of X places no bound on its coefficient.
    with np.errstate(invalid="ignore"):
        diff = np.where(np.isneginf(X), np.inf, y[:, None] - X)
    coeffs = np.min(diff, axis=0)
    coeffs = np.where(np.isposinf(coeffs), sf.ZERO, coeffs)
    combo = np.asarray(sf.mat_mul(X, coeffs))
    both_zero = np.isneginf(combo) & np.isneginf(y)
    if not np.array_equal(np.isneginf(combo), np.isneginf(y)):
        return False
    return bool(np.all(both_zero | (np.abs(combo - y) <= eps)))


def eigenvector_basis(A: ArrayLike, *, strict: bool = True, eps: float | None = None) -> SpectralResult:
    eps = sf._resolve_eps(eps)
    A = sf._square(A)
    lam = eigenvalue(A, strict=strict)
    cross = a_cross(A, lam, strict=strict)
    kept: list[np.ndarray] = []
    for i in range(A.shape[0]):
        if abs(cross[i, i] - sf.ONE) > eps:
            continue
        column = cross[:, i]
        if kept and in_span(column, np.column_stack(kept), eps):
            continue
        kept.append(column)
    return SpectralResult(lam=lam, a_cross=cross, basis=sf.matrix(np.column_stack(kept)))


def phi(A: ArrayLike, x: ArrayLike) -> float:
    """``x^- A x``, i.e. ``max_ij (a_ij + x_j - x_i)``."""
    A = sf.matrix(A)
    x = sf.vector(x)
    if A.shape != (x.shape[0], x.shape[0]):
        raise DimensionMismatch(f"matrix {A.shape} does not conform with vector of length {x.shape[0]}")
    if np.isneginf(x).any():
        raise BottomEntry("phi needs a vector without tropical-zero entries")
    return sf.mat_mul(sf.conjugate(x), sf.mat_mul(A, x))


def extremal_family(A: ArrayLike) -> ExtremalFamily:
    # First generator on each side keeps the output reproducible.
    A = sf._square(A)
    u = eigenvector_basis(A).basis[:, 0]
    v = eigenvector_basis(sf.transpose(A)).basis[:, 0]
    return ExtremalFamily(u=u, v=v)


def extremal_point(A: ArrayLike, alpha: float) -> np.ndarray:
    return extremal_family(A).at(alpha)
