"""Arithmetic of the idempotent semifield R_max,+ and its matrices.

Scalars are plain Python floats, vectors are 1-D and matrices are 2-D
read-only ``float64`` numpy arrays.  The tropical zero is ``-inf`` and the
tropical one is ``0.0``; ``+inf`` and ``NaN`` are rejected by every
constructor, so ``-inf + x`` can never produce ``NaN`` downstream.
"""

from __future__ import annotations

import contextlib
import math
from typing import Iterator

import numpy as np
from numpy.typing import ArrayLike

from .errors import BottomEntry, BottomPower, DimensionMismatch, InvalidValue, NonSquare

ZERO = -math.inf
ONE = 0.0

DEFAULT_EPS = 1e-9
_eps = DEFAULT_EPS


def get_eps() -> float:
    """Return the library-wide comparison tolerance."""
    return _eps


def set_eps(eps: float) -> None:
    global _eps
    eps = float(eps)
    if not (eps >= 0.0 and math.isfinite(eps)):
        raise ValueError(f"tolerance must be a finite nonnegative number, got {eps!r}")
    _eps = eps


@contextlib.contextmanager
def tolerance(eps: float) -> Iterator[float]:
    """Temporarily override the library-wide tolerance."""
    previous = get_eps()
    set_eps(eps)
    try:
        yield eps
    finally:
        set_eps(previous)


def _resolve_eps(eps: float | None) -> float:
    return get_eps() if eps is None else float(eps)


# ---------------------------------------------------------------- constructors


def scalar(a: float) -> float:
    """Validate and return ``a`` as an element of R_max,+."""
    a = float(a)
    if math.isnan(a) or a == math.inf:
        raise InvalidValue(f"{a!r} is not an element of R_max,+")
    return a


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _validated(entries: ArrayLike, ndim: int, what: str) -> np.ndarray:
    arr = np.array(entries, dtype=float)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatch(f"{what} must not be empty")
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise InvalidValue(f"{what} contains +inf or NaN")
    return _freeze(arr)


def vector(entries: ArrayLike) -> np.ndarray:
    return _validated(entries, 1, "vector")


def matrix(entries: ArrayLike) -> np.ndarray:
    return _validated(entries, 2, "matrix")


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), ZERO)
    np.fill_diagonal(out, ONE)
    return _freeze(out)


def zeros(rows: int, cols: int) -> np.ndarray:
    return _freeze(np.full((rows, cols), ZERO))


# --------------------------------------------------------------------- scalars


def trop_add(a: float, b: float) -> float:
    return max(scalar(a), scalar(b))


def trop_mul(a: float, b: float) -> float:
    a, b = scalar(a), scalar(b)
    if a == ZERO or b == ZERO:
        return ZERO
    return a + b


def trop_pow(a: float, alpha: float) -> float:
    """Real power ``a^alpha``, which is ``alpha * a`` in conventional terms."""
    a, alpha = scalar(a), float(alpha)
    if not math.isfinite(alpha):
        raise InvalidValue(f"exponent must be finite, got {alpha!r}")
    if a == ZERO:
        if alpha <= 0:
            raise BottomPower(f"tropical zero raised to nonpositive power {alpha}")
        return ZERO
    return alpha * a


def trop_inv(a: float) -> float:
    return trop_pow(a, -1.0)


def leq(x: ArrayLike, y: ArrayLike) -> bool:
    """Componentwise partial order: ``x <= y`` iff ``x + y == y``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes {x.shape} and {y.shape} differ")
    return bool(np.array_equal(np.maximum(x, y), y))


# ------------------------------------------------------------ vectors/matrices


def conjugate(x: ArrayLike) -> np.ndarray:
    """Entrywise tropical inverse of a zero-free vector (the row vector x^-)."""
    x = vector(x)
    if np.isneginf(x).any():
        raise BottomEntry("conjugate is undefined for vectors with tropical-zero entries")
    return _freeze(-x)


def _conform(A: ArrayLike, B: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    A = _validated(A, np.ndim(A), "operand")
    B = _validated(B, np.ndim(B), "operand")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    return A, B


def mat_add(A: ArrayLike, B: ArrayLike) -> np.ndarray:
    A, B = _conform(A, B)
    return _freeze(np.maximum(A, B))


def mat_scale(c: float, A: ArrayLike) -> np.ndarray:
    c = scalar(c)
    A = np.array(A, dtype=float)
    if c == ZERO:
        return _freeze(np.full(A.shape, ZERO))
    return _freeze(A + c)


def mat_mul(B: ArrayLike, C: ArrayLike) -> np.ndarray | float:
    """Max-plus product with ``numpy.matmul`` shape rules.

    A 1-D left operand acts as a row vector and a 1-D right operand as a
    column vector; the corresponding axis is dropped from the result, so a
    row times a column gives a scalar.
    """
    B = np.array(B, dtype=float)
    C = np.array(C, dtype=float)
    if B.ndim not in (1, 2) or C.ndim not in (1, 2):
        raise DimensionMismatch("operands must be vectors or matrices")
    B2 = _validated(B.reshape(1, -1) if B.ndim == 1 else B, 2, "left operand")
    C2 = _validated(C.reshape(-1, 1) if C.ndim == 1 else C, 2, "right operand")
    if B2.shape[1] != C2.shape[0]:
        raise DimensionMismatch(f"cannot multiply {B2.shape} by {C2.shape}")
    # -inf + -inf == -inf and +inf is excluded, so no NaN can appear.
    out = np.max(B2[:, :, None] + C2[None, :, :], axis=1)
    if B.ndim == 1 and C.ndim == 1:
        return float(out[0, 0])
    if B.ndim == 1:
        out = out[0]
    elif C.ndim == 1:
        out = out[:, 0]
    return _freeze(out)


def _square(A: ArrayLike) -> np.ndarray:
    A = matrix(A)
    if A.shape[0] != A.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {A.shape}")
    return A


def mat_trace(A: ArrayLike) -> float:
    return float(np.max(np.diag(_square(A))))


def mat_power(A: ArrayLike, k: int) -> np.ndarray:
    A = _square(A)
    if int(k) != k or k < 0:
        raise ValueError(f"matrix power needs a nonnegative integer exponent, got {k!r}")
    out = identity(A.shape[0])
    for _ in range(int(k)):
        out = mat_mul(out, A)
    return out


def transpose(A: ArrayLike) -> np.ndarray:
    return _freeze(np.array(matrix(A).T))
