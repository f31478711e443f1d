"""Max-plus spectral algebra and minimax Chebyshev facility location."""

from .errors import (
    AlphaOutOfRange,
    BottomEntry,
    BottomPower,
    DimensionMismatch,
    EmptyFeasibleGrid,
    InvalidInstance,
    InvalidValue,
    MissingCaps,
    NonSquare,
    Reducible,
    TooLarge,
    TropicalError,
)
from .location import (
    LocationInstance,
    LocationSolution,
    PQPair,
    Status,
    block_matrix,
    build_pq,
    check_feasible,
    chebyshev,
    objective,
    point_at,
    solve,
    solve_constrained,
    solve_spectral,
    solve_unconstrained,
)
from .semifield import ONE, ZERO, get_eps, set_eps, tolerance
from .spectral import (
    ExtremalFamily,
    SpectralResult,
    a_cross,
    eigenvalue,
    eigenvector_basis,
    extremal_point,
    is_irreducible,
    phi,
)

__version__ = "0.1.0"
