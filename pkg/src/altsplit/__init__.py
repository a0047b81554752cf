"""Alternating matrix-splitting iterations for dense linear systems.

Single-, two- and three-step alternating schemes built on splittings
A = U - V, with group-inverse support for index-1 singular systems,
splitting classification, convergence and semiconvergence diagnostics,
and benchmark problem generators.
"""

from .analysis import (
    SemiconvergenceCertificate,
    TheoremVerdict,
    induced_regular_splitting,
    is_m_matrix_with_property_c,
    is_semiconvergent,
    power_limit_oracle,
    verify_convergence_theorem,
    verify_semiconvergence_theorem,
)
from .core import (
    DEFAULT_TOL,
    CachedSolver,
    ToleranceProfile,
    gamma,
    gen_solve,
    group_inverse,
    index_at_most_one,
    is_nonnegative,
    rank,
    same_null,
    same_range,
    spectral_radius,
)
from .errors import (
    AltSplitError,
    ClassificationError,
    DimensionMismatchError,
    IndexGreaterThanOneError,
    MatrixMarketError,
    MismatchedSplittingError,
    MissingDeltaError,
    NonsingularHypothesisError,
    NotSquareError,
    RangeNullConditionError,
    SingularIminusHError,
    UnknownTheoremError,
    UnsupportedFieldError,
    ZeroDiagonalError,
)
from .problems import (
    LaplaceProblem,
    RandomWalkProblem,
    make_laplace,
    make_random_walk,
    read_matrix_market,
    read_vector,
    write_matrix_market,
    write_vector,
)
from .schemes import (
    IterationReport,
    SchemeConfig,
    exact_solution,
    run,
    run_shifted,
    sweep,
)
from .splittings import (
    Splitting,
    SplittingClassReport,
    Witness,
    alternating_iteration_matrix,
    b_sharp_closed_form,
    classify,
    companion_matrix,
    diag_scaling_splitting,
    induced_splitting,
    make_splitting,
)

__version__ = "0.1.0"

__all__ = [
    "AltSplitError",
    "CachedSolver",
    "ClassificationError",
    "DEFAULT_TOL",
    "DimensionMismatchError",
    "IndexGreaterThanOneError",
    "IterationReport",
    "LaplaceProblem",
    "MatrixMarketError",
    "MismatchedSplittingError",
    "MissingDeltaError",
    "NonsingularHypothesisError",
    "NotSquareError",
    "RandomWalkProblem",
    "RangeNullConditionError",
    "SchemeConfig",
    "SemiconvergenceCertificate",
    "SingularIminusHError",
    "Splitting",
    "SplittingClassReport",
    "TheoremVerdict",
    "ToleranceProfile",
    "UnknownTheoremError",
    "UnsupportedFieldError",
    "Witness",
    "ZeroDiagonalError",
    "alternating_iteration_matrix",
    "b_sharp_closed_form",
    "classify",
    "companion_matrix",
    "diag_scaling_splitting",
    "exact_solution",
    "gamma",
    "gen_solve",
    "group_inverse",
    "index_at_most_one",
    "induced_regular_splitting",
    "induced_splitting",
    "is_m_matrix_with_property_c",
    "is_nonnegative",
    "is_semiconvergent",
    "make_laplace",
    "make_random_walk",
    "make_splitting",
    "power_limit_oracle",
    "rank",
    "read_matrix_market",
    "read_vector",
    "run",
    "run_shifted",
    "same_null",
    "same_range",
    "spectral_radius",
    "sweep",
    "verify_convergence_theorem",
    "verify_semiconvergence_theorem",
    "write_matrix_market",
    "write_vector",
]
