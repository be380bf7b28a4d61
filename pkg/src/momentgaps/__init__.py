"""Truncated moment problems with missing moments, and curve reductions."""

from .completion import BorderedPartial, CompletionResult, complete, is_completable_pd
from .curves import (
    CURVES,
    BivariateSequence,
    CurveMeasure,
    CurveVerdict,
    MomentMatrix,
    build_M,
    check_hypotheses,
    curve_equation_residual,
    curve_residual,
    reduce,
    solve_curve,
)
from .errors import (
    AssumptionViolated,
    HypothesisFailure,
    InvalidInput,
    MissingExtraMoment,
    MissingMoment,
    MomentGapsError,
    NotPpsd,
    NumericalRootFailure,
    PatternMismatch,
    SingularLeadCorner,
)
from .gaps import (
    GapPattern,
    GappedSequence,
    GapVerdict,
    solve_gap,
    solve_gap_first,
    solve_gap_first2,
    solve_gap_last,
    solve_gap_last2,
)
from .hamburger import (
    AtomicMeasure,
    ThmpVerdict,
    extract_measure,
    max_relative_error,
    moments_of,
    solve_thmp,
)
from .hankel import (
    GeneratingPolynomial,
    corner_lower,
    corner_upper,
    generating_poly,
    hankel_matrix,
    is_prg,
    reverse,
    seq_rank,
)
from .linalg import (
    DEFAULT_TOL,
    SymMatrix,
    Tolerance,
    embed_kernel_vector,
    in_col_space,
    is_pd,
    is_psd,
    pinv,
    principal_minor_sums,
    rank,
    schur,
    schur_trailing,
)
from .oracle import ScanReport, random_measure, scan_gap
from .rational import QQ, as_rational, is_rational, rational_str
from .surd import Surd, rational_between

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
