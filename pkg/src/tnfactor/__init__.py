"""Exact bidiagonal factorizations and total-positivity certificates for
``S = [1 + x_i y_j]``, its Hadamard powers, Vandermonde, Cauchy and mean
matrices."""

from .scalars import (
    RadicalScalar,
    exact_add,
    exact_div,
    exact_mul,
    format_scalar,
    parse_scalar,
    radical_mul,
    to_float,
)
from .matrix import (
    Matrix,
    MinorSpec,
    PSDVerdict,
    det_exact,
    det_float,
    is_psd_float,
    mat_mul,
    minor,
    rank_exact,
)
from .generators import (
    GridParams,
    MeanKind,
    MeanSpec,
    Ordering,
    gen_cauchy,
    gen_mean,
    gen_min_matrix,
    gen_S,
    gen_S_hadamard_int,
    gen_S_hadamard_real,
    gen_vandermonde,
)
from .factorizations import (
    Factor,
    FactorizationCertificate,
    NevilleBreakdown,
    NevilleIntermediates,
    VerificationReport,
    bidiagonal_decomposition_S,
    binomial_diagonal,
    hadamard_power_decomposition,
    lu_certificate,
    lu_of_S,
    min_matrix_lu,
    neville_elimination_generic,
    neville_intermediates_S,
    vandermonde_bidiagonal,
    vandermonde_factors,
    verify_certificate,
)
from .positivity import (
    PositivityVerdict,
    Property,
    ThresholdScanReport,
    Verdict,
    check_mean_matrices,
    check_tn,
    check_tp,
    rank_of_hadamard_power,
    scan_hadamard_threshold,
)

__version__ = "0.1.0"
