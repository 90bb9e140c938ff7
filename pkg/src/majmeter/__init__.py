"""Exact and asymptotic distribution of the major index of a uniform random
standard Young tableau."""

from .asymptotics import (
    LDReport,
    QuadratureConfig,
    berry_esseen_bound,
    bochner_check,
    edgeworth_cdf,
    lambda_derivs,
    lambda_omega,
    lambda_prime_limit,
    ld_estimate,
    legendre_star,
    mock_fourier,
    mock_fourier_limit,
    phi,
    phi_derivs,
    psi_integrand,
    psi_omega,
    sn_log_laplace,
    varphi,
)
from .exact_dist import (
    QPolynomial,
    bernoulli,
    cumulant_decomposition,
    cumulant_from_polynomial,
    exact_cumulant,
    kolmogorov_distance_to_normal,
    log_laplace_exact,
    maj_polynomial,
    maj_polynomial_float,
    maj_polynomial_sn,
    mean_maj,
    predicted_cumulant,
    predicted_cumulant_exact,
    range_maj,
    tail_probability,
    var_maj,
)
from .partitions import (
    DiscreteMeasure,
    FrobeniusCoords,
    Partition,
    ThomaParam,
    b_stat,
    conjugate,
    contents,
    count_semistandard,
    count_standard_tableaux,
    descent_coordinates,
    frobenius,
    frobenius_moment,
    hook_lengths,
    hook_multiset_identity,
    measure_of,
    parse_partition,
    partitions_of,
    thoma_embed,
)
from .tableaux import (
    StandardTableau,
    descent_set,
    enumerate_standard,
    maj,
    maj_histogram_mc,
    rsk,
    sample_uniform,
)

__version__ = "0.1.0"
