"""Exact Bell/Stirling towers with certified Dobinski-type series evaluation."""

from .cigl import (
    PARTITION_CAP,
    CiglWeightedCount,
    SetPartition,
    cigl_q_bell,
    cigl_q_dobinski_exact,
    cigl_q_power,
    cigl_q_stirling,
    cigl_statistic,
    enumerate_partitions,
)
from .dobinski import (
    GeneratingFunctionCheck,
    PsiPoissonDistribution,
    TruncatedSeries,
    default_ratio_threshold,
    dobinski_bell,
    jackson_derivative,
    moment_functional,
    poisson_moment_exact,
    psi_exp,
    rota_bell_exact,
    verify_falling_moment,
    verify_pmf_via_generating_function,
)
from .errors import (
    CapExceededError,
    InconsistentSystemError,
    NegativeTermError,
    NonConvergentError,
    OutOfRangeError,
    UmbralDobError,
)
from .exact_core import (
    DEFAULT_SUM_CAP,
    SUM_CAP_ENV,
    CertifiedValue,
    Poly,
    Rational,
    certified_sum,
)
from .operator_calc import (
    apply_number_operator,
    dobinski_specialization,
    exponential_polynomial,
    verify_conjugation,
)
from .umbral_engine import (
    PsiSequence,
    StirlingTable,
    bell_via_sum,
    carlitz_q_stirling,
    classical_stirling_table,
    gauss_factorial,
    gauss_number,
    psi_stirling_diagnostic,
    q_number_symbolic,
    stirling2,
)

__version__ = "0.1.0"
