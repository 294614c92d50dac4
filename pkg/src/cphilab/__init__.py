"""Exact q-series tools for generalized Frobenius partitions and their congruences."""
from .qseries import (
    ModulusConflict,
    NotInvertible,
    ProgressionTarget,
    QSeries,
    WindowError,
    eval_complex,
    extract_progression,
    invert,
    mul,
    pow_,
    reduce_mod,
    substitute_power,
)
from .etatheta import (
    EtaQuotient,
    FormMeta,
    automorphy_spot_check,
    delta_mod2,
    eta_quotient_meta,
    eta_quotient_series,
    theta_meta,
    theta_series,
)
from .frobenius import (
    SeriesSpec,
    cphi2_product_series,
    cphi_series,
    cphibar2_quarter_series,
    partition_series,
    sellers_series,
    treneer_f_series,
)
from .congruence import (
    CongruenceClaim,
    VerificationReport,
    progression_level,
    scan_ramanujan,
    sturm_bound,
    verify_claim,
)
from .parity import (
    ParityParams,
    ParityReport,
    bound_cphibar,
    bound_general,
    build_ft,
    check_mod2_factorization,
    min_j,
    parity_search,
)

__version__ = "0.1.0"
