"""Einstein-product tensor algebra with Bernstein-type concentration
bounds for random tensor sums, plus a Monte Carlo certification lab."""

from .algebra import (
    einstein_product,
    einstein_product_reference,
    gen_product_inner,
    gen_product_inner_reference,
    gen_product_outer,
    gen_product_outer_reference,
    hermitian_dilation,
    matricize,
    matricize_general,
    unmatricize,
)
from .bounds import (
    BernsteinReport,
    GeneralVariance,
    Rademacher,
    Subsample,
    SumModel,
    TailBound,
    build_report,
    einstein_second_moment,
    expectation_bound,
    expectation_bound_general,
    format_report,
    format_tail_csv,
    intrinsic_report,
    resolve_theorem,
    tail_bound,
    uniform_bound_L,
    variance_even,
    variance_general,
)
from .config import (
    SCHEMA_VERSION,
    experiment_from_dict,
    load_experiment,
    load_model,
    model_from_dict,
)
from .errors import (
    ApplicabilityError,
    ConvergenceError,
    DomainError,
    EinbernError,
    ModelError,
    NumericalError,
    ShapeError,
    SymmetryError,
)
from .montecarlo import (
    ExpectationCheck,
    ExperimentConfig,
    ExperimentResult,
    TailRow,
    check_expectation,
    format_results_csv,
    run_experiment,
    sample_sum,
    trial_rng,
)
from .spectral import (
    EigenDecomposition,
    EinsteinEVD,
    ZEigenEstimate,
    e_eigenvalues,
    e_evd,
    e_spectral_norm,
    e_trace,
    gen_spectral_norm,
    is_e_pd,
    is_e_psd,
    sym_eig,
    z_eigen_max,
)
from .tensor import (
    DEFAULT_TOL,
    Tensor,
    apply_power,
    apply_power_map,
    delinearize,
    format_tensor_text,
    hadamard,
    identity_tensor,
    is_diagonal,
    is_e_symmetric,
    is_fully_symmetric,
    kron_power,
    linearize,
    outer_power,
    parse_tensor_text,
    psd_counterexample_tensor,
    random_e_symmetric,
    random_fully_symmetric,
    random_tensor,
    read_tensor_text,
    transpose_even,
    write_tensor_text,
)

__version__ = "0.1.0"
