"""Quasi-Hermitian two-level model, physical metrics and a no-signaling simulator."""

from .errors import (
    ComplexSpectrum,
    DegenerateSpectrum,
    DimensionMismatch,
    ExceptionalPoint,
    InadmissibleObservable,
    InadmissibleProjector,
    InvalidConfig,
    InvalidMetricParams,
    NotHermitian,
    PTQMError,
    ZeroState,
)
from .linalg import (
    EigenSystem,
    adjoint,
    eigensystem,
    expm,
    kron,
    partial_trace_A,
    trace_distance,
)
from .model import (
    EPDiagnostics,
    MetricFamily,
    MetricParams,
    ModelParams,
    build_hamiltonian,
    build_metric,
    charge_operator,
    check_pt_symmetry,
    cpt_metric,
    ep_diagnostics,
    quasi_hermiticity_residual,
    solve_metric_family,
)
from .nosignaling import (
    AliceAction,
    CompositeSystem,
    ExperimentResult,
    apply_alice,
    bell_state,
    bob_reduced_corrected,
    bob_reduced_naive,
    build_composite,
    run_experiment,
    signaling_magnitude,
)
from .space import (
    PhysicalSpace,
    evolve,
    expectation,
    inner_product_f,
    inner_product_s,
    is_admissible_observable,
)
from .tolerances import DEFAULT as DEFAULT_TOLERANCES, Tolerances

__version__ = "0.1.0"
