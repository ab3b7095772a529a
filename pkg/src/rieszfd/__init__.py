"""Finite-difference solver for one-dimensional skewed space-fractional diffusion.

Solves dC/dt = K * D_theta^alpha C on a bounded interval with Dirichlet
boundaries, where D_theta^alpha is the Riesz-Feller operator of order
0 < alpha <= 2 (alpha != 1) and skewness |theta| <= min(alpha, 2-alpha).
The discretization uses closed-form stencil weights that remain finite
across the whole order range, boundary tail sums that carry the Dirichlet
values into every interior node, and a sigma-weighted explicit/implicit
time stepper.

Typical use::

    from rieszfd import (
        BoundarySpec, DtPolicy, InitialCondition, SchemeConfig,
        SimulationConfig, build_grid, run, validate_params,
    )

    config = SimulationConfig(
        grid=build_grid(-10.0, 10.0, 1000),
        scheme=SchemeConfig(params=validate_params(1.5, 0.0), k_alpha=1.0),
        initial=InitialCondition.delta(),
        t_end=1.0,
        snapshot_times=(1.0,),
        dt_policy=DtPolicy.auto(0.9),
    )
    series = run(config)
"""

from ._version import __version__
from .errors import (
    AlphaNearOne,
    BoxOutOfDomain,
    ConfigInvalid,
    DegenerateDomain,
    DeltaNeedsEvenN,
    DimensionMismatch,
    NonpositiveTime,
    NoSuchSnapshot,
    OutOfRangeAlpha,
    ParseError,
    SingularMatrix,
    SkewnessTooLarge,
    UnknownKey,
    UnstableTimestep,
    ValidationError,
    WindowTooSmall,
)
from .grid import (
    BoundarySpec,
    FieldState,
    Grid1D,
    InitialCondition,
    boundary_at_half_step,
    build_grid,
    mass,
    sample_initial,
)
from .kernel import (
    FractionalParams,
    RfCoefficients,
    TailSums,
    WeightTable,
    rf_coefficients,
    tail_sum_left,
    tail_sum_right,
    tail_sums,
    v_kernel,
    validate_params,
    weight,
    weight_table,
)
from .linalg import LUFactorization, lu_factor, lu_solve
from .oracles import (
    AnalyticKernel,
    convergence_study,
    kernel_eval,
    stability_bound_split,
    tail_oracle,
    weight_oracle,
)
from .schemes import (
    LinearSystem,
    SchemeConfig,
    assemble_system,
    explicit_step,
    implicit_step,
    max_stable_dt,
    p_coefficient,
    rf_apply_bounded,
)
from .simulate import (
    DtPolicy,
    SimulationConfig,
    SnapshotSeries,
    config_hash,
    resolve_dt,
    run,
    snapshot_error,
)

__all__ = [
    "__version__",
    "AlphaNearOne",
    "AnalyticKernel",
    "BoundarySpec",
    "BoxOutOfDomain",
    "ConfigInvalid",
    "DegenerateDomain",
    "DeltaNeedsEvenN",
    "DimensionMismatch",
    "DtPolicy",
    "FieldState",
    "FractionalParams",
    "Grid1D",
    "InitialCondition",
    "LUFactorization",
    "LinearSystem",
    "NoSuchSnapshot",
    "NonpositiveTime",
    "OutOfRangeAlpha",
    "ParseError",
    "RfCoefficients",
    "SchemeConfig",
    "SimulationConfig",
    "SingularMatrix",
    "SkewnessTooLarge",
    "SnapshotSeries",
    "TailSums",
    "UnknownKey",
    "UnstableTimestep",
    "ValidationError",
    "WeightTable",
    "WindowTooSmall",
    "assemble_system",
    "boundary_at_half_step",
    "build_grid",
    "config_hash",
    "convergence_study",
    "explicit_step",
    "implicit_step",
    "kernel_eval",
    "lu_factor",
    "lu_solve",
    "mass",
    "max_stable_dt",
    "p_coefficient",
    "resolve_dt",
    "rf_apply_bounded",
    "rf_coefficients",
    "run",
    "sample_initial",
    "snapshot_error",
    "stability_bound_split",
    "tail_oracle",
    "tail_sum_left",
    "tail_sum_right",
    "tail_sums",
    "v_kernel",
    "validate_params",
    "weight",
    "weight_oracle",
    "weight_table",
]
