"""Periodic generalized Fibonacci-like sequences F[n+2] = A + B F[n+1] + C F[n]."""

from ._backend import BACKEND, BACKENDS, get_kernels
from .recurrence import (
    ALTERNATING,
    CONSTANT,
    NON_PERIODIC,
    SAMPLED_PERIODIC,
    ClosedFormSolution,
    DegenerateDataError,
    DomainError,
    FitResult,
    PeriodClassification,
    RecurrenceError,
    RecurrenceOverflowError,
    RecurrenceParams,
    RootAnalysis,
    TermSequence,
    casimir_invariant,
    casimir_series,
    characteristic_roots,
    classify,
    closed_form,
    detect_exact_period,
    evaluate_closed_form,
    fit_recurrence,
    fixed_point,
    generate,
)
from .spectral import (
    CoefficientResiduals,
    FourierModel,
    HarmonicSet,
    admissible_harmonics,
    check_period2_identity,
    residual_coefficients,
    verify_functional_equation,
)
from .wave import (
    Eigenmode,
    InstabilityError,
    ModalSeries,
    WaveLattice,
    WaveState,
    laplacian_eigenmodes,
    modal_coefficients,
    modal_period,
    run,
    step,
    verify_modal_recurrence,
)

__version__ = "0.1.0"
