"""EPR-steering inequalities for accelerated, locally filtered two-qubit states."""

from .channels import (
    AccelerationParams,
    FilterParams,
    PhysicalModeParams,
    accelerated_generic_pure,
    accelerated_werner,
    entropic_bound,
    filter_apply,
    r_from_physical,
    unruh_apply,
    unruh_apply_kraus,
)
from .errors import (
    DegenerateFilter,
    DomainError,
    InvalidState,
    NegativeProbability,
    NotHermitian,
    NotPositive,
    ParseError,
    RelsteerError,
    UnknownPreset,
)
from .qstate import (
    BlochDecomposition,
    DensityMatrix4,
    PureFamilyParams,
    WernerParams,
    eigenvalues_hermitian4,
    from_bloch,
    generic_pure,
    partial_trace,
    to_bloch,
    werner,
)
from .steering import (
    MeasurementDistribution,
    SteeringReport,
    closed_form_P,
    conditional_entropy_sum,
    pauli_distribution,
    steerability_report,
    steering_I,
)
from .sweep import SweepRow, SweepSpec, emit, figure_preset, parse_spec, run_sweep

__version__ = "0.1.0"
