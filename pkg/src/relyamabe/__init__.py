"""Curvature, comparison criterion, and conformal quotient estimation
for left invariant metrics on the 3-sphere."""

from .conformal_energy import (
    CONFORMAL_COEFF,
    DIM,
    EnergyReport,
    QuotientInput,
    conformal_scalar,
    einstein_hilbert,
    laplace_beltrami,
    neumann_residual,
    rayleigh_quotient,
)
from .criterion import (
    BergerClassification,
    CriterionReport,
    PathReport,
    PathSample,
    berger_classify,
    berger_path,
    berger_sweep,
    boundary_curve,
    corollary_path_check,
    scalar_sign_curve,
    theorem1_check,
    volume_ratio,
)
from .errors import (
    ChartConsistencyError,
    ChartDomainError,
    DegenerateTrialError,
    HypothesisViolationError,
    InputFormatError,
    InvalidMetricError,
    NumericalFailureError,
    RelYamabeError,
)
from .lie_curvature import (
    BergerParams,
    CurvatureReport,
    FrameMetric,
    LieAlgebraFrame,
    berger_ricci_closed,
    berger_scalar_closed,
    curvature_report,
    einstein_locus_check,
    frame_from_matrices,
    levi_civita,
    su2_structure_constants,
)
from .su2_chart import (
    BoundaryReport,
    FaceSecondForm,
    HopfGrid,
    MetricField,
    boundary_second_form,
    chart_metric,
    embedding,
    frame_fields,
    grad_sq,
    integrate,
    partial_derivatives,
)
from .yamabe_estimator import (
    EstimatorOptions,
    ProbeReport,
    QuotientEstimate,
    estimate,
    yamabe_property_probe,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "RelYamabeError",
    "InvalidMetricError",
    "InputFormatError",
    "ChartDomainError",
    "ChartConsistencyError",
    "DegenerateTrialError",
    "NumericalFailureError",
    "HypothesisViolationError",
    # lie_curvature
    "LieAlgebraFrame",
    "FrameMetric",
    "BergerParams",
    "CurvatureReport",
    "su2_structure_constants",
    "frame_from_matrices",
    "levi_civita",
    "curvature_report",
    "berger_scalar_closed",
    "berger_ricci_closed",
    "einstein_locus_check",
    # su2_chart
    "HopfGrid",
    "MetricField",
    "FaceSecondForm",
    "BoundaryReport",
    "frame_fields",
    "embedding",
    "chart_metric",
    "partial_derivatives",
    "integrate",
    "grad_sq",
    "boundary_second_form",
    # conformal_energy
    "DIM",
    "CONFORMAL_COEFF",
    "EnergyReport",
    "QuotientInput",
    "einstein_hilbert",
    "rayleigh_quotient",
    "laplace_beltrami",
    "conformal_scalar",
    "neumann_residual",
    # criterion
    "CriterionReport",
    "BergerClassification",
    "PathSample",
    "PathReport",
    "volume_ratio",
    "theorem1_check",
    "berger_classify",
    "boundary_curve",
    "scalar_sign_curve",
    "berger_path",
    "corollary_path_check",
    "berger_sweep",
    # yamabe_estimator
    "EstimatorOptions",
    "QuotientEstimate",
    "ProbeReport",
    "estimate",
    "yamabe_property_probe",
]
