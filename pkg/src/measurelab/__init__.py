"""Finite measures on boxes: convergence checks, uniform-integrability
diagnostics, limit-interchange verification, and box-valued set
integrals."""

from .convergence import (
    DEFAULT_EPS_GRID,
    Status,
    Verdict,
    assess_trend,
    convergence_in_measure_check,
    default_alpha_grid,
    dominated_limit_check,
    dominates_check,
    mass_check,
    pointwise_ae_check,
    portmanteau_check,
    setwise_check,
    uac_integrals_check,
    uac_measures_check,
    ui_equivalence_check,
    uniform_integrability_check,
    vague_check,
    vitali_bounded_check,
    vitali_check,
    vitali_parts_check,
    weak_check,
    weak_from_uac_check,
)
from .errors import (
    IntegrabilityError,
    InvalidSpecError,
    MeasureLabError,
    RepresentationError,
    ScenarioError,
    SpaceMismatchError,
)
from .integration import (
    DEFAULT_CONFIG,
    FunctionSequence,
    IntegralResult,
    QuadratureConfig,
    ScalarFn,
    integrate,
    integrate_abs,
    l1_probe,
    superlevel_integral,
    superlevel_measure,
)
from .measures import (
    BorelSet,
    FiniteMeasure,
    GridDensity,
    MeasureSequence,
    Space,
    dominates,
    dyadic_ring,
    sequence_atom_points,
)
from .multivalued import (
    BoxBody,
    Direction,
    Multifunction,
    MultifunctionSequence,
    PettisResult,
    pettis_convergence_check,
    pettis_identity_report,
    pettis_integral,
    pettis_plain_check,
    pointwise_hausdorff_check,
    scalar_integrability_report,
)
from .recipes import build_function, build_measure, build_multifunction
from .runner import CheckRow, Overrides, RunContext, run_many, run_scenario
from .scenarios import SCHEMA_VERSION, CheckSpec, Scenario, catalog, catalog_names, find_scenario, validate
from .testfunctions import FunctionFamily, c0_family, cb_family

__version__ = "0.1.0"

__all__ = [
    "BorelSet", "BoxBody", "CheckRow", "CheckSpec", "DEFAULT_CONFIG",
    "DEFAULT_EPS_GRID", "Direction", "FiniteMeasure", "FunctionFamily",
    "FunctionSequence", "GridDensity", "IntegrabilityError", "IntegralResult",
    "InvalidSpecError", "MeasureLabError", "MeasureSequence", "Multifunction",
    "MultifunctionSequence", "Overrides", "PettisResult", "QuadratureConfig",
    "RepresentationError", "RunContext", "SCHEMA_VERSION", "ScalarFn",
    "Scenario", "ScenarioError", "Space", "SpaceMismatchError", "Status",
    "Verdict", "assess_trend", "build_function", "build_measure",
    "build_multifunction", "c0_family", "catalog", "catalog_names",
    "cb_family", "convergence_in_measure_check", "default_alpha_grid",
    "dominated_limit_check", "dominates", "dominates_check", "dyadic_ring",
    "find_scenario", "integrate", "integrate_abs", "l1_probe", "mass_check",
    "pettis_convergence_check", "pettis_identity_report", "pettis_integral",
    "pettis_plain_check", "pointwise_ae_check", "pointwise_hausdorff_check",
    "portmanteau_check", "run_many", "run_scenario",
    "scalar_integrability_report", "sequence_atom_points", "setwise_check",
    "superlevel_integral", "superlevel_measure", "uac_integrals_check",
    "uac_measures_check", "ui_equivalence_check",
    "uniform_integrability_check", "vague_check", "validate",
    "vitali_bounded_check", "vitali_check", "vitali_parts_check",
    "weak_check", "weak_from_uac_check",
]
