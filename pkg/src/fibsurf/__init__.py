"""Fibred surfaces as double covers of P^1 x P^1: resolution, fibres and invariants."""
from .config import (
    Component,
    ConfigurationError,
    CurveConfiguration,
    configuration,
    contract_minus_one,
    derive_self_intersections,
    fibre_genus,
    fibre_predicates,
    multiple_fibre_constraints,
    winters_check,
)
from .fibre import fibre_report, lift_to_double_cover, track_fibre
from .invariants import (
    base_change,
    generic_fibre_genus,
    resolved_invariants,
    smooth_double_cover_invariants,
)
from .orbifold import Classification, OrbifoldBase, classify
from .pipeline import PipelineError, PresetRun, run_pipeline
from .poly import parse_form, parse_poly, rational_singular_points
from .resolution import LocalTemplate, canonical_resolve, even_divisor_check
from .search import SearchSpace, enumerate_configurations, two_component_search

__version__ = "0.1.0"
