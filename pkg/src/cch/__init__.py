"""Exact index calculus for cylindrical contact homology in dimension three."""

from .buildings import (
    BuildingSkeleton,
    ComponentKind,
    ComponentSkeleton,
    EnumerationBounds,
    GenericityProfile,
    Level,
    building_key,
    check_cover_index_bound,
    check_cylinder_cover_index,
    check_multi_end_cover_combination,
    check_nontrivial_cover_bounds,
    check_trivial_cover_nonnegative,
    classify_building,
    component_index,
    component_key,
    enumerate_buildings,
    enumerate_components,
    run_estimate_sweep,
    underlying_index,
    verify_propositions,
)
from .complexes import (
    ChainComplex,
    CylinderCount,
    GluingEnds,
    ModuliCountTable,
    build_complex,
    end_contribution,
    gluing_count,
    homology_ranks,
    kappa_commutation_check,
    verify_d_squared,
)
from .orbits import (
    CurveData,
    OrbitRef,
    OrbitType,
    RotationData,
    cz_index,
    cz_supermultiplicativity_check,
    fredholm_index,
    format_orbit,
    grading,
    is_good,
    orbit_type,
)
from .scenario import Scenario, emit_scenario, parse_scenario, parse_scenario_text
from .writhe import (
    BraidEndData,
    BreakingCertificate,
    BreakingVerdict,
    EndSide,
    TransversalityQuery,
    adjunction_combine,
    automatic_transversality,
    conjecture_improved_equality,
    no_bad_break_certificate,
    sweep_no_bad_break,
    wind_bound,
    writhe_bound,
)

__all__ = [
    "BraidEndData",
    "BreakingCertificate",
    "BreakingVerdict",
    "BuildingSkeleton",
    "ChainComplex",
    "ComponentKind",
    "ComponentSkeleton",
    "CurveData",
    "CylinderCount",
    "EndSide",
    "EnumerationBounds",
    "GenericityProfile",
    "GluingEnds",
    "Level",
    "ModuliCountTable",
    "OrbitRef",
    "OrbitType",
    "RotationData",
    "Scenario",
    "TransversalityQuery",
    "adjunction_combine",
    "automatic_transversality",
    "build_complex",
    "building_key",
    "check_cover_index_bound",
    "check_cylinder_cover_index",
    "check_multi_end_cover_combination",
    "check_nontrivial_cover_bounds",
    "check_trivial_cover_nonnegative",
    "classify_building",
    "component_index",
    "component_key",
    "conjecture_improved_equality",
    "cz_index",
    "cz_supermultiplicativity_check",
    "emit_scenario",
    "end_contribution",
    "enumerate_buildings",
    "enumerate_components",
    "format_orbit",
    "fredholm_index",
    "gluing_count",
    "grading",
    "homology_ranks",
    "is_good",
    "kappa_commutation_check",
    "no_bad_break_certificate",
    "orbit_type",
    "parse_scenario",
    "parse_scenario_text",
    "run_estimate_sweep",
    "sweep_no_bad_break",
    "underlying_index",
    "verify_d_squared",
    "verify_propositions",
    "wind_bound",
    "writhe_bound",
]
