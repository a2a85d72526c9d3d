"""Exact-arithmetic engine for weight spectral sequences of strictly
semistable degenerations: strata validation, E1/E2 pages, hard Lefschetz /
weight-monodromy / degree-one check suites, bigraded Hodge-Lefschetz module
axioms, and Newton/Hodge polygon calculus."""

from .linalg import (
    Rat,
    RatMatrix,
    Subspace,
    QuotientSpace,
    rank,
    kernel,
    image,
    induced_map,
    signature,
)
from .strata import StratumCohomology, StrataComplex, ValidationReport
from .spectral import (
    E1Page,
    E2Page,
    build_e1,
    compute_e2,
    duality_check,
    nerve_cohomology_oracle,
    page_relations,
)
from .checks import (
    CheckResult,
    check_log_hl,
    check_log_hl_all,
    check_wm,
    check_h1_suite,
)
from .hodge_lefschetz import (
    HodgeLefschetzModule,
    check_hl_axioms,
    hl_from_strata,
    hl_cohomology,
    hl_suite,
)
from .polygons import (
    SlopeMultiset,
    HodgeVector,
    Polygon,
    PhiNModule,
    Report,
    slopes_from_e2,
    check_slope_symmetry,
    t_N,
    t_H,
    newton_polygon,
    hodge_polygon,
    hodge_polygon_from_jumps,
    check_admissibility_necessary,
    check_linear_relation,
    hodge_from_ordinary,
    hodge_symmetry_report,
)
from .scenarios import ScenarioSpec, build, builtin_specs, parse_spec

__all__ = [
    "Rat",
    "RatMatrix",
    "Subspace",
    "QuotientSpace",
    "rank",
    "kernel",
    "image",
    "induced_map",
    "signature",
    "StratumCohomology",
    "StrataComplex",
    "ValidationReport",
    "E1Page",
    "E2Page",
    "build_e1",
    "compute_e2",
    "duality_check",
    "nerve_cohomology_oracle",
    "page_relations",
    "CheckResult",
    "check_log_hl",
    "check_log_hl_all",
    "check_wm",
    "check_h1_suite",
    "HodgeLefschetzModule",
    "check_hl_axioms",
    "hl_from_strata",
    "hl_cohomology",
    "hl_suite",
    "SlopeMultiset",
    "HodgeVector",
    "Polygon",
    "PhiNModule",
    "Report",
    "slopes_from_e2",
    "check_slope_symmetry",
    "t_N",
    "t_H",
    "newton_polygon",
    "hodge_polygon",
    "hodge_polygon_from_jumps",
    "check_admissibility_necessary",
    "check_linear_relation",
    "hodge_from_ordinary",
    "hodge_symmetry_report",
    "ScenarioSpec",
    "build",
    "builtin_specs",
    "parse_spec",
]
