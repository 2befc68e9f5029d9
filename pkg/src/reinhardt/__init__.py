"""Reinhardt domains, their complete and log-convex hulls, and numerical
holomorphic extension through Laurent coefficients on tori."""

from .corpus import builtin_domain, builtin_function
from .domain import (
    ConvexityVerdict,
    MonomialInequality,
    ReinhardtDomain,
    build_domain,
    contains_modulus,
    domain_from_json,
    is_log_convex,
    origin_on_boundary,
)
from .errors import ReinhardtError
from .geometry import (
    Feasibility,
    HalfSpace,
    LogPolyhedron,
    enumerate_generators,
    hull_from_generators,
    joint_negative_recession,
    lp_feasible,
    recession_contains,
)
from .hulls import HullResult, complete_hull, domain_subset, envelope
from .laurent import (
    ExtensionResult,
    HoloFunction,
    IndexSplit,
    LaurentWindow,
    TorusSpec,
    consistency_across_tori,
    derivative_bound_scan,
    extend_eval,
    laurent_window,
    multi_torus_extend,
    negative_part_report,
    sample_torus,
    taylor_tail_bound,
)

__version__ = "0.1.0"
