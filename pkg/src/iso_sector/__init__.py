"""Numerical toolkit for isoperimetric problems in weighted planar sectors.

The package compares candidate least-perimeter curves in a sector of
opening ``theta0`` under the density ``r**p`` (circular arcs, half disks
on an edge, and constant generalized curvature undularies), ranks the
closed-form candidates for a disk-weighted plane, and checks radial
density criteria in higher dimensions.  A projected-gradient oracle
minimizes weighted perimeter at fixed weighted area without assuming
any candidate shape, and an acceptance suite pins the numbers the rest
of the code is trusted to reproduce.
"""

from .errors import (
    AllStartsFailed,
    BracketFailure,
    CollapseDetected,
    DegenerateGrid,
    GridTooCoarse,
    IsoSectorError,
    MonotonicityViolation,
    NoTransition,
    NonFiniteProfile,
    NonFiniteSample,
    NonPositiveFunction,
    NonPositiveInput,
    OriginInside,
    OutOfDomain,
    ParamOutOfRange,
    QuadratureFailure,
    VolumeUnattainable,
    ZeroExponent,
)
from .measures import (
    Measure,
    PolarGraph,
    PowerDensity,
    arc_measures,
    arc_ratio,
    arc_semicircle_crossover,
    change_coordinates,
    derivative_samples,
    iso_ratio,
    polar_measures,
    sector_grid,
    semicircle_measures,
    semicircle_ratio,
    wallis_integral,
    weighted_area_polar,
    weighted_perimeter_polar,
)
from .cgc import (
    CurveClass,
    NoSolution,
    UndularySpec,
    classify_curvature,
    generalized_curvature_of,
    geodesic_radius,
    half_period,
    half_period_high_limit,
    half_period_low_limit,
    integrate_undulary,
    lambda_of_r1,
    period_table,
    solve_equilibrium_undulary,
    undulary_measures,
)
from .sector import (
    Candidate,
    Classification,
    InequalityReport,
    TransitionEstimate,
    arc_is_stable,
    arc_stability_index,
    classify_sector,
    conjectured_transitions,
    inequality_trial,
    locate_transitions,
    phase_rows,
    proven_transition_bounds,
    random_inequality_suite,
)
from .disk import (
    BitePiece,
    DiskCandidate,
    DiskDensity,
    bisect_large_area_threshold,
    bite_annulus_sign_changes,
    bite_piece,
    classify_disk,
    complement_measures,
    crescent_measures,
    large_area_threshold,
    small_area_crossover,
    snell_angle,
    solve_complement_for_area,
    solve_crescent_for_area,
    tangent_semicircle_perimeter,
    transition_curves_row,
    winner_transitions,
)
from .radial import (
    AveragingReport,
    BettaReport,
    DemoRow,
    RadialProfile,
    StarRegion,
    averaging_inequality_check,
    betta_convexity_check,
    closed_ball_measures,
    inverted_exponent,
    power_profile,
    profile_from_samples,
    random_star_region,
    sphere_measures,
    unit_sphere_area,
    vanishing_perimeter_demo,
)
from .oracle import (
    OracleProblem,
    OracleRun,
    OracleVerdict,
    curvature_dispersion,
    gradient_check,
    oracle_classify,
)
from .validate import BASE_SEED, CriterionResult, ValidationReport, run_all

__version__ = "0.1.0"
