"""rateregion: rate regions of the Gaussian interference channel.

Receivers treat interference as noise.  The package computes two-user
frontiers and their convex hull, classifies frontier curvature, builds
time-sharing schedules, samples n-user frontiers, and checks all of it
against a brute-force Pareto grid.

Quick start::

    import rateregion as rr

    ch = rr.NormalizedTwoUser(a=20, b=1, c=15, d=5, p_max=1)
    report = rr.curvature_report(ch=ch)
    report.q1, report.f2_class      # 0.4568, FrontierClass.INFLECTION

    frontier = rr.two_user_frontier(ch=ch, resolution=512)
    schedule = rr.build_schedule(ch=ch, report=report, frontier=frontier)
    schedule.description            # ('C', 'B', 'E', 'A')

Oracle check::

    cloud = rr.pareto_grid(spec=ch.to_spec(), grid_resolution=101)
    rr.verify_frontier_dominance(cloud=cloud, frontier=frontier).passed
"""

from importlib.metadata import version

__version__ = version("rateregion")

from rateregion._channel import (
    ChannelError,
    ChannelSpec,
    NormalizedTwoUser,
    PowerVector,
    RatePoint,
    db_to_linear,
    normalize,
    rate_matrix,
    rate_tuple,
)
from rateregion._curvature import (
    CurvatureCrossCheck,
    CurvatureReport,
    FrontierClass,
    cross_check_curvature,
    curvature_report,
    f1_curvature_sign,
    f2_curvature_sign,
    second_difference_sign,
)
from rateregion._frontier2 import (
    FrontierSample,
    TwoUserFrontier,
    c2_given_p2,
    frontier_f1,
    frontier_f2,
    locus_sinr_derivative,
    p1_for_target_rate,
    two_user_frontier,
)
from rateregion._grid import BudgetExceededError
from rateregion._nuser import (
    HyperSurfaceSample,
    NUserFrontier,
    effective_two_user,
    n_user_frontier,
    sample_surface,
    surface_monotone_in_pinned_axis,
)
from rateregion._oracle import (
    ParetoCloud,
    SpecMismatchError,
    VerificationReport,
    pareto_grid,
    verify_frontier_dominance,
    verify_pinned_power_property,
)
from rateregion._presets import PresetRegistry, presets
from rateregion._settings import Settings, load_settings
from rateregion._timeshare import (
    ChordCandidate,
    ScheduleSegment,
    SegmentKind,
    TimeShareSchedule,
    ac_timeshare_condition,
    build_schedule,
    enumerate_candidates,
    symmetric_bstar,
)

__all__ = [
    "__version__",
    # Channel
    "ChannelSpec",
    "NormalizedTwoUser",
    "PowerVector",
    "RatePoint",
    "db_to_linear",
    "normalize",
    "rate_matrix",
    "rate_tuple",
    # Two-user frontier
    "FrontierSample",
    "TwoUserFrontier",
    "c2_given_p2",
    "frontier_f1",
    "frontier_f2",
    "locus_sinr_derivative",
    "p1_for_target_rate",
    "two_user_frontier",
    # Curvature
    "CurvatureCrossCheck",
    "CurvatureReport",
    "FrontierClass",
    "cross_check_curvature",
    "curvature_report",
    "f1_curvature_sign",
    "f2_curvature_sign",
    "second_difference_sign",
    # Time sharing
    "ChordCandidate",
    "ScheduleSegment",
    "SegmentKind",
    "TimeShareSchedule",
    "ac_timeshare_condition",
    "build_schedule",
    "enumerate_candidates",
    "symmetric_bstar",
    # n users
    "HyperSurfaceSample",
    "NUserFrontier",
    "effective_two_user",
    "n_user_frontier",
    "sample_surface",
    "surface_monotone_in_pinned_axis",
    # Oracle
    "ParetoCloud",
    "VerificationReport",
    "pareto_grid",
    "verify_frontier_dominance",
    "verify_pinned_power_property",
    # Configuration
    "PresetRegistry",
    "Settings",
    "load_settings",
    "presets",
    # Errors
    "BudgetExceededError",
    "ChannelError",
    "SpecMismatchError",
]
