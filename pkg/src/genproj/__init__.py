"""Exact generalized projections in l1, l_inf, c and c0, with a C[0,1] toolkit."""

from .convex_sets import (
    Ball,
    ConvexSetDesc,
    HullOfPoints,
    Hyperplane,
    NonnegCone,
    NonposCone,
    SBall,
    Simplex,
    ZSet,
    membership,
)
from .duality import DualityBox, duality_c, duality_l1, identical_points, inverse_duality_solve_beta
from .exact_core import FinSeq, TailSeq, norm_l1, norm_sup, pair
from .lyapunov import v_eval, v_eval_c, v_value
from .projections import (
    ProjectionResult,
    c0_projections,
    gen_metric_project,
    gen_project,
    metric_project,
    proximality_probe,
    solution_set_contains,
)
from .variational import VIReport, metric_vi_check, vi_counterexample, vi_sufficiency

__all__ = [
    "Ball", "ConvexSetDesc", "HullOfPoints", "Hyperplane", "NonnegCone", "NonposCone", "SBall",
    "Simplex", "ZSet", "membership", "DualityBox", "duality_c", "duality_l1", "identical_points",
    "inverse_duality_solve_beta", "FinSeq", "TailSeq", "norm_l1", "norm_sup", "pair", "v_eval",
    "v_eval_c", "v_value", "ProjectionResult", "c0_projections", "gen_metric_project", "gen_project",
    "metric_project", "proximality_probe", "solution_set_contains", "VIReport", "metric_vi_check",
    "vi_counterexample", "vi_sufficiency",
]
