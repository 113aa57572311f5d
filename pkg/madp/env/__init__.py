"""Problem instances: spiders-and-flies pursuit, static counterexamples, random generators."""

# stdlib
from __future__ import annotations

# module
from madp.env.counterexample import KINDS, build_static_counterexample, finite_static_counterexample
from madp.env.generator import random_finite_model, random_finite_policy, random_mdp, random_policy
from madp.env.grid import (
    CAPTURED,
    GridGreedyPolicy,
    GridPursuit,
    GridPursuitParams,
    build_spiders_fly_grid,
)
from madp.env.line import (
    LineGreedyPolicy,
    LinePursuit,
    LinePursuitParams,
    build_line_spiders_flies,
    optimal_capture_time,
)
from madp.model.finite import FiniteHorizonModel


def greedy_base_policy(model: FiniteHorizonModel) -> LineGreedyPolicy | GridGreedyPolicy:
    """Go-towards-the-nearest-fly base policy for a pursuit model."""
    if isinstance(model, LinePursuit):
        return LineGreedyPolicy(model)
    if isinstance(model, GridPursuit):
        return GridGreedyPolicy(model)
    msg = f"No greedy base policy for {model!r}"
    raise TypeError(msg)


__all__ = (
    "CAPTURED",
    "KINDS",
    "GridGreedyPolicy",
    "GridPursuit",
    "GridPursuitParams",
    "LineGreedyPolicy",
    "LinePursuit",
    "LinePursuitParams",
    "build_line_spiders_flies",
    "build_spiders_fly_grid",
    "build_static_counterexample",
    "finite_static_counterexample",
    "greedy_base_policy",
    "optimal_capture_time",
    "random_finite_model",
    "random_finite_policy",
    "random_mdp",
    "random_policy",
)
