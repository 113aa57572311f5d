"""Backward induction and exact policy evaluation for finite-horizon models."""

# stdlib
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

# library
import numpy as np

# module
from madp.dp.base import first_argmin
from madp.static.core import TOLERANCE
from madp.structs import FiniteValueFunction, StageValues, TabularPolicy

if TYPE_CHECKING:
    from madp.model.finite import FiniteHorizonModel
    from madp.structs import FinitePolicy

LOG = logging.getLogger("madp.dp.finite")


def _terminal_values(model: FiniteHorizonModel) -> StageValues:
    space = model.states(model.horizon)
    return StageValues(space, np.array([model.terminal_cost(x) for x in space], dtype=float))


def backward_induction(
    model: FiniteHorizonModel,
    tol: float = TOLERANCE,
) -> tuple[FiniteValueFunction, TabularPolicy]:
    """Optimal cost-to-go J*_0..J*_N and an optimal policy.

    Ties between joint controls go to the lowest lexicographic index.
    """
    stages = [_terminal_values(model)]
    policy = TabularPolicy()
    for stage in reversed(range(model.horizon)):
        following = stages[0]
        space = model.states(stage)
        values = np.empty(len(space))
        for i, state in enumerate(space):
            controls = model.enumerate_joint_controls(stage, state)
            q_values = [model.expected_stage_value(stage, state, u, following) for u in controls]
            best = first_argmin(q_values, tol)
            values[i] = q_values[best]
            policy.table[(stage, state)] = controls[best]
        stages.insert(0, StageValues(space, values))
        LOG.debug("stage %d solved over %d states", stage, len(space))
    return FiniteValueFunction(stages), policy


def evaluate_policy_finite(model: FiniteHorizonModel, policy: FinitePolicy) -> FiniteValueFunction:
    """Exact J_{k,pi} for every stage and state."""
    stages = [_terminal_values(model)]
    for stage in reversed(range(model.horizon)):
        following = stages[0]
        space = model.states(stage)
        values = np.array(
            [model.expected_stage_value(stage, state, policy(stage, state), following) for state in space],
            dtype=float,
        )
        stages.insert(0, StageValues(space, values))
    return FiniteValueFunction(stages)
