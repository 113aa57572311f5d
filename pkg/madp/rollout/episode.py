"""Rollout trajectories and tabulated rollout policies."""

# stdlib
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

# module
from madp.rollout.control import rollout_control
from madp.rollout.evaluator import ExactEvaluator
from madp.structs import TabularPolicy, Trajectory, TrajectoryStep

if TYPE_CHECKING:
    import numpy as np

    from madp.model.finite import FiniteHorizonModel
    from madp.rollout.control import RolloutConfig
    from madp.structs import FinitePolicy, State

LOG = logging.getLogger("madp.rollout.episode")


def run_rollout_episode(
    model: FiniteHorizonModel,
    initial_state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
    rng: np.random.Generator,
) -> Trajectory:
    """Simulate the rollout policy online from x_0 through stage N."""
    if initial_state not in model.states(0):
        msg = f"{initial_state!r} is not an initial state"
        raise ValueError(msg)
    state = initial_state
    steps = []
    for stage in range(model.horizon):
        control = rollout_control(model, stage, state, base_policy, cfg)
        successor, cost = model.transition_sample(stage, state, control, rng)
        steps.append(TrajectoryStep(stage, state, control, cost))
        state = successor
    trajectory = Trajectory(steps, state, model.terminal_cost(state))
    LOG.debug("%s rollout episode cost %s", cfg.variant, trajectory.total_cost)
    return trajectory


class RolloutPolicy:
    """The rollout policy as a callable, computed on demand at each (stage, state)."""

    def __init__(self, model: FiniteHorizonModel, base_policy: FinitePolicy, cfg: RolloutConfig):
        self.model = model
        self.base_policy = base_policy
        self.cfg = cfg

    def __call__(self, stage: int, state: State) -> tuple:
        return rollout_control(self.model, stage, state, self.base_policy, self.cfg)


def rollout_policy_table(
    model: FiniteHorizonModel,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> TabularPolicy:
    """Rollout control at every (stage, state), for exact evaluation."""
    if not isinstance(cfg.evaluator, ExactEvaluator):
        msg = "Tabulating a rollout policy needs the exact evaluator"
        raise TypeError(msg)
    policy = RolloutPolicy(model, base_policy, cfg)
    table = TabularPolicy()
    for stage in range(model.horizon):
        for state in model.states(stage):
            table.table[(stage, state)] = policy(stage, state)
    return table
