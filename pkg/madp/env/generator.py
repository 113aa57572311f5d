"""Seeded random instance generators for property suites."""

# stdlib
from __future__ import annotations

from typing import TYPE_CHECKING

# library
import numpy as np

# module
from madp.model.discounted import DiscountedMDP
from madp.model.finite import TabularFiniteModel, joint_controls
from madp.structs import TabularPolicy

if TYPE_CHECKING:
    from madp.model.finite import FiniteHorizonModel
    from madp.structs import ControlSets, StationaryPolicy


def _row(rng: np.random.Generator, size: int, sparsity: float) -> np.ndarray:
    """Normalized uniform draws with a fraction of entries zeroed (never all)."""
    draws = rng.random(size)
    if sparsity > 0:
        mask = rng.random(size) < sparsity
        mask[rng.integers(size)] = False
        draws[mask] = 0.0
    return draws / draws.sum()


def random_mdp(
    state_count: int,
    agent_count: int,
    control_count: int,
    cost_range: tuple[float, float] = (0.0, 1.0),
    sparsity: float = 0.0,
    seed: int = 0,
    discount: float = 0.9,
) -> DiscountedMDP:
    """Reproducible random discounted MDP with control_count options per agent."""
    if min(state_count, agent_count, control_count) < 1:
        msg = "State, agent, and control counts must be positive"
        raise ValueError(msg)
    rng = np.random.default_rng(seed)
    sets: ControlSets = tuple(tuple(range(control_count)) for _ in range(agent_count))
    joint = control_count**agent_count
    low, high = cost_range
    probs, costs = [], []
    for _ in range(state_count):
        probs.append(np.array([_row(rng, state_count, sparsity) for _ in range(joint)]))
        costs.append(rng.uniform(low, high, size=(joint, state_count)))
    return DiscountedMDP(agent_count, [sets] * state_count, probs, costs, discount)


def random_policy(mdp: DiscountedMDP, seed: int = 0) -> StationaryPolicy:
    """Uniformly drawn feasible joint control at every state."""
    rng = np.random.default_rng(seed)
    return tuple(block.controls[rng.integers(len(block.controls))] for block in mdp.blocks)


def random_finite_model(
    horizon: int,
    state_count: int,
    agent_count: int,
    control_count: int,
    outcome_count: int = 2,
    cost_range: tuple[float, float] = (0.0, 1.0),
    seed: int = 0,
) -> TabularFiniteModel:
    """Reproducible random finite-horizon model.

    Every stage has states 0..state_count-1; each agent gets between 1 and
    control_count options per state, and every joint control between 1 and
    outcome_count random outcomes.
    """
    rng = np.random.default_rng(seed)
    low, high = cost_range
    states = [tuple(range(state_count))] * (horizon + 1)
    controls = {}
    outcomes = {}
    for stage in range(horizon):
        for state in range(state_count):
            sets = tuple(tuple(range(int(rng.integers(1, control_count + 1)))) for _ in range(agent_count))
            controls[(stage, state)] = sets
            for control in joint_controls(sets):
                size = int(rng.integers(1, outcome_count + 1))
                probs = _row(rng, size, 0.0)
                successors = rng.integers(state_count, size=size)
                costs = rng.uniform(low, high, size=size)
                outcomes[(stage, state, control)] = tuple(
                    (float(p), int(y), float(c)) for p, y, c in zip(probs, successors, costs)
                )
    terminal = {state: float(rng.uniform(low, high)) for state in range(state_count)}
    return TabularFiniteModel(horizon, agent_count, states, controls, outcomes, terminal)


def random_finite_policy(model: FiniteHorizonModel, seed: int = 0) -> TabularPolicy:
    """Uniformly drawn feasible joint control at every (stage, state)."""
    rng = np.random.default_rng(seed)
    policy = TabularPolicy()
    for stage in range(model.horizon):
        for state in model.states(stage):
            sets = model.control_sets(stage, state)
            policy.table[(stage, state)] = tuple(options[rng.integers(len(options))] for options in sets)
    return policy
