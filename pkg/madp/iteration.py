"""Standard and agent-by-agent policy iteration for discounted MDPs.

Both improvement steps keep the current control whenever it attains the
minimum (per joint control in the standard step, per component in the
agent-by-agent step). With that rule the agent-by-agent method terminates in
finitely many iterations at a policy no single agent can improve alone, and
both methods detect termination by exact policy equality.
"""

# stdlib
from __future__ import annotations

import logging
import warnings
from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.dp.base import prefer_argmin
from madp.dp.discounted import evaluate_policy_discounted, state_q_values
from madp.static.core import PI_ITERATION_CAP, TOLERANCE
from madp.structs import (
    AgentOptimality,
    AgentOrder,
    AgentViolation,
    EvalCounter,
    PiIteration,
    PiTrace,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from madp.model.discounted import DiscountedMDP
    from madp.structs import FactoredControl, StationaryPolicy

LOG = logging.getLogger("madp.iteration")


def _component_q_values(
    mdp: DiscountedMDP,
    all_q: np.ndarray,
    state: int,
    control: FactoredControl,
    agent: int,
) -> tuple[tuple[Any, ...], np.ndarray]:
    """Q-factors over one agent's options with the other components fixed."""
    block = mdp.blocks[state]
    options = block.control_sets[agent]
    rows = []
    for value in options:
        candidate = list(control)
        candidate[agent] = value
        rows.append(block.index[tuple(candidate)])
    return options, all_q[rows]


def improvement_step_standard(
    mdp: DiscountedMDP,
    policy: StationaryPolicy,
    *,
    values: np.ndarray | None = None,
    counter: EvalCounter | None = None,
    tol: float = TOLERANCE,
) -> StationaryPolicy:
    """Joint-control greedy policy against J_mu (or the supplied values)."""
    if values is None:
        values = evaluate_policy_discounted(mdp, policy)
    improved = []
    for state, block in enumerate(mdp.blocks):
        q_values = state_q_values(mdp, values, state)
        if counter is not None:
            counter.increment(len(q_values))
        current = block.index[tuple(policy[state])]
        improved.append(block.controls[prefer_argmin(q_values, current, tol)])
    return tuple(improved)


def improvement_step_agentwise(
    mdp: DiscountedMDP,
    policy: StationaryPolicy,
    order: AgentOrder | None = None,
    *,
    values: np.ndarray | None = None,
    counter: EvalCounter | None = None,
    tol: float = TOLERANCE,
    iteration: int = 0,
) -> StationaryPolicy:
    """Improve one component at a time against J_mu (or the supplied values).

    At each state, agents in `order` minimize over their own component with
    earlier components at their new values and later ones at mu's values.
    """
    if values is None:
        values = evaluate_policy_discounted(mdp, policy)
    sequence = (order or AgentOrder.identity(mdp.agent_count)).at(iteration)
    improved = []
    for state in range(mdp.state_count):
        all_q = state_q_values(mdp, values, state)
        control = list(policy[state])
        for agent in sequence:
            options, q_values = _component_q_values(mdp, all_q, state, tuple(control), agent)
            if counter is not None:
                counter.increment(len(options))
            current = options.index(control[agent])
            control[agent] = options[prefer_argmin(q_values, current, tol)]
        improved.append(tuple(control))
    return tuple(improved)


def _run(
    mdp: DiscountedMDP,
    initial: StationaryPolicy,
    step: Callable[[StationaryPolicy, np.ndarray, EvalCounter, int], StationaryPolicy],
    iteration_cap: int,
    name: str,
) -> PiTrace:
    policy = tuple(tuple(u) for u in initial)
    for state, control in enumerate(policy):
        mdp.control_index(state, control)
    iterations: list[PiIteration] = []
    for index in range(iteration_cap):
        values = evaluate_policy_discounted(mdp, policy)
        counter = EvalCounter()
        improved = step(policy, values, counter, index)
        iterations.append(PiIteration(index, policy, values, counter.value))
        LOG.debug("%s iteration %d: max J %.6g, %d Q-factors", name, index, values.max(), counter.value)
        if improved == policy:
            return PiTrace(iterations, converged=True)
        policy = improved
    warnings.warn(f"{name} stopped at the iteration cap of {iteration_cap}", stacklevel=3)
    return PiTrace(iterations, converged=False)


def standard_pi(
    mdp: DiscountedMDP,
    initial: StationaryPolicy,
    iteration_cap: int = PI_ITERATION_CAP,
) -> PiTrace:
    """Policy iteration with joint-control improvement."""

    def step(policy: StationaryPolicy, values: np.ndarray, counter: EvalCounter, _: int) -> StationaryPolicy:
        return improvement_step_standard(mdp, policy, values=values, counter=counter)

    return _run(mdp, initial, step, iteration_cap, "standard PI")


def agent_by_agent_pi(
    mdp: DiscountedMDP,
    initial: StationaryPolicy,
    order: AgentOrder | None = None,
    iteration_cap: int = PI_ITERATION_CAP,
) -> PiTrace:
    """Policy iteration with one-agent-at-a-time improvement.

    A stage-dependent AgentOrder is consulted with the iteration index, so the
    order may change from one improvement to the next.
    """

    def step(policy: StationaryPolicy, values: np.ndarray, counter: EvalCounter, index: int) -> StationaryPolicy:
        return improvement_step_agentwise(mdp, policy, order, values=values, counter=counter, iteration=index)

    return _run(mdp, initial, step, iteration_cap, "agent-by-agent PI")


def is_agent_by_agent_optimal(
    mdp: DiscountedMDP,
    policy: StationaryPolicy,
    tol: float = TOLERANCE,
) -> AgentOptimality:
    """Check that no agent can lower its Q-factor by deviating alone."""
    values = evaluate_policy_discounted(mdp, policy)
    violations = []
    for state in range(mdp.state_count):
        all_q = state_q_values(mdp, values, state)
        control = tuple(policy[state])
        for agent in range(mdp.agent_count):
            options, q_values = _component_q_values(mdp, all_q, state, control, agent)
            current_q = float(q_values[options.index(control[agent])])
            best = int(np.argmin(q_values))
            if q_values[best] < current_q - tol:
                violations.append(
                    AgentViolation(state, agent, control[agent], options[best], current_q, float(q_values[best]))
                )
    return AgentOptimality(not violations, violations)
