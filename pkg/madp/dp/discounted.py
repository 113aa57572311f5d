"""Bellman operators, exact policy evaluation, and value iteration for discounted MDPs."""

# stdlib
from __future__ import annotations

import logging
from typing import TYPE_CHECKING

# library
import numpy as np
from scipy import linalg, sparse

# module
from madp.dp.base import first_argmin
from madp.exceptions import ConvergenceError
from madp.static.core import (
    EVALUATION_ITERATION_CAP,
    EVALUATION_TOLERANCE,
    LINEAR_SOLVE_LIMIT,
    TOLERANCE,
    VALUE_ITERATION_CAP,
)
from madp.structs import QFactorTable

if TYPE_CHECKING:
    from madp.model.discounted import DiscountedMDP
    from madp.structs import FactoredControl, StationaryPolicy

LOG = logging.getLogger("madp.dp.discounted")


def state_q_values(mdp: DiscountedMDP, values: np.ndarray, state: int) -> np.ndarray:
    """Q-factors of every joint control at one state, in lexicographic order."""
    block = mdp.block(state)
    return block.expected_costs + mdp.stage_discounts[state] * (block.probs @ values)


def q_factor(mdp: DiscountedMDP, values: np.ndarray, state: int, control: FactoredControl) -> float:
    """sum_y p_xy(u) (g(x,u,y) + alpha J(y))."""
    block = mdp.block(state)
    row = mdp.control_index(state, control)
    probs = block.probs[row]
    return float(probs @ block.costs[row] + mdp.stage_discounts[state] * (probs @ values))


def q_table(mdp: DiscountedMDP, values: np.ndarray) -> QFactorTable:
    """Q-factors of every feasible (state, joint control) pair."""
    table = {}
    for state, block in enumerate(mdp.blocks):
        for control, value in zip(block.controls, state_q_values(mdp, values, state)):
            table[(state, control)] = float(value)
    return QFactorTable(table, np.array(values, dtype=float))


def bellman_T(mdp: DiscountedMDP, values: np.ndarray) -> np.ndarray:  # noqa: N802
    """(TJ)(x): minimum over the full joint control set."""
    return np.array([state_q_values(mdp, values, x).min() for x in range(mdp.state_count)])


def bellman_T_mu(mdp: DiscountedMDP, policy: StationaryPolicy, values: np.ndarray) -> np.ndarray:  # noqa: N802
    """(T_mu J)(x) for the fixed controls mu(x)."""
    return np.array([q_factor(mdp, values, x, policy[x]) for x in range(mdp.state_count)])


def greedy_policy(mdp: DiscountedMDP, values: np.ndarray, tol: float = TOLERANCE) -> StationaryPolicy:
    """Policy attaining TJ at every state, lowest joint index on ties."""
    return tuple(
        mdp.blocks[x].controls[first_argmin(state_q_values(mdp, values, x), tol)] for x in range(mdp.state_count)
    )


def evaluate_policy_discounted(
    mdp: DiscountedMDP,
    policy: StationaryPolicy,
    *,
    solve_limit: int = LINEAR_SOLVE_LIMIT,
    tol: float = EVALUATION_TOLERANCE,
    iteration_cap: int = EVALUATION_ITERATION_CAP,
) -> np.ndarray:
    """J_mu, the unique fixed point of T_mu.

    Solved as (I - alpha P_mu) J = g_mu up to solve_limit states, otherwise by
    iterating T_mu on a sparse P_mu until the sup-norm residual reaches tol.
    """
    matrix, cost = mdp.policy_matrix(policy)
    scaled = mdp.stage_discounts[:, None] * matrix
    n = mdp.state_count
    if n <= solve_limit:
        return np.asarray(linalg.solve(np.eye(n) - scaled, cost), dtype=float)
    operator = sparse.csr_matrix(scaled)
    values = np.zeros(n)
    for step in range(iteration_cap):
        updated = cost + operator @ values
        residual = float(np.max(np.abs(updated - values)))
        values = updated
        if residual <= tol:
            LOG.debug("policy evaluation converged after %d sweeps", step + 1)
            return values
    msg = f"Policy evaluation did not reach residual {tol} in {iteration_cap} sweeps"
    raise ConvergenceError(msg)


def value_iteration(
    mdp: DiscountedMDP,
    tol: float = 1e-8,
    iteration_cap: int = VALUE_ITERATION_CAP,
) -> np.ndarray:
    """Approximate J* to within tol in sup norm, starting from J = 0.

    Stops once successive iterates differ by at most tol (1 - alpha) / (2 alpha),
    which bounds the distance to J* by tol through the contraction property.
    """
    if tol <= 0:
        msg = "Value iteration tolerance must be positive"
        raise ValueError(msg)
    alpha = mdp.discount
    threshold = tol * (1 - alpha) / (2 * alpha)
    values = np.zeros(mdp.state_count)
    for step in range(iteration_cap):
        updated = bellman_T(mdp, values)
        difference = float(np.max(np.abs(updated - values)))
        values = updated
        if difference <= threshold:
            LOG.debug("value iteration stopped after %d sweeps", step + 1)
            return values
    msg = f"Value iteration did not converge in {iteration_cap} sweeps"
    raise ConvergenceError(msg)
