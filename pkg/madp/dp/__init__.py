"""Exact dynamic-programming oracle.

Backward induction for finite-horizon models; Bellman operators, exact
policy evaluation, value iteration, and Q-factors for discounted MDPs.
"""

from madp.dp.base import first_argmin, prefer_argmin
from madp.dp.discounted import (
    bellman_T,
    bellman_T_mu,
    evaluate_policy_discounted,
    greedy_policy,
    q_factor,
    q_table,
    state_q_values,
    value_iteration,
)
from madp.dp.finite import backward_induction, evaluate_policy_finite

__all__ = (
    "backward_induction",
    "bellman_T",
    "bellman_T_mu",
    "evaluate_policy_discounted",
    "evaluate_policy_finite",
    "first_argmin",
    "greedy_policy",
    "prefer_argmin",
    "q_factor",
    "q_table",
    "state_q_values",
    "value_iteration",
)
