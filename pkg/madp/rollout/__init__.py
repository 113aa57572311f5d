"""Rollout: standard, one-agent-at-a-time, and uncoordinated, with instrumented Q-factor evaluation."""

from madp.rollout.control import (
    VARIANTS,
    RolloutConfig,
    mc_q_estimate,
    multiagent_rollout_control,
    multiorder_rollout_control,
    rollout_control,
    standard_rollout_control,
    uncoordinated_rollout_control,
)
from madp.rollout.episode import RolloutPolicy, rollout_policy_table, run_rollout_episode
from madp.rollout.evaluator import ExactEvaluator, MonteCarloEvaluator, QEvaluator

__all__ = (
    "VARIANTS",
    "ExactEvaluator",
    "MonteCarloEvaluator",
    "QEvaluator",
    "RolloutConfig",
    "RolloutPolicy",
    "mc_q_estimate",
    "multiagent_rollout_control",
    "multiorder_rollout_control",
    "rollout_control",
    "rollout_policy_table",
    "run_rollout_episode",
    "standard_rollout_control",
    "uncoordinated_rollout_control",
)
