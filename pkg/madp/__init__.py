""".. include:: ../docs/launch.md"""

# ruff: noqa: F401

from madp.dp import backward_induction, evaluate_policy_discounted, evaluate_policy_finite, value_iteration
from madp.env import build_line_spiders_flies, build_spiders_fly_grid, build_static_counterexample, random_mdp
from madp.iteration import agent_by_agent_pi, is_agent_by_agent_optimal, standard_pi
from madp.model import DiscountedMDP, FiniteHorizonModel, reformulate_one_at_a_time, validate_model
from madp.rollout import ExactEvaluator, MonteCarloEvaluator, RolloutConfig, rollout_control, run_rollout_episode
from madp.structs import AgentOrder

# NOTE: __all__ is not implemented here due to pdoc build
