"""One-step lookahead control selection: standard, multiagent, and uncoordinated rollout."""

# stdlib
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

# module
from madp.dp.base import first_argmin
from madp.rollout.evaluator import ExactEvaluator, MonteCarloEvaluator, QEvaluator
from madp.static.core import TOLERANCE
from madp.structs import AgentOrder

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from madp.model.finite import FiniteHorizonModel
    from madp.structs import FactoredControl, FinitePolicy, State

LOG = logging.getLogger("madp.rollout.control")

VARIANTS = ("standard", "multiagent", "uncoordinated")


@dataclass
class RolloutConfig:
    variant: str = "multiagent"
    order: AgentOrder | None = None
    evaluator: QEvaluator = field(default_factory=ExactEvaluator)
    tie_tolerance: float = TOLERANCE

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            msg = f"'{self.variant}' is not a rollout variant. Expected {VARIANTS}"
            raise ValueError(msg)
        if self.tie_tolerance < 0:
            msg = "Tie tolerance cannot be negative"
            raise ValueError(msg)

    def order_at(self, stage: int, agent_count: int) -> tuple[int, ...]:
        if self.order is None:
            return tuple(range(agent_count))
        return self.order.at(stage)


def _with(control: Sequence[Any], agent: int, value: Any) -> FactoredControl:
    changed = list(control)
    changed[agent] = value
    return tuple(changed)


def _component_minimum(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
    fixed: FactoredControl,
    agent: int,
) -> tuple[Any, float]:
    """Best value of one agent's component with every other component held at `fixed`."""
    options = model.control_sets(stage, state)[agent]
    q_values = [
        cfg.evaluator.q_value(model, stage, state, _with(fixed, agent, value), base_policy) for value in options
    ]
    best = first_argmin(q_values, cfg.tie_tolerance)
    return options[best], q_values[best]


def standard_rollout_control(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> FactoredControl:
    """Minimize the base-policy Q-factor over the full joint control set."""
    controls = model.enumerate_joint_controls(stage, state)
    q_values = [cfg.evaluator.q_value(model, stage, state, u, base_policy) for u in controls]
    return controls[first_argmin(q_values, cfg.tie_tolerance)]


def _multiagent(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
    order: Sequence[int],
) -> tuple[FactoredControl, float]:
    control = tuple(base_policy(stage, state))
    q_value = float("nan")
    for agent in order:
        value, q_value = _component_minimum(model, stage, state, base_policy, cfg, control, agent)
        control = _with(control, agent, value)
    return control, q_value


def multiagent_rollout_control(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> FactoredControl:
    """Choose components one agent at a time.

    Agents earlier in the order are fixed at their rollout choices, agents
    later in the order at the base policy's components.
    """
    order = cfg.order_at(stage, model.agent_count)
    control, _ = _multiagent(model, stage, state, base_policy, cfg, order)
    return control


def uncoordinated_rollout_control(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> FactoredControl:
    """Each agent minimizes alone, assuming every other agent plays the base policy."""
    base = tuple(base_policy(stage, state))
    return tuple(
        _component_minimum(model, stage, state, base_policy, cfg, base, agent)[0] for agent in range(model.agent_count)
    )


def multiorder_rollout_control(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
    orders: Sequence[AgentOrder],
) -> FactoredControl:
    """Multiagent rollout under each supplied order, keeping the lowest final Q-factor.

    Ties go to the earliest order in the list.
    """
    if not orders:
        msg = "At least one agent order is required"
        raise ValueError(msg)
    results = [_multiagent(model, stage, state, base_policy, cfg, order.at(stage)) for order in orders]
    best = first_argmin([q for _, q in results], cfg.tie_tolerance)
    return results[best][0]


def mc_q_estimate(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    control: FactoredControl,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> float:
    """Monte Carlo Q-factor under the configured simulation evaluator."""
    if not isinstance(cfg.evaluator, MonteCarloEvaluator):
        msg = "mc_q_estimate needs a Monte Carlo evaluator"
        raise TypeError(msg)
    return cfg.evaluator.q_value(model, stage, state, control, base_policy)


_SELECTORS: dict[str, Callable[[FiniteHorizonModel, int, State, FinitePolicy, RolloutConfig], FactoredControl]] = {
    "standard": standard_rollout_control,
    "multiagent": multiagent_rollout_control,
    "uncoordinated": uncoordinated_rollout_control,
}


def rollout_control(
    model: FiniteHorizonModel,
    stage: int,
    state: State,
    base_policy: FinitePolicy,
    cfg: RolloutConfig,
) -> FactoredControl:
    """Control chosen by the configured rollout variant."""
    control = _SELECTORS[cfg.variant](model, stage, state, base_policy, cfg)
    LOG.debug("%s rollout at stage %d, state %r -> %r", cfg.variant, stage, state, control)
    return control
