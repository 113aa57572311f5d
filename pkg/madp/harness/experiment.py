"""Experiment orchestration: run an algorithm pipeline on a model and collect a report."""

# stdlib
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

# module
from madp.dp.discounted import evaluate_policy_discounted, value_iteration
from madp.dp.finite import backward_induction
from madp.env import greedy_base_policy
from madp.env.grid import GridPursuit
from madp.env.line import LinePursuit
from madp.exceptions import IncompatibleMethod, ModelDomainError
from madp.iteration import agent_by_agent_pi, is_agent_by_agent_optimal, standard_pi
from madp.model.discounted import DiscountedMDP
from madp.rollout.control import VARIANTS, RolloutConfig
from madp.rollout.episode import RolloutPolicy
from madp.rollout.evaluator import ExactEvaluator, MonteCarloEvaluator
from madp.structs import ExperimentReport, ReportRow

if TYPE_CHECKING:
    from collections.abc import Sequence

    from madp.model.finite import FiniteHorizonModel
    from madp.rollout.evaluator import QEvaluator
    from madp.structs import AgentOrder, FactoredControl, FinitePolicy, State, StationaryPolicy

LOG = logging.getLogger("madp.harness.experiment")

METHODS = ("exact", "rollout", "pi", "compare", "check-abao")
PI_VARIANTS = ("standard", "agent-by-agent")
FINITE_METHODS = ("exact", "rollout", "compare")
DISCOUNTED_METHODS = ("exact", "pi", "compare", "check-abao")


@dataclass
class ExperimentConfig:
    """Everything a run depends on besides the model.

    variant names a rollout variant for `rollout` and a PI variant for `pi`;
    None picks multiagent rollout and agent-by-agent PI. trajectories switches
    rollout to Monte Carlo Q-factors. initial gives per-agent components of the
    initial (PI) or checked (check-abao) policy, applied at every state.
    """

    seed: int
    variant: str | None = None
    order: AgentOrder | None = None
    trajectories: int | None = None
    truncate: int | None = None
    initial: Sequence[Any] | None = None

    def echo(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "variant": self.variant,
            "order": None if self.order is None else list(self.order.sequence),
            "trajectories": self.trajectories,
            "truncate": self.truncate,
            "initial": None if self.initial is None else list(self.initial),
        }


class FirstControlPolicy:
    """Base policy applying every agent's first listed control."""

    def __init__(self, model: FiniteHorizonModel):
        self.model = model

    def __call__(self, stage: int, state: State) -> FactoredControl:
        return tuple(options[0] for options in self.model.control_sets(stage, state))


def base_policy_for(model: FiniteHorizonModel) -> FinitePolicy:
    """Greedy pursuit policy for the pursuit environments, first controls otherwise."""
    if isinstance(model, (LinePursuit, GridPursuit)):
        return greedy_base_policy(model)
    return FirstControlPolicy(model)


def designated_states(model: FiniteHorizonModel | DiscountedMDP) -> list[State]:
    """States whose values are reported."""
    if isinstance(model, DiscountedMDP):
        return list(range(model.state_count))
    if isinstance(model, (LinePursuit, GridPursuit)):
        return [model.initial_state()]
    return list(model.states(0))


def _evaluator(config: ExperimentConfig) -> QEvaluator:
    if config.trajectories is None:
        return ExactEvaluator()
    return MonteCarloEvaluator(
        config.trajectories,
        truncation=config.truncate,
        seed=config.seed,
    )


def _check(model: FiniteHorizonModel | DiscountedMDP, method: str) -> None:
    if method not in METHODS:
        msg = f"'{method}' is not a method. Expected {METHODS}"
        raise IncompatibleMethod(msg)
    allowed = DISCOUNTED_METHODS if isinstance(model, DiscountedMDP) else FINITE_METHODS
    if method not in allowed:
        kind = "discounted" if isinstance(model, DiscountedMDP) else "finite-horizon"
        msg = f"Method '{method}' cannot run on a {kind} model. Expected one of {allowed}"
        raise IncompatibleMethod(msg)


def _rollout_rows(
    model: FiniteHorizonModel,
    variant: str,
    config: ExperimentConfig,
    states: list[State],
) -> list[ReportRow]:
    """Exact cost of a rollout policy at each designated state."""
    base = base_policy_for(model)
    cfg = RolloutConfig(variant=variant, order=config.order, evaluator=_evaluator(config))
    policy = RolloutPolicy(model, base, cfg)
    judge = ExactEvaluator()
    rows = []
    for state in states:
        before = cfg.evaluator.evaluations
        value = judge.base_cost(model, policy, 0, state)
        rows.append(
            ReportRow(f"{variant}-rollout", repr(state), value, cfg.evaluator.evaluations - before, 0, config.seed)
        )
    return rows


def _base_rows(model: FiniteHorizonModel, config: ExperimentConfig, states: list[State]) -> list[ReportRow]:
    judge = ExactEvaluator()
    base = base_policy_for(model)
    return [
        ReportRow("base", repr(state), judge.base_cost(model, base, 0, state), 0, 0, config.seed) for state in states
    ]


def _initial_policy(mdp: DiscountedMDP, config: ExperimentConfig) -> StationaryPolicy:
    if config.initial is None:
        return mdp.first_policy()
    return mdp.uniform_policy(config.initial)


def _pi(mdp: DiscountedMDP, variant: str, config: ExperimentConfig, report: ExperimentReport) -> None:
    initial = _initial_policy(mdp, config)
    if variant == "standard":
        trace = standard_pi(mdp, initial)
    else:
        trace = agent_by_agent_pi(mdp, initial, config.order)
    method = f"{variant}-pi"
    if report.method == "pi":
        for index, decrease in enumerate([0.0, *trace.decreases()]):
            report.rows.append(
                ReportRow(method, "*", decrease, trace.iterations[index].q_evaluations, index + 1, config.seed)
            )
    report.rows.extend(
        ReportRow(method, repr(state), float(value), trace.q_evaluations, len(trace), config.seed)
        for state, value in enumerate(trace.values)
    )
    report.policies[method] = repr(trace.policy)
    report.traces[method] = [item.values.tolist() for item in trace.iterations]
    LOG.info("%s ended after %d iterations (%s)", method, len(trace), trace.termination)


def _exact(model: FiniteHorizonModel | DiscountedMDP, config: ExperimentConfig, report: ExperimentReport) -> None:
    if isinstance(model, DiscountedMDP):
        values = value_iteration(model)
        report.rows.extend(
            ReportRow("exact", repr(state), float(value), 0, 0, config.seed) for state, value in enumerate(values)
        )
        return
    values, policy = backward_induction(model)
    for state in designated_states(model):
        report.rows.append(ReportRow("exact", repr(state), values.value(0, state), 0, 0, config.seed))
        report.policies[f"exact {state!r}"] = repr(policy(0, state))


def _check_abao(mdp: DiscountedMDP, config: ExperimentConfig, report: ExperimentReport) -> None:
    policy = _initial_policy(mdp, config)
    result = is_agent_by_agent_optimal(mdp, policy)
    values = evaluate_policy_discounted(mdp, policy)
    report.rows.extend(
        ReportRow("check-abao", repr(state), float(value), 0, 0, config.seed) for state, value in enumerate(values)
    )
    if result.optimal:
        report.policies["check-abao"] = f"{policy!r} is agent-by-agent optimal"
    else:
        first = result.violations[0]
        report.policies["check-abao"] = (
            f"{policy!r} is not agent-by-agent optimal: agent {first.agent} at state {first.state} "
            f"lowers its Q-factor from {first.current_q:.6g} to {first.better_q:.6g} by switching "
            f"{first.current!r} to {first.better!r}"
        )


def run_experiment(
    model: FiniteHorizonModel | DiscountedMDP,
    method: str,
    config: ExperimentConfig,
) -> ExperimentReport:
    """Run one method and collect a report.

    - exact: optimal values (backward induction or value iteration)
    - rollout: exact cost of the configured rollout variant's policy
    - pi: standard or agent-by-agent PI trace plus final values
    - compare: base policy against every rollout variant, or both PI variants
    - check-abao: agent-by-agent optimality of the configured policy
    """
    _check(model, method)
    if config.order is not None and len(config.order) != model.agent_count:
        msg = f"Agent order {config.order.sequence} does not cover the model's {model.agent_count} agents"
        raise ModelDomainError(msg)
    report = ExperimentReport(method, config.seed, config.echo())
    start = time.perf_counter()
    if method == "exact":
        _exact(model, config, report)
    elif method == "rollout":
        variant = config.variant or "multiagent"
        if variant not in VARIANTS:
            msg = f"'{variant}' is not a rollout variant. Expected {VARIANTS}"
            raise IncompatibleMethod(msg)
        report.rows.extend(_rollout_rows(model, variant, config, designated_states(model)))  # type: ignore[arg-type]
    elif method == "pi":
        variant = config.variant or "agent-by-agent"
        if variant not in PI_VARIANTS:
            msg = f"'{variant}' is not a PI variant. Expected {PI_VARIANTS}"
            raise IncompatibleMethod(msg)
        _pi(model, variant, config, report)  # type: ignore[arg-type]
    elif method == "compare":
        if isinstance(model, DiscountedMDP):
            for variant in PI_VARIANTS:
                _pi(model, variant, config, report)
        else:
            states = designated_states(model)
            report.rows.extend(_base_rows(model, config, states))
            for variant in VARIANTS:
                report.rows.extend(_rollout_rows(model, variant, config, states))
    else:
        _check_abao(model, config, report)  # type: ignore[arg-type]
    report.elapsed = time.perf_counter() - start
    LOG.info("%s finished in %.3fs", method, report.elapsed)
    return report
