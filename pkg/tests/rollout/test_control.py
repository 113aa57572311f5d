"""Rollout control selection tests."""

# library
import pytest

# module
from madp.env.counterexample import finite_static_counterexample
from madp.env.grid import GridGreedyPolicy, GridPursuit, GridPursuitParams
from madp.env.line import LineGreedyPolicy, LinePursuit, LinePursuitParams
from madp.rollout import (
    ExactEvaluator,
    MonteCarloEvaluator,
    RolloutConfig,
    mc_q_estimate,
    multiagent_rollout_control,
    multiorder_rollout_control,
    rollout_control,
    standard_rollout_control,
    uncoordinated_rollout_control,
)
from madp.structs import AgentOrder

# tests
from tests.util import FixedPolicy

BASE = FixedPolicy((0, 0))


@pytest.mark.parametrize(
    ("variant", "control"),
    [
        ("standard", (0, 1)),
        ("multiagent", (1, 0)),
        ("uncoordinated", (1, 1)),
    ],
)
def test_coordination_failure_controls(variant: str, control: tuple[int, int]) -> None:
    """Only the uncoordinated variant picks the costly (1, 1)."""
    model = finite_static_counterexample("coordination-failure", 5)
    assert rollout_control(model, 0, 0, BASE, RolloutConfig(variant)) == control


def test_multiagent_reverse_order() -> None:
    """Agent 1 moves first and switches; agent 0 then keeps 0."""
    model = finite_static_counterexample("coordination-failure", 5)
    cfg = RolloutConfig(order=AgentOrder((1, 0)))
    assert multiagent_rollout_control(model, 0, 0, BASE, cfg) == (0, 1)


def test_stage_dependent_order() -> None:
    model = finite_static_counterexample("coordination-failure", 5)
    cfg = RolloutConfig(order=AgentOrder.from_callable(2, lambda stage: (0, 1) if stage % 2 == 0 else (1, 0)))
    assert multiagent_rollout_control(model, 0, 0, BASE, cfg) == (1, 0)
    assert multiagent_rollout_control(model, 1, 0, BASE, cfg) == (0, 1)


def test_multiorder_tie_goes_to_first() -> None:
    """Both orders reach Q = 4; the first order listed wins."""
    model = finite_static_counterexample("coordination-failure", 5)
    orders = [AgentOrder((1, 0)), AgentOrder((0, 1))]
    assert multiorder_rollout_control(model, 0, 0, BASE, RolloutConfig(), orders) == (0, 1)
    assert multiorder_rollout_control(model, 0, 0, BASE, RolloutConfig(), orders[::-1]) == (1, 0)
    with pytest.raises(ValueError):
        multiorder_rollout_control(model, 0, 0, BASE, RolloutConfig(), [])


def test_line_first_move() -> None:
    """Spiders at 6 and 8 split up instead of both chasing the right fly."""
    model = LinePursuit(LinePursuitParams(10, (6, 8), (0, 10)))
    base = LineGreedyPolicy(model)
    state = model.initial_state()
    assert base(0, state) == ("right", "right")
    assert multiagent_rollout_control(model, 0, state, base, RolloutConfig()) == ("left", "right")
    assert standard_rollout_control(model, 0, state, base, RolloutConfig("standard")) == ("left", "right")


@pytest.mark.parametrize(
    ("variant", "count"),
    [
        ("standard", 125),
        ("multiagent", 15),
        ("uncoordinated", 15),
    ],
)
def test_evaluation_counts(variant: str, count: int) -> None:
    """Three interior spiders with five moves each: s^m against s*m Q-factors."""
    params = GridPursuitParams(5, 5, ((1, 1), (2, 2), (3, 3)), (0, 4), horizon=3)
    model = GridPursuit(params)
    cfg = RolloutConfig(variant, evaluator=ExactEvaluator())
    rollout_control(model, 0, model.initial_state(), GridGreedyPolicy(model), cfg)
    assert cfg.evaluator.evaluations == count


def test_uncoordinated_matches_base_components() -> None:
    """Each uncoordinated component minimizes against the base control alone."""
    model = finite_static_counterexample("agent-by-agent-trap", 3)
    assert uncoordinated_rollout_control(model, 0, 0, BASE, RolloutConfig("uncoordinated")) == (0, 0)


@pytest.mark.parametrize(("variant", "tie"), [("best", 0.0), ("multiagent", -1.0)])
def test_bad_config(variant: str, tie: float) -> None:
    with pytest.raises(ValueError):
        RolloutConfig(variant, tie_tolerance=tie)


def test_mc_estimate_needs_simulation() -> None:
    model = finite_static_counterexample("coordination-failure", 2)
    with pytest.raises(TypeError):
        mc_q_estimate(model, 0, 0, (0, 0), BASE, RolloutConfig())
    cfg = RolloutConfig(evaluator=MonteCarloEvaluator(4))
    assert mc_q_estimate(model, 0, 0, (1, 1), BASE, cfg) == 3.0
