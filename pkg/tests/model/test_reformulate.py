"""One-agent-at-a-time reformulation tests."""

# library
import numpy as np
import pytest

# module
from madp.dp import backward_induction, evaluate_policy_discounted, evaluate_policy_finite
from madp.env.counterexample import build_static_counterexample, finite_static_counterexample
from madp.env.generator import random_finite_model, random_finite_policy, random_mdp, random_policy
from madp.iteration import standard_pi
from madp.model import ExpandedFiniteModel, ExpandedMDP, embed_policy, reformulate_one_at_a_time
from madp.structs import AgentOrder

# tests
from tests.util import assert_sup_close


def test_dispatch() -> None:
    assert isinstance(reformulate_one_at_a_time(build_static_counterexample("agent-by-agent-trap")), ExpandedMDP)
    finite = finite_static_counterexample("coordination-failure", 2)
    assert isinstance(reformulate_one_at_a_time(finite), ExpandedFiniteModel)


def test_expanded_finite_shape() -> None:
    """Horizon N*m, one agent, one component per decision."""
    expanded = ExpandedFiniteModel(finite_static_counterexample("coordination-failure", 3))
    assert expanded.horizon == 6
    assert expanded.agent_count == 1
    assert list(expanded.states(0)) == [(0, ())]
    assert list(expanded.states(1)) == [(0, (0,)), (0, (1,))]
    assert expanded.control_sets(1, (0, (1,))) == ((0, 1),)
    # intermediate step: deterministic and free
    assert expanded.transition(0, (0, ()), (1,), None) == (0, (1,))
    assert expanded.stage_cost(0, (0, ()), (1,), None) == 0.0
    # final component applies the original control (1, 0)
    assert expanded.stage_cost(1, (0, (1,)), (0,), 0) == 0.0
    assert expanded.transition(1, (0, (1,)), (0,), 0) == (0, ())


def test_expanded_finite_reverse_order() -> None:
    """Partial controls follow the decision order; assembly restores agent order."""
    expanded = ExpandedFiniteModel(finite_static_counterexample("agent-by-agent-trap", 1), AgentOrder((1, 0)))
    assert expanded.agent_at(0) == 1
    assert expanded.agent_at(1) == 0
    # agent 1 picks 1, then agent 0 picks 0: joint control (0, 1) costs 2
    assert expanded.stage_cost(1, (0, (1,)), (0,), 0) == 2.0


@pytest.mark.parametrize("seed", range(8))
def test_expanded_finite_optimal_value(seed: int) -> None:
    """Both formulations share the optimal cost at original states."""
    model = random_finite_model(3, 5, 2, 3, seed=seed)
    expanded = ExpandedFiniteModel(model)
    original_values, _ = backward_induction(model)
    expanded_values, _ = backward_induction(expanded)
    for state in model.states(0):
        assert expanded_values.value(0, (state, ())) == pytest.approx(original_values.value(0, state))


@pytest.mark.parametrize("seed", range(8))
def test_embedded_policy_cost(seed: int) -> None:
    """An embedded policy costs the same as the original policy."""
    model = random_finite_model(3, 5, 3, 2, seed=seed)
    base = random_finite_policy(model, seed)
    expanded = ExpandedFiniteModel(model, AgentOrder((2, 0, 1)))
    embedded = evaluate_policy_finite(expanded, embed_policy(expanded, base))
    direct = evaluate_policy_finite(model, base)
    for state in model.states(0):
        assert embedded.value(0, (state, ())) == pytest.approx(direct.value(0, state))


def test_expanded_mdp_layout() -> None:
    """Original states come first; only final-component states are discounted."""
    expanded = ExpandedMDP(build_static_counterexample("agent-by-agent-trap"))
    assert expanded.labels == [(0, ()), (0, (0,)), (0, (1,))]
    assert list(expanded.stage_discounts) == [1.0, 0.9, 0.9]
    assert expanded.embed(((0, 0),)) == ((0,), (0,), (0,))
    assert evaluate_policy_discounted(expanded, expanded.embed(((0, 0),)))[0] == pytest.approx(10.0)


@pytest.mark.parametrize("seed", range(10))
def test_expanded_mdp_values(seed: int) -> None:
    """Optimal and policy costs agree on the original states."""
    mdp = random_mdp(4, 2, 2, seed=seed)
    expanded = ExpandedMDP(mdp, AgentOrder((1, 0)))
    n = mdp.state_count
    optimal = standard_pi(mdp, mdp.first_policy()).values
    assert_sup_close(standard_pi(expanded, expanded.first_policy()).values[:n], optimal, 1e-8)
    policy = random_policy(mdp, seed)
    expected = evaluate_policy_discounted(mdp, policy)
    assert_sup_close(evaluate_policy_discounted(expanded, expanded.embed(policy))[:n], expected, 1e-8)
    assert np.all(expanded.stage_discounts[:n] == 1.0)
