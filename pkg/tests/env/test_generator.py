"""Random instance generator tests."""

# library
import numpy as np
import pytest

# module
from madp.env.generator import random_finite_model, random_finite_policy, random_mdp, random_policy
from madp.model import validate_model


def test_seeded_mdp_is_reproducible() -> None:
    first, second = random_mdp(5, 2, 3, seed=7), random_mdp(5, 2, 3, seed=7)
    for left, right in zip(first.blocks, second.blocks):
        assert np.array_equal(left.probs, right.probs)
        assert np.array_equal(left.costs, right.costs)
    assert random_policy(first, 7) == random_policy(second, 7)
    other = random_mdp(5, 2, 3, seed=8)
    assert not np.array_equal(first.blocks[0].probs, other.blocks[0].probs)


def test_random_mdps_are_valid() -> None:
    for seed in range(100):
        mdp = random_mdp(4, 2, 2, seed=seed, sparsity=0.3)
        assert validate_model(mdp).ok, seed


def test_sparsity() -> None:
    mdp = random_mdp(10, 1, 2, seed=1, sparsity=0.8)
    for block in mdp.blocks:
        assert np.count_nonzero(block.probs == 0.0) > 0
        assert np.all(np.count_nonzero(block.probs, axis=1) >= 1)
        assert np.allclose(block.probs.sum(axis=1), 1.0)


def test_cost_range() -> None:
    mdp = random_mdp(3, 2, 2, cost_range=(5.0, 6.0), seed=2)
    for block in mdp.blocks:
        assert np.all((block.costs >= 5.0) & (block.costs <= 6.0))


@pytest.mark.parametrize(("states", "agents", "controls"), [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_bad_counts(states: int, agents: int, controls: int) -> None:
    with pytest.raises(ValueError, match="must be positive"):
        random_mdp(states, agents, controls)


def test_random_finite_model() -> None:
    model = random_finite_model(horizon=3, state_count=5, agent_count=2, control_count=3, outcome_count=3, seed=4)
    assert validate_model(model).ok
    assert len(model.states(3)) == 5
    policy = random_finite_policy(model, seed=4)
    assert len(policy) == 15
    for stage in range(3):
        for state in model.states(stage):
            control = policy(stage, state)
            assert model.is_feasible(stage, state, control)
            assert 1 <= len(model.disturbance(stage, state, control)) <= 3
