"""One-agent-at-a-time reformulation.

Each original decision u = (u_1, ..., u_m) is unfolded into m consecutive
decisions. Intermediate states (x, (u_a, ..., u_b)) record the components
already chosen, in the order the agents decide. Intermediate transitions are
deterministic and cost-free; the last component carries the original law and
stage cost. Original states appear as (x, ()).
"""

# stdlib
from __future__ import annotations

from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.model.discounted import DiscountedMDP
from madp.model.finite import FiniteHorizonModel
from madp.structs import AgentOrder, StateSpace

if TYPE_CHECKING:
    from madp.model.finite import Distribution
    from madp.structs import ControlSets, FactoredControl, FinitePolicy, State, StationaryPolicy

_DETERMINISTIC: Distribution = ((None, 1.0),)


def _assemble(order: tuple[int, ...], partial: tuple[Any, ...]) -> FactoredControl:
    """Joint control in agent index order from components in decision order."""
    control: list[Any] = [None] * len(order)
    for agent, value in zip(order, partial):
        control[agent] = value
    return tuple(control)


class ExpandedFiniteModel(FiniteHorizonModel):
    """Single-agent model with horizon N*m unfolding a multiagent model."""

    def __init__(self, model: FiniteHorizonModel, order: AgentOrder | None = None):
        self.original = model
        self.order = order or AgentOrder.identity(model.agent_count)
        self.horizon = model.horizon * model.agent_count
        self.agent_count = 1
        self._spaces: dict[int, StateSpace] = {}

    def split(self, stage: int) -> tuple[int, int]:
        """Original stage and decision position of an expanded stage."""
        return divmod(stage, self.original.agent_count)

    def agent_at(self, stage: int) -> int:
        outer, position = self.split(stage)
        return self.order.at(outer)[position]

    def states(self, stage: int) -> StateSpace:
        self.check_stage(stage)
        if stage not in self._spaces:
            outer, position = self.split(stage)
            space: list[State] = []
            for state in self.original.states(outer):
                if position == 0:
                    space.append((state, ()))
                    continue
                sets = self.original.control_sets(outer, state)
                deciders = self.order.at(outer)[:position]
                prefixes: list[tuple[Any, ...]] = [()]
                for agent in deciders:
                    prefixes = [p + (value,) for p in prefixes for value in sets[agent]]
                space.extend((state, prefix) for prefix in prefixes)
            self._spaces[stage] = StateSpace(tuple(space))
        return self._spaces[stage]

    def control_sets(self, stage: int, state: State) -> ControlSets:
        outer, _ = self.split(stage)
        original, _ = state  # type: ignore[misc]
        return (self.original.control_sets(outer, original)[self.agent_at(stage)],)

    def _is_last(self, stage: int) -> bool:
        return self.split(stage)[1] == self.original.agent_count - 1

    def _joint(self, stage: int, state: State, control: FactoredControl) -> tuple[int, State, FactoredControl]:
        outer, _ = self.split(stage)
        original, partial = state  # type: ignore[misc]
        return outer, original, _assemble(self.order.at(outer), (*partial, control[0]))

    def disturbance(self, stage: int, state: State, control: FactoredControl) -> Distribution:
        if not self._is_last(stage):
            return _DETERMINISTIC
        return self.original.disturbance(*self._joint(stage, state, control))

    def transition(self, stage: int, state: State, control: FactoredControl, noise: Any) -> State:
        if not self._is_last(stage):
            original, partial = state  # type: ignore[misc]
            return (original, (*partial, control[0]))
        return (self.original.transition(*self._joint(stage, state, control), noise), ())

    def stage_cost(self, stage: int, state: State, control: FactoredControl, noise: Any) -> float:
        if not self._is_last(stage):
            return 0.0
        return self.original.stage_cost(*self._joint(stage, state, control), noise)

    def terminal_cost(self, state: State) -> float:
        return self.original.terminal_cost(state[0])  # type: ignore[index]


class EmbeddedPolicy:
    """Original-model policy played one component per expanded stage."""

    def __init__(self, expanded: ExpandedFiniteModel, policy: FinitePolicy):
        self.expanded = expanded
        self.policy = policy

    def __call__(self, stage: int, state: State) -> FactoredControl:
        outer, _ = self.expanded.split(stage)
        original, _ = state  # type: ignore[misc]
        return (self.policy(outer, original)[self.expanded.agent_at(stage)],)


def embed_policy(expanded: ExpandedFiniteModel, policy: FinitePolicy) -> EmbeddedPolicy:
    """Map an original policy onto the expanded model with identical cost."""
    return EmbeddedPolicy(expanded, policy)


class ExpandedMDP(DiscountedMDP):
    """Discounted one-agent-at-a-time expansion.

    States 0..n-1 are the original states; intermediate states follow. The
    full discount applies once per original stage, on the final component's
    transition, and intermediate moves are undiscounted and cost-free.
    """

    def __init__(self, mdp: DiscountedMDP, order: AgentOrder | None = None):
        self.original = mdp
        self.order = order or AgentOrder.identity(mdp.agent_count)
        sequence = self.order.sequence
        m, n = mdp.agent_count, mdp.state_count
        labels: list[tuple[int, tuple[Any, ...]]] = [(x, ()) for x in range(n)]
        for x in range(n):
            prefixes: list[tuple[Any, ...]] = [()]
            sets = mdp.control_sets(x)
            for agent in sequence[: m - 1]:
                prefixes = [p + (value,) for p in prefixes for value in sets[agent]]
                labels.extend((x, prefix) for prefix in prefixes)
        self.labels = labels
        self.label_index = {label: i for i, label in enumerate(labels)}
        size = len(labels)
        control_sets, probs, costs = [], [], []
        stage_discounts = np.ones(size)
        for i, (x, partial) in enumerate(labels):
            agent = sequence[len(partial)]
            options = mdp.control_sets(x)[agent]
            prob = np.zeros((len(options), size))
            cost = np.zeros((len(options), size))
            if len(partial) == m - 1:
                stage_discounts[i] = mdp.discount
                for row, value in enumerate(options):
                    joint = _assemble(sequence, (*partial, value))
                    prob[row, :n] = mdp.transition_row(x, joint)
                    cost[row, :n] = mdp.cost_row(x, joint)
            else:
                for row, value in enumerate(options):
                    prob[row, self.label_index[(x, (*partial, value))]] = 1.0
            control_sets.append((options,))
            probs.append(prob)
            costs.append(cost)
        super().__init__(1, control_sets, probs, costs, mdp.discount, stage_discounts)

    def embed(self, policy: StationaryPolicy) -> StationaryPolicy:
        """Expanded-model policy playing the original policy component-wise."""
        sequence = self.order.sequence
        return tuple((policy[x][sequence[len(partial)]],) for x, partial in self.labels)


def reformulate_one_at_a_time(
    model: FiniteHorizonModel | DiscountedMDP,
    order: AgentOrder | None = None,
) -> ExpandedFiniteModel | ExpandedMDP:
    """Unfold a multiagent model so each decision point has one agent's controls."""
    if isinstance(model, DiscountedMDP):
        return ExpandedMDP(model, order)
    return ExpandedFiniteModel(model, order)
