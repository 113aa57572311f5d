"""Tabular discounted MDP with factored control sets.

States are 0..n-1. For every state the joint controls are enumerated once in
lexicographic order, and the transition and cost data are held as dense
(joint controls x successors) numpy blocks so Bellman updates vectorize.
"""

# stdlib
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.exceptions import ModelDomainError
from madp.model.finite import joint_controls

if TYPE_CHECKING:
    from collections.abc import Sequence

    from madp.structs import ControlSets, FactoredControl, StationaryPolicy


@dataclass
class StateBlock:
    """Transition and cost data for the joint controls of one state."""

    control_sets: ControlSets
    controls: list[FactoredControl] = field(init=False)
    index: dict[FactoredControl, int] = field(init=False, repr=False)
    probs: np.ndarray = field(init=False, repr=False)
    costs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.control_sets = tuple(tuple(s) for s in self.control_sets)
        self.controls = joint_controls(self.control_sets)
        self.index = {u: i for i, u in enumerate(self.controls)}

    @property
    def expected_costs(self) -> np.ndarray:
        """Sum over y of p_xy(u) g(x,u,y) for every joint control."""
        return np.einsum("uy,uy->u", self.probs, self.costs)


class DiscountedMDP:
    """n-state, m-agent discounted MDP.

    `stage_discounts` optionally overrides the discount applied when leaving
    each state; the one-agent-at-a-time expansion uses it to discount only the
    final component's transition.
    """

    state_count: int
    agent_count: int
    discount: float
    blocks: list[StateBlock]
    stage_discounts: np.ndarray

    def __init__(
        self,
        agent_count: int,
        control_sets: Sequence[ControlSets],
        probs: Sequence[np.ndarray],
        costs: Sequence[np.ndarray],
        discount: float,
        stage_discounts: np.ndarray | None = None,
    ):
        self.state_count = len(control_sets)
        self.agent_count = agent_count
        self.discount = float(discount)
        self.blocks = []
        for sets, prob, cost in zip(control_sets, probs, costs):
            block = StateBlock(sets)
            block.probs = np.asarray(prob, dtype=float).reshape(len(block.controls), self.state_count)
            block.costs = np.asarray(cost, dtype=float).reshape(len(block.controls), self.state_count)
            self.blocks.append(block)
        if stage_discounts is None:
            stage_discounts = np.full(self.state_count, self.discount)
        self.stage_discounts = np.asarray(stage_discounts, dtype=float)

    @classmethod
    def from_transitions(
        cls,
        agent_count: int,
        control_sets: Sequence[ControlSets],
        transitions: Sequence[tuple[int, FactoredControl, int, float, float]],
        discount: float,
    ) -> DiscountedMDP:
        """Build from (x, joint u, y, probability, cost) entries.

        Pairs without entries keep a zero row so validation can flag them.
        """
        n = len(control_sets)
        probs, costs, lookups = [], [], []
        for sets in control_sets:
            block = StateBlock(sets)
            probs.append(np.zeros((len(block.controls), n)))
            costs.append(np.zeros((len(block.controls), n)))
            lookups.append(block.index)
        for state, control, successor, prob, cost in transitions:
            try:
                row = lookups[state][tuple(control)]
            except (IndexError, KeyError) as exc:
                msg = f"Control {tuple(control)} is not feasible at state {state}"
                raise ModelDomainError(msg) from exc
            if not 0 <= successor < n:
                msg = f"Successor {successor} of state {state} is outside 0..{n - 1}"
                raise ModelDomainError(msg)
            probs[state][row, successor] += prob
            costs[state][row, successor] = cost
        return cls(agent_count, control_sets, probs, costs, discount)

    def __repr__(self) -> str:
        return f"<madp.DiscountedMDP states={self.state_count} agents={self.agent_count} discount={self.discount}>"

    def block(self, state: int) -> StateBlock:
        if not 0 <= state < self.state_count:
            msg = f"State {state} is outside 0..{self.state_count - 1}"
            raise ModelDomainError(msg)
        return self.blocks[state]

    def control_sets(self, state: int) -> ControlSets:
        return self.block(state).control_sets

    def enumerate_joint_controls(self, state: int) -> list[FactoredControl]:
        """Full joint control set U(x) in lexicographic order."""
        return list(self.block(state).controls)

    def control_index(self, state: int, control: FactoredControl) -> int:
        try:
            return self.block(state).index[tuple(control)]
        except KeyError as exc:
            msg = f"Control {tuple(control)} is not feasible at state {state}"
            raise ModelDomainError(msg) from exc

    def transition_row(self, state: int, control: FactoredControl) -> np.ndarray:
        return self.block(state).probs[self.control_index(state, control)]

    def cost_row(self, state: int, control: FactoredControl) -> np.ndarray:
        return self.block(state).costs[self.control_index(state, control)]

    def first_policy(self) -> StationaryPolicy:
        """Policy applying every agent's first listed control."""
        return tuple(block.controls[0] for block in self.blocks)

    def uniform_policy(self, components: Sequence[Any]) -> StationaryPolicy:
        """Policy applying the same joint control at every state."""
        control = tuple(components)
        for state in range(self.state_count):
            self.control_index(state, control)
        return (control,) * self.state_count

    def policy_matrix(self, policy: StationaryPolicy) -> tuple[np.ndarray, np.ndarray]:
        """P_mu and the expected one-stage cost vector under a policy."""
        n = self.state_count
        matrix = np.empty((n, n))
        cost = np.empty(n)
        for state, control in enumerate(policy):
            block = self.block(state)
            row = self.control_index(state, control)
            matrix[state] = block.probs[row]
            cost[state] = block.probs[row] @ block.costs[row]
        return matrix, cost
