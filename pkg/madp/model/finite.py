"""Finite-horizon model parent class and the primitives shared by every algorithm.

A model exposes its stage-wise state sets, per-agent control sets, finite
disturbance supports, transition map, and costs. Subclasses only implement the
abstract hooks; enumeration, expectation, and sampling live here.
"""

# stdlib
from __future__ import annotations

from abc import ABCMeta, abstractmethod
from itertools import product
from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.exceptions import EvaluationError, ModelDomainError
from madp.structs import StateSpace

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping, Sequence

    from madp.structs import ControlSets, FactoredControl, State

Distribution = tuple[tuple[Any, float], ...]


def joint_controls(control_sets: ControlSets) -> list[FactoredControl]:
    """Cartesian product of per-agent control sets in lexicographic order."""
    return list(product(*control_sets))


class FiniteHorizonModel(metaclass=ABCMeta):
    """N-stage stochastic control problem with factored controls."""

    #: Number of stages N
    horizon: int

    #: Number of agents m
    agent_count: int

    def __repr__(self) -> str:
        return f"<madp.{self.__class__.__name__} horizon={self.horizon} agents={self.agent_count}>"

    @abstractmethod
    def states(self, stage: int) -> StateSpace:
        """Enumerate X_k."""

    @abstractmethod
    def control_sets(self, stage: int, state: State) -> ControlSets:
        """Per-agent control lists U_k^1(x)..U_k^m(x)."""

    @abstractmethod
    def disturbance(self, stage: int, state: State, control: FactoredControl) -> Distribution:
        """Finite support of w with explicit probabilities, in stored order."""

    @abstractmethod
    def transition(self, stage: int, state: State, control: FactoredControl, noise: Any) -> State:
        """f_k(x, u, w)."""

    @abstractmethod
    def stage_cost(self, stage: int, state: State, control: FactoredControl, noise: Any) -> float:
        """g_k(x, u, w)."""

    @abstractmethod
    def terminal_cost(self, state: State) -> float:
        """g_N(x)."""

    def check_stage(self, stage: int) -> None:
        """Raise ModelDomainError unless 0 <= stage <= horizon."""
        if not 0 <= stage <= self.horizon:
            msg = f"Stage {stage} is outside 0..{self.horizon}"
            raise ModelDomainError(msg)

    def enumerate_joint_controls(self, stage: int, state: State) -> list[FactoredControl]:
        """Full joint control set U_k(x) in lexicographic order."""
        self.check_stage(stage)
        return joint_controls(self.control_sets(stage, state))

    def is_feasible(self, stage: int, state: State, control: FactoredControl) -> bool:
        """True when every component lies in its agent's control set at (stage, state)."""
        sets = self.control_sets(stage, state)
        return len(control) == len(sets) and all(c in s for c, s in zip(control, sets))

    def expected_stage_value(
        self,
        stage: int,
        state: State,
        control: FactoredControl,
        next_values: Mapping[State, float] | Callable[[State], float],
    ) -> float:
        """E{ g_k(x,u,w) + J_{k+1}(f_k(x,u,w)) } as an exact finite sum.

        next_values may be a StageValues table, any mapping, or a callable.
        """
        lookup = next_values if callable(next_values) else next_values.__getitem__
        total = 0.0
        for noise, prob in self.disturbance(stage, state, control):
            successor = self.transition(stage, state, control, noise)
            try:
                future = lookup(successor)
            except KeyError as exc:
                msg = f"No value for successor {successor!r} at stage {stage + 1}"
                raise EvaluationError(msg) from exc
            total += prob * (self.stage_cost(stage, state, control, noise) + future)
        return total

    def transition_sample(
        self,
        stage: int,
        state: State,
        control: FactoredControl,
        rng: np.random.Generator,
    ) -> tuple[State, float]:
        """Draw w by inverse CDF over the stored support order and step the system."""
        support = self.disturbance(stage, state, control)
        if len(support) == 1:
            noise = support[0][0]
        else:
            cdf = np.cumsum([prob for _, prob in support])
            pick = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
            noise = support[min(pick, len(support) - 1)][0]
        return (
            self.transition(stage, state, control, noise),
            self.stage_cost(stage, state, control, noise),
        )


class TabularFiniteModel(FiniteHorizonModel):
    """Finite-horizon model stored as explicit outcome tables.

    Each (stage, state, control) maps to a tuple of (probability, next state,
    cost) outcomes; the disturbance is the outcome index.
    """

    def __init__(
        self,
        horizon: int,
        agent_count: int,
        states: Sequence[Sequence[State]],
        controls: Mapping[tuple[int, State], ControlSets],
        outcomes: Mapping[tuple[int, State, FactoredControl], Sequence[tuple[float, State, float]]],
        terminal_costs: Mapping[State, float],
    ):
        self.horizon = horizon
        self.agent_count = agent_count
        self._spaces = [StateSpace(tuple(stage)) for stage in states]
        self._controls = {key: tuple(tuple(s) for s in sets) for key, sets in controls.items()}
        self._outcomes = {key: tuple(tuple(o) for o in rows) for key, rows in outcomes.items()}
        self._terminal = dict(terminal_costs)

    def states(self, stage: int) -> StateSpace:
        self.check_stage(stage)
        return self._spaces[stage]

    def control_sets(self, stage: int, state: State) -> ControlSets:
        try:
            return self._controls[(stage, state)]
        except KeyError as exc:
            msg = f"Unknown state {state!r} at stage {stage}"
            raise ModelDomainError(msg) from exc

    def _rows(self, stage: int, state: State, control: FactoredControl) -> tuple:
        try:
            return self._outcomes[(stage, state, tuple(control))]
        except KeyError as exc:
            msg = f"Control {control} is not feasible at state {state!r}, stage {stage}"
            raise ModelDomainError(msg) from exc

    def disturbance(self, stage: int, state: State, control: FactoredControl) -> Distribution:
        return tuple((i, row[0]) for i, row in enumerate(self._rows(stage, state, control)))

    def transition(self, stage: int, state: State, control: FactoredControl, noise: Any) -> State:
        return self._rows(stage, state, control)[noise][1]

    def stage_cost(self, stage: int, state: State, control: FactoredControl, noise: Any) -> float:
        return float(self._rows(stage, state, control)[noise][2])

    def terminal_cost(self, state: State) -> float:
        try:
            return float(self._terminal[state])
        except KeyError as exc:
            msg = f"No terminal cost for state {state!r}"
            raise ModelDomainError(msg) from exc
