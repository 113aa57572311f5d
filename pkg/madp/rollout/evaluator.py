"""Q-factor evaluation strategies for rollout.

An evaluator answers "what does it cost to apply u at (k, x) and follow the
base policy afterwards". The exact evaluator memoizes the base policy's
cost-to-go over reachable states only, so it also works on models whose full
state space is too large to enumerate. The Monte Carlo evaluator averages
simulated trajectories, optionally truncated with a terminal approximation.
Both count every Q-factor requested.
"""

# stdlib
from __future__ import annotations

import zlib
from abc import ABCMeta, abstractmethod
from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.structs import EvalCounter

if TYPE_CHECKING:
    from collections.abc import Callable

    from madp.model.finite import FiniteHorizonModel
    from madp.structs import FactoredControl, FinitePolicy, State


def _stable_key(item: Any) -> int:
    """Process-independent integer key for a hashable value."""
    return zlib.crc32(repr(item).encode("utf8"))


def _zero(_: State) -> float:
    return 0.0


class QEvaluator(metaclass=ABCMeta):
    """Base class for Q-factor evaluation with an evaluation counter."""

    mode: str
    counter: EvalCounter

    def __init__(self) -> None:
        self.counter = EvalCounter()

    def __repr__(self) -> str:
        return f"<madp.{self.__class__.__name__} evaluations={self.counter.value}>"

    @property
    def evaluations(self) -> int:
        return self.counter.value

    def q_value(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
    ) -> float:
        """Q_{k,pi}(x, u), counted once per call."""
        self.counter.increment()
        return self._q_value(model, stage, state, control, policy)

    @abstractmethod
    def _q_value(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
    ) -> float:
        pass


class ExactEvaluator(QEvaluator):
    """Exact expectation over disturbances, base cost-to-go memoized per (stage, state)."""

    mode = "exact"

    def __init__(self) -> None:
        super().__init__()
        self._bound: tuple[FiniteHorizonModel, FinitePolicy] | None = None
        self._cache: dict[tuple[int, State], float] = {}

    def _bind(self, model: FiniteHorizonModel, policy: FinitePolicy) -> None:
        if self._bound is None or self._bound[0] is not model or self._bound[1] is not policy:
            self._bound = (model, policy)
            self._cache = {}

    def base_cost(self, model: FiniteHorizonModel, policy: FinitePolicy, stage: int, state: State) -> float:
        """J_{k,pi}(x) of the base policy."""
        self._bind(model, policy)
        return self._cost_to_go(model, policy, stage, state)

    def _cost_to_go(self, model: FiniteHorizonModel, policy: FinitePolicy, stage: int, state: State) -> float:
        """Post-order walk of the reachable successors on an explicit stack."""
        cache = self._cache
        controls: dict[tuple[int, State], FactoredControl] = {}
        stack = [(stage, state)]
        while stack:
            key = stack[-1]
            if key in cache:
                stack.pop()
                continue
            k, x = key
            if k == model.horizon:
                cache[key] = model.terminal_cost(x)
                stack.pop()
                continue
            if key not in controls:
                controls[key] = policy(k, x)
            control = controls[key]
            successors = [model.transition(k, x, control, noise) for noise, _ in model.disturbance(k, x, control)]
            pending = [(k + 1, successor) for successor in successors if (k + 1, successor) not in cache]
            if pending:
                stack.extend(pending)
                continue
            cache[key] = model.expected_stage_value(k, x, control, lambda nxt, k=k: cache[(k + 1, nxt)])
            stack.pop()
        return cache[(stage, state)]

    def _q_value(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
    ) -> float:
        self._bind(model, policy)
        return model.expected_stage_value(
            stage,
            state,
            control,
            lambda nxt: self._cost_to_go(model, policy, stage + 1, nxt),
        )


class MonteCarloEvaluator(QEvaluator):
    """Sample-mean Q-factors from simulated base-policy trajectories.

    truncation limits how many base-policy stages follow the first control;
    the state where simulation stops is then charged terminal_approximation.
    Trajectory seeds derive from (seed, stage, state, trajectory index), plus
    the control when common random numbers are disabled.
    """

    mode = "monte-carlo"

    def __init__(
        self,
        trajectory_count: int,
        truncation: int | None = None,
        terminal_approximation: Callable[[State], float] | None = None,
        seed: int = 0,
        *,
        common_random_numbers: bool = True,
    ):
        if trajectory_count < 1:
            msg = "At least one trajectory is required"
            raise ValueError(msg)
        if truncation is not None and truncation < 0:
            msg = "Truncation length cannot be negative"
            raise ValueError(msg)
        super().__init__()
        self.trajectory_count = trajectory_count
        self.truncation = truncation
        self.terminal_approximation = terminal_approximation or _zero
        self.seed = seed
        self.common_random_numbers = common_random_numbers

    def _seed_sequence(self, stage: int, state: State, control: FactoredControl, index: int) -> np.random.SeedSequence:
        entropy = [self.seed, stage, _stable_key(state)]
        if not self.common_random_numbers:
            entropy.append(_stable_key(control))
        entropy.append(index)
        return np.random.SeedSequence(entropy)

    def simulate(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
        rng: np.random.Generator,
    ) -> float:
        """Cost of one trajectory: u at (k, x), then the base policy."""
        current, total = model.transition_sample(stage, state, control, rng)
        end = model.horizon
        if self.truncation is not None:
            end = min(end, stage + 1 + self.truncation)
        step = stage + 1
        while step < end:
            current, cost = model.transition_sample(step, current, policy(step, current), rng)
            total += cost
            step += 1
        if step == model.horizon:
            return total + model.terminal_cost(current)
        return total + self.terminal_approximation(current)

    def samples(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
    ) -> np.ndarray:
        """Per-trajectory costs, without touching the evaluation counter."""
        out = np.empty(self.trajectory_count)
        for index in range(self.trajectory_count):
            rng = np.random.default_rng(self._seed_sequence(stage, state, control, index))
            out[index] = self.simulate(model, stage, state, control, policy, rng)
        return out

    def _q_value(
        self,
        model: FiniteHorizonModel,
        stage: int,
        state: State,
        control: FactoredControl,
        policy: FinitePolicy,
    ) -> float:
        return float(self.samples(model, stage, state, control, policy).mean())
