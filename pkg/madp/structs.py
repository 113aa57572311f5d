"""Contains dataclasses to hold models' shared data and algorithm results."""

# stdlib
from __future__ import annotations

import threading
from collections.abc import Callable, Hashable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Protocol

# library
import numpy as np

# module
from madp.exceptions import EvaluationError, ModelDomainError

try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

State = Hashable
FactoredControl = tuple[Any, ...]
ControlSets = tuple[tuple[Any, ...], ...]
StationaryPolicy = tuple[FactoredControl, ...]


class FinitePolicy(Protocol):
    """Anything that maps a stage and state to a joint control."""

    def __call__(self, stage: int, state: State) -> FactoredControl: ...


@dataclass
class TabularPolicy:
    """Finite-horizon policy stored as a (stage, state) lookup table."""

    table: dict[tuple[int, State], FactoredControl] = field(default_factory=dict)

    def __call__(self, stage: int, state: State) -> FactoredControl:
        try:
            return self.table[(stage, state)]
        except KeyError as exc:
            msg = f"No control tabulated for state {state!r} at stage {stage}"
            raise ModelDomainError(msg) from exc

    def __len__(self) -> int:
        return len(self.table)


@dataclass
class AgentOrder:
    """Order in which agents pick their control components.

    A fixed permutation is used at every stage unless a per-stage callable is
    supplied, in which case `at` defers to it.
    """

    sequence: tuple[int, ...]
    _by_stage: Callable[[int], Sequence[int]] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.sequence = tuple(self.sequence)
        self._check(self.sequence)

    @staticmethod
    def _check(sequence: Sequence[int]) -> None:
        if sorted(sequence) != list(range(len(sequence))):
            msg = f"{tuple(sequence)} is not a permutation of the agents"
            raise ValueError(msg)

    @classmethod
    def identity(cls, agent_count: int) -> Self:
        """Agents in index order 0..m-1."""
        return cls(tuple(range(agent_count)))

    @classmethod
    def from_string(cls, text: str) -> Self:
        """Parse a comma separated permutation like '1,0'."""
        try:
            return cls(tuple(int(item) for item in text.split(",")))
        except ValueError as exc:
            msg = f"Could not read agent order from '{text}'"
            raise ValueError(msg) from exc

    @classmethod
    def from_callable(cls, agent_count: int, by_stage: Callable[[int], Sequence[int]]) -> Self:
        """Order that may change from one stage (or PI iteration) to the next."""
        return cls(tuple(range(agent_count)), by_stage)

    @staticmethod
    def all_orders(agent_count: int) -> Iterator[AgentOrder]:
        """Every permutation of the agents."""
        for perm in permutations(range(agent_count)):
            yield AgentOrder(perm)

    def at(self, stage: int) -> tuple[int, ...]:
        if self._by_stage is None:
            return self.sequence
        sequence = tuple(self._by_stage(stage))
        self._check(sequence)
        if len(sequence) != len(self.sequence):
            msg = f"Order {sequence} at stage {stage} has the wrong number of agents"
            raise ValueError(msg)
        return sequence

    def __len__(self) -> int:
        return len(self.sequence)


class EvalCounter:
    """Monotone Q-factor evaluation counter, safe for concurrent increments."""

    def __init__(self) -> None:
        self._value = 0
        self._lock = threading.Lock()

    def increment(self, amount: int = 1) -> None:
        with self._lock:
            self._value += amount

    @property
    def value(self) -> int:
        return self._value

    def __repr__(self) -> str:
        return f"<madp.EvalCounter value={self._value}>"


@dataclass
class Violation:
    rule: str
    location: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule} at {self.location}: {self.detail}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def add(self, rule: str, location: str, detail: str) -> None:
        self.violations.append(Violation(rule, location, detail))

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)


@dataclass
class StateSpace:
    """Finite enumeration of one stage's states with dense integer indices."""

    states: tuple[State, ...]
    index: dict[State, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.states = tuple(self.states)
        self.index = {state: i for i, state in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[State]:
        yield from self.states

    def __contains__(self, state: object) -> bool:
        return state in self.index

    def encode(self, state: State) -> int:
        try:
            return self.index[state]
        except KeyError as exc:
            msg = f"{state!r} is not in this state space"
            raise ModelDomainError(msg) from exc

    def decode(self, index: int) -> State:
        return self.states[index]


@dataclass
class StageValues:
    """Cost-to-go over one stage's state space."""

    space: StateSpace
    values: np.ndarray

    @classmethod
    def constant(cls, space: StateSpace, value: float = 0.0) -> Self:
        return cls(space, np.full(len(space), value, dtype=float))

    def __getitem__(self, state: State) -> float:
        try:
            return float(self.values[self.space.index[state]])
        except KeyError as exc:
            msg = f"No value stored for successor {state!r}"
            raise EvaluationError(msg) from exc

    def __len__(self) -> int:
        return len(self.space)

    def items(self) -> Iterator[tuple[State, float]]:
        for state, value in zip(self.space.states, self.values):
            yield state, float(value)


@dataclass
class FiniteValueFunction:
    """Per-stage value tables J_0..J_N."""

    stages: list[StageValues]

    def __getitem__(self, stage: int) -> StageValues:
        return self.stages[stage]

    def __len__(self) -> int:
        return len(self.stages)

    def value(self, stage: int, state: State) -> float:
        return self.stages[stage][state]

    def dominated_by(self, other: FiniteValueFunction, tol: float) -> bool:
        """True if every entry is at most the other's plus tol."""
        return all(np.all(mine.values <= theirs.values + tol) for mine, theirs in zip(self.stages, other.stages))


@dataclass
class QFactorTable:
    values: dict[tuple[int, FactoredControl], float]
    source: np.ndarray

    def __getitem__(self, key: tuple[int, FactoredControl]) -> float:
        return self.values[key]


@dataclass
class TrajectoryStep:
    stage: int
    state: State
    control: FactoredControl
    cost: float


@dataclass
class Trajectory:
    steps: list[TrajectoryStep]
    final_state: State
    terminal_cost: float

    @property
    def total_cost(self) -> float:
        return sum(step.cost for step in self.steps) + self.terminal_cost

    @property
    def states(self) -> list[State]:
        return [step.state for step in self.steps] + [self.final_state]

    @property
    def controls(self) -> list[FactoredControl]:
        return [step.control for step in self.steps]


@dataclass
class PiIteration:
    index: int
    policy: StationaryPolicy
    values: np.ndarray
    q_evaluations: int


@dataclass
class PiTrace:
    iterations: list[PiIteration]
    converged: bool

    @property
    def policy(self) -> StationaryPolicy:
        return self.iterations[-1].policy

    @property
    def values(self) -> np.ndarray:
        return self.iterations[-1].values

    @property
    def termination(self) -> str:
        return "converged" if self.converged else "iteration cap"

    @property
    def q_evaluations(self) -> int:
        return sum(item.q_evaluations for item in self.iterations)

    def __len__(self) -> int:
        return len(self.iterations)

    def decreases(self) -> list[float]:
        """Sup-norm decrease of J between consecutive iterations."""
        return [
            float(np.max(np.abs(prev.values - curr.values)))
            for prev, curr in zip(self.iterations, self.iterations[1:])
        ]


@dataclass
class AgentViolation:
    """A single agent that can lower the Q-factor by deviating alone."""

    state: int
    agent: int
    current: Any
    better: Any
    current_q: float
    better_q: float


@dataclass
class AgentOptimality:
    optimal: bool
    violations: list[AgentViolation]

    def __bool__(self) -> bool:
        return self.optimal


@dataclass
class ReportRow:
    method: str
    state: str
    value: float
    q_evals: int
    iterations: int
    seed: int


@dataclass
class ExperimentReport:
    method: str
    seed: int
    config: dict[str, Any]
    rows: list[ReportRow] = field(default_factory=list)
    policies: dict[str, str] = field(default_factory=dict)
    traces: dict[str, list[list[float]]] = field(default_factory=dict)
    elapsed: float = 0.0
