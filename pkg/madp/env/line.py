"""Two spiders chasing two fixed flies on the integer points of a line.

Spiders must move one unit left or right every stage (only inward at the
ends). A fly is captured when a spider stands on it at the end of a stage, and
each stage costs 1 until both flies are captured, so cost equals capture time.
"""

# stdlib
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING, Any

# module
from madp.model.finite import FiniteHorizonModel
from madp.static.core import LINE_MOVES
from madp.structs import StateSpace

if TYPE_CHECKING:
    from collections.abc import Sequence

    from madp.model.finite import Distribution
    from madp.structs import ControlSets, FactoredControl, State

LineState = tuple[int, int, bool, bool]

_DETERMINISTIC: Distribution = ((None, 1.0),)


@dataclass
class LinePursuitParams:
    length: int
    spiders: tuple[int, int]
    flies: tuple[int, int]
    horizon: int | None = None

    def __post_init__(self) -> None:
        self.spiders = tuple(self.spiders)  # type: ignore[assignment]
        self.flies = tuple(self.flies)  # type: ignore[assignment]
        if self.length < 1:
            msg = "Line length must be positive"
            raise ValueError(msg)
        if len(self.spiders) != 2 or len(self.flies) != 2:
            msg = "The line problem has exactly two spiders and two flies"
            raise ValueError(msg)
        for position in (*self.spiders, *self.flies):
            if not 0 <= position <= self.length:
                msg = f"Position {position} is outside 0..{self.length}"
                raise ValueError(msg)
        if self.flies[0] == self.flies[1]:
            msg = "Flies must sit at different positions"
            raise ValueError(msg)
        if self.horizon is None:
            self.horizon = 2 * self.length + 2


def _alive_after(spiders: Sequence[int], flies: Sequence[int], alive: Sequence[bool]) -> tuple[bool, bool]:
    return tuple(a and fly not in spiders for fly, a in zip(flies, alive))  # type: ignore[return-value]


def optimal_capture_time(spiders: Sequence[int], flies: Sequence[int], alive: Sequence[bool] = (True, True)) -> int:
    """Minimum over fly-to-spider assignments of the slowest spider's tour.

    A spider assigned both flies visits the nearer one first.
    """
    targets = [fly for fly, a in zip(flies, alive) if a and fly not in spiders]
    best = None
    for owners in product(range(len(spiders)), repeat=len(targets)):
        slowest = 0
        for spider, position in enumerate(spiders):
            mine = [fly for fly, owner in zip(targets, owners) if owner == spider]
            if len(mine) == 1:
                slowest = max(slowest, abs(position - mine[0]))
            elif len(mine) == 2:
                span = abs(mine[0] - mine[1])
                slowest = max(slowest, min(abs(position - fly) for fly in mine) + span)
        best = slowest if best is None else min(best, slowest)
    return best or 0


class LinePursuit(FiniteHorizonModel):
    """Deterministic finite-horizon model of the line spiders-and-flies problem."""

    def __init__(self, params: LinePursuitParams):
        self.params = params
        self.horizon = int(params.horizon)  # type: ignore[arg-type]
        self.agent_count = 2
        self._space: StateSpace | None = None

    @property
    def flies(self) -> tuple[int, int]:
        return self.params.flies

    def initial_state(self) -> LineState:
        """Configured start with co-located flies already captured."""
        spiders = self.params.spiders
        return (*spiders, *_alive_after(spiders, self.flies, (True, True)))  # type: ignore[return-value]

    def states(self, stage: int) -> StateSpace:
        self.check_stage(stage)
        if self._space is None:
            positions = range(self.params.length + 1)
            space = []
            for first, second in product(positions, repeat=2):
                for alive in product((True, False), repeat=2):
                    if _alive_after((first, second), self.flies, alive) == alive:
                        space.append((first, second, *alive))
            self._space = StateSpace(tuple(space))
        return self._space

    def control_sets(self, stage: int, state: State) -> ControlSets:  # noqa: ARG002
        return tuple(self._moves(position) for position in state[:2])  # type: ignore[index]

    def _moves(self, position: int) -> tuple[str, ...]:
        return tuple(
            name for name, step in LINE_MOVES.items() if 0 <= position + step <= self.params.length
        )

    def disturbance(self, stage: int, state: State, control: FactoredControl) -> Distribution:  # noqa: ARG002
        return _DETERMINISTIC

    def transition(self, stage: int, state: State, control: FactoredControl, noise: Any) -> State:  # noqa: ARG002
        first, second, *alive = state  # type: ignore[misc]
        spiders = (first + LINE_MOVES[control[0]], second + LINE_MOVES[control[1]])
        return (*spiders, *_alive_after(spiders, self.flies, alive))

    def stage_cost(self, stage: int, state: State, control: FactoredControl, noise: Any) -> float:  # noqa: ARG002
        return 1.0 if any(state[2:]) else 0.0  # type: ignore[index]

    def terminal_cost(self, state: State) -> float:  # noqa: ARG002
        return 0.0


class LineGreedyPolicy:
    """Each spider steps towards its nearest live fly, preferring the right fly on ties."""

    def __init__(self, model: LinePursuit):
        self.model = model

    def _move(self, position: int, live: list[int], options: tuple[str, ...]) -> str:
        if not live:
            return options[0]
        nearest = min(abs(position - fly) for fly in live)
        target = max(fly for fly in live if abs(position - fly) == nearest)
        return "right" if target > position else "left"

    def __call__(self, stage: int, state: State) -> FactoredControl:
        first, second, *alive = state  # type: ignore[misc]
        live = [fly for fly, a in zip(self.model.flies, alive) if a]
        sets = self.model.control_sets(stage, state)
        return tuple(self._move(position, live, options) for position, options in zip((first, second), sets))


def build_line_spiders_flies(params: LinePursuitParams) -> LinePursuit:
    """Two spiders and two flies on a line of the given length."""
    return LinePursuit(params)
