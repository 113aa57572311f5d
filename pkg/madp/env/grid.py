"""m spiders and one fly on a rectangular grid.

Each spider moves to a neighbouring cell or stays. After the spiders move the
fly moves according to a position-dependent distribution, and the fly is
captured when a spider shares its cell at the end of the stage (passing
through each other does not count). Every stage before capture costs
`move_cost`. Once captured the system sits in the absorbing CAPTURED state.
"""

# stdlib
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Any

# module
from madp.model.finite import FiniteHorizonModel
from madp.static.core import GRID_MOVES, PROBABILITY_TOLERANCE
from madp.structs import StateSpace

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from madp.model.finite import Distribution
    from madp.structs import ControlSets, FactoredControl, State

Cell = tuple[int, int]
GridState = tuple[tuple[Cell, ...], Cell | None, bool]

CAPTURED: GridState = ((), None, True)

_STILL: Distribution = (("stay", 1.0),)


def _step(cell: Cell, move: str) -> Cell:
    d_row, d_col = GRID_MOVES[move]
    return (cell[0] + d_row, cell[1] + d_col)


def manhattan(first: Cell, second: Cell) -> int:
    """L1 distance between two cells."""
    return abs(first[0] - second[0]) + abs(first[1] - second[1])


@dataclass
class GridPursuitParams:
    """Grid size, start positions, and the fly's motion law.

    In cells without a fly_motion entry the fly stays put with probability
    fly_stay_probability and otherwise moves uniformly to a neighbouring cell.
    """

    width: int
    height: int
    spiders: tuple[Cell, ...]
    fly: Cell
    horizon: int
    fly_stay_probability: float = 1.0
    fly_motion: Mapping[Cell, Sequence[tuple[str, float]]] | None = field(default=None, repr=False)
    move_cost: float = 1.0

    def __post_init__(self) -> None:
        self.spiders = tuple(tuple(cell) for cell in self.spiders)  # type: ignore[misc]
        self.fly = tuple(self.fly)  # type: ignore[assignment]
        if self.width < 1 or self.height < 1:
            msg = "Grid dimensions must be positive"
            raise ValueError(msg)
        if not self.spiders:
            msg = "At least one spider is required"
            raise ValueError(msg)
        for cell in (*self.spiders, self.fly):
            if not self.on_grid(cell):
                msg = f"Cell {cell} is outside the {self.height}x{self.width} grid"
                raise ValueError(msg)
        if not 0 <= self.fly_stay_probability <= 1:
            msg = "Fly stay probability must be within [0, 1]"
            raise ValueError(msg)
        if self.horizon < 0:
            msg = "Horizon cannot be negative"
            raise ValueError(msg)
        for cell, moves in (self.fly_motion or {}).items():
            self._check_motion(tuple(cell), moves)

    def _check_motion(self, cell: Cell, moves: Sequence[tuple[str, float]]) -> None:
        if not self.on_grid(cell):
            msg = f"Fly motion given for cell {cell} outside the {self.height}x{self.width} grid"
            raise ValueError(msg)
        for move, prob in moves:
            if move not in GRID_MOVES or not self.on_grid(_step(cell, move)):
                msg = f"Fly move '{move}' leaves the grid from {cell}"
                raise ValueError(msg)
            if prob < 0:
                msg = f"Fly move '{move}' at {cell} has negative probability"
                raise ValueError(msg)
        if abs(sum(prob for _, prob in moves) - 1) > PROBABILITY_TOLERANCE:
            msg = f"Fly motion at {cell} does not sum to one"
            raise ValueError(msg)

    @property
    def spider_count(self) -> int:
        return len(self.spiders)

    def on_grid(self, cell: Cell) -> bool:
        return 0 <= cell[0] < self.height and 0 <= cell[1] < self.width


class GridPursuit(FiniteHorizonModel):
    """Spiders-and-fly model; the disturbance is the fly's move."""

    def __init__(self, params: GridPursuitParams):
        self.params = params
        self.horizon = params.horizon
        self.agent_count = params.spider_count
        self._space: StateSpace | None = None

    def initial_state(self) -> GridState:
        return self._settle(self.params.spiders, self.params.fly)

    @staticmethod
    def _settle(spiders: tuple[Cell, ...], fly: Cell) -> GridState:
        if fly in spiders:
            return CAPTURED
        return (spiders, fly, False)

    def moves(self, cell: Cell) -> tuple[str, ...]:
        """Feasible moves from a cell in preference order."""
        return tuple(move for move in GRID_MOVES if self.params.on_grid(_step(cell, move)))

    def states(self, stage: int) -> StateSpace:
        self.check_stage(stage)
        if self._space is None:
            cells = list(product(range(self.params.height), range(self.params.width)))
            space: list[GridState] = [CAPTURED]
            for spiders in product(cells, repeat=self.agent_count):
                space.extend((spiders, fly, False) for fly in cells if fly not in spiders)
            self._space = StateSpace(tuple(space))
        return self._space

    def control_sets(self, stage: int, state: State) -> ControlSets:  # noqa: ARG002
        if state == CAPTURED:
            return (("stay",),) * self.agent_count
        return tuple(self.moves(cell) for cell in state[0])  # type: ignore[index]

    def disturbance(self, stage: int, state: State, control: FactoredControl) -> Distribution:  # noqa: ARG002
        if state == CAPTURED:
            return _STILL
        fly = state[1]  # type: ignore[index]
        if self.params.fly_motion and fly in self.params.fly_motion:
            return tuple((move, float(prob)) for move, prob in self.params.fly_motion[fly])
        stay = self.params.fly_stay_probability
        away = [move for move in self.moves(fly) if move != "stay"]
        if stay >= 1 or not away:
            return _STILL
        share = (1 - stay) / len(away)
        support = [(move, share) for move in away]
        if stay > 0:
            support.append(("stay", stay))
        return tuple(support)

    def transition(self, stage: int, state: State, control: FactoredControl, noise: Any) -> State:  # noqa: ARG002
        if state == CAPTURED:
            return CAPTURED
        spiders = tuple(_step(cell, move) for cell, move in zip(state[0], control))  # type: ignore[index]
        return self._settle(spiders, _step(state[1], noise))  # type: ignore[index]

    def stage_cost(self, stage: int, state: State, control: FactoredControl, noise: Any) -> float:  # noqa: ARG002
        return 0.0 if state == CAPTURED else self.params.move_cost

    def terminal_cost(self, state: State) -> float:  # noqa: ARG002
        return 0.0


class GridGreedyPolicy:
    """Each spider takes the move that most reduces its Manhattan distance to the fly.

    Ties follow the move preference order up, down, left, right, stay.
    """

    def __init__(self, model: GridPursuit):
        self.model = model

    def __call__(self, stage: int, state: State) -> FactoredControl:  # noqa: ARG002
        if state == CAPTURED:
            return ("stay",) * self.model.agent_count
        spiders, fly, _ = state  # type: ignore[misc]
        return tuple(
            min(self.model.moves(cell), key=lambda move, cell=cell: manhattan(_step(cell, move), fly))
            for cell in spiders
        )


def build_spiders_fly_grid(params: GridPursuitParams) -> GridPursuit:
    """Grid pursuit model for validated parameters."""
    return GridPursuit(params)
