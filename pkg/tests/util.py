"""Testing utilities."""

# stdlib
from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

# library
import numpy as np

# module
from madp.model.finite import TabularFiniteModel

if TYPE_CHECKING:
    from madp.structs import FactoredControl, State

DATA = Path(__file__).parent / "harness" / "data"


def problem_path(name: str) -> Path:
    """Path of a problem file fixture."""
    return DATA / f"{name}.json"


def write_problem(directory: Path, document: dict, name: str = "problem") -> Path:
    """Write a problem document to a temporary directory."""
    path = directory / f"{name}.json"
    path.write_text(json.dumps(document, indent=2))
    return path


class FixedPolicy:
    """Apply the same joint control everywhere."""

    def __init__(self, control: FactoredControl):
        self.control = tuple(control)

    def __call__(self, stage: int, state: State) -> FactoredControl:  # noqa: ARG002
        return self.control


def four_state_model(horizon: int = 2) -> TabularFiniteModel:
    """Single-agent stochastic model on states 0..3 with controls 'a' and 'b'.

    Every first step is random with distinct outcome costs, so sampled
    trajectory costs always have positive variance.
    """
    states = [tuple(range(4))] * (horizon + 1)
    controls = {(k, x): (("a", "b"),) for k in range(horizon) for x in range(4)}
    outcomes: dict[tuple[int, Any, FactoredControl], tuple] = {}
    for k in range(horizon):
        for x in range(4):
            outcomes[(k, x, ("a",))] = ((0.5, (x + 1) % 4, 1.0), (0.5, (x + 2) % 4, 3.0))
            outcomes[(k, x, ("b",))] = ((0.2, x, 0.0), (0.8, (x + 3) % 4, 2.0))
    terminal = {x: float(x) for x in range(4)}
    return TabularFiniteModel(horizon, 1, states, controls, outcomes, terminal)


def assert_sup_close(first: np.ndarray, second: np.ndarray, tol: float) -> None:
    """Sup-norm distance between two value vectors is within tol."""
    assert first.shape == second.shape
    assert float(np.max(np.abs(first - second))) <= tol
