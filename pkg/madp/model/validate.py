"""Model invariant checks.

validate_model never raises on a bad model; it collects every violated
invariant so the caller (usually the problem-file parser) can report them all.
"""

# stdlib
from __future__ import annotations

from typing import TYPE_CHECKING

# library
import numpy as np

# module
from madp.exceptions import InvalidModel
from madp.model.discounted import DiscountedMDP
from madp.static.core import PROBABILITY_TOLERANCE
from madp.structs import ValidationReport

if TYPE_CHECKING:
    from madp.model.finite import FiniteHorizonModel
    from madp.structs import ControlSets


def _check_control_sets(report: ValidationReport, where: str, sets: ControlSets, agent_count: int) -> None:
    if len(sets) != agent_count:
        report.add("agent count", where, f"{len(sets)} control sets for {agent_count} agents")
    for agent, options in enumerate(sets):
        if not options:
            report.add("non-empty control set", where, f"agent {agent} has no controls")
        elif len(set(options)) != len(options):
            report.add("duplicate-free control set", where, f"agent {agent} lists {options}")


def _check_row(report: ValidationReport, where: str, probs: np.ndarray, tol: float) -> None:
    if np.any(probs < 0):
        report.add("nonnegative probability", where, f"negative entry {probs.min()}")
    total = float(probs.sum())
    if abs(total - 1.0) > tol:
        report.add("row-stochastic", where, f"probabilities sum to {total}")


def _validate_discounted(mdp: DiscountedMDP, tol: float) -> ValidationReport:
    report = ValidationReport()
    if mdp.state_count < 1:
        report.add("state count", "model", "no states")
    if not 0 < mdp.discount < 1:
        report.add("discount range", "model", f"discount {mdp.discount} is not in (0, 1)")
    for state, block in enumerate(mdp.blocks):
        _check_control_sets(report, f"x={state}", block.control_sets, mdp.agent_count)
        for row, control in enumerate(block.controls):
            _check_row(report, f"(x={state}, u={control})", block.probs[row], tol)
        if not np.all(np.isfinite(block.costs)):
            report.add("finite cost", f"x={state}", "cost table holds non-finite entries")
    return report


def _validate_finite(model: FiniteHorizonModel, tol: float) -> ValidationReport:
    report = ValidationReport()
    if model.horizon < 0:
        report.add("horizon", "model", f"horizon {model.horizon} is negative")
        return report
    for stage in range(model.horizon):
        successors = model.states(stage + 1)
        for state in model.states(stage):
            where = f"(k={stage}, x={state!r})"
            sets = model.control_sets(stage, state)
            _check_control_sets(report, where, sets, model.agent_count)
            if any(not options for options in sets):
                continue
            for control in model.enumerate_joint_controls(stage, state):
                support = model.disturbance(stage, state, control)
                spot = f"(k={stage}, x={state!r}, u={control})"
                _check_row(report, spot, np.array([prob for _, prob in support]), tol)
                for noise, prob in support:
                    if prob > 0 and model.transition(stage, state, control, noise) not in successors:
                        report.add("transition closure", spot, f"w={noise!r} leaves X_{stage + 1}")
    return report


def validate_model(model: FiniteHorizonModel | DiscountedMDP, tol: float = PROBABILITY_TOLERANCE) -> ValidationReport:
    """List every violated model invariant; an empty report means valid."""
    if isinstance(model, DiscountedMDP):
        return _validate_discounted(model, tol)
    return _validate_finite(model, tol)


def require_valid(model: FiniteHorizonModel | DiscountedMDP) -> None:
    """Raise InvalidModel if the model breaks any invariant."""
    report = validate_model(model)
    if not report.ok:
        raise InvalidModel(report)
