"""Single-state, two-agent problems with binary controls.

coordination-failure: agents gain only by picking different controls, so
letting each agent improve alone against the base policy can make things
worse. agent-by-agent-trap: both agents switching together is optimal while
neither gains by switching alone, so (0, 0) is agent-by-agent optimal but not
optimal.
"""

# stdlib
from __future__ import annotations

# library
import numpy as np

# module
from madp.load_utils import LazyLoad
from madp.model.discounted import DiscountedMDP
from madp.model.finite import TabularFiniteModel, joint_controls

COST_TABLES = LazyLoad("counterexamples")

KINDS = ("coordination-failure", "agent-by-agent-trap")

STATE = 0


def _table(kind: str) -> tuple[tuple[tuple[int, ...], ...], dict[tuple[int, ...], float]]:
    if kind not in KINDS:
        msg = f"'{kind}' is not a known counterexample. Expected {KINDS}"
        raise ValueError(msg)
    data = COST_TABLES[kind]
    controls = tuple(tuple(options) for options in data["controls"])
    costs = {tuple(row[:-1]): float(row[-1]) for row in data["costs"]}
    return controls, costs


def build_static_counterexample(kind: str, discount: float = 0.9) -> DiscountedMDP:
    """Discounted rendering: the single state loops back to itself."""
    controls, costs = _table(kind)
    ordered = joint_controls(controls)
    probs = np.ones((len(ordered), 1))
    table = np.array([[costs[u]] for u in ordered])
    return DiscountedMDP(2, [controls], [probs], [table], discount)


def finite_static_counterexample(kind: str, horizon: int) -> TabularFiniteModel:
    """N-stage rendering with zero terminal cost."""
    controls, costs = _table(kind)
    outcomes = {
        (stage, STATE, u): ((1.0, STATE, costs[u]),) for stage in range(horizon) for u in joint_controls(controls)
    }
    return TabularFiniteModel(
        horizon=horizon,
        agent_count=2,
        states=[(STATE,)] * (horizon + 1),
        controls={(stage, STATE): controls for stage in range(horizon)},
        outcomes=outcomes,
        terminal_costs={STATE: 0.0},
    )
