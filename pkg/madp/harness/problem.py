"""Problem-file ingestion and emission.

A problem file is a JSON document holding exactly one of two blocks.

`builtin` names an environment and its parameters:

    {"builtin": {"name": "line-pursuit", "params": {"length": 10, "spiders": [5, 6], "flies": [0, 10]}}}

`tabular` lists states, per-state agent control sets, and transition entries
with joint controls written as component lists in agent order. A `discount`
makes it a discounted MDP; `horizon` plus `terminal_costs` makes it a
stage-invariant finite-horizon model.

    {"tabular": {
        "agents": 2,
        "states": [0],
        "controls": {"0": [[0, 1], [0, 1]]},
        "transitions": [{"state": 0, "control": [0, 0], "next": 0, "probability": 1.0, "cost": 1.0}],
        "discount": 0.9
    }}
"""

# stdlib
from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

# module
from madp.env.counterexample import KINDS, build_static_counterexample, finite_static_counterexample
from madp.env.grid import GridPursuitParams, build_spiders_fly_grid
from madp.env.line import LinePursuitParams, build_line_spiders_flies
from madp.exceptions import ModelDomainError, ProblemFileError
from madp.model.discounted import DiscountedMDP
from madp.model.finite import TabularFiniteModel, joint_controls
from madp.model.validate import require_valid

if TYPE_CHECKING:
    from collections.abc import Callable

    from madp.model.finite import FiniteHorizonModel
    from madp.structs import ControlSets, State


def _require(block: dict, key: str, where: str) -> Any:
    try:
        return block[key]
    except (KeyError, TypeError) as exc:
        msg = f"missing '{key}'"
        raise ProblemFileError(msg, path=where) from exc


def _number(block: dict, key: str, where: str, default: float | None = None) -> float:
    value = _require(block, key, where) if default is None else block.get(key, default)
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        msg = f"'{key}' must be a number, not {value!r}"
        raise ProblemFileError(msg, path=where) from exc


def _line(params: dict) -> FiniteHorizonModel:
    return build_line_spiders_flies(LinePursuitParams(**params))


def _grid(params: dict) -> FiniteHorizonModel:
    params = dict(params)
    if motion := params.pop("fly_motion", None):
        params["fly_motion"] = {
            tuple(entry["cell"]): [(move, float(prob)) for move, prob in entry["moves"]] for entry in motion
        }
    return build_spiders_fly_grid(GridPursuitParams(**params))


def _counterexample(kind: str) -> Callable[[dict], FiniteHorizonModel | DiscountedMDP]:
    def build(params: dict) -> FiniteHorizonModel | DiscountedMDP:
        if "horizon" in params:
            horizon = int(params["horizon"])
            if horizon < 0:
                msg = "Horizon cannot be negative"
                raise ValueError(msg)
            return finite_static_counterexample(kind, horizon)
        discount = float(params.get("discount", 0.9))
        if not 0 < discount < 1:
            msg = f"Discount {discount} is not in (0, 1)"
            raise ValueError(msg)
        return build_static_counterexample(kind, discount)

    return build


BUILTINS: dict[str, Callable[[dict], FiniteHorizonModel | DiscountedMDP]] = {
    "line-pursuit": _line,
    "grid-pursuit": _grid,
    **{kind: _counterexample(kind) for kind in KINDS},
}


def _builtin(block: dict) -> FiniteHorizonModel | DiscountedMDP:
    name = _require(block, "name", "builtin")
    if name not in BUILTINS:
        msg = f"Unknown builtin '{name}'. Expected one of {tuple(BUILTINS)}"
        raise ProblemFileError(msg, path="builtin.name")
    params = block.get("params", {})
    try:
        return BUILTINS[name](params)
    except (KeyError, TypeError, ValueError) as exc:
        msg = f"Bad parameters for '{name}': {exc}"
        raise ProblemFileError(msg, path="builtin.params") from exc


def _label(value: Any) -> Any:
    """JSON arrays become tuples so labels stay hashable."""
    if isinstance(value, list):
        return tuple(_label(item) for item in value)
    return value


def _tabular(block: dict) -> FiniteHorizonModel | DiscountedMDP:
    agents = int(_number(block, "agents", "tabular"))
    states = [_label(state) for state in _require(block, "states", "tabular")]
    by_key = {str(state): state for state in states}
    raw_controls = _require(block, "controls", "tabular")
    if not isinstance(raw_controls, dict):
        msg = "Tabular controls must map state labels to control sets"
        raise ProblemFileError(msg, path="tabular.controls")
    controls = {}
    for key, sets in raw_controls.items():
        if key not in by_key:
            msg = f"Control sets given for unknown state '{key}'"
            raise ProblemFileError(msg, path="tabular.controls")
        controls[by_key[key]] = tuple(tuple(_label(v) for v in options) for options in sets)
    for state in states:
        if state not in controls:
            msg = f"State {state!r} has no control sets"
            raise ProblemFileError(msg, path="tabular.controls")
    entries = []
    for i, entry in enumerate(_require(block, "transitions", "tabular")):
        where = f"tabular.transitions[{i}]"
        x = _label(_require(entry, "state", where))
        u = tuple(_label(v) for v in _require(entry, "control", where))
        y = _label(_require(entry, "next", where))
        if x not in controls or y not in controls:
            msg = f"Transition {x!r} -> {y!r} names an unknown state {y if x in controls else x!r}"
            raise ProblemFileError(msg, path=where)
        if u not in joint_controls(controls[x]):
            msg = f"Control {list(u)} is not feasible at state {x!r}"
            raise ProblemFileError(msg, path=where)
        entries.append((x, u, y, _number(entry, "probability", where), _number(entry, "cost", where, 0.0)))
    if "discount" in block:
        index = {state: i for i, state in enumerate(states)}
        transitions = [(index[x], u, index[y], p, c) for x, u, y, p, c in entries]
        try:
            return DiscountedMDP.from_transitions(
                agents, [controls[state] for state in states], transitions, _number(block, "discount", "tabular")
            )
        except ModelDomainError as exc:
            raise ProblemFileError(str(exc), path="tabular.transitions") from exc
    horizon = int(_number(block, "horizon", "tabular"))
    raw_terminal = _require(block, "terminal_costs", "tabular")
    terminal = {by_key[key]: float(cost) for key, cost in raw_terminal.items() if key in by_key}
    if missing := [state for state in states if state not in terminal]:
        msg = f"States {missing} have no terminal cost"
        raise ProblemFileError(msg, path="tabular.terminal_costs")
    outcomes: dict[tuple, list] = {}
    for x, u, y, p, c in entries:
        for stage in range(horizon):
            outcomes.setdefault((stage, x, u), []).append((p, y, c))
    for stage in range(horizon):
        for state, sets in controls.items():
            for u in joint_controls(sets):
                outcomes.setdefault((stage, state, u), [])
    return TabularFiniteModel(
        horizon=horizon,
        agent_count=agents,
        states=[states] * (horizon + 1),
        controls={(stage, state): sets for stage in range(horizon) for state, sets in controls.items()},
        outcomes=outcomes,
        terminal_costs=terminal,
    )


def _override(document: dict, overrides: dict[str, Any]) -> None:
    """Apply discount and horizon overrides to a parsed document in place."""
    if "builtin" in document:
        block = document["builtin"]
        if isinstance(block, dict):
            block["params"] = {**block.get("params", {}), **overrides}
        return
    block = document["tabular"]
    if not isinstance(block, dict):
        return
    for key, value in overrides.items():
        if key not in block:
            msg = f"Cannot override '{key}' on a tabular model without one"
            raise ProblemFileError(msg)
        block[key] = value


def load_problem(
    text: str,
    *,
    discount: float | None = None,
    horizon: int | None = None,
) -> FiniteHorizonModel | DiscountedMDP:
    """Parse and validate a problem document held in a string.

    discount and horizon replace the document's own values; for builtins they
    are passed as environment parameters. Builtins are checked through their
    parameters, tabular models through a full model validation.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(document, dict) or len({"builtin", "tabular"} & set(document)) != 1:
        msg = "Problem document needs exactly one of 'builtin' or 'tabular'"
        raise ProblemFileError(msg)
    overrides = {key: value for key, value in (("discount", discount), ("horizon", horizon)) if value is not None}
    if overrides:
        _override(document, overrides)
    if "builtin" in document:
        return _builtin(document["builtin"])
    model = _tabular(document["tabular"])
    require_valid(model)
    return model


def parse_problem_file(
    path: Path | str,
    *,
    discount: float | None = None,
    horizon: int | None = None,
) -> FiniteHorizonModel | DiscountedMDP:
    """Read, parse, and validate a problem file.

    Raises ProblemFileError for malformed documents and InvalidModel when the
    model breaks an invariant.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        msg = f"Cannot read problem file {path}: {exc.strerror}"
        raise ProblemFileError(msg) from exc
    return load_problem(text, discount=discount, horizon=horizon)


def _dump_discounted(mdp: DiscountedMDP) -> dict:
    transitions = []
    for state, block in enumerate(mdp.blocks):
        for row, control in enumerate(block.controls):
            for successor in range(mdp.state_count):
                prob = float(block.probs[row, successor])
                if prob:
                    transitions.append(
                        {
                            "state": state,
                            "control": list(control),
                            "next": successor,
                            "probability": prob,
                            "cost": float(block.costs[row, successor]),
                        }
                    )
    return {
        "agents": mdp.agent_count,
        "states": list(range(mdp.state_count)),
        "controls": {str(state): [list(s) for s in block.control_sets] for state, block in enumerate(mdp.blocks)},
        "transitions": transitions,
        "discount": mdp.discount,
    }


def _stage_rows(model: FiniteHorizonModel, stage: int, state: State) -> tuple[ControlSets, list[tuple]]:
    rows = []
    for control in model.enumerate_joint_controls(stage, state):
        for noise, prob in model.disturbance(stage, state, control):
            successor = model.transition(stage, state, control, noise)
            rows.append((control, successor, float(prob), model.stage_cost(stage, state, control, noise)))
    return model.control_sets(stage, state), rows


def _dump_finite(model: FiniteHorizonModel) -> dict:
    states = list(model.states(0))
    for stage in range(1, model.horizon + 1):
        if list(model.states(stage)) != states:
            msg = "Only stage-invariant finite models can be written as problem files"
            raise ValueError(msg)
    tables = {state: _stage_rows(model, 0, state) for state in states}
    for stage in range(1, model.horizon):
        for state in states:
            if _stage_rows(model, stage, state) != tables[state]:
                msg = f"Only stage-invariant finite models can be written as problem files, stage {stage} differs"
                raise ValueError(msg)
    controls = {}
    transitions = []
    for state, (sets, rows) in tables.items():
        controls[str(state)] = [list(s) for s in sets]
        transitions.extend(
            {
                "state": state,
                "control": list(control),
                "next": successor,
                "probability": prob,
                "cost": cost,
            }
            for control, successor, prob, cost in rows
        )
    return {
        "agents": model.agent_count,
        "states": states,
        "controls": controls,
        "transitions": transitions,
        "horizon": model.horizon,
        "terminal_costs": {str(state): model.terminal_cost(state) for state in states},
    }


def dump_problem(model: FiniteHorizonModel | DiscountedMDP) -> dict:
    """Problem document for a model; load_problem reads it back to an equivalent model.

    Finite models are written from their stage 0 tables, so they must be
    stage-invariant.
    """
    if isinstance(model, DiscountedMDP):
        return {"tabular": _dump_discounted(model)}
    return {"tabular": _dump_finite(model)}


def save_problem(model: FiniteHorizonModel | DiscountedMDP, path: Path | str) -> None:
    Path(path).write_text(json.dumps(dump_problem(model), indent=2) + "\n")
