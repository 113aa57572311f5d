"""Problem file ingestion tests."""

# stdlib
import json
from pathlib import Path

# library
import numpy as np
import pytest

# module
from madp.dp import backward_induction, value_iteration
from madp.env import (
    GridPursuit,
    LinePursuit,
    LinePursuitParams,
    build_static_counterexample,
    random_finite_model,
    random_mdp,
)
from madp.exceptions import InvalidModel, ProblemFileError
from madp.harness.problem import BUILTINS, dump_problem, load_problem, parse_problem_file, save_problem
from madp.model import DiscountedMDP, TabularFiniteModel

# tests
from tests.util import problem_path, write_problem


def _trap_document() -> dict:
    return json.loads(problem_path("trap").read_text())


def test_builtins() -> None:
    assert set(BUILTINS) == {"line-pursuit", "grid-pursuit", "coordination-failure", "agent-by-agent-trap"}


def test_line_builtin() -> None:
    model = parse_problem_file(problem_path("line"))
    assert isinstance(model, LinePursuit)
    values, _ = backward_induction(model)
    assert values.value(0, model.initial_state()) == 5.0


def test_grid_builtin_with_motion_table(tmp_path: Path) -> None:
    document = {
        "builtin": {
            "name": "grid-pursuit",
            "params": {
                "width": 2,
                "height": 2,
                "spiders": [[0, 0]],
                "fly": [1, 1],
                "horizon": 3,
                "fly_motion": [
                    {"cell": [0, 0], "moves": [["stay", 1.0]]},
                    {"cell": [0, 1], "moves": [["stay", 1.0]]},
                    {"cell": [1, 0], "moves": [["stay", 1.0]]},
                    {"cell": [1, 1], "moves": [["up", 0.5], ["stay", 0.5]]},
                ],
            },
        }
    }
    model = parse_problem_file(write_problem(tmp_path, document))
    start = model.initial_state()
    assert start == (((0, 0),), (1, 1), False)
    assert model.disturbance(0, start, ("stay",)) == (("up", 0.5), ("stay", 0.5))


def test_tabular_discounted_matches_builtin() -> None:
    model = parse_problem_file(problem_path("trap"))
    expected = build_static_counterexample("agent-by-agent-trap", 0.9)
    assert isinstance(model, DiscountedMDP)
    assert model.discount == expected.discount
    assert np.array_equal(model.blocks[0].probs, expected.blocks[0].probs)
    assert np.array_equal(model.blocks[0].costs, expected.blocks[0].costs)


def test_tabular_finite() -> None:
    model = parse_problem_file(problem_path("finite_chain"))
    assert isinstance(model, TabularFiniteModel)
    assert model.control_sets(0, "low") == (("wait", "push"),)
    values, policy = backward_induction(model)
    assert values.value(0, "low") == pytest.approx(4.125)
    assert policy(0, "low") == ("push",)


def test_half_row_is_invalid() -> None:
    with pytest.raises(InvalidModel, match=r"\(x=0, u=\(0, 0\)\)") as exc:
        parse_problem_file(problem_path("half_row"))
    assert exc.value.report.rules == {"row-stochastic"}


def test_malformed_json() -> None:
    with pytest.raises(ProblemFileError) as exc:
        parse_problem_file(problem_path("malformed"))
    assert exc.value.line == 4
    assert str(exc.value).startswith("line 4, column")


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ProblemFileError, match="Cannot read problem file"):
        parse_problem_file(tmp_path / "absent.json")


@pytest.mark.parametrize(
    ("document", "message"),
    [
        ([], "exactly one of"),
        ({"builtin": {"name": "line-pursuit"}, "tabular": {}}, "exactly one of"),
        ({"builtin": {"name": "hex-pursuit"}}, "Unknown builtin"),
        ({"builtin": {}}, "missing 'name'"),
        ({"builtin": {"name": "line-pursuit", "params": {"length": 10}}}, "Bad parameters"),
        ({"tabular": {"agents": 1, "states": [0]}}, "missing 'controls'"),
        ({"tabular": {"agents": 1, "states": [0], "controls": [[0]], "transitions": []}}, "map state labels"),
        ({"tabular": {"agents": 1, "states": [0], "controls": {}, "transitions": []}}, "no control sets"),
        (
            {"tabular": {"agents": 1, "states": [0], "controls": {"0": [[0]], "1": [[0]]}, "transitions": []}},
            "unknown state '1'",
        ),
    ],
)
def test_bad_documents(document: object, message: str) -> None:
    with pytest.raises(ProblemFileError, match=message):
        load_problem(json.dumps(document))


def test_unknown_successor() -> None:
    document = _trap_document()
    document["tabular"]["transitions"][0]["next"] = 3
    with pytest.raises(ProblemFileError, match="unknown state 3"):
        load_problem(json.dumps(document))


def test_infeasible_finite_control() -> None:
    document = json.loads(problem_path("finite_chain").read_text())
    document["tabular"]["transitions"][0]["control"] = ["jump"]
    with pytest.raises(ProblemFileError, match="not feasible"):
        load_problem(json.dumps(document))


def test_missing_terminal_cost() -> None:
    document = json.loads(problem_path("finite_chain").read_text())
    del document["tabular"]["terminal_costs"]["high"]
    with pytest.raises(ProblemFileError, match="no terminal cost"):
        load_problem(json.dumps(document))


def test_overrides() -> None:
    trap = parse_problem_file(problem_path("trap"), discount=0.5)
    assert trap.discount == 0.5
    coordination = parse_problem_file(problem_path("coordination"), horizon=2)
    assert coordination.horizon == 2
    with pytest.raises(ProblemFileError, match="Cannot override 'horizon'"):
        parse_problem_file(problem_path("trap"), horizon=3)
    with pytest.raises(ProblemFileError, match="Bad parameters"):
        parse_problem_file(problem_path("line"), discount=0.9)


def test_discounted_round_trip(tmp_path: Path) -> None:
    mdp = random_mdp(4, 2, 2, seed=3)
    path = tmp_path / "mdp.json"
    save_problem(mdp, path)
    loaded = parse_problem_file(path)
    for left, right in zip(mdp.blocks, loaded.blocks):
        assert np.array_equal(left.probs, right.probs)
        assert np.array_equal(left.costs, right.costs)
    assert np.allclose(value_iteration(mdp), value_iteration(loaded))


def test_finite_round_trip() -> None:
    """A dumped line model reloads as a table with the same optimal cost."""
    model = LinePursuit(LinePursuitParams(4, (1, 2), (0, 4)))
    document = dump_problem(model)
    loaded = load_problem(json.dumps(document))
    assert isinstance(loaded, TabularFiniteModel)
    state = model.initial_state()
    assert backward_induction(loaded)[0].value(0, state) == backward_induction(model)[0].value(0, state)


def test_stage_varying_model_cannot_be_dumped() -> None:
    model = TabularFiniteModel(
        horizon=1,
        agent_count=1,
        states=[(0,), (0, 1)],
        controls={(0, 0): ((0,),)},
        outcomes={(0, 0, (0,)): ((1.0, 1, 0.0),)},
        terminal_costs={0: 0.0, 1: 0.0},
    )
    with pytest.raises(ValueError, match="stage-invariant"):
        dump_problem(model)


@pytest.mark.parametrize("seed", [4, 5])
def test_stage_varying_tables_cannot_be_dumped(seed: int) -> None:
    """Same states at every stage, but fresh controls and outcomes at each stage."""
    model = random_finite_model(3, 3, 2, 2, seed=seed)
    with pytest.raises(ValueError, match="stage 1 differs"):
        dump_problem(model)


def test_grid_builtin_skips_state_enumeration(monkeypatch: pytest.MonkeyPatch) -> None:
    """Builtins are checked through their parameters, not a scan of every state."""

    def enumerate_states(*_: object) -> None:
        pytest.fail("state space enumerated while loading")

    monkeypatch.setattr(GridPursuit, "states", enumerate_states)
    document = {
        "builtin": {
            "name": "grid-pursuit",
            "params": {"width": 5, "height": 5, "spiders": [[0, 0], [0, 4], [4, 0]], "fly": [2, 2], "horizon": 8},
        }
    }
    model = load_problem(json.dumps(document))
    assert isinstance(model, GridPursuit)
    assert model.agent_count == 3


@pytest.mark.parametrize(
    ("params", "message"),
    [
        ({"discount": 1.5}, r"not in \(0, 1\)"),
        ({"horizon": -1}, "cannot be negative"),
    ],
)
def test_bad_counterexample_params(params: dict, message: str) -> None:
    document = {"builtin": {"name": "coordination-failure", "params": params}}
    with pytest.raises(ProblemFileError, match=message) as exc:
        load_problem(json.dumps(document))
    assert exc.value.path == "builtin.params"


def test_bad_fly_motion_params() -> None:
    document = {
        "builtin": {
            "name": "grid-pursuit",
            "params": {
                "width": 2,
                "height": 2,
                "spiders": [[0, 0]],
                "fly": [1, 1],
                "horizon": 3,
                "fly_motion": [{"cell": [1, 1], "moves": [["up", 0.5], ["stay", 0.4]]}],
            },
        }
    }
    with pytest.raises(ProblemFileError, match="does not sum to one"):
        load_problem(json.dumps(document))


@pytest.mark.parametrize(
    ("field", "value", "path", "message"),
    [
        ("next", 3, "tabular.transitions[2]", "unknown state 3"),
        ("probability", "half", "tabular.transitions[2]", "must be a number"),
        ("control", [5, 5], "tabular.transitions[2]", "not feasible"),
    ],
)
def test_structural_errors_carry_path(field: str, value: object, path: str, message: str) -> None:
    """Errors past the JSON syntax level name the offending entry."""
    document = _trap_document()
    document["tabular"]["transitions"][2][field] = value
    with pytest.raises(ProblemFileError, match=message) as exc:
        load_problem(json.dumps(document))
    assert exc.value.path == path
    assert exc.value.line is None
    assert str(exc.value).startswith(f"{path}: ")


def test_missing_key_carries_path() -> None:
    document = _trap_document()
    del document["tabular"]["transitions"][1]["state"]
    with pytest.raises(ProblemFileError, match="missing 'state'") as exc:
        load_problem(json.dumps(document))
    assert exc.value.path == "tabular.transitions[1]"
