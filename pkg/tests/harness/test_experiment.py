"""Experiment orchestration tests."""

# library
import pytest

# module
from madp.env import LineGreedyPolicy
from madp.exceptions import IncompatibleMethod, ModelDomainError
from madp.harness import ExperimentConfig, parse_problem_file, run_experiment
from madp.harness.experiment import FirstControlPolicy, base_policy_for, designated_states
from madp.harness.report import to_csv
from madp.structs import AgentOrder, ExperimentReport

# tests
from tests.util import problem_path


def _rows(report: ExperimentReport) -> list[tuple]:
    return [(row.method, row.state, row.value, row.iterations) for row in report.rows]


def test_compare_rollout_variants() -> None:
    """Base 5, coordinated rollouts 0, and uncoordinated rollout 10 over five stages."""
    model = parse_problem_file(problem_path("coordination"))
    report = run_experiment(model, "compare", ExperimentConfig(seed=0))
    assert _rows(report) == [
        ("base", "0", 5.0, 0),
        ("standard-rollout", "0", 0.0, 0),
        ("multiagent-rollout", "0", 0.0, 0),
        ("uncoordinated-rollout", "0", 10.0, 0),
    ]
    assert report.rows[0].q_evals == 0
    assert all(row.q_evals > 0 for row in report.rows[1:])
    assert report.elapsed >= 0


def test_monte_carlo_rollout() -> None:
    model = parse_problem_file(problem_path("coordination"))
    report = run_experiment(model, "rollout", ExperimentConfig(seed=1, trajectories=10))
    assert _rows(report) == [("multiagent-rollout", "0", 0.0, 0)]
    assert report.config["trajectories"] == 10


def test_line_rollout() -> None:
    model = parse_problem_file(problem_path("line"))
    report = run_experiment(model, "rollout", ExperimentConfig(seed=0, variant="standard"))
    assert _rows(report) == [("standard-rollout", "(5, 6, True, True)", 5.0, 0)]


def test_agentwise_pi_rows() -> None:
    model = parse_problem_file(problem_path("trap"))
    report = run_experiment(model, "pi", ExperimentConfig(seed=0))
    assert _rows(report) == [
        ("agent-by-agent-pi", "*", 0.0, 1),
        ("agent-by-agent-pi", "0", pytest.approx(10.0), 1),
    ]
    assert report.policies == {"agent-by-agent-pi": "((0, 0),)"}
    assert report.traces["agent-by-agent-pi"] == [[pytest.approx(10.0)]]


def test_standard_pi_rows() -> None:
    model = parse_problem_file(problem_path("trap"))
    report = run_experiment(model, "pi", ExperimentConfig(seed=0, variant="standard"))
    assert _rows(report) == [
        ("standard-pi", "*", 0.0, 1),
        ("standard-pi", "*", pytest.approx(10.0), 2),
        ("standard-pi", "0", pytest.approx(0.0), 2),
    ]
    assert [row.q_evals for row in report.rows] == [4, 4, 8]


def test_pi_order_and_initial_policy() -> None:
    model = parse_problem_file(problem_path("trap"))
    config = ExperimentConfig(seed=0, order=AgentOrder((1, 0)), initial=(1, 0))
    report = run_experiment(model, "pi", config)
    assert report.policies["agent-by-agent-pi"] == "((1, 1),)"
    assert report.config["order"] == [1, 0]
    assert report.config["initial"] == [1, 0]


def test_compare_pi_variants() -> None:
    model = parse_problem_file(problem_path("trap"))
    report = run_experiment(model, "compare", ExperimentConfig(seed=0))
    assert set(report.policies) == {"standard-pi", "agent-by-agent-pi"}
    finals = {row.method: row.value for row in report.rows if row.state == "0"}
    assert finals == {"standard-pi": pytest.approx(0.0), "agent-by-agent-pi": pytest.approx(10.0)}


def test_check_abao() -> None:
    model = parse_problem_file(problem_path("trap"))
    report = run_experiment(model, "check-abao", ExperimentConfig(seed=0, initial=(1, 0)))
    assert report.policies["check-abao"].startswith(
        "((1, 0),) is not agent-by-agent optimal: agent 0 at state 0 lowers its Q-factor from 20 to 19"
    )
    assert report.rows[0].value == pytest.approx(20.0)
    report = run_experiment(model, "check-abao", ExperimentConfig(seed=0))
    assert report.policies["check-abao"] == "((0, 0),) is agent-by-agent optimal"


def test_exact() -> None:
    finite = parse_problem_file(problem_path("finite_chain"))
    report = run_experiment(finite, "exact", ExperimentConfig(seed=0))
    assert _rows(report) == [("exact", "'low'", pytest.approx(4.125), 0), ("exact", "'high'", 0.0, 0)]
    assert report.policies["exact 'low'"] == "('push',)"
    discounted = parse_problem_file(problem_path("trap"))
    report = run_experiment(discounted, "exact", ExperimentConfig(seed=0))
    assert report.rows[0].value == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize(
    ("name", "method", "config"),
    [
        ("coordination", "pi", ExperimentConfig(seed=0)),
        ("coordination", "check-abao", ExperimentConfig(seed=0)),
        ("trap", "rollout", ExperimentConfig(seed=0)),
        ("trap", "sarsa", ExperimentConfig(seed=0)),
        ("coordination", "rollout", ExperimentConfig(seed=0, variant="greedy")),
        ("trap", "pi", ExperimentConfig(seed=0, variant="multiagent")),
    ],
)
def test_incompatible(name: str, method: str, config: ExperimentConfig) -> None:
    with pytest.raises(IncompatibleMethod):
        run_experiment(parse_problem_file(problem_path(name)), method, config)


def test_order_must_cover_agents() -> None:
    model = parse_problem_file(problem_path("trap"))
    with pytest.raises(ModelDomainError, match="does not cover"):
        run_experiment(model, "pi", ExperimentConfig(seed=0, order=AgentOrder((0, 1, 2))))


def test_reruns_are_identical() -> None:
    model = parse_problem_file(problem_path("coordination"))
    config = ExperimentConfig(seed=3, trajectories=5, truncate=2)
    first = to_csv(run_experiment(model, "compare", config))
    assert first == to_csv(run_experiment(model, "compare", config))


def test_base_policies() -> None:
    line = parse_problem_file(problem_path("line"))
    assert isinstance(base_policy_for(line), LineGreedyPolicy)
    assert designated_states(line) == [(5, 6, True, True)]
    coordination = parse_problem_file(problem_path("coordination"))
    policy = base_policy_for(coordination)
    assert isinstance(policy, FirstControlPolicy)
    assert policy(0, 0) == (0, 0)
    assert designated_states(parse_problem_file(problem_path("trap"))) == [0]
