"""Problem files, experiment orchestration, and report emission."""

from madp.harness.experiment import (
    METHODS,
    PI_VARIANTS,
    ExperimentConfig,
    FirstControlPolicy,
    base_policy_for,
    designated_states,
    run_experiment,
)
from madp.harness.problem import BUILTINS, dump_problem, load_problem, parse_problem_file, save_problem
from madp.harness.report import FORMATS, emit_report, format_report

__all__ = (
    "BUILTINS",
    "FORMATS",
    "METHODS",
    "PI_VARIANTS",
    "ExperimentConfig",
    "FirstControlPolicy",
    "base_policy_for",
    "designated_states",
    "dump_problem",
    "emit_report",
    "format_report",
    "load_problem",
    "parse_problem_file",
    "run_experiment",
    "save_problem",
)
