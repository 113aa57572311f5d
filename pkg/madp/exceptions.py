"""Contains madp custom exceptions."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from madp.structs import ValidationReport


class ModelDomainError(Exception):
    """State, stage, or control is not part of the model."""


class EvaluationError(Exception):
    """Value function is missing a successor value."""


class ConvergenceError(Exception):
    """Iterative method exceeded its iteration cap."""


class IncompatibleMethod(Exception):
    """Method cannot be run on this kind of model."""


class InvalidModel(ValueError):
    """Model failed validation."""

    report: ValidationReport

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(report.summary())


class ProblemFileError(ValueError):
    """Problem document could not be parsed.

    JSON syntax errors carry a line and column. Structural errors carry the
    path of the offending block instead, such as "tabular.transitions[3]".
    """

    line: int | None
    column: int | None
    path: str | None

    def __init__(self, msg: str, line: int | None = None, column: int | None = None, *, path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        if path is not None:
            msg = f"{path}: {msg}"
        if line is not None:
            msg = f"line {line}, column {column}: {msg}"
        super().__init__(msg)
