"""Command-line entry point: `madp <method> --problem FILE --seed N`."""

# stdlib
from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any

# library
import click

# module
from madp.exceptions import ConvergenceError, IncompatibleMethod, InvalidModel, ModelDomainError, ProblemFileError
from madp.harness.experiment import ExperimentConfig, run_experiment
from madp.harness.problem import parse_problem_file
from madp.harness.report import FORMATS, emit_report
from madp.structs import AgentOrder

if TYPE_CHECKING:
    from collections.abc import Callable

LOG = logging.getLogger("madp.cli")

HANDLED = (ConvergenceError, IncompatibleMethod, InvalidModel, ModelDomainError, ProblemFileError)


def _component(text: str) -> Any:
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return text


def _parse_order(ctx: click.Context, param: click.Parameter, value: str | None) -> AgentOrder | None:  # noqa: ARG001
    if value is None:
        return None
    try:
        return AgentOrder.from_string(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _parse_initial(ctx: click.Context, param: click.Parameter, value: str | None) -> tuple | None:  # noqa: ARG001
    if value is None:
        return None
    return tuple(_component(item) for item in value.split(","))


def shared_options(func: Callable) -> Callable:
    """Flags common to every method."""
    options = [
        click.option("--problem", required=True, type=click.Path(exists=True, dir_okay=False), help="Problem file"),
        click.option("--seed", required=True, type=int, help="Seed for every random draw"),
        click.option("--order", callback=_parse_order, help="Agent order, zero-based, e.g. 1,0"),
        click.option("--variant", help="Rollout variant or PI variant"),
        click.option("--trajectories", type=click.IntRange(min=1), help="Monte Carlo trajectories per Q-factor"),
        click.option("--truncate", type=click.IntRange(min=0), help="Simulated base-policy stages per trajectory"),
        click.option("--alpha", type=float, help="Discount factor override"),
        click.option("--horizon", type=click.IntRange(min=0), help="Horizon override"),
        click.option("--initial", callback=_parse_initial, help="Per-agent components of the initial policy"),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Report path, stdout if omitted"),
        click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True),
        click.option("--verbose", "-v", is_flag=True, help="Debug logging"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run(method: str, **kwargs: Any) -> None:
    logging.basicConfig(
        level=logging.DEBUG if kwargs["verbose"] else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    config = ExperimentConfig(
        seed=kwargs["seed"],
        variant=kwargs["variant"],
        order=kwargs["order"],
        trajectories=kwargs["trajectories"],
        truncate=kwargs["truncate"],
        initial=kwargs["initial"],
    )
    try:
        model = parse_problem_file(kwargs["problem"], discount=kwargs["alpha"], horizon=kwargs["horizon"])
        report = run_experiment(model, method, config)
    except HANDLED as exc:
        raise click.ClickException(str(exc)) from exc
    LOG.info("%s report built in %.3fs", method, report.elapsed)
    emit_report(report, kwargs["fmt"], kwargs["out"])


def _command(method: str, doc: str) -> Callable:
    @shared_options
    def command(**kwargs: Any) -> None:
        _run(method, **kwargs)

    command.__doc__ = doc
    return command


@click.group()
def main() -> None:
    """Multiagent rollout and policy iteration experiments."""


main.command("exact")(_command("exact", "Optimal values by backward induction or value iteration."))
main.command("rollout")(_command("rollout", "Exact cost of a rollout policy built on the base policy."))
main.command("pi")(_command("pi", "Standard or agent-by-agent policy iteration."))
main.command("compare")(_command("compare", "Base policy against every rollout variant, or both PI variants."))
main.command("check-abao")(_command("check-abao", "Check a policy for agent-by-agent optimality."))


if __name__ == "__main__":
    main()
