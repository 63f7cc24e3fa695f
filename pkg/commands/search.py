from pathlib import Path

import click

import config
from utils.constraints import parse_constraints
from utils.search import constraint_set, search as run_search
from utils.tablefile import dumps, write_table


def _options(function):
    function = click.option("--budget", type=click.IntRange(min=1), default=config.NODE_BUDGET, show_default=True,
                            help="Node budget; exhausting it makes the result inconclusive.")(function)
    function = click.option("--parallel", type=click.IntRange(min=1), default=config.PARALLEL, show_default=True,
                            help="Worker processes splitting the first branching cell.")(function)
    function = click.option("--up-to-iso", is_flag=True, help="Count and emit isomorphism classes only.")(function)
    function = click.option("--constraints", default="", help='e.g. \'id:"x * y = y * x", prop:quasigroup\'')(function)
    function = click.option("--order", type=click.IntRange(min=1), required=True)(function)
    return function


@click.command("search")
@_options
@click.option("--mode", type=click.Choice(["first", "all", "count"]), default="all", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), help="Write each model to DIR/model_<k>.mag instead of stdout.")
@click.pass_context
def search(ctx, order, constraints, up_to_iso, parallel, budget, mode, out):
    """Find tables of the given order satisfying the constraints."""
    cs = constraint_set(order, parse_constraints(constraints))
    outcome = run_search(cs, mode=mode, up_to_iso=up_to_iso, budget=budget, parallel=parallel,
                         symmetry_breaking=up_to_iso)
    if outcome.status == "inconclusive":
        click.echo(f"inconclusive: node budget {budget} exhausted", err=True)
        ctx.exit(4)
    if mode == "count":
        click.echo(outcome.count)
        ctx.exit(0)

    if out:
        directory = Path(out)
        directory.mkdir(parents=True, exist_ok=True)
        for k, model in enumerate(outcome.models, start=1):
            target = directory / f"model_{k:04d}.mag"
            write_table(model, target)
            click.echo(str(target))
    else:
        for k, model in enumerate(outcome.models, start=1):
            click.echo(f"# model {k}")
            click.echo(dumps(model), nl=False)
    if not outcome.models:
        click.echo("no model", err=True)
    ctx.exit(0 if outcome.models else 1)


@click.command("count")
@_options
@click.pass_context
def count(ctx, order, constraints, up_to_iso, parallel, budget):
    """Print the number of tables (or classes, with --up-to-iso) satisfying the constraints."""
    cs = constraint_set(order, parse_constraints(constraints))
    outcome = run_search(cs, mode="count", up_to_iso=up_to_iso, budget=budget, parallel=parallel,
                         symmetry_breaking=up_to_iso)
    if outcome.status == "inconclusive":
        click.echo(f"inconclusive: node budget {budget} exhausted", err=True)
        ctx.exit(4)
    click.echo(outcome.count)
    ctx.exit(0)
