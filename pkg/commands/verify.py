import sys
from pathlib import Path

import click

import config
from utils.harness import dump_yaml_report, exit_code, verify as verify_lemma, verify_all as verify_catalog, text_report
from utils.tablefile import dumps


@click.command("verify")
@click.argument("lemma_id")
@click.option("--max-order", type=click.IntRange(min=1), default=config.MAX_ORDER,
              help="Largest order checked (default: each lemma's own default order).")
@click.option("--budget", type=click.IntRange(min=1), default=config.NODE_BUDGET, show_default=True)
@click.pass_context
def verify(ctx, lemma_id, max_order, budget):
    """Verify one catalog lemma on every model up to --max-order."""
    report = verify_lemma(lemma_id, max_order, budget)
    click.echo(text_report([report]), nl=False)
    if report.counterexample is not None:
        found = report.counterexample
        click.echo("# counterexample")
        click.echo(dumps(found.checked or found.algebra), nl=False)
    if report.witness is not None:
        click.echo("# witness")
        click.echo(dumps(report.witness), nl=False)
    ctx.exit(exit_code([report]))


@click.command("verify-all")
@click.option("--max-order", type=click.IntRange(min=1), default=config.MAX_ORDER,
              help="Largest order checked (default: each lemma's own default order).")
@click.option("--budget", type=click.IntRange(min=1), default=config.NODE_BUDGET, show_default=True)
@click.option("--parallel", type=click.IntRange(min=1), default=config.PARALLEL, show_default=True,
              help="Verify this many lemmas at once.")
@click.option("--report-file", type=click.Path(dir_okay=False), help="Also write the YAML report here.")
@click.option("--progress/--no-progress", default=None, help="Progress bar on stderr (default: when it is a terminal).")
@click.pass_context
def verify_all(ctx, max_order, budget, parallel, report_file, progress):
    """Verify the whole lemma catalog."""
    if progress is None:
        progress = sys.stderr.isatty()
    reports = verify_catalog(max_order, budget, parallel=parallel, progress=progress)
    click.echo(text_report(reports), nl=False)
    if report_file:
        Path(report_file).write_text(dump_yaml_report(reports), encoding="ascii")
    ctx.exit(exit_code(reports))
