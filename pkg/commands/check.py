import click
import yaml

from utils.constraints import PREDICATES, format_constraint, ident, parse_constraints, prop
from utils.errors import UsageError
from utils.harness import check_lemma
from utils.magma import check_constraint, property_report
from utils.tablefile import read_table
from utils.zoo import BUILTINS


def _describe(witness) -> str:
    if witness.assignment:
        return f"fails at {witness.values()}"
    return f"fails ({witness.detail})"


@click.command("check")
@click.option("--table", "path", type=click.Path(exists=True, dir_okay=False), help="Table file to check.")
@click.option("--builtin", type=click.Choice(sorted(BUILTINS)), help="Named example algebra instead of a file.")
@click.option("--id", "identities", multiple=True, help="Identity that must hold (repeatable).")
@click.option("--prop", "predicates", multiple=True, type=click.Choice(PREDICATES), help="Property that must hold (repeatable).")
@click.option("--constraints", default="", help="Constraint list in the search mini-language.")
@click.option("--lemma", "lemma_id", help="Catalog lemma to evaluate on this algebra.")
@click.option("--report", is_flag=True, help="Print every structural property.")
@click.pass_context
def command(ctx, path, builtin, identities, predicates, constraints, lemma_id, report):
    """Check identities, properties or a lemma on one algebra."""
    if (path is None) == (builtin is None):
        raise UsageError("give exactly one of --table or --builtin")
    algebra = read_table(path) if path else BUILTINS[builtin]()

    wanted = [ident(text) for text in identities] + [prop(name) for name in predicates]
    wanted += parse_constraints(constraints)
    failed = False

    for constraint in wanted:
        witness = check_constraint(algebra, constraint)
        if witness is None:
            click.echo(f"{format_constraint(constraint)}: holds")
        else:
            click.echo(f"{format_constraint(constraint)}: {_describe(witness)}")
            failed = True

    if lemma_id:
        result = check_lemma(algebra, lemma_id)
        click.echo(f"{result.lemma_id} hypotheses: {'hold' if result.hypotheses_hold else 'fail'}")
        click.echo(f"{result.lemma_id} conclusions: {'hold' if result.conclusions_hold else 'fail'}")
        for witness in result.failures:
            click.echo(f"  {witness.subject}: {_describe(witness)}")
        failed = failed or not (result.hypotheses_hold and result.conclusions_hold)

    if report or not (wanted or lemma_id):
        click.echo(yaml.safe_dump(property_report(algebra).model_dump(), sort_keys=False), nl=False)

    ctx.exit(1 if failed else 0)
