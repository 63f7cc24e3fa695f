import click

from utils.errors import UsageError
from utils.identity import canonicalize, dual, format_identity, parse_identities, parse_identity


@click.command("parse")
@click.argument("text", required=False)
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), help="Identity file, one per line.")
@click.option("--canonical", is_flag=True, help="Rename variables to v1, v2, ... in order of first occurrence.")
@click.option("--dual", "show_dual", is_flag=True, help="Print the dual identity instead.")
def command(text, path, canonical, show_dual):
    """Parse identities and print them in normal form."""
    if (text is None) == (path is None):
        raise UsageError("give exactly one of TEXT or --file")
    if path is not None:
        with open(path, encoding="ascii") as handle:
            identities = parse_identities(handle.read())
    else:
        identities = [parse_identity(text)]
    for identity in identities:
        if show_dual:
            identity = dual(identity)
        if canonical:
            identity = canonicalize(identity)
        click.echo(format_identity(identity))
