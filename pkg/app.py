import sys
from typing import Optional, Sequence

import click

import config
from commands import all_commands
from utils.errors import MagmaError


class WorkbenchGroup(click.Group):
    """Maps MagmaError to `error: <detail>` on stderr and the error's exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except MagmaError as exc:
            click.echo(f"error: {exc.detail}", err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=WorkbenchGroup)
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def cli(log_level):
    """Finite groupoid workbench: identities, tables, model search and lemma verification."""
    config.configure_logging(log_level.upper())


# register every subcommand
for command in all_commands:
    cli.add_command(command)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one invocation and returns its exit code instead of exiting."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="magma", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
