import click

from utils.identity import canonicalize, classify_variants, format_identity, hosszu_variants, mask_label
from utils.magma import semantic_classes


@click.command("hosszu")
@click.option("--semantic", is_flag=True, help="Also group variants holding in exactly the same small groupoids.")
@click.option("--order", type=click.IntRange(min=1, max=3), default=2, show_default=True,
              help="Largest groupoid order for --semantic.")
def command(semantic, order):
    """The 16 neighbour-swap variants of the associative law and their classes."""
    variants = hosszu_variants()
    classes = classify_variants(variants)
    class_of = {member: k for k, group in enumerate(classes, start=1) for member in group.members}
    for mask, variant in enumerate(variants):
        click.echo(
            f"{mask_label(mask)}  {format_identity(variant):<26}  "
            f"{format_identity(canonicalize(variant)):<30}  class {class_of[mask]}"
        )
    if semantic:
        click.echo(f"# semantic classes over all groupoids of order <= {order}")
        for k, group in enumerate(semantic_classes(variants, order), start=1):
            click.echo(f"# semantic {k}: " + " ".join(mask_label(m) for m in group.members))
