"""Constraint mini-language: `id:"<identity>"`, `prop:<name>`, `!` negates, comma separated.

    id:"x * (z * y) = (x * y) * z", prop:right_division, prop:!commutative
"""
from typing import Union, get_args

import pyparsing as pp

from models.constraint import Constraint, IdentityConstraint, Predicate, StructuralConstraint
from models.term import Identity
from utils.errors import ConstraintSyntaxError
from utils.identity import format_identity, parse_identity

PREDICATES: tuple[str, ...] = get_args(Predicate)

_bang = pp.Literal("!")
_identity_item = (
    pp.Opt(_bang)("outer")
    + pp.Keyword("id")("kind")
    + pp.Suppress(":")
    + pp.Opt(_bang)("inner")
    + pp.QuotedString('"', convert_whitespace_escapes=False)("text")
)
_prop_item = (
    pp.Opt(_bang)("outer")
    + pp.Keyword("prop")("kind")
    + pp.Suppress(":")
    + pp.Opt(_bang)("inner")
    + pp.MatchFirst([pp.Keyword(name) for name in PREDICATES])("text")
)
_item = pp.Group(_identity_item | _prop_item)
_grammar = pp.Opt(pp.DelimitedList(_item)) + pp.StringEnd()


def ident(identity: Union[str, Identity], holds: bool = True) -> IdentityConstraint:
    if isinstance(identity, str):
        identity = parse_identity(identity)
    return IdentityConstraint(identity=identity, polarity="holds" if holds else "fails")


def prop(predicate: str, holds: bool = True) -> StructuralConstraint:
    return StructuralConstraint(predicate=predicate, polarity="holds" if holds else "fails")


def parse_constraints(text: str) -> list[Constraint]:
    try:
        parsed = _grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ConstraintSyntaxError(f"malformed constraint list: {exc.msg}", exc.col) from exc
    constraints: list[Constraint] = []
    for item in parsed:
        holds = ("outer" in item) == ("inner" in item)
        if item["kind"] == "id":
            constraints.append(ident(item["text"], holds))
        else:
            constraints.append(prop(item["text"], holds))
    return constraints


def format_constraint(constraint: Constraint) -> str:
    bang = "" if constraint.polarity == "holds" else "!"
    if isinstance(constraint, IdentityConstraint):
        return f'id:{bang}"{format_identity(constraint.identity)}"'
    return f"prop:{bang}{constraint.predicate}"
