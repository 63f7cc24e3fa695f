import pytest

from models.constraint import IdentityConstraint, StructuralConstraint
from utils.constraints import format_constraint, ident, parse_constraints, prop
from utils.errors import ConstraintSyntaxError, IdentityParseError
from utils.identity import equation


def test_empty_list():
    assert parse_constraints("") == []
    assert parse_constraints("   ") == []


def test_mixed_list():
    parsed = parse_constraints('id:"x * (z * y) = (x * y) * z", prop:right_division, prop:!commutative')
    assert parsed == [
        IdentityConstraint(identity=equation("tarski")),
        StructuralConstraint(predicate="right_division"),
        StructuralConstraint(predicate="commutative", polarity="fails"),
    ]


@pytest.mark.parametrize("text", ['id:!"x * y = y * x"', '!id:"x * y = y * x"'])
def test_negated_identity_spellings(text):
    assert parse_constraints(text) == [ident("x * y = y * x", holds=False)]


def test_double_negation_cancels():
    assert parse_constraints("!prop:!quasigroup") == [prop("quasigroup")]


def test_unknown_predicate_is_a_syntax_error():
    with pytest.raises(ConstraintSyntaxError) as info:
        parse_constraints("prop:commutative, prop:bogus")
    assert info.value.exit_code == 3


def test_unterminated_quote():
    with pytest.raises(ConstraintSyntaxError):
        parse_constraints('id:"x * y = y * x')


def test_bad_identity_inside_quotes():
    with pytest.raises(IdentityParseError):
        parse_constraints('id:"x * = y"')


def test_format_round_trip():
    items = [ident(equation("cyclic")), ident("x = x", holds=False), prop("surjective"), prop("quasigroup", False)]
    text = ", ".join(format_constraint(item) for item in items)
    assert parse_constraints(text) == items


def test_backslash_survives_quoting():
    assert parse_constraints('id:"x * (x \\ y) = y"') == [ident(equation("left_division_law"))]
