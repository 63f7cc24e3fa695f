import itertools
import random

import pytest
from pydantic import ValidationError

from conftest import ORACLES, all_tables
from models.algebra import Algebra
from utils.constraints import ident, prop
from utils.errors import CompanionError, EvaluationError
from utils.identity import equation, hosszu_variants, parse_identity, parse_term
from utils.magma import (
    all_left_companions,
    all_right_companions,
    canonical_form,
    check_constraint,
    eval_term,
    is_isomorphic,
    left_companion,
    left_identities,
    make_algebra,
    orbit_size,
    predicate_witness,
    property_report,
    relabel,
    right_companion,
    right_identities,
    satisfies,
    semantic_classes,
)
from utils.zoo import affine, cyclic_group, halving, left_projection, right_projection

LEFT_PROJECTION = make_algebra(((0, 0), (1, 1)))


def test_algebra_rejects_bad_shapes():
    with pytest.raises(ValidationError):
        Algebra(order=2, tables={"*": ((0, 1),)})
    with pytest.raises(ValidationError):
        Algebra(order=2, tables={"*": ((0, 2), (1, 0))})
    with pytest.raises(ValidationError):
        Algebra(order=2, tables={"/": ((0, 1), (1, 0))})


def test_eval_term():
    z3 = cyclic_group(3)
    assert eval_term(z3, parse_term("x * (y * z)"), {"x": 1, "y": 1, "z": 2}) == 1
    assert eval_term(z3, parse_term("x \\ y"), {"x": 1, "y": 0}) == 2


def test_eval_errors():
    with pytest.raises(EvaluationError):
        eval_term(LEFT_PROJECTION, parse_term("x \\ y"), {"x": 0, "y": 0})
    with pytest.raises(EvaluationError):
        eval_term(LEFT_PROJECTION, parse_term("x * y"), {"x": 0})


def test_left_projection_example():
    assert satisfies(LEFT_PROJECTION, equation("tarski")) is True
    assert satisfies(LEFT_PROJECTION, equation("associative")) is True
    witness = satisfies(LEFT_PROJECTION, equation("commutative"))
    assert witness is not True
    assert witness.assignment == {"x": 0, "y": 1}

    report = property_report(LEFT_PROJECTION)
    assert report.right_division and report.right_cancellative
    assert not report.left_division and not report.left_cancellative
    assert report.associative and not report.commutative
    assert report.two_sided_identity is None
    assert report.right_identities == [0, 1]
    assert report.left_identities == []


def test_witness_is_lexicographically_first():
    # x * y = y fails x * y = x first at x=0, y=1
    witness = satisfies(right_projection(2), parse_identity("x * y = x"))
    assert witness.assignment == {"x": 0, "y": 1}


def test_cyclic_group_report():
    report = property_report(cyclic_group(4))
    assert report.quasigroup_like and report.abelian_group
    assert report.two_sided_identity == 0
    assert report.surjective


def test_affine_and_halving_tables():
    table = affine(4, 1, 3).tables["*"]
    assert table[1][1] == 0
    assert halving(5).tables["*"][3][1] == 4
    # a = 1, b = 3 over Z_3 collapses to the left projection
    assert affine(3, 1, 3).tables["*"] == left_projection(3).tables["*"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_predicates_agree_with_oracles(n):
    for table in all_tables(n):
        algebra = make_algebra(table)
        for name, oracle in ORACLES.items():
            assert (predicate_witness(algebra, name) is None) == oracle(table)


@pytest.mark.parametrize("n", [2, 3])
def test_property_report_flags_agree_with_predicates(n):
    for table in itertools.islice(all_tables(n), 0, None, 7):
        algebra = make_algebra(table)
        report = property_report(algebra)
        assert report.left_cancellative == (predicate_witness(algebra, "left_cancellative") is None)
        assert report.right_division == (predicate_witness(algebra, "right_division") is None)
        assert report.quasigroup_like == (predicate_witness(algebra, "quasigroup") is None)
        assert report.abelian_group == (predicate_witness(algebra, "abelian_group") is None)
        assert report.surjective == (predicate_witness(algebra, "surjective") is None)


def test_negated_constraints():
    assert check_constraint(LEFT_PROJECTION, prop("commutative", holds=False)) is None
    witness = check_constraint(LEFT_PROJECTION, prop("associative", holds=False))
    assert witness.subject == "!associative"
    assert check_constraint(LEFT_PROJECTION, ident("x * y = y * x", holds=False)) is None
    assert check_constraint(LEFT_PROJECTION, ident(equation("tarski"), holds=False)) is not None


def test_surjective_witness():
    constant = make_algebra(((0, 0), (0, 0)))
    assert predicate_witness(constant, "surjective") == {"y": 1}


def _division_algebras(n, predicate):
    for table in all_tables(n):
        algebra = make_algebra(table)
        if predicate_witness(algebra, predicate) is None:
            yield algebra


@pytest.mark.parametrize("n", [1, 2, 3])
def test_left_companion_satisfies_left_division_law(n):
    for algebra in _division_algebras(n, "left_division"):
        assert satisfies(left_companion(algebra), equation("left_division_law")) is True


@pytest.mark.parametrize("n", [1, 2, 3])
def test_right_companion_satisfies_right_division_law(n):
    for algebra in _division_algebras(n, "right_division"):
        assert satisfies(right_companion(algebra), equation("right_division_law")) is True


@pytest.mark.parametrize("n", [1, 2, 3])
def test_quasigroup_companions_satisfy_every_law(n):
    for algebra in _division_algebras(n, "quasigroup"):
        full = right_companion(left_companion(algebra))
        for name in ("left_division_law", "right_division_law", "left_cancel_law",
                     "right_cancel_law", "birkhoff_left", "birkhoff_right"):
            assert satisfies(full, equation(name)) is True


def test_companion_needs_division_or_cancellation():
    constant = make_algebra(((0, 0), (0, 0)))
    with pytest.raises(CompanionError):
        left_companion(constant)
    with pytest.raises(CompanionError):
        all_right_companions(constant)


def test_all_companions_of_a_quasigroup_are_unique():
    z3 = cyclic_group(3)
    assert all_left_companions(z3) == [z3.tables["\\"]]
    assert all_right_companions(z3) == [z3.tables["/"]]


def test_right_companion_of_left_projection():
    assert right_companion(LEFT_PROJECTION).tables["/"] == ((0, 0), (1, 1))


def test_relabel_and_canonical_form():
    swapped = relabel(LEFT_PROJECTION, [1, 0])
    assert swapped.key() == LEFT_PROJECTION.key()
    z = make_algebra(((1, 0), (0, 1)))
    z2 = make_algebra(cyclic_group(2).tables["*"])
    assert is_isomorphic(z, z2)
    assert canonical_form(z).key() == canonical_form(z2).key()
    assert not is_isomorphic(z, cyclic_group(2))
    assert not is_isomorphic(LEFT_PROJECTION, right_projection(2))


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_sizes_sum_to_labelled_count(n):
    tables = [t for t in all_tables(n) if ORACLES["associative"](t)]
    forms = {}
    for table in tables:
        canon = canonical_form(make_algebra(table))
        forms[canon.key()] = canon
    assert sum(orbit_size(canon) for canon in forms.values()) == len(tables)


def test_semantic_classes_match_bitvectors():
    variants = hosszu_variants()
    classes = semantic_classes(variants, 2)
    vectors = {}
    for i, variant in enumerate(variants):
        vector = tuple(satisfies(make_algebra(t), variant) is True for t in all_tables(2))
        vectors.setdefault(vector, []).append(i)
    assert sorted(group.members for group in classes) == sorted(vectors.values())


def _every_table(max_order):
    for n in range(1, max_order + 1):
        yield from all_tables(n)


def test_cancellation_and_division_coincide_on_finite_carriers():
    for table in _every_table(3):
        algebra = make_algebra(table)
        report = property_report(algebra)
        assert report.left_cancellative == report.left_division
        assert report.right_cancellative == report.right_division
        assert (predicate_witness(algebra, "left_cancellative") is None) == \
            (predicate_witness(algebra, "left_division") is None)
        assert (predicate_witness(algebra, "right_cancellative") is None) == \
            (predicate_witness(algebra, "right_division") is None)


def test_associative_law_agrees_with_report():
    law = equation("associative")
    for table in _every_table(3):
        algebra = make_algebra(table)
        assert (satisfies(algebra, law) is True) == property_report(algebra).associative


def test_at_most_one_two_sided_identity():
    for table in _every_table(3):
        assert len(set(left_identities(table)) & set(right_identities(table))) <= 1


def test_canonical_form_is_idempotent():
    rng = random.Random(4)
    for _ in range(1000):
        algebra = make_algebra([[rng.randrange(4) for _ in range(4)] for _ in range(4)])
        canon = canonical_form(algebra)
        assert canonical_form(canon).key() == canon.key()
        assert is_isomorphic(canon, algebra)
