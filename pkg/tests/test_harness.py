import pytest
import yaml

from models.lemma import LemmaSpec
from utils.catalog import catalog, lookup
from utils.constraints import ident, prop
from utils.errors import UnknownLemmaError
from utils.harness import check_lemma, dump_yaml_report, exit_code, text_report, verify, verify_all
from utils.identity import equation, operators
from utils.magma import check_constraint, make_algebra
from utils.zoo import cyclic_group

BROKEN = LemmaSpec(
    id="BROKEN-TARKI-RD-COMM",
    paper_label="TAR_EX1",
    hypotheses=[prop("right_division"), ident(equation("tarski"))],
    conclusions=[prop("commutative")],
)


def test_catalog_is_complete_and_unique():
    lemmas = catalog()
    ids = [lemma.id for lemma in lemmas]
    assert len(ids) >= 34
    assert len(set(ids)) == len(ids)
    for required in ("CYCL-RD-ASSOC", "TARKI-LDRC-GROUP", "Q3", "Q6", "DEF-EQUIV", "TARKI-COMM-COND"):
        assert required in ids


def test_lookup_cyclic_commutativity():
    lemma = lookup("CYCL-RD-COMM")
    assert lemma.hypotheses == [prop("right_division"), ident(equation("cyclic"))]
    assert lemma.conclusions == [prop("commutative")]
    assert lemma.paper_label == "CYCL_6"


def test_lookup_existence_claim():
    lemma = lookup("TARKI-RD-NONCOMM")
    assert lemma.kind == "existence"
    assert lemma.expected_witness is not None


def test_lookup_unknown():
    with pytest.raises(UnknownLemmaError):
        lookup("NOPE")


def test_companion_policy_covers_conclusion_symbols():
    for lemma in catalog():
        used = set()
        for constraint in lemma.conclusions:
            if constraint.kind == "identity":
                used |= operators(constraint.identity)
        if lemma.id == "DEF-EQUIV":
            continue
        if "\\" in used:
            assert lemma.companion_policy in ("derive_left", "derive_both"), lemma.id
        if "/" in used:
            assert lemma.companion_policy in ("derive_right", "derive_both"), lemma.id


def test_verify_cyclic_associativity():
    report = verify("CYCL-RD-ASSOC", 3)
    assert report.outcome == "verified"
    assert report.max_order == 3
    assert set(report.models_examined) == {1, 2, 3}
    assert report.counterexample is None


def test_verify_group_theorem():
    report = verify("CYCL-RDRC-GROUP", 3)
    assert report.outcome == "verified"
    assert report.models_examined[1] == 1


def test_verify_existence_witness():
    report = verify("TARKI-RD-NONCOMM", 2)
    assert report.outcome == "witnessed"
    assert report.witness.tables["*"] == ((0, 0), (1, 1))
    assert report.models_examined[1] == 0


def test_existence_claim_is_absent_below_its_order():
    assert verify("TARKI-RD-NONCOMM", 1).outcome == "absent"


def test_corrupted_lemma_gives_reverified_counterexample():
    report = verify(BROKEN, 3)
    assert report.outcome == "counterexample"
    found = report.counterexample
    assert found.order == 2
    for hypothesis in BROKEN.hypotheses:
        assert check_constraint(found.algebra, hypothesis) is None
    assert check_constraint(found.algebra, found.violated) is not None
    assert exit_code([report]) == 1


@pytest.mark.parametrize("lemma_id", ["Q3", "Q6", "TARKI-LDRC-MIRROR", "CYCL-RDLC-QID", "DEF-EQUIV"])
def test_companion_lemmas_verify(lemma_id):
    report = verify(lemma_id, 3)
    assert report.outcome == "verified"
    assert report.vacuous == 0


def test_requested_order_is_run_in_full():
    report = verify("CYCL-RD-ASSOC", 5)
    assert report.requested_order == 5
    assert report.max_order == 5
    assert set(report.models_examined) == {1, 2, 3, 4, 5}
    assert report.outcome == "verified"


def test_default_order_applies_only_when_omitted():
    assert lookup("DEF-EQUIV").default_order == 3
    assert lookup("CYCL-RD-ASSOC").default_order == 4
    assert lookup("CYCL-RDRC-GROUP").default_order == 5

    report = verify("DEF-EQUIV")
    assert report.requested_order is None
    assert report.max_order == 3
    assert verify("TARKI-LD-COMM").max_order == 4
    assert verify("DEF-EQUIV", 2).max_order == 2


def test_budget_makes_verification_inconclusive():
    report = verify("TARKI-LC-ASSOC", 3, budget=1)
    assert report.outcome == "inconclusive"
    assert exit_code([report]) == 4


def test_monotonicity():
    for order in (1, 2, 3):
        assert verify("TARKI-LD-COMM", order).outcome == "verified"


def test_verify_all_order_two():
    reports = verify_all(2)
    assert [r.lemma_id for r in reports] == [lemma.id for lemma in catalog()]
    for report in reports:
        expected = "witnessed" if report.kind == "existence" else "verified"
        assert report.outcome == expected, report.lemma_id
    assert exit_code(reports) == 0


@pytest.mark.slow
def test_verify_all_order_three():
    reports = verify_all(3)
    assert exit_code(reports) == 0


@pytest.mark.slow
@pytest.mark.parametrize("lemma_id", ["CYCL-RDRC-GROUP", "TARKI-LDRC-GROUP"])
def test_group_theorems_at_order_five(lemma_id):
    report = verify(lemma_id, 5)
    assert report.max_order == 5
    assert report.outcome == "verified"


def test_text_report_lines():
    reports = [verify("CYCL-RD-COMM", 2), verify(BROKEN, 2)]
    text = text_report(reports)
    lines = text.splitlines()
    assert lines[0].startswith("CYCL-RD-COMM verified 1..2 ")
    assert lines[1].startswith("BROKEN-TARKI-RD-COMM counterexample 1..2 ")
    assert lines[2].startswith("#   order 2: prop:commutative fails at 0,1")
    assert lines[-1].startswith("# checked on finite carriers only")


def test_yaml_report_documents():
    reports = [verify("CYCL-RD-COMM", 2), verify("TARKI-RD-NONCOMM", 2), verify(BROKEN, 2)]
    header, *records = list(yaml.safe_load_all(dump_yaml_report(reports)))
    assert header["format"] == "magma-report 1"
    assert header["lemmas"] == 3
    assert [r["id"] for r in records] == ["CYCL-RD-COMM", "TARKI-RD-NONCOMM", "BROKEN-TARKI-RD-COMM"]
    assert records[1]["witness"]["tables"]["*"] == [[0, 0], [1, 1]]
    assert records[2]["counterexample"]["witness"] == {"x": 0, "y": 1}
    assert records[2]["counterexample"]["violated"] == "prop:commutative"


def test_check_lemma_on_z3():
    result = check_lemma(cyclic_group(3), "DEF-EQUIV")
    assert result.hypotheses_hold and result.conclusions_hold
    assert check_lemma(make_algebra(cyclic_group(3).tables["*"]), "CYCL-RDRC-GROUP").conclusions_hold


def test_check_lemma_derives_missing_companions():
    bare = make_algebra(cyclic_group(3).tables["*"])
    result = check_lemma(bare, "DEF-EQUIV")
    assert result.hypotheses_hold and result.conclusions_hold


def test_mutation_is_detected():
    rows = [list(row) for row in cyclic_group(3).tables["*"]]
    rows[0][0] = 1
    mutated = make_algebra(rows)
    assert check_constraint(mutated, prop("associative")) is not None or \
        check_constraint(mutated, prop("quasigroup")) is not None
    result = check_lemma(mutated, "DEF-EQUIV")
    assert not (result.hypotheses_hold and result.conclusions_hold)
    assert result.failures
