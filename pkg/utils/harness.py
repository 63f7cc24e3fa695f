"""Runs catalog lemmas against every finite model up to an order bound."""
import itertools
import logging
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional, Union

import yaml
from tqdm import tqdm

from models.algebra import Algebra, Witness
from models.constraint import Counterexample, IdentityConstraint
from models.lemma import LemmaCheck, LemmaSpec, VerificationReport
from utils.catalog import FINITE_CAVEAT, catalog, lookup
from utils.constraints import format_constraint
from utils.errors import CompanionError, MagmaError, SearchBudgetExceeded
from utils.identity import operators
from utils.magma import (
    all_left_companions,
    all_right_companions,
    canonical_form,
    check_constraint,
    left_companion,
    right_companion,
    with_table,
)
from utils.search import constraint_set, find_counterexample, search

logger = logging.getLogger(__name__)

REPORT_FORMAT = "magma-report 1"


def _companion_expander(lemma: LemmaSpec, vacuous: list[int]) -> Optional[Callable[[Algebra], list[Algebra]]]:
    """Every companion combination of a model; models without one are counted in `vacuous`."""
    policy = lemma.companion_policy
    if policy == "none":
        return None

    def expand(model: Algebra) -> list[Algebra]:
        try:
            lefts = all_left_companions(model) if policy in ("derive_left", "derive_both") else [None]
            rights = all_right_companions(model) if policy in ("derive_right", "derive_both") else [None]
        except CompanionError:
            vacuous[0] += 1
            return []
        variants = []
        for left, right in itertools.product(lefts, rights):
            variant = model
            if left is not None:
                variant = with_table(variant, "\\", left)
            if right is not None:
                variant = with_table(variant, "/", right)
            variants.append(variant)
        return variants

    return expand


def _reverify(lemma: LemmaSpec, found: Counterexample):
    for hypothesis in lemma.hypotheses:
        if check_constraint(found.algebra, hypothesis) is not None:
            raise MagmaError(f"{lemma.id}: reported counterexample does not satisfy {format_constraint(hypothesis)}")
    if check_constraint(found.checked or found.algebra, found.violated) is None:
        raise MagmaError(f"{lemma.id}: reported counterexample does not violate {format_constraint(found.violated)}")


def verify(
    lemma: Union[str, LemmaSpec],
    max_order: Optional[int] = None,
    budget: Optional[int] = None,
) -> VerificationReport:
    """Checks one lemma on every model of order 1..max_order (the lemma's default order when omitted)."""
    if isinstance(lemma, str):
        lemma = lookup(lemma)
    effective = max_order if max_order is not None else lemma.default_order
    started = time.perf_counter()
    examined: dict[int, int] = {}
    counterexample = None
    witness = None
    vacuous = [0]

    if lemma.kind == "implication":
        try:
            counterexample = find_counterexample(
                lemma.hypotheses,
                lemma.conclusions,
                effective,
                budget=budget,
                expand=_companion_expander(lemma, vacuous),
                examined=examined,
            )
        except SearchBudgetExceeded as exc:
            logger.warning("%s: %s", lemma.id, exc.detail)
            outcome = "inconclusive"
        else:
            if counterexample is not None:
                _reverify(lemma, counterexample)
                outcome = "counterexample"
            else:
                outcome = "verified"
    else:
        outcome = "absent"
        wanted = canonical_form(lemma.expected_witness).key() if lemma.expected_witness else None
        for order in range(1, effective + 1):
            cs = constraint_set(order, lemma.hypotheses + lemma.conclusions)
            found = search(cs, mode="all", up_to_iso=True, budget=budget, symmetry_breaking=True)
            examined[order] = found.count
            if found.status == "inconclusive":
                outcome = "inconclusive"
                break
            matches = [m for m in found.models if wanted is None or m.key() == wanted]
            if matches:
                witness = matches[0]
                outcome = "witnessed"
                break

    report = VerificationReport(
        lemma_id=lemma.id,
        paper_label=lemma.paper_label,
        kind=lemma.kind,
        requested_order=max_order,
        max_order=effective,
        models_examined=examined,
        outcome=outcome,
        counterexample=counterexample,
        witness=witness,
        vacuous=vacuous[0],
        elapsed_ms=(time.perf_counter() - started) * 1000,
        note=lemma.note,
    )
    logger.info(
        "%s up to order %d: %s (%d models, %.1f ms)",
        report.lemma_id, effective, outcome, sum(examined.values()), report.elapsed_ms,
    )
    return report


def _verify_worker(args) -> VerificationReport:
    lemma_id, max_order, budget = args
    return verify(lemma_id, max_order, budget)


def verify_all(
    max_order: Optional[int] = None,
    budget: Optional[int] = None,
    parallel: int = 1,
    progress: bool = False,
) -> list[VerificationReport]:
    """Verifies the whole catalog; reports come back in catalog order whatever `parallel` is."""
    lemmas = catalog()
    bar = tqdm(total=len(lemmas), desc="verify", unit="lemma", file=sys.stderr, disable=not progress)
    reports: list[VerificationReport] = []
    try:
        if parallel > 1:
            jobs = [(lemma.id, max_order, budget) for lemma in lemmas]
            with ProcessPoolExecutor(max_workers=parallel) as pool:
                for report in pool.map(_verify_worker, jobs):
                    reports.append(report)
                    bar.update()
        else:
            for lemma in lemmas:
                bar.set_postfix_str(lemma.id)
                reports.append(verify(lemma, max_order, budget))
                bar.update()
    finally:
        bar.close()
    return reports


def exit_code(reports: list[VerificationReport]) -> int:
    """1 when a claim failed, else 4 when something was inconclusive, else 0."""
    outcomes = {report.outcome for report in reports}
    if outcomes & {"counterexample", "absent"}:
        return 1
    if "inconclusive" in outcomes:
        return 4
    return 0


def _models(report: VerificationReport) -> int:
    return sum(report.models_examined.values())


def report_line(report: VerificationReport) -> str:
    return (
        f"{report.lemma_id} {report.outcome} 1..{report.max_order} "
        f"{_models(report)} {round(report.elapsed_ms)}"
    )


def text_report(reports: list[VerificationReport]) -> str:
    lines = []
    for report in reports:
        lines.append(report_line(report))
        found = report.counterexample
        if found is not None:
            lines.append(
                f"#   order {found.order}: {format_constraint(found.violated)} "
                f"fails at {found.witness.values() or found.witness.subject}"
            )
    total = sum(report.elapsed_ms for report in reports)
    lines.append(f"# {len(reports)} lemmas, {round(total)} ms total")
    lines.append(f"# {FINITE_CAVEAT}")
    return "\n".join(lines) + "\n"


def _tables(algebra: Algebra) -> dict:
    return {op: [list(row) for row in table] for op, table in algebra.tables.items()}


def _record(report: VerificationReport) -> dict:
    record = {
        "id": report.lemma_id,
        "label": report.paper_label,
        "kind": report.kind,
        "outcome": report.outcome,
        "requested_order": report.requested_order,
        "max_order": report.max_order,
        "models_examined": dict(report.models_examined),
        "vacuous": report.vacuous,
        "elapsed_ms": round(report.elapsed_ms, 1),
    }
    if report.counterexample is not None:
        found = report.counterexample
        record["counterexample"] = {
            "order": found.order,
            "violated": format_constraint(found.violated),
            "witness": dict(found.witness.assignment),
            "tables": _tables(found.checked or found.algebra),
        }
    if report.witness is not None:
        record["witness"] = {"order": report.witness.order, "tables": _tables(report.witness)}
    if report.note:
        record["note"] = report.note
    return record


def dump_yaml_report(reports: list[VerificationReport]) -> str:
    header = {
        "format": REPORT_FORMAT,
        "lemmas": len(reports),
        "outcomes": dict(sorted(Counter(report.outcome for report in reports).items())),
        "caveat": FINITE_CAVEAT,
    }
    return yaml.safe_dump_all(
        [header] + [_record(report) for report in reports],
        sort_keys=False,
        default_flow_style=None,
    )


def _derive(algebra: Algebra, op: str) -> Algebra:
    return left_companion(algebra) if op == "\\" else right_companion(algebra)


def _symbols(constraints) -> set:
    used = set()
    for constraint in constraints:
        if isinstance(constraint, IdentityConstraint):
            used |= operators(constraint.identity)
    return used


def check_lemma(algebra: Algebra, lemma: Union[str, LemmaSpec]) -> LemmaCheck:
    """Hypotheses and conclusions of `lemma` on one algebra; missing companion tables are derived."""
    if isinstance(lemma, str):
        lemma = lookup(lemma)
    failures: list[Witness] = []
    broken: set[str] = set()
    for part, constraints in (("hypotheses", lemma.hypotheses), ("conclusions", lemma.conclusions)):
        for op in sorted(_symbols(constraints) - set(algebra.tables)):
            try:
                algebra = _derive(algebra, op)
            except CompanionError as exc:
                failures.append(Witness(subject=f"companion {op}", detail=exc.detail))
                broken.add(part)

    def holds(part: str, constraints) -> bool:
        if part in broken:
            return False
        ok = True
        for constraint in constraints:
            witness = check_constraint(algebra, constraint)
            if witness is not None:
                failures.append(witness)
                ok = False
        return ok

    hypotheses_hold = holds("hypotheses", lemma.hypotheses)
    conclusions_hold = holds("conclusions", lemma.conclusions)
    return LemmaCheck(
        lemma_id=lemma.id,
        hypotheses_hold=hypotheses_hold,
        conclusions_hold=conclusions_hold,
        failures=failures,
    )
