from pydantic import BaseModel, ConfigDict, Field
from typing import Literal, Optional

from models.algebra import Algebra, Witness
from models.constraint import Constraint, Counterexample

CompanionPolicy = Literal["none", "derive_left", "derive_right", "derive_both"]
Outcome = Literal["verified", "counterexample", "inconclusive", "witnessed", "absent"]


class LemmaSpec(BaseModel):
    """One catalog entry.

    kind "implication": every model of the hypotheses satisfies every conclusion.
    kind "existence": some model satisfies hypotheses and conclusions together;
    `expected_witness` pins which one (compared up to isomorphism).
    """

    model_config = ConfigDict(frozen=True)

    id: str
    paper_label: str
    kind: Literal["implication", "existence"] = "implication"
    hypotheses: list[Constraint]
    conclusions: list[Constraint]
    companion_policy: CompanionPolicy = "none"
    # order used when the caller gives none
    default_order: int = Field(default=3, ge=1)
    expected_witness: Optional[Algebra] = None
    note: Optional[str] = None


class VerificationReport(BaseModel):
    lemma_id: str
    paper_label: str
    kind: Literal["implication", "existence"]
    requested_order: Optional[int] = None
    max_order: int
    models_examined: dict[int, int] = Field(default_factory=dict)
    outcome: Outcome
    counterexample: Optional[Counterexample] = None
    witness: Optional[Algebra] = None
    # hypothesis models with no companion table, which satisfy the implication vacuously
    vacuous: int = 0
    elapsed_ms: float = 0.0
    note: Optional[str] = None


class LemmaCheck(BaseModel):
    """A lemma evaluated on one given algebra."""

    lemma_id: str
    hypotheses_hold: bool
    conclusions_hold: bool
    failures: list[Witness] = Field(default_factory=list)
