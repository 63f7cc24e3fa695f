from pydantic import BaseModel, ConfigDict, Field
from typing import Annotated, Literal, Optional, Union

from models.algebra import Algebra, Table, Witness
from models.term import Identity, Op

Predicate = Literal[
    "left_cancellative",
    "right_cancellative",
    "left_division",
    "right_division",
    "commutative",
    "associative",
    "has_left_identity",
    "has_right_identity",
    "has_two_sided_identity",
    "quasigroup",
    "surjective",
    "abelian_group",
]

Polarity = Literal["holds", "fails"]


class IdentityConstraint(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["identity"] = "identity"
    identity: Identity
    polarity: Polarity = "holds"


class StructuralConstraint(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["prop"] = "prop"
    predicate: Predicate
    polarity: Polarity = "holds"


Constraint = Annotated[Union[IdentityConstraint, StructuralConstraint], Field(discriminator="kind")]


class ConstraintSet(BaseModel):
    order: int = Field(ge=1)
    constraints: list[Constraint] = Field(default_factory=list)
    # "*" is always synthesized unless fixed; "\\" and "/" on demand
    synthesize: tuple[Op, ...] = ("*",)
    fixed: dict[Op, Table] = Field(default_factory=dict)


class SearchStats(BaseModel):
    nodes: int = 0
    models: int = 0
    elapsed_ms: float = 0.0


class SearchOutcome(BaseModel):
    status: Literal["complete", "inconclusive"] = "complete"
    models: list[Algebra] = Field(default_factory=list)
    count: int = 0
    stats: SearchStats = Field(default_factory=SearchStats)


class Counterexample(BaseModel):
    order: int
    algebra: Algebra
    violated: Constraint
    witness: Witness
    # the algebra the violation was observed on, when companions were added to `algebra`
    checked: Optional[Algebra] = None
