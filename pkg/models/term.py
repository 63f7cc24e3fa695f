from pydantic import BaseModel, ConfigDict, Field
from typing import Literal, Union

# Text spellings of the three operation symbols: product, left division, right division
Op = Literal["*", "\\", "/"]
OPS: tuple = ("*", "\\", "/")


class Variable(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(pattern=r"^[a-z][a-z0-9]*$")


class App(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: Op
    left: "Term"
    right: "Term"


Term = Union[Variable, App]
App.model_rebuild()


class Identity(BaseModel):
    """lhs = rhs, universally quantified over every variable of either side."""

    model_config = ConfigDict(frozen=True)

    lhs: Term
    rhs: Term


class VariantClass(BaseModel):
    """One class of a syntactic partition; `members` index into the classified list."""

    representative: Identity
    members: list[int]
