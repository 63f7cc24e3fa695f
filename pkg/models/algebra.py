from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Optional

from models.term import OPS, Op

Table = tuple[tuple[int, ...], ...]


class Algebra(BaseModel):
    """Carrier {0..order-1} with one table per operation symbol; tables[op][i][j] = i op j."""

    model_config = ConfigDict(frozen=True)

    order: int = Field(ge=1)
    tables: dict[Op, Table]

    @model_validator(mode="after")
    def check_tables(self):
        if "*" not in self.tables:
            raise ValueError("the '*' table is mandatory")
        n = self.order
        for op, table in self.tables.items():
            if len(table) != n or any(len(row) != n for row in table):
                raise ValueError(f"table {op!r} is not {n}x{n}")
            for row in table:
                for entry in row:
                    if not 0 <= entry < n:
                        raise ValueError(f"table {op!r} has entry {entry} outside 0..{n - 1}")
        return self

    def key(self) -> tuple:
        """Row-major contents of the present tables in symbol order; orders algebras."""
        return tuple(
            entry
            for op in OPS
            if op in self.tables
            for row in self.tables[op]
            for entry in row
        )


class Witness(BaseModel):
    """Concrete failure of an identity or predicate; `assignment` is empty for absence claims."""

    subject: str
    assignment: dict[str, int] = Field(default_factory=dict)
    detail: Optional[str] = None

    def values(self) -> str:
        return ",".join(str(v) for v in self.assignment.values())


class PropertyReport(BaseModel):
    left_cancellative: bool
    right_cancellative: bool
    left_division: bool
    right_division: bool
    quasigroup_like: bool
    commutative: bool
    associative: bool
    surjective: bool
    left_identities: list[int]
    right_identities: list[int]
    two_sided_identity: Optional[int] = None
    abelian_group: bool
