from typing import Iterable, Optional


class MagmaError(Exception):
    """Base error; `exit_code` is what the CLI exits with when it escapes a command."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(MagmaError):
    exit_code = 2


class IdentityParseError(MagmaError):
    exit_code = 3

    def __init__(self, reason: str, offset: int, expected: Iterable[str] = (), line: Optional[int] = None):
        self.reason = reason
        self.offset = offset
        self.expected = frozenset(expected)
        self.line = line
        where = f"line {line}, offset {offset}" if line is not None else f"offset {offset}"
        if self.expected:
            detail = f"{reason} at {where} (expected one of: {', '.join(sorted(self.expected))})"
        else:
            detail = f"{reason} at {where}"
        super().__init__(detail)


class MissingEqualsError(IdentityParseError):
    pass


class ConstraintSyntaxError(MagmaError):
    exit_code = 3

    def __init__(self, detail: str, column: int):
        self.column = column
        super().__init__(f"{detail} (column {column})")


class TableFormatError(MagmaError):
    exit_code = 3

    def __init__(self, detail: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {detail}")


class EvaluationError(MagmaError):
    exit_code = 2


class ConstraintError(MagmaError):
    exit_code = 2


class CompanionError(MagmaError):
    exit_code = 1


class UnknownLemmaError(MagmaError):
    exit_code = 2


class SearchBudgetExceeded(MagmaError):
    exit_code = 4

    def __init__(self, budget: int, nodes: int):
        self.budget = budget
        self.nodes = nodes
        super().__init__(f"node budget {budget} exhausted after {nodes} nodes; result inconclusive")
