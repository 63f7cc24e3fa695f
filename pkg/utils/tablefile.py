"""Table file codec.

    magma 1
    order <n>
    op <sym>          one block per symbol, "*" required
    <n rows of n integers>

`#` lines are comments and blank lines are ignored anywhere.
"""
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from models.algebra import Algebra
from models.term import OPS
from utils.errors import TableFormatError

HEADER = "magma 1"


def loads(text: str) -> Algebra:
    lines = [
        (lineno, line.strip())
        for lineno, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise TableFormatError("empty table file", 1)
    lineno, header = lines[0]
    if header != HEADER:
        raise TableFormatError(f"expected {HEADER!r}, found {header!r}", lineno)
    if len(lines) < 2:
        raise TableFormatError("missing 'order <n>' line", lineno)
    lineno, order_line = lines[1]
    parts = order_line.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise TableFormatError(f"expected 'order <n>' with n >= 1, found {order_line!r}", lineno)
    n = int(parts[1])

    tables: dict[str, tuple] = {}
    i = 2
    while i < len(lines):
        lineno, line = lines[i]
        parts = line.split()
        if len(parts) != 2 or parts[0] != "op" or parts[1] not in OPS:
            raise TableFormatError(f"expected 'op <sym>' with sym one of * \\ /, found {line!r}", lineno)
        symbol = parts[1]
        if symbol in tables:
            raise TableFormatError(f"duplicate block for {symbol!r}", lineno)
        rows = []
        for lineno, line in lines[i + 1:i + 1 + n]:
            if line.startswith("op"):
                break
            rows.append(_parse_row(line, n, lineno))
        if len(rows) != n:
            raise TableFormatError(f"block {symbol!r} has {len(rows)} rows, expected {n}", lines[i][0])
        tables[symbol] = tuple(rows)
        i += 1 + n
    if "*" not in tables:
        raise TableFormatError("missing required 'op *' block", lines[-1][0])
    try:
        return Algebra(order=n, tables=tables)
    except ValidationError as exc:
        raise TableFormatError(str(exc.errors()[0]["msg"]), lines[0][0]) from exc


def _parse_row(line: str, n: int, lineno: int) -> tuple[int, ...]:
    parts = line.split()
    if len(parts) != n:
        raise TableFormatError(f"row has {len(parts)} entries, expected {n}", lineno)
    row = []
    for part in parts:
        if not part.isdigit():
            raise TableFormatError(f"entry {part!r} is not a non-negative integer", lineno)
        value = int(part)
        if value >= n:
            raise TableFormatError(f"entry {value} outside 0..{n - 1}", lineno)
        row.append(value)
    return tuple(row)


def dumps(algebra: Algebra) -> str:
    lines = [HEADER, f"order {algebra.order}"]
    for symbol in OPS:
        table = algebra.tables.get(symbol)
        if table is None:
            continue
        lines.append(f"op {symbol}")
        lines.extend(" ".join(str(v) for v in row) for row in table)
    return "\n".join(lines) + "\n"


def read_table(path: Union[str, Path]) -> Algebra:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise TableFormatError("table files are ASCII", 1) from exc
    return loads(text)


def write_table(algebra: Algebra, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(algebra), encoding="ascii")
