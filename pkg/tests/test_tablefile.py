import pytest

from utils.errors import TableFormatError
from utils.tablefile import dumps, loads, read_table, write_table
from utils.zoo import cyclic_group, left_projection


def test_tarex1_round_trip(tarex1_path, tmp_path):
    algebra = read_table(tarex1_path)
    assert algebra == left_projection(2)
    target = tmp_path / "copy.mag"
    write_table(algebra, target)
    assert read_table(target) == algebra


def test_z3_file_matches_cyclic_group(z3_path):
    assert read_table(z3_path) == cyclic_group(3)


def test_dumps_layout():
    assert dumps(left_projection(2)) == "magma 1\norder 2\nop *\n0 0\n1 1\nop /\n0 0\n1 1\n"


def test_comments_and_blank_lines_are_skipped():
    text = "# c\nmagma 1\n\norder 1\n# table\nop *\n0\n"
    assert loads(text).tables["*"] == ((0,),)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("magma 2\norder 1\nop *\n0\n", 1, "magma 1"),
        ("magma 1\norder 0\nop *\n0\n", 2, "order"),
        ("magma 1\norder 2\nop *\n0 1\n1 2\n", 5, "outside"),
        ("magma 1\norder 2\nop *\n0 1\n1\n", 5, "entries"),
        ("magma 1\norder 2\nop *\n0 1\n1 x\n", 5, "not a non-negative integer"),
        ("magma 1\norder 1\nop *\n0\nop *\n0\n", 5, "duplicate"),
        ("magma 1\norder 1\nop /\n0\n", 4, "'op *'"),
        ("magma 1\norder 2\nop *\n0 1\nop /\n0 1\n1 0\n", 3, "rows"),
        ("magma 1\norder 1\nop +\n0\n", 3, "op <sym>"),
    ],
)
def test_format_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(TableFormatError) as info:
        loads(text)
    assert info.value.line == line
    assert fragment in info.value.detail
    assert info.value.exit_code == 3


def test_non_ascii_file_rejected(tmp_path):
    path = tmp_path / "bad.mag"
    path.write_bytes("magma 1\norder 1\nop *\n0 é\n".encode("utf-8"))
    with pytest.raises(TableFormatError):
        read_table(path)
