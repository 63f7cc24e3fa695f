"""Small named algebras: the sample tables and the modular examples reachable through `check --builtin`."""
from models.algebra import Algebra


def _table(n: int, op) -> tuple:
    return tuple(tuple(op(x, y) % n for y in range(n)) for x in range(n))


def cyclic_group(n: int) -> Algebra:
    """Z_n under addition, with both divisions."""
    return Algebra(
        order=n,
        tables={
            "*": _table(n, lambda x, y: x + y),
            "\\": _table(n, lambda x, y: y - x),
            "/": _table(n, lambda y, x: y - x),
        },
    )


def left_projection(n: int = 2) -> Algebra:
    """x * y = x; with n = 2 and its own table as '/', the standard non-commutative Tarski groupoid."""
    table = _table(n, lambda x, y: x)
    return Algebra(order=n, tables={"*": table, "/": table})


def right_projection(n: int = 2) -> Algebra:
    return Algebra(order=n, tables={"*": _table(n, lambda x, y: y)})


def affine(n: int, a: int, b: int) -> Algebra:
    """x * y = (a*x + b*y) mod n; affine(n, 1, 3) is the modular form of x + 3y."""
    return Algebra(order=n, tables={"*": _table(n, lambda x, y: a * x + b * y)})


def halving(n: int) -> Algebra:
    """x * y = (x // 2 + 3*y) mod n."""
    return Algebra(order=n, tables={"*": _table(n, lambda x, y: x // 2 + 3 * y)})


BUILTINS = {
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "z5": lambda: cyclic_group(5),
    "tarex1": lambda: left_projection(2),
    "affine4": lambda: affine(4, 1, 3),
    "halving5": lambda: halving(5),
}
