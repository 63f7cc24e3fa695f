"""Shared fixtures and naive generate-and-test oracles.

The oracles work on plain tuple tables and never call into utils/, so they
can be used to check the search engine and the property evaluator.
"""
import itertools
from pathlib import Path

import pytest
from click.testing import CliRunner

ROOT = Path(__file__).resolve().parent.parent
TABLES = ROOT / "tables"


def all_tables(n):
    for flat in itertools.product(range(n), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def naive_associative(t):
    n = len(t)
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x, y, z in itertools.product(range(n), repeat=3))


def naive_commutative(t):
    n = len(t)
    return all(t[x][y] == t[y][x] for x, y in itertools.product(range(n), repeat=2))


def naive_quasigroup(t):
    n = len(t)
    full = set(range(n))
    return all(set(row) == full for row in t) and all({t[x][y] for x in range(n)} == full for y in range(n))


def naive_law(law):
    """Oracle for a three-variable law given as a function (mul, x, y, z) -> (lhs, rhs)."""
    def check(t):
        n = len(t)
        mul = lambda a, b: t[a][b]
        for x, y, z in itertools.product(range(n), repeat=3):
            lhs, rhs = law(mul, x, y, z)
            if lhs != rhs:
                return False
        return True
    return check


ORACLES = {
    "associative": naive_associative,
    "commutative": naive_commutative,
    "quasigroup": naive_quasigroup,
}


def oracle_tables(n, check):
    return [t for t in all_tables(n) if check(t)]


def oracle_count(n, check):
    return sum(1 for t in all_tables(n) if check(t))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def tarex1_path():
    return str(TABLES / "tarex1.mag")


@pytest.fixture
def z3_path():
    return str(TABLES / "z3.mag")
