import itertools
import logging
from typing import Callable, Iterator, Literal, Optional, Sequence, Union

from models.algebra import Algebra, PropertyReport, Table, Witness
from models.constraint import Constraint, IdentityConstraint, Predicate
from models.term import OPS, Identity, Term, Variable, VariantClass
from utils.errors import CompanionError, EvaluationError
from utils.identity import canonicalize, format_identity, operators, variables

logger = logging.getLogger(__name__)

Assignment = dict[str, int]


def make_algebra(table: Sequence[Sequence[int]], **companions: Sequence[Sequence[int]]) -> Algebra:
    """Builds an algebra from a `*` table; `ldiv=` and `rdiv=` add the division tables."""
    tables = {"*": table}
    if "ldiv" in companions:
        tables["\\"] = companions["ldiv"]
    if "rdiv" in companions:
        tables["/"] = companions["rdiv"]
    return Algebra(order=len(table), tables=tables)


def with_table(algebra: Algebra, op: str, table: Table) -> Algebra:
    return Algebra.model_construct(order=algebra.order, tables={**algebra.tables, op: table})


# Evaluation

def _require_tables(algebra: Algebra, node: Union[Term, Identity]):
    missing = operators(node) - algebra.tables.keys()
    if missing:
        raise EvaluationError(f"no table for operation(s) {', '.join(sorted(missing))}")


def eval_term(algebra: Algebra, term: Term, assignment: Assignment) -> int:
    _require_tables(algebra, term)

    def walk(node: Term) -> int:
        if isinstance(node, Variable):
            try:
                return assignment[node.name]
            except KeyError:
                raise EvaluationError(f"variable {node.name!r} is unbound") from None
        return algebra.tables[node.op][walk(node.left)][walk(node.right)]

    return walk(term)


def _compile(term: Term, index: dict[str, int], tables: dict) -> Callable[[tuple], int]:
    if isinstance(term, Variable):
        slot = index[term.name]
        return lambda env: env[slot]
    table = tables[term.op]
    left = _compile(term.left, index, tables)
    right = _compile(term.right, index, tables)
    return lambda env: table[left(env)][right(env)]


def satisfies(algebra: Algebra, identity: Identity) -> Union[Literal[True], Witness]:
    """True, or the lexicographically first falsifying assignment."""
    _require_tables(algebra, identity)
    names = variables(identity)
    index = {name: i for i, name in enumerate(names)}
    lhs = _compile(identity.lhs, index, algebra.tables)
    rhs = _compile(identity.rhs, index, algebra.tables)
    for env in itertools.product(range(algebra.order), repeat=len(names)):
        if lhs(env) != rhs(env):
            return Witness(subject=format_identity(identity), assignment=dict(zip(names, env)))
    return True


# Structural predicates; each returns None when the predicate holds, else a witness assignment

def _cols(t: Table) -> list[tuple[int, ...]]:
    return list(zip(*t))


def _duplicate(lines) -> Optional[Assignment]:
    for a, line in enumerate(lines):
        first_at: dict[int, int] = {}
        for b, value in enumerate(line):
            if value in first_at:
                return {"a": a, "b": first_at[value], "c": b}
            first_at[value] = b
    return None


def _missing(lines, n: int) -> Optional[Assignment]:
    for a, line in enumerate(lines):
        present = set(line)
        if len(present) < n:
            y = min(set(range(n)) - present)
            return {"a": a, "y": y}
    return None


def left_identities(t: Table) -> list[int]:
    n = len(t)
    return [f for f in range(n) if all(t[f][x] == x for x in range(n))]


def right_identities(t: Table) -> list[int]:
    n = len(t)
    return [e for e in range(n) if all(t[x][e] == x for x in range(n))]


def _commutative(t: Table) -> Optional[Assignment]:
    n = len(t)
    for x in range(n):
        for y in range(x + 1, n):
            if t[x][y] != t[y][x]:
                return {"x": x, "y": y}
    return None


def _associative(t: Table) -> Optional[Assignment]:
    n = len(t)
    for x in range(n):
        row = t[x]
        for y in range(n):
            xy = row[y]
            for z in range(n):
                if row[t[y][z]] != t[xy][z]:
                    return {"x": x, "y": y, "z": z}
    return None


def _surjective(t: Table) -> Optional[Assignment]:
    image = {v for row in t for v in row}
    missing = set(range(len(t))) - image
    return {"y": min(missing)} if missing else None


def _present(found: list[int]) -> Optional[Assignment]:
    return None if found else {}


def _two_sided(t: Table) -> Optional[Assignment]:
    return _present(sorted(set(left_identities(t)) & set(right_identities(t))))


def _first(*checks: Callable[[], Optional[Assignment]]) -> Optional[Assignment]:
    for check in checks:
        witness = check()
        if witness is not None:
            return witness
    return None


def _quasigroup(t: Table) -> Optional[Assignment]:
    n = len(t)
    return _first(
        lambda: _duplicate(t),
        lambda: _duplicate(_cols(t)),
        lambda: _missing(t, n),
        lambda: _missing(_cols(t), n),
    )


_PREDICATES: dict[str, Callable[[Table], Optional[Assignment]]] = {
    "left_cancellative": _duplicate,
    "right_cancellative": lambda t: _duplicate(_cols(t)),
    "left_division": lambda t: _missing(t, len(t)),
    "right_division": lambda t: _missing(_cols(t), len(t)),
    "commutative": _commutative,
    "associative": _associative,
    "surjective": _surjective,
    "has_left_identity": lambda t: _present(left_identities(t)),
    "has_right_identity": lambda t: _present(right_identities(t)),
    "has_two_sided_identity": _two_sided,
    "quasigroup": _quasigroup,
    "abelian_group": lambda t: _first(
        lambda: _quasigroup(t),
        lambda: _associative(t),
        lambda: _commutative(t),
        lambda: _two_sided(t),
    ),
}


def predicate_witness(algebra: Algebra, predicate: Predicate) -> Optional[Assignment]:
    return _PREDICATES[predicate](algebra.tables["*"])


def property_report(algebra: Algebra) -> PropertyReport:
    t = algebra.tables["*"]
    n = algebra.order
    left_cancellative = all(len(set(row)) == n for row in t)
    left_division = all(set(row) == set(range(n)) for row in t)
    cols = _cols(t)
    right_cancellative = all(len(set(col)) == n for col in cols)
    right_division = all(set(col) == set(range(n)) for col in cols)
    lefts = left_identities(t)
    rights = right_identities(t)
    both = sorted(set(lefts) & set(rights))
    quasigroup_like = left_cancellative and right_cancellative and left_division and right_division
    commutative = _commutative(t) is None
    associative = _associative(t) is None
    two_sided = both[0] if both else None
    return PropertyReport(
        left_cancellative=left_cancellative,
        right_cancellative=right_cancellative,
        left_division=left_division,
        right_division=right_division,
        quasigroup_like=quasigroup_like,
        commutative=commutative,
        associative=associative,
        surjective=_surjective(t) is None,
        left_identities=lefts,
        right_identities=rights,
        two_sided_identity=two_sided,
        abelian_group=quasigroup_like and associative and commutative and two_sided is not None,
    )


def check_constraint(algebra: Algebra, constraint: Constraint) -> Optional[Witness]:
    """Independent evaluator for one constraint: None when it is met, else a witness."""
    if isinstance(constraint, IdentityConstraint):
        result = satisfies(algebra, constraint.identity)
        text = format_identity(constraint.identity)
        if constraint.polarity == "holds":
            return None if result is True else result
        if result is True:
            return Witness(subject=f"!{text}", detail="holds for every assignment")
        return None
    found = predicate_witness(algebra, constraint.predicate)
    if constraint.polarity == "holds":
        if found is None:
            return None
        return Witness(subject=constraint.predicate, assignment=found, detail="predicate fails")
    if found is None:
        return Witness(subject=f"!{constraint.predicate}", detail="predicate holds")
    return None


# Companion operations

def _left_candidates(algebra: Algebra) -> list[list[set[int]]]:
    t = algebra.tables["*"]
    n = algebra.order
    division = _missing(t, n) is None
    cancellative = _duplicate(t) is None
    if not (division or cancellative):
        raise CompanionError("'*' is neither left division nor left cancellative; no '\\' companion exists")
    cells = [[set(range(n)) for _ in range(n)] for _ in range(n)]
    for x in range(n):
        # division: x * (x \ y) = y
        if division:
            for y in range(n):
                cells[x][y] &= {z for z in range(n) if t[x][z] == y}
        # cancellation: x \ (x * y) = y
        if cancellative:
            for y in range(n):
                cells[x][t[x][y]] &= {y}
    return cells


def _right_candidates(algebra: Algebra) -> list[list[set[int]]]:
    t = algebra.tables["*"]
    n = algebra.order
    cols = _cols(t)
    division = _missing(cols, n) is None
    cancellative = _duplicate(cols) is None
    if not (division or cancellative):
        raise CompanionError("'*' is neither right division nor right cancellative; no '/' companion exists")
    # cells[y][x] holds the candidates for y / x
    cells = [[set(range(n)) for _ in range(n)] for _ in range(n)]
    for x in range(n):
        # division: (y / x) * x = y
        if division:
            for y in range(n):
                cells[y][x] &= {z for z in range(n) if t[z][x] == y}
        # cancellation: (y * x) / x = y
        if cancellative:
            for y in range(n):
                cells[t[y][x]][x] &= {y}
    return cells


def _least_fill(cells: list[list[set[int]]], op: str) -> Table:
    if any(not cell for row in cells for cell in row):
        raise CompanionError(f"no {op!r} table satisfies the required division laws")
    return tuple(tuple(min(cell) for cell in row) for row in cells)


def _every_fill(cells: list[list[set[int]]]) -> list[Table]:
    n = len(cells)
    flat = [sorted(cell) for row in cells for cell in row]
    return [
        tuple(tuple(choice[i * n:(i + 1) * n]) for i in range(n))
        for choice in itertools.product(*flat)
    ]


def left_companion(algebra: Algebra) -> Algebra:
    return with_table(algebra, "\\", _least_fill(_left_candidates(algebra), "\\"))


def right_companion(algebra: Algebra) -> Algebra:
    return with_table(algebra, "/", _least_fill(_right_candidates(algebra), "/"))


def all_left_companions(algebra: Algebra) -> list[Table]:
    return _every_fill(_left_candidates(algebra))


def all_right_companions(algebra: Algebra) -> list[Table]:
    return _every_fill(_right_candidates(algebra))


# Isomorphism

def _relabelled_key(algebra: Algebra, perm: Sequence[int]) -> tuple:
    n = algebra.order
    inverse = [0] * n
    for i, p in enumerate(perm):
        inverse[p] = i
    key = []
    for op in OPS:
        table = algebra.tables.get(op)
        if table is None:
            continue
        for a in range(n):
            row = table[inverse[a]]
            key.extend(perm[row[inverse[b]]] for b in range(n))
    return tuple(key)


def _from_key(algebra: Algebra, key: tuple) -> Algebra:
    n = algebra.order
    tables = {}
    offset = 0
    for op in OPS:
        if op in algebra.tables:
            tables[op] = tuple(tuple(key[offset + i * n:offset + (i + 1) * n]) for i in range(n))
            offset += n * n
    return Algebra.model_construct(order=n, tables=tables)


def relabel(algebra: Algebra, perm: Sequence[int]) -> Algebra:
    """Image of `algebra` under the bijection i -> perm[i]."""
    return _from_key(algebra, _relabelled_key(algebra, perm))


def canonical_form(algebra: Algebra) -> Algebra:
    best = min(_relabelled_key(algebra, perm) for perm in itertools.permutations(range(algebra.order)))
    return _from_key(algebra, best)


def is_isomorphic(a: Algebra, b: Algebra) -> bool:
    if a.order != b.order or a.tables.keys() != b.tables.keys():
        return False
    return canonical_form(a).key() == canonical_form(b).key()


def orbit_size(algebra: Algebra) -> int:
    """Number of distinct labelled algebras isomorphic to `algebra`."""
    return len({_relabelled_key(algebra, perm) for perm in itertools.permutations(range(algebra.order))})


# Exhaustive helpers

def all_algebras(n: int) -> Iterator[Algebra]:
    """Every `*` table of order n, in row-major lexicographic order."""
    for flat in itertools.product(range(n), repeat=n * n):
        table = tuple(flat[i * n:(i + 1) * n] for i in range(n))
        yield Algebra.model_construct(order=n, tables={"*": table})


def semantic_classes(identities: list[Identity], max_order: int) -> list[VariantClass]:
    """Groups identities that hold in exactly the same groupoids of order 1..max_order."""
    vectors: list[list[bool]] = [[] for _ in identities]
    for n in range(1, max_order + 1):
        for algebra in all_algebras(n):
            for i, identity in enumerate(identities):
                vectors[i].append(satisfies(algebra, identity) is True)
    groups: dict[tuple, list[int]] = {}
    for i, vector in enumerate(vectors):
        groups.setdefault(tuple(vector), []).append(i)
    logger.info("semantic grouping up to order %d: %d classes", max_order, len(groups))
    return [
        VariantClass(representative=canonicalize(identities[members[0]]), members=members)
        for members in groups.values()
    ]
