"""Finite model search over operation tables.

Cells of every table are numbered `base(op) + i*n + j` with the tables laid
out in symbol order (* then \\ then /). Domains are int bitmasks. Every
change to the state goes on a trail so backtracking is a truncation.

Propagation, all sound:
  - row / column all-different when cancellation, division or quasigroup is asserted
  - mirrored cells when commutativity is asserted
  - ground instances of asserted identities: an instance is re-examined when
    the cell it is blocked on gets a value; when only one cell blocks it, that
    cell's domain is filtered to the values that do not falsify the instance.
Everything else (negations, identity elements, surjectivity) is checked on
completed tables, and every emitted model is re-checked by the independent
evaluator in utils.magma.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, Literal, Optional, Sequence, Union

from models.algebra import Algebra
from models.constraint import (
    ConstraintSet,
    Constraint,
    Counterexample,
    IdentityConstraint,
    SearchOutcome,
    SearchStats,
    StructuralConstraint,
)
from models.term import OPS, Term, Variable
from utils.errors import ConstraintError, SearchBudgetExceeded
from utils.identity import equation, format_identity, operators, variables
from utils.magma import canonical_form, check_constraint

logger = logging.getLogger(__name__)

SYMBOL_ORDER = OPS
Mode = Literal["first", "all", "count"]

_ROW_PREDICATES = {"left_cancellative", "left_division", "quasigroup", "abelian_group"}
_COL_PREDICATES = {"right_cancellative", "right_division", "quasigroup", "abelian_group"}
_MIRROR_PREDICATES = {"commutative", "abelian_group"}
_ASSOC_PREDICATES = {"associative", "abelian_group"}

# trail entry kinds
_VAL, _DOM, _WATCH, _APPEND = range(4)


def constraint_set(
    order: int,
    constraints: Iterable[Constraint],
    fixed: Optional[dict] = None,
) -> ConstraintSet:
    """ConstraintSet whose synthesized symbols are `*` plus every symbol an identity mentions, minus fixed ones."""
    constraints = list(constraints)
    fixed = dict(fixed or {})
    used = {"*"}
    for constraint in constraints:
        if isinstance(constraint, IdentityConstraint):
            used |= operators(constraint.identity)
    synthesize = tuple(op for op in SYMBOL_ORDER if op in used and op not in fixed)
    return ConstraintSet(order=order, constraints=constraints, synthesize=synthesize, fixed=fixed)


def _check_symbols(cs: ConstraintSet):
    available = set(cs.synthesize) | set(cs.fixed)
    if "*" not in available:
        raise ConstraintError("the '*' table must be synthesized or fixed")
    for constraint in cs.constraints:
        if isinstance(constraint, IdentityConstraint):
            missing = operators(constraint.identity) - available
            if missing:
                raise ConstraintError(
                    f"{format_identity(constraint.identity)} uses {', '.join(sorted(missing))}, "
                    "which is neither searched nor fixed"
                )


def _compile(term: Term, index: dict[str, int], base: dict[str, int]):
    if isinstance(term, Variable):
        return index[term.name]
    return (base[term.op], _compile(term.left, index, base), _compile(term.right, index, base))


def _value(node, env, vals, n):
    """Value of a compiled term, or -1 - cell for the first undecided cell it reads."""
    if node.__class__ is int:
        return env[node]
    base, left, right = node
    a = _value(left, env, vals, n)
    if a < 0:
        return a
    b = _value(right, env, vals, n)
    if b < 0:
        return b
    cell = base + a * n + b
    v = vals[cell]
    return v if v >= 0 else -1 - cell


class SearchState:
    """Partial tables, candidate domains and the propagation machinery for one ConstraintSet."""

    def __init__(self, cs: ConstraintSet, symmetry_breaking: bool = False):
        _check_symbols(cs)
        n = cs.order
        self.cs = cs
        self.n = n
        self.symbols = [op for op in SYMBOL_ORDER if op in cs.synthesize or op in cs.fixed]
        self.base = {op: k * n * n for k, op in enumerate(self.symbols)}
        size = len(self.symbols) * n * n
        self.size = size
        self.vals = [-1] * size
        self.doms = [(1 << n) - 1] * size
        self.bits = [tuple(v for v in range(n) if mask >> v & 1) for mask in range(1 << n)]
        self.watches: list[list[int]] = [[] for _ in range(size)]
        self.trail: list[tuple] = []
        self.peers: list[tuple[int, ...]] = [()] * size
        self.mirror = [-1] * size
        self.instances: list[tuple] = []
        self.free = [
            self.base[op] + k
            for op in self.symbols
            if op in cs.synthesize and op not in cs.fixed
            for k in range(n * n)
        ]
        self.nodes = 0
        self.symmetry_breaking = symmetry_breaking and not cs.fixed and n >= 2
        self._compile_constraints()

    def cell(self, op: str, i: int, j: int) -> int:
        return self.base[op] + i * self.n + j

    def candidates(self, op: str, i: int, j: int) -> set[int]:
        return set(self.bits[self.doms[self.cell(op, i, j)]])

    def _compile_constraints(self):
        n = self.n
        positive = {
            c.predicate
            for c in self.cs.constraints
            if isinstance(c, StructuralConstraint) and c.polarity == "holds"
        }
        identities = [
            c.identity
            for c in self.cs.constraints
            if isinstance(c, IdentityConstraint) and c.polarity == "holds"
        ]
        if positive & _ASSOC_PREDICATES:
            identities.append(equation("associative"))

        star = self.base["*"]
        rows = bool(positive & _ROW_PREDICATES)
        cols = bool(positive & _COL_PREDICATES)
        if rows or cols:
            for i in range(n):
                for j in range(n):
                    peers = []
                    if rows:
                        peers += [star + i * n + k for k in range(n) if k != j]
                    if cols:
                        peers += [star + k * n + j for k in range(n) if k != i]
                    self.peers[star + i * n + j] = tuple(peers)
        if positive & _MIRROR_PREDICATES:
            for i in range(n):
                for j in range(n):
                    self.mirror[star + i * n + j] = star + j * n + i

        for identity in identities:
            if identity.lhs == identity.rhs:
                continue
            names = variables(identity)
            index = {name: k for k, name in enumerate(names)}
            lhs = _compile(identity.lhs, index, self.base)
            rhs = _compile(identity.rhs, index, self.base)
            for env in _assignments(n, len(names)):
                self.instances.append((lhs, rhs, env))

    # trail-recorded mutations

    def _restrict(self, cell: int, mask: int):
        self.trail.append((_DOM, cell, self.doms[cell]))
        self.doms[cell] = mask

    def _watch(self, cell: int, iid: int):
        self.watches[cell].append(iid)
        self.trail.append((_APPEND, cell))

    def undo(self, mark: int):
        trail, vals, doms, watches = self.trail, self.vals, self.doms, self.watches
        while len(trail) > mark:
            entry = trail.pop()
            kind = entry[0]
            if kind == _VAL:
                vals[entry[1]] = -1
                doms[entry[1]] = entry[2]
            elif kind == _DOM:
                doms[entry[1]] = entry[2]
            elif kind == _WATCH:
                watches[entry[1]] = entry[2]
            else:
                watches[entry[1]].pop()

    # propagation

    def _revisit(self, iid: int, queue: list) -> bool:
        lhs, rhs, env = self.instances[iid]
        vals, n = self.vals, self.n
        a = _value(lhs, env, vals, n)
        b = _value(rhs, env, vals, n)
        if a >= 0 and b >= 0:
            return a == b
        if a < 0 and b < 0 and a != b:
            self._watch(min(-1 - a, -1 - b), iid)
            return True
        cell = -1 - (a if a < 0 else b)
        dom = self.doms[cell]
        keep = 0
        for v in self.bits[dom]:
            vals[cell] = v
            x = _value(lhs, env, vals, n)
            y = _value(rhs, env, vals, n)
            if x < 0 or y < 0 or x == y:
                keep |= 1 << v
        vals[cell] = -1
        if not keep:
            return False
        if keep != dom:
            self._restrict(cell, keep)
            if keep & (keep - 1) == 0:
                queue.append((cell, keep.bit_length() - 1))
        self._watch(cell, iid)
        return True

    def propagate(self, queue: list) -> bool:
        """Applies queued (cell, value) assignments and everything they force; False on contradiction."""
        vals, doms, peers, mirror, watches = self.vals, self.doms, self.peers, self.mirror, self.watches
        while queue:
            cell, v = queue.pop()
            current = vals[cell]
            if current >= 0:
                if current != v:
                    return False
                continue
            bit = 1 << v
            if not doms[cell] & bit:
                return False
            self.trail.append((_VAL, cell, doms[cell]))
            vals[cell] = v
            doms[cell] = bit
            # row and column stay all-different
            for peer in peers[cell]:
                pv = vals[peer]
                if pv == v:
                    return False
                if pv < 0 and doms[peer] & bit:
                    mask = doms[peer] & ~bit
                    if not mask:
                        return False
                    self._restrict(peer, mask)
                    if mask & (mask - 1) == 0:
                        queue.append((peer, mask.bit_length() - 1))
            # commutative twin
            twin = mirror[cell]
            if twin >= 0 and twin != cell:
                if vals[twin] >= 0:
                    if vals[twin] != v:
                        return False
                elif not doms[twin] & bit:
                    return False
                else:
                    queue.append((twin, v))
            # identity instances waiting on this cell
            pending = watches[cell]
            if pending:
                watches[cell] = []
                self.trail.append((_WATCH, cell, pending))
                for iid in pending:
                    if not self._revisit(iid, queue):
                        return False
        return True

    def assign(self, op: str, i: int, j: int, value: int) -> bool:
        return self.propagate([(self.cell(op, i, j), value)])

    def start(self) -> bool:
        """Root propagation: fixed tables, symmetry reduction and every identity instance."""
        n = self.n
        queue = [
            (self.base[op] + i * n + j, value)
            for op, table in self.cs.fixed.items()
            for i, row in enumerate(table)
            for j, value in enumerate(row)
        ]
        if self.symmetry_breaking:
            # every isomorphism class has a member with 0*0 in {0, 1}
            self._restrict(self.base["*"], self.doms[self.base["*"]] & 0b11)
        if not self.propagate(queue):
            return False
        for iid in range(len(self.instances)):
            if not self._revisit(iid, queue):
                return False
        return self.propagate(queue)

    # enumeration

    def _algebra(self) -> Algebra:
        n = self.n
        tables = {}
        for op in self.symbols:
            base = self.base[op]
            tables[op] = tuple(tuple(self.vals[base + i * n:base + (i + 1) * n]) for i in range(n))
        return Algebra.model_construct(order=n, tables=tables)

    def first_branch(self) -> Optional[tuple[int, tuple[int, ...]]]:
        for cell in self.free:
            if self.vals[cell] < 0:
                return cell, self.bits[self.doms[cell]]
        return None

    def models(self, budget: Optional[int] = None) -> Iterator[Algebra]:
        """Depth-first over free cells in order, values ascending: leaves come out in lexicographic order."""
        free, vals, doms = self.free, self.vals, self.doms

        def dfs(k: int):
            while k < len(free) and vals[free[k]] >= 0:
                k += 1
            if k == len(free):
                algebra = self._algebra()
                if all(check_constraint(algebra, c) is None for c in self.cs.constraints):
                    yield algebra
                else:
                    logger.debug("completed table rejected by final check: %s", algebra.key())
                return
            cell = free[k]
            for v in self.bits[doms[cell]]:
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    raise SearchBudgetExceeded(budget, self.nodes)
                mark = len(self.trail)
                if self.propagate([(cell, v)]):
                    yield from dfs(k + 1)
                self.undo(mark)

        yield from dfs(0)


def _assignments(n: int, k: int) -> list[tuple[int, ...]]:
    envs: list[tuple[int, ...]] = [()]
    for _ in range(k):
        envs = [env + (v,) for env in envs for v in range(n)]
    return envs


def iter_models(
    cs: ConstraintSet,
    budget: Optional[int] = None,
    symmetry_breaking: bool = False,
    stats: Optional[SearchStats] = None,
    branch: Optional[tuple[int, int]] = None,
) -> Iterator[Algebra]:
    """Streams the models of `cs`; `branch` pins one cell first (used by parallel workers)."""
    state = SearchState(cs, symmetry_breaking)
    if not state.start():
        return
    if branch is not None:
        state.nodes += 1
        if not state.propagate([branch]):
            _add_nodes(stats, state)
            return
    try:
        for algebra in state.models(budget):
            if stats is not None:
                stats.models += 1
            yield algebra
    finally:
        _add_nodes(stats, state)


def _add_nodes(stats: Optional[SearchStats], state: SearchState):
    if stats is not None:
        stats.nodes += state.nodes
        state.nodes = 0


def _collect(
    models: Iterator[Algebra],
    mode: Mode,
    up_to_iso: bool,
) -> tuple[list[Algebra], int, set]:
    kept: list[Algebra] = []
    seen: set = set()
    count = 0
    for algebra in models:
        if up_to_iso:
            canon = canonical_form(algebra)
            key = canon.key()
            if key in seen:
                continue
            seen.add(key)
            algebra = canon
        count += 1
        if mode != "count":
            kept.append(algebra)
        if mode == "first":
            break
    return kept, count, seen


def _branch_worker(args) -> tuple:
    cs, branch, mode, up_to_iso, budget, symmetry_breaking = args
    stats = SearchStats()
    try:
        kept, count, seen = _collect(iter_models(cs, budget, symmetry_breaking, stats, branch), mode, up_to_iso)
        status = "complete"
    except SearchBudgetExceeded:
        kept, count, seen, status = [], 0, set(), "inconclusive"
    if up_to_iso and mode == "count":
        kept = []
    return status, kept, count, seen, stats.nodes


def search(
    cs: ConstraintSet,
    mode: Mode = "all",
    up_to_iso: bool = False,
    budget: Optional[int] = None,
    parallel: int = 1,
    symmetry_breaking: bool = False,
) -> SearchOutcome:
    started = time.perf_counter()
    symmetry_breaking = symmetry_breaking and up_to_iso
    stats = SearchStats()
    if parallel > 1:
        outcome = _search_parallel(cs, mode, up_to_iso, budget, parallel, symmetry_breaking, stats)
    else:
        status = "complete"
        try:
            kept, count, _ = _collect(iter_models(cs, budget, symmetry_breaking, stats), mode, up_to_iso)
        except SearchBudgetExceeded as exc:
            logger.warning("%s", exc.detail)
            kept, count, status = [], 0, "inconclusive"
        if up_to_iso:
            kept.sort(key=Algebra.key)
        outcome = SearchOutcome(status=status, models=kept, count=count, stats=stats)
    stats.models = outcome.count
    stats.elapsed_ms = (time.perf_counter() - started) * 1000
    logger.info(
        "search order=%d mode=%s: %s, %d models, %d nodes, %.1f ms",
        cs.order, mode, outcome.status, outcome.count, stats.nodes, stats.elapsed_ms,
    )
    return outcome


def _search_parallel(cs, mode, up_to_iso, budget, parallel, symmetry_breaking, stats) -> SearchOutcome:
    root = SearchState(cs, symmetry_breaking)
    if not root.start():
        return SearchOutcome(stats=stats)
    point = root.first_branch()
    if point is None:
        # nothing left to branch on: the root state is already a complete table
        status = "complete"
        kept, count, _ = _collect(iter_models(cs, budget, symmetry_breaking, stats), mode, up_to_iso)
        return SearchOutcome(status=status, models=kept, count=count, stats=stats)
    cell, values = point
    jobs = [(cs, (cell, v), mode, up_to_iso, budget, symmetry_breaking) for v in values]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        results = list(pool.map(_branch_worker, jobs))

    status = "complete"
    kept: list[Algebra] = []
    count = 0
    seen: set = set()
    for worker_status, worker_kept, worker_count, worker_seen, nodes in results:
        stats.nodes += nodes
        if worker_status == "inconclusive":
            status = "inconclusive"
        if up_to_iso:
            for algebra in worker_kept:
                if algebra.key() not in seen:
                    kept.append(algebra)
            seen |= worker_seen
        else:
            kept.extend(worker_kept)
            count += worker_count
    if status == "inconclusive":
        return SearchOutcome(status=status, stats=stats)
    if up_to_iso:
        count = len(seen)
        kept.sort(key=Algebra.key)
    if mode == "first":
        kept = kept[:1]
        count = min(count, 1)
    if mode == "count":
        kept = []
    return SearchOutcome(status=status, models=kept, count=count, stats=stats)


def find_counterexample(
    hypotheses: Sequence[Constraint],
    conclusions: Union[Constraint, Sequence[Constraint]],
    max_order: int,
    budget: Optional[int] = None,
    expand: Optional[Callable[[Algebra], list[Algebra]]] = None,
    examined: Optional[dict[int, int]] = None,
    fixed: Optional[dict] = None,
) -> Optional[Counterexample]:
    """First model (by order, then lexicographically) of the hypotheses violating a conclusion.

    `expand` maps each model to the algebras the conclusions are checked on
    (an empty list makes the model vacuous); `examined` receives the number of
    hypothesis models seen per order. Raises SearchBudgetExceeded.
    """
    if isinstance(conclusions, (IdentityConstraint, StructuralConstraint)):
        conclusions = [conclusions]
    for order in range(1, max_order + 1):
        cs = constraint_set(order, hypotheses, fixed)
        seen = 0
        try:
            for model in iter_models(cs, budget):
                seen += 1
                for variant in (expand(model) if expand else [model]):
                    for conclusion in conclusions:
                        witness = check_constraint(variant, conclusion)
                        if witness is not None:
                            return Counterexample(
                                order=order,
                                algebra=model,
                                violated=conclusion,
                                witness=witness,
                                checked=None if variant is model else variant,
                            )
        finally:
            if examined is not None:
                examined[order] = seen
    return None
