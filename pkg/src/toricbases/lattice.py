"""Backtrack-free join-tree representation of box-bounded and
degree-truncated kernel vector sets of a sparse integer matrix.

The represented set is either

* every integer kernel vector with all entries in [-g, g]  (``box`` kind), or
* every kernel vector whose positive and negative parts both have 1-norm at
  most d  (``degree`` kind).

Construction treats the defining conditions as a constraint network whose
primal graph is the column graph of the matrix (plus, for the degree kind,
two chains of saturating running-sum counters interleaved along the
elimination ordering).  Bags are the cliques of the chordal completion under
the chosen ordering, arranged along the elimination tree; two semijoin passes
make every stored row extend to a full solution.
"""

from __future__ import annotations

import os
import warnings
from typing import Callable, Iterator, Sequence

from .core import (
    DimensionMismatch,
    MonomialOrder,
    SparseIntMatrix,
    ToricError,
    Vec,
    as_vector,
)
from .graphs import Graph, column_graph, eliminate, min_fill_ordering


class LatticeError(ToricError):
    pass


class BoundExceeded(ToricError):
    pass


class BudgetExceeded(ToricError):
    pass


DEFAULT_BUILD_BUDGET = 50_000_000
_BOUND_WARN_THRESHOLD = 64


def _budget_from_env(default: int) -> int:
    raw = os.environ.get("TORICBASES_BUDGET")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def graver_infinity_bound(A: SparseIntMatrix) -> int:
    """Upper bound (2*m*a + 1)^m on the infinity norm of any conformally
    minimal kernel vector, where a is the largest entry magnitude."""
    return (2 * A.num_rows * A.max_abs + 1) ** A.num_rows


# ---------------------------------------------------------------------------
# constraints of the underlying network


class _RowZero:
    """sum(coefs . vars) == 0."""

    __slots__ = ("vars", "coefs")

    def __init__(self, variables: Sequence[int], coefs: Sequence[int]):
        self.vars = tuple(variables)
        self.coefs = tuple(coefs)

    def scope(self) -> tuple[int, ...]:
        return self.vars

    def ok(self, assignment: dict[int, int]) -> bool:
        return sum(c * assignment[v] for v, c in zip(self.vars, self.coefs)) == 0


class _Counter:
    """out == min(prev + part(x), cap + 1), a saturating running sum.

    ``part`` is the positive or the negative part of the column value; prev
    is None for the first counter in a chain.
    """

    __slots__ = ("prev", "x", "out", "cap", "positive")

    def __init__(self, prev: int | None, x: int, out: int, cap: int, positive: bool):
        self.prev = prev
        self.x = x
        self.out = out
        self.cap = cap
        self.positive = positive

    def scope(self) -> tuple[int, ...]:
        if self.prev is None:
            return (self.x, self.out)
        return (self.prev, self.x, self.out)

    def value(self, prev_value: int, x_value: int) -> int:
        part = max(x_value, 0) if self.positive else max(-x_value, 0)
        return min(prev_value + part, self.cap + 1)

    def ok(self, assignment: dict[int, int]) -> bool:
        prev_value = assignment[self.prev] if self.prev is not None else 0
        return assignment[self.out] == self.value(prev_value, assignment[self.x])


class _AtMost:
    """var <= limit."""

    __slots__ = ("var", "limit")

    def __init__(self, var: int, limit: int):
        self.var = var
        self.limit = limit

    def scope(self) -> tuple[int, ...]:
        return (self.var,)

    def ok(self, assignment: dict[int, int]) -> bool:
        return assignment[self.var] <= self.limit


# ---------------------------------------------------------------------------
# bags


class _Bag:
    __slots__ = (
        "pos",
        "intro",
        "scope",
        "sep",
        "parent",
        "children",
        "rows",
        "row_set",
        "sep_positions",
        "intro_position",
        "sep_index",
        "child_extract",
    )

    def __init__(self, pos: int, intro: int, scope: tuple[int, ...], parent: int | None):
        self.pos = pos
        self.intro = intro
        self.scope = scope  # ordered by elimination position
        self.sep = tuple(v for v in scope if v != intro)
        self.parent = parent
        self.children: tuple[int, ...] = ()
        self.rows: tuple[tuple[int, ...], ...] = ()
        self.row_set: frozenset[tuple[int, ...]] = frozenset()
        self.sep_positions: tuple[int, ...] = ()
        self.intro_position: int = 0
        # sep projection -> sorted values of the introduced variable
        self.sep_index: dict[tuple[int, ...], tuple[int, ...]] = {}
        # child pos -> positions of the child's separator inside this scope
        self.child_extract: dict[int, tuple[int, ...]] = {}

    def set_positions(self, bags: "list[_Bag]") -> None:
        index = {v: i for i, v in enumerate(self.scope)}
        self.intro_position = index[self.intro]
        self.sep_positions = tuple(index[v] for v in self.sep)
        self.child_extract = {c: tuple(index[v] for v in bags[c].sep) for c in self.children}

    def project_sep(self, row: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(row[i] for i in self.sep_positions)

    def build_indexes(self) -> None:
        self.rows = tuple(sorted(self.rows))
        self.row_set = frozenset(self.rows)
        grouped: dict[tuple[int, ...], list[int]] = {}
        for row in self.rows:
            grouped.setdefault(self.project_sep(row), []).append(row[self.intro_position])
        self.sep_index = {k: tuple(sorted(vals)) for k, vals in grouped.items()}


def _enumerate_bag(
    scope: tuple[int, ...],
    domains: dict[int, tuple[int, ...]],
    constraints: list,
    child_filters: list[tuple[tuple[int, ...], set[tuple[int, ...]]]],
) -> list[tuple[int, ...]]:
    """All assignments to the scope satisfying the bag's constraints and
    compatible with every child message, by depth-first search with pruning.

    The scope is ordered by elimination position, so a counter's inputs always
    precede its output; the output is then forced rather than enumerated.
    Linear constraints prune by interval arithmetic on their unassigned part.
    """
    s = len(scope)
    index = {v: i for i, v in enumerate(scope)}

    forced_at: list[list[_Counter]] = [[] for _ in range(s)]
    limit_at: list[int | None] = [None] * s
    # (coef by depth, first depth, last depth, later-variable bounds)
    linear: list[tuple[dict[int, int], int, int, dict[int, tuple[int, int]]]] = []
    message_at: list[list[tuple[tuple[int, ...], set[tuple[int, ...]]]]] = [
        [] for _ in range(s)
    ]

    for cons in constraints:
        if isinstance(cons, _Counter):
            depth = index[cons.out]
            assert all(index[v] < depth for v in cons.scope() if v != cons.out)
            forced_at[depth].append(cons)
        elif isinstance(cons, _AtMost):
            d = index[cons.var]
            cur = limit_at[d]
            limit_at[d] = cons.limit if cur is None else min(cur, cons.limit)
        elif isinstance(cons, _RowZero):
            by_depth = sorted((index[v], c) for v, c in zip(cons.vars, cons.coefs))
            lo, hi = 0, 0
            nxt: dict[int, tuple[int, int]] = {}
            for depth, coef in reversed(by_depth):
                nxt[depth] = (lo, hi)
                dom = domains[scope[depth]]
                lo += min(coef * dom[0], coef * dom[-1])
                hi += max(coef * dom[0], coef * dom[-1])
            # nxt[depth]: achievable range of the strictly-later variables
            linear.append(
                (dict(by_depth), by_depth[0][0], by_depth[-1][0], nxt)
            )
        else:  # pragma: no cover - no other kinds exist
            raise AssertionError(f"unknown constraint {cons!r}")

    for sep_vars, keys in child_filters:
        depth = max((index[v] for v in sep_vars), default=0)
        message_at[depth].append((tuple(index[v] for v in sep_vars), keys))

    # checks scheduled at the depth of each constraint's variables
    linear_at: list[list[int]] = [[] for _ in range(s)]
    for ci, (coef_by_depth, _first, _last, _nxt) in enumerate(linear):
        for depth in coef_by_depth:
            linear_at[depth].append(ci)

    partial = [0] * len(linear)
    rows: list[tuple[int, ...]] = []
    values = [0] * s

    def descend(depth: int) -> None:
        if depth == s:
            rows.append(tuple(values))
            return
        var = scope[depth]
        dom = domains[var]
        if forced_at[depth]:
            cons = forced_at[depth][0]
            prev_value = values[index[cons.prev]] if cons.prev is not None else 0
            forced = cons.value(prev_value, values[index[cons.x]])
            candidates: tuple[int, ...] = (forced,) if dom[0] <= forced <= dom[-1] else ()
            for extra in forced_at[depth][1:]:
                prev_value = values[index[extra.prev]] if extra.prev is not None else 0
                if candidates and extra.value(prev_value, values[index[extra.x]]) != candidates[0]:
                    candidates = ()
        else:
            candidates = dom
        limit = limit_at[depth]
        for value in candidates:
            if limit is not None and value > limit:
                continue
            values[depth] = value
            ok = True
            for ci in linear_at[depth]:
                coef_by_depth, _first, last, nxt = linear[ci]
                partial[ci] += coef_by_depth[depth] * value
                if depth == last:
                    if partial[ci] != 0:
                        ok = False
                else:
                    lo, hi = nxt[depth]
                    if not (partial[ci] + lo <= 0 <= partial[ci] + hi):
                        ok = False
            if ok:
                for positions, keys in message_at[depth]:
                    if tuple(values[i] for i in positions) not in keys:
                        ok = False
                        break
            if ok:
                descend(depth + 1)
            for ci in linear_at[depth]:
                partial[ci] -= linear[ci][0][depth] * value

    descend(0)
    return rows


# ---------------------------------------------------------------------------
# the lattice


_Filters = dict[int, Callable[[int], bool]]


class KernelLattice:
    """Join tree over the kernel vectors of a matrix, either box-bounded
    (kind ``box`` with bound g) or degree-truncated (kind ``degree`` with
    bound d).

    Immutable once built.  The filtering operations return new lattices; the
    query operations are pure.
    """

    def __init__(
        self,
        matrix: SparseIntMatrix,
        kind: str,
        bound: int,
        column_ordering: tuple[int, ...],
        domains: dict[int, tuple[int, ...]],
        bags: list[_Bag],
        constraints: list,
        clique_number: int,
    ):
        self.matrix = matrix
        self.kind = kind
        self.bound = bound
        self.column_ordering = column_ordering
        self.num_columns = matrix.num_cols
        self._domains = domains
        self._bags = bags
        self._constraints = constraints
        self.realized_clique_number = clique_number
        self._roots = tuple(b.pos for b in bags if b.parent is None)
        self._preorder = self._compute_preorder()
        self._zero_key: Vec = (0,) * (self.num_columns + 1)

    def _compute_preorder(self) -> tuple[int, ...]:
        order: list[int] = []
        stack = list(reversed(self._roots))
        while stack:
            pos = stack.pop()
            order.append(pos)
            stack.extend(reversed(self._bags[pos].children))
        return tuple(order)

    @property
    def is_empty(self) -> bool:
        return any(not b.rows for b in self._bags)

    def total_rows(self) -> int:
        return sum(len(b.rows) for b in self._bags)

    def bag_scopes(self) -> list[tuple[int, ...]]:
        return [b.scope for b in self._bags]

    # -- membership -------------------------------------------------------

    def _full_assignment(self, v: Vec) -> dict[int, int] | None:
        """Variable assignment induced by a candidate column vector, or None
        when a value falls outside its domain."""
        n = self.num_columns
        assignment: dict[int, int] = {}
        for j, x in enumerate(v):
            if x < self._domains[j][0] or x > self._domains[j][-1]:
                return None
            assignment[j] = x
        if self.kind == "degree":
            d = self.bound
            run_pos, run_neg = 0, 0
            for l, col in enumerate(self.column_ordering):
                run_pos = min(run_pos + max(v[col], 0), d + 1)
                run_neg = min(run_neg + max(-v[col], 0), d + 1)
                assignment[n + l] = run_pos
                assignment[2 * n + l] = run_neg
        return assignment

    def contains(self, v: Sequence[int]) -> bool:
        v = as_vector(v)
        if len(v) != self.num_columns:
            raise DimensionMismatch(f"expected length {self.num_columns}, got {len(v)}")
        assignment = self._full_assignment(v)
        if assignment is None:
            return False
        for bag in self._bags:
            row = tuple(assignment[var] for var in bag.scope)
            if row not in bag.row_set:
                return False
        return True

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    # -- enumeration --------------------------------------------------------

    def iterate(self) -> Iterator[Vec]:
        """Yield every represented vector exactly once, in a deterministic
        order, by backtrack-free depth-first extension along the tree."""
        if self.is_empty:
            return
        n = self.num_columns
        env: dict[int, int] = {}
        order = self._preorder
        bags = self._bags

        def extend(i: int) -> Iterator[Vec]:
            if i == len(order):
                yield tuple(env[j] for j in range(n))
                return
            bag = bags[order[i]]
            key = tuple(env[v] for v in bag.sep)
            for value in bag.sep_index.get(key, ()):
                env[bag.intro] = value
                yield from extend(i + 1)
            env.pop(bag.intro, None)

        yield from extend(0)

    def __iter__(self) -> Iterator[Vec]:
        return self.iterate()

    # -- counting -------------------------------------------------------------

    def count(self, filters: _Filters | None = None) -> int:
        """Exact number of represented vectors, without enumeration."""
        per_child: dict[int, dict[tuple[int, ...], int]] = {}
        total = 1
        for pos in range(len(self._bags)):
            bag = self._bags[pos]
            agg: dict[tuple[int, ...], int] = {}
            checks = self._filter_positions(bag, filters)
            for row in bag.rows:
                if checks and not all(fn(row[i]) for i, fn in checks):
                    continue
                weight = 1
                for c in bag.children:
                    weight *= per_child[c].get(
                        tuple(row[i] for i in bag.child_extract[c]), 0
                    )
                    if not weight:
                        break
                if not weight:
                    continue
                key = bag.project_sep(row)
                agg[key] = agg.get(key, 0) + weight
            per_child[pos] = agg
            if bag.parent is None:
                total *= sum(agg.values())
        return total

    @staticmethod
    def _filter_positions(bag: _Bag, filters: _Filters | None):
        if not filters:
            return ()
        return tuple(
            (i, filters[var]) for i, var in enumerate(bag.scope) if var in filters
        )

    # -- additive-key minimisation ---------------------------------------------

    def _contribution(self, order: MonomialOrder) -> Callable[[int, int], Vec]:
        n = self.num_columns
        weights = order.weights
        zero = self._zero_key

        def contrib(var: int, value: int) -> Vec:
            if var >= n:
                return zero
            key = [0] * (n + 1)
            key[0] = weights[var] * value
            key[var + 1] = value
            return tuple(key)

        return contrib

    def k_smallest(
        self,
        k: int,
        order: MonomialOrder,
        filters: _Filters | None = None,
    ) -> list[Vec]:
        """Up to k represented vectors with the smallest additive keys under
        the order, ascending.  Keys embed the full vector, so distinct vectors
        never tie."""
        if order.num_vars != self.num_columns:
            raise DimensionMismatch("order dimension does not match the matrix")
        if k == 1:
            best = self._smallest(order, filters)
            return [best] if best is not None else []
        contrib = self._contribution(order)
        zero = self._zero_key

        def add(a: Vec, b: Vec) -> Vec:
            return tuple(x + y for x, y in zip(a, b))

        def combine(
            left: list[tuple[Vec, tuple]], right: list[tuple[Vec, tuple]]
        ) -> list[tuple[Vec, tuple]]:
            merged = [(add(ka, kb), fa + fb) for ka, fa in left for kb, fb in right]
            merged.sort(key=lambda t: t[0])
            return merged[:k]

        per_child: dict[int, dict[tuple[int, ...], list[tuple[Vec, tuple]]]] = {}
        root_best: list[tuple[Vec, tuple]] = [(zero, ())]
        for pos in range(len(self._bags)):
            bag = self._bags[pos]
            agg: dict[tuple[int, ...], list[tuple[Vec, tuple]]] = {}
            checks = self._filter_positions(bag, filters)
            for row in bag.rows:
                if checks and not all(fn(row[i]) for i, fn in checks):
                    continue
                value = row[bag.intro_position]
                entry: list[tuple[Vec, tuple]] | None = [
                    (contrib(bag.intro, value), ((bag.intro, value),))
                ]
                for c in bag.children:
                    opts = per_child[c].get(tuple(row[i] for i in bag.child_extract[c]))
                    if not opts:
                        entry = None
                        break
                    entry = combine(entry, opts)
                if entry is None:
                    continue
                key = bag.project_sep(row)
                bucket = agg.get(key)
                if bucket is None:
                    agg[key] = entry
                else:
                    bucket.extend(entry)
                    bucket.sort(key=lambda t: t[0])
                    del bucket[k:]
            per_child[pos] = agg
            if bag.parent is None:
                top = sorted(
                    (item for bucket in agg.values() for item in bucket),
                    key=lambda t: t[0],
                )[:k]
                if not top:
                    return []
                root_best = combine(root_best, top)

        vectors = []
        for _, frag in root_best:
            chosen = dict(frag)
            vectors.append(tuple(chosen.get(j, 0) for j in range(self.num_columns)))
        return vectors

    def _smallest(self, order: MonomialOrder, filters: _Filters | None) -> Vec | None:
        """Single-best specialisation of the top-k sweep: one (key, fragment)
        pair per separator value instead of candidate lists."""
        contrib = self._contribution(order)
        per_child: dict[int, dict[tuple[int, ...], tuple[Vec, tuple]]] = {}
        total_key, total_frag = self._zero_key, ()
        for pos in range(len(self._bags)):
            bag = self._bags[pos]
            agg: dict[tuple[int, ...], tuple[Vec, tuple]] = {}
            checks = self._filter_positions(bag, filters)
            for row in bag.rows:
                if checks and not all(fn(row[i]) for i, fn in checks):
                    continue
                value = row[bag.intro_position]
                key = contrib(bag.intro, value)
                frag = ((bag.intro, value),)
                dead = False
                for c in bag.children:
                    entry = per_child[c].get(tuple(row[i] for i in bag.child_extract[c]))
                    if entry is None:
                        dead = True
                        break
                    key = tuple(a + b for a, b in zip(key, entry[0]))
                    frag = frag + entry[1]
                if dead:
                    continue
                sep_key = bag.project_sep(row)
                incumbent = agg.get(sep_key)
                if incumbent is None or key < incumbent[0]:
                    agg[sep_key] = (key, frag)
            per_child[pos] = agg
            if bag.parent is None:
                if not agg:
                    return None
                key, frag = min(agg.values(), key=lambda t: t[0])
                total_key = tuple(a + b for a, b in zip(total_key, key))
                total_frag = total_frag + frag
        chosen = dict(total_frag)
        return tuple(chosen.get(j, 0) for j in range(self.num_columns))

    def minimize(self, order: MonomialOrder, filters: _Filters | None = None) -> Vec | None:
        """The represented vector with the smallest key, or None when the
        represented set is empty."""
        return self._smallest(order, filters)

    def two_smallest(
        self, order: MonomialOrder, filters: _Filters | None = None
    ) -> list[Vec]:
        return self.k_smallest(2, order, filters)

    # -- filtering ------------------------------------------------------------

    def _refiltered(self, filters: _Filters) -> "KernelLattice":
        bags: list[_Bag] = []
        for old in self._bags:
            bag = _Bag(old.pos, old.intro, old.scope, old.parent)
            bag.children = old.children
            bag.sep_positions = old.sep_positions
            bag.intro_position = old.intro_position
            bag.child_extract = dict(old.child_extract)
            checks = self._filter_positions(old, filters)
            bag.rows = tuple(
                row for row in old.rows if all(fn(row[i]) for i, fn in checks)
            )
            bags.append(bag)

        # upward semijoin: keep rows that extend into every child
        for bag in bags:
            if not bag.children:
                continue
            keys_of = {
                c: {bags[c].project_sep(r) for r in bags[c].rows} for c in bag.children
            }
            bag.rows = tuple(
                row
                for row in bag.rows
                if all(
                    tuple(row[i] for i in bag.child_extract[c]) in keys_of[c]
                    for c in bag.children
                )
            )

        # downward semijoin: keep rows whose separator occurs in the parent
        for bag in sorted(bags, key=lambda b: -b.pos):
            for c in bag.children:
                child = bags[c]
                allowed = {
                    tuple(row[i] for i in bag.child_extract[c]) for row in bag.rows
                }
                child.rows = tuple(
                    r for r in child.rows if child.project_sep(r) in allowed
                )
        for bag in bags:
            bag.build_indexes()

        return KernelLattice(
            self.matrix,
            self.kind,
            self.bound,
            self.column_ordering,
            self._domains,
            bags,
            self._constraints,
            self.realized_clique_number,
        )

    def restrict_shift_nonneg(self, u: Sequence[int]) -> "KernelLattice":
        """Sub-lattice of vectors v with u + v >= 0 (u nonnegative)."""
        u = as_vector(u)
        if len(u) != self.num_columns:
            raise DimensionMismatch(f"expected length {self.num_columns}, got {len(u)}")
        if any(x < 0 for x in u):
            raise ValueError("shift vector must be nonnegative")
        return self._refiltered(shift_filters(u))

    def restrict_conformal(self, z: Sequence[int]) -> "KernelLattice":
        """Sub-lattice of vectors that are sign-compatible with z and
        componentwise dominated by it."""
        z = as_vector(z)
        if len(z) != self.num_columns:
            raise DimensionMismatch(f"expected length {self.num_columns}, got {len(z)}")
        return self._refiltered(conformal_filters(z))

    # -- validation (exercised by the test suite) -------------------------------

    def validate(self) -> None:
        """Assert the structural invariants: running intersection, separator
        containment, and backtrack-freeness in both directions."""
        bags = self._bags
        containing: dict[int, list[int]] = {}
        for bag in bags:
            for var in bag.scope:
                containing.setdefault(var, []).append(bag.pos)
        for var, positions in containing.items():
            present = set(positions)
            top = max(positions)
            for pos in positions:
                walk = pos
                while walk != top:
                    parent = bags[walk].parent
                    assert parent is not None and parent in present, (
                        f"running intersection violated for variable {var}"
                    )
                    walk = parent
        for bag in bags:
            if bag.parent is not None:
                assert set(bag.sep) <= set(bags[bag.parent].scope)
            for c in bag.children:
                child = bags[c]
                child_keys = {child.project_sep(r) for r in child.rows}
                parent_keys = {
                    tuple(row[i] for i in bag.child_extract[c]) for row in bag.rows
                }
                assert parent_keys <= child_keys, "parent row with no child extension"
                assert child_keys <= parent_keys, "child row with no parent support"

    def __repr__(self) -> str:
        return (
            f"KernelLattice(kind={self.kind!r}, bound={self.bound}, "
            f"cols={self.num_columns}, rows={self.total_rows()})"
        )


def shift_filters(u: Vec) -> _Filters:
    return {j: (lambda value, lo=-x: value >= lo) for j, x in enumerate(u)}


def conformal_filters(z: Vec) -> _Filters:
    def make(target: int) -> Callable[[int], bool]:
        if target == 0:
            return lambda value: value == 0
        if target > 0:
            return lambda value: 0 <= value <= target
        return lambda value: target <= value <= 0

    return {j: make(x) for j, x in enumerate(z)}


# ---------------------------------------------------------------------------
# builders


def _assemble(
    matrix: SparseIntMatrix,
    kind: str,
    bound: int,
    column_ordering: tuple[int, ...],
    num_vars: int,
    pi: tuple[int, ...],
    domains: dict[int, tuple[int, ...]],
    constraints: list,
    build_budget: int | None,
) -> KernelLattice:
    edges = set()
    for cons in constraints:
        scope = cons.scope()
        for a in range(len(scope)):
            for b in range(a + 1, len(scope)):
                x, y = scope[a], scope[b]
                edges.add((x, y) if x < y else (y, x))
    primal = Graph.from_edges(num_vars, edges)
    elim = eliminate(primal, pi)

    budget = _budget_from_env(
        build_budget if build_budget is not None else DEFAULT_BUILD_BUDGET
    )
    estimate = 0
    for clique in elim.cliques:
        cells = 1
        for var in clique:
            cells *= len(domains[var])
        estimate += cells
        if estimate > budget:
            raise BudgetExceeded(
                f"estimated table work {estimate} exceeds budget {budget}; "
                "lower the bound or provide a better ordering"
            )

    position = elim.position
    bags: list[_Bag] = []
    for l, var in enumerate(pi):
        scope = tuple(sorted(elim.cliques[l], key=position.__getitem__))
        parent_vertex = elim.parent[var]
        parent_pos = position[parent_vertex] if parent_vertex is not None else None
        bags.append(_Bag(l, var, scope, parent_pos))
    children: dict[int, list[int]] = {l: [] for l in range(num_vars)}
    for bag in bags:
        if bag.parent is not None:
            children[bag.parent].append(bag.pos)
    for bag in bags:
        bag.children = tuple(sorted(children[bag.pos]))
        bag.set_positions(bags)

    by_bag: dict[int, list] = {l: [] for l in range(num_vars)}
    for cons in constraints:
        scope = cons.scope()
        home = min(position[v] for v in scope)
        if not set(scope) <= set(bags[home].scope):
            raise LatticeError(
                "constraint scope not covered by its bag; the ordering does not "
                "come from the primal graph"
            )
        by_bag[home].append(cons)

    # upward pass: enumerate each bag against its children's messages
    for bag in bags:
        child_filters = []
        for c in bag.children:
            child = bags[c]
            keys = {child.project_sep(r) for r in child.rows}
            child_filters.append((child.sep, keys))
        bag.rows = tuple(
            _enumerate_bag(bag.scope, domains, by_bag[bag.pos], child_filters)
        )

    # downward pass: drop rows without support in the parent
    for bag in sorted(bags, key=lambda b: -b.pos):
        for c in bag.children:
            child = bags[c]
            allowed = {tuple(row[i] for i in bag.child_extract[c]) for row in bag.rows}
            child.rows = tuple(r for r in child.rows if child.project_sep(r) in allowed)
    for bag in bags:
        bag.build_indexes()

    return KernelLattice(
        matrix,
        kind,
        bound,
        column_ordering,
        domains,
        bags,
        constraints,
        elim.clique_number,
    )


def _resolve_ordering(A: SparseIntMatrix, ordering: Sequence[int] | None) -> tuple[int, ...]:
    if ordering is None:
        return min_fill_ordering(column_graph(A))
    ordering = tuple(int(v) for v in ordering)
    if sorted(ordering) != list(range(A.num_cols)):
        raise ValueError("ordering must be a permutation of the columns")
    return ordering


def _row_constraints(A: SparseIntMatrix) -> list[_RowZero]:
    out = []
    for i in range(A.num_rows):
        cols = tuple(j for j, _ in A.row(i))
        if not cols:  # zero rows constrain nothing
            continue
        coefs = tuple(v for _, v in A.row(i))
        out.append(_RowZero(cols, coefs))
    return out


def build_lattice(
    A: SparseIntMatrix,
    g: int | None = None,
    ordering: Sequence[int] | None = None,
    *,
    build_budget: int | None = None,
) -> KernelLattice:
    """Join tree for the kernel vectors of A with entries in [-g, g].

    When g is omitted it defaults to :func:`graver_infinity_bound`, which is
    doubly exponential in practice; a warning is emitted when the default
    exceeds a small threshold.
    """
    if g is None:
        g = graver_infinity_bound(A)
        if g > _BOUND_WARN_THRESHOLD:
            warnings.warn(
                f"default bound {g} is very large; pass an explicit bound",
                stacklevel=2,
            )
    if g < 0:
        raise ValueError("bound must be nonnegative")
    budget = _budget_from_env(
        build_budget if build_budget is not None else DEFAULT_BUILD_BUDGET
    )
    if 2 * g + 1 > budget:
        raise BudgetExceeded(f"domain size {2 * g + 1} exceeds budget {budget}")
    column_ordering = _resolve_ordering(A, ordering)
    n = A.num_cols
    domain = tuple(range(-g, g + 1))
    domains = {j: domain for j in range(n)}
    return _assemble(
        A,
        "box",
        g,
        column_ordering,
        n,
        column_ordering,
        domains,
        _row_constraints(A),
        build_budget,
    )


def build_truncated_lattice(
    A: SparseIntMatrix,
    d: int,
    ordering: Sequence[int] | None = None,
    *,
    build_budget: int | None = None,
) -> KernelLattice:
    """Join tree for the kernel vectors of A whose positive and negative
    parts both have 1-norm at most d.

    The two degree conditions are global, so they are threaded along the
    elimination ordering as saturating running-sum counters capped at d+1,
    one pair per column, interleaved right after their column.
    """
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    column_ordering = _resolve_ordering(A, ordering)
    n = A.num_cols
    num_vars = 3 * n
    column_domain = tuple(range(-d, d + 1))
    counter_domain = tuple(range(0, d + 2))
    domains: dict[int, tuple[int, ...]] = {}
    for j in range(n):
        domains[j] = column_domain
    for l in range(n):
        domains[n + l] = counter_domain
        domains[2 * n + l] = counter_domain

    pi: list[int] = []
    for l, col in enumerate(column_ordering):
        pi.extend((col, n + l, 2 * n + l))

    constraints: list = list(_row_constraints(A))
    for l, col in enumerate(column_ordering):
        prev_pos = n + l - 1 if l else None
        prev_neg = 2 * n + l - 1 if l else None
        constraints.append(_Counter(prev_pos, col, n + l, d, positive=True))
        constraints.append(_Counter(prev_neg, col, 2 * n + l, d, positive=False))
    constraints.append(_AtMost(n + n - 1, d))
    constraints.append(_AtMost(2 * n + n - 1, d))

    return _assemble(
        A,
        "degree",
        d,
        column_ordering,
        num_vars,
        tuple(pi),
        domains,
        constraints,
        build_budget,
    )
