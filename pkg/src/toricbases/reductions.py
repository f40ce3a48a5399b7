"""Bidirectional reductions between integer programming and normal forms,
plus a baseline exact solver to close the loop.

One direction turns a normal-form instance into an equality-constrained IP
whose objective encodes the monomial order through a weight vector of powers.
The other direction embeds a box-constrained IP into a larger matrix whose
first coordinate tracks the objective, so the lexicographic normal form of a
feasible starting monomial reads off an optimal solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    DimensionMismatch,
    MonomialOrder,
    SparseIntMatrix,
    ToricError,
    Vec,
    as_vector,
    is_nonnegative,
    negative_part,
    positive_part,
)
from .graphs import Graph
from .lattice import build_lattice
from .normalform import normal_form_bounded


class InfeasibleError(ToricError):
    pass


class NoBoxError(ToricError):
    """Raised when no finite variable bounds are available to search over."""


@dataclass(frozen=True)
class IntegerProgram:
    """min objective . z  subject to  matrix . z = rhs and box bounds.

    ``lower`` defaults to all zeros.  ``upper`` may be None, but the solver
    requires finite upper bounds.  A feasible point may be attached as a hint;
    it is validated on construction and used to seed the incumbent.
    """

    matrix: SparseIntMatrix
    rhs: Vec
    objective: Vec
    lower: Vec | None = None
    upper: Vec | None = None
    feasible_hint: Vec | None = None

    def __post_init__(self):
        n, m = self.matrix.num_cols, self.matrix.num_rows
        object.__setattr__(self, "rhs", as_vector(self.rhs))
        object.__setattr__(self, "objective", as_vector(self.objective))
        if len(self.rhs) != m:
            raise DimensionMismatch(f"rhs length {len(self.rhs)}, expected {m}")
        if len(self.objective) != n:
            raise DimensionMismatch(f"objective length {len(self.objective)}, expected {n}")
        for name in ("lower", "upper", "feasible_hint"):
            value = getattr(self, name)
            if value is not None:
                value = as_vector(value)
                if len(value) != n:
                    raise DimensionMismatch(f"{name} length {len(value)}, expected {n}")
                object.__setattr__(self, name, value)
        if self.feasible_hint is not None:
            hint = self.feasible_hint
            if self.matrix.apply(hint) != self.rhs:
                raise ValueError("feasible hint violates the equality constraints")
            lo = self.lower if self.lower is not None else (0,) * n
            if any(x < l for x, l in zip(hint, lo)):
                raise ValueError("feasible hint violates a lower bound")
            if self.upper is not None and any(x > u for x, u in zip(hint, self.upper)):
                raise ValueError("feasible hint violates an upper bound")


def _floor_div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return a // b


def _ceil_div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return -((-a) // b)


def solve_ip(ip: IntegerProgram) -> Vec:
    """Exact optimum by depth-first branch and bound with interval
    propagation on the equality rows and on the objective cut.

    Branches on the variable with the narrowest interval (lowest index on
    ties), values ascending; among optima the lexicographically smallest
    vector is returned, so the answer is deterministic.
    """
    A, b, c = ip.matrix, ip.rhs, ip.objective
    n = A.num_cols
    lo = list(ip.lower) if ip.lower is not None else [0] * n
    if ip.upper is None:
        raise NoBoxError("finite upper bounds are required; none were supplied")
    hi = list(ip.upper)
    if any(l > h for l, h in zip(lo, hi)):
        raise InfeasibleError("empty box")

    rows = [
        (tuple(j for j, _ in A.row(i)), tuple(v for _, v in A.row(i)), b[i])
        for i in range(A.num_rows)
    ]
    in_rows = [False] * n
    for cols, _, _ in rows:
        for j in cols:
            in_rows[j] = True
    # variables free of every constraint are decided by their cost alone
    for j in range(n):
        if not in_rows[j]:
            if c[j] >= 0:
                hi[j] = lo[j]
            else:
                lo[j] = hi[j]

    best: list = [None, None]  # objective, vector
    if ip.feasible_hint is not None:
        hint = ip.feasible_hint
        best[0] = sum(cj * xj for cj, xj in zip(c, hint))
        best[1] = hint

    def propagate(lo: list[int], hi: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for cols, coefs, rhs_i in rows:
                lo_sum, hi_sum = 0, 0
                for j, a in zip(cols, coefs):
                    x, y = a * lo[j], a * hi[j]
                    lo_sum += min(x, y)
                    hi_sum += max(x, y)
                if not (lo_sum <= rhs_i <= hi_sum):
                    return False
                for j, a in zip(cols, coefs):
                    x, y = a * lo[j], a * hi[j]
                    others_lo = lo_sum - min(x, y)
                    others_hi = hi_sum - max(x, y)
                    # a * z_j must land in [rhs - others_hi, rhs - others_lo]
                    new_lo = _ceil_div(rhs_i - others_hi, a)
                    new_hi = _floor_div(rhs_i - others_lo, a)
                    if a < 0:
                        new_lo, new_hi = _ceil_div(rhs_i - others_lo, a), _floor_div(
                            rhs_i - others_hi, a
                        )
                    if new_lo > lo[j]:
                        lo[j] = new_lo
                        changed = True
                    if new_hi < hi[j]:
                        hi[j] = new_hi
                        changed = True
                    if lo[j] > hi[j]:
                        return False
            if best[0] is not None:
                min_total = sum(min(cj * lo[j], cj * hi[j]) for j, cj in enumerate(c))
                if min_total > best[0]:
                    return False
                for j, cj in enumerate(c):
                    if cj == 0:
                        continue
                    others = min_total - min(cj * lo[j], cj * hi[j])
                    budget = best[0] - others
                    if cj > 0:
                        new_hi = _floor_div(budget, cj)
                        if new_hi < hi[j]:
                            hi[j] = new_hi
                            changed = True
                    else:
                        new_lo = _ceil_div(budget, cj)
                        if new_lo > lo[j]:
                            lo[j] = new_lo
                            changed = True
                    if lo[j] > hi[j]:
                        return False
        return True

    def search(lo: list[int], hi: list[int]) -> None:
        if not propagate(lo, hi):
            return
        free = [j for j in range(n) if lo[j] < hi[j]]
        if not free:
            vec = tuple(lo)
            obj = sum(cj * xj for cj, xj in zip(c, vec))
            if best[0] is None or obj < best[0] or (obj == best[0] and vec < best[1]):
                best[0], best[1] = obj, vec
            return
        j = min(free, key=lambda k: (hi[k] - lo[k], k))
        for value in range(lo[j], hi[j] + 1):
            child_lo, child_hi = lo.copy(), hi.copy()
            child_lo[j] = child_hi[j] = value
            search(child_lo, child_hi)

    search(lo, hi)
    if best[1] is None:
        raise InfeasibleError("no feasible point in the box")
    return tuple(best[1])


# ---------------------------------------------------------------------------
# normal form -> integer program


def weight_vector(weights: Sequence[int], r: int, n: int) -> Vec:
    """c = r^n * weights + (r^(n-1), ..., r, 1), exactly.

    For any u, v with max |v_i - u_i| <= r - 1, the sign of c.(v - u) matches
    the weighted order's comparison of u and v.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    weights = as_vector(weights)
    if len(weights) != n:
        raise DimensionMismatch(f"weights length {len(weights)}, expected {n}")
    scale = r**n
    return tuple(scale * w + r ** (n - 1 - i) for i, w in enumerate(weights))


def normalform_to_ip(
    A: SparseIntMatrix, order: MonomialOrder, u: Sequence[int]
) -> IntegerProgram:
    """IP whose every optimum is the normal-form exponent of x^u.

    The objective comes from :func:`weight_vector` with the radix chosen one
    above the conformal-minimality norm bound, so comparisons of feasible
    points reproduce the monomial order.  Upper bounds follow from the
    objective value of u itself, which is feasible and seeds the incumbent.
    """
    u = as_vector(u)
    if not is_nonnegative(u):
        raise ValueError("monomial exponents must be nonnegative")
    n = A.num_cols
    if len(u) != n or order.num_vars != n:
        raise DimensionMismatch("dimension mismatch between matrix, order and monomial")
    radix = (2 * A.num_rows * A.max_abs + 1) ** A.num_rows + 1
    c = weight_vector(order.weights, radix, n)
    budget = sum(cj * xj for cj, xj in zip(c, u))
    upper = tuple(budget // cj for cj in c)
    return IntegerProgram(
        matrix=A,
        rhs=A.apply(u),
        objective=c,
        lower=(0,) * n,
        upper=upper,
        feasible_hint=u,
    )


# ---------------------------------------------------------------------------
# integer program -> normal form


@dataclass(frozen=True)
class NormalFormReduction:
    """Equality system, starting exponent and order whose normal form encodes
    an optimal solution of the source program.

    Variables of the enlarged matrix are (objective tracker, slacks, original
    variables); the tracker sits first so the lexicographic order minimises it
    first.
    """

    matrix: SparseIntMatrix
    rhs: Vec
    start_exponent: Vec
    order: MonomialOrder
    source_objective: Vec
    source_upper: Vec

    @property
    def num_source_vars(self) -> int:
        return len(self.source_objective)

    def extract_solution(self, normal_exponent: Sequence[int]) -> tuple[Vec, int]:
        """Optimal point and objective value encoded by a normal form; the
        tracker identity r = c_neg . t + c . z is asserted."""
        v = as_vector(normal_exponent)
        n = self.num_source_vars
        if len(v) != 2 * n + 1:
            raise DimensionMismatch(f"expected length {2 * n + 1}, got {len(v)}")
        tracker, z = v[0], v[n + 1 :]
        c = self.source_objective
        objective = sum(cj * xj for cj, xj in zip(c, z))
        c_neg = negative_part(c)
        shift = sum(a * t for a, t in zip(c_neg, self.source_upper))
        assert tracker == shift + objective, "tracker does not match the objective"
        return z, objective


def ip_to_normalform(ip: IntegerProgram, *, graded: bool = False) -> NormalFormReduction:
    """Embed a box-bounded IP with a known feasible point into a normal-form
    instance: w = (tracker, slack, z) subject to

        tracker = c_neg . slack + c_pos . z,   A z = b,   slack + z = t.

    The starting exponent is the image of the feasible hint; minimising the
    tracker first is the same as minimising the objective.
    """
    if ip.upper is None:
        raise NoBoxError("the reduction needs finite upper bounds")
    if ip.feasible_hint is None:
        raise ValueError("the reduction needs a feasible point")
    lower = ip.lower if ip.lower is not None else (0,) * ip.matrix.num_cols
    if any(lower):
        raise ValueError("the reduction requires all-zero lower bounds")

    A, b, c, t = ip.matrix, ip.rhs, ip.objective, ip.upper
    m, n = A.num_rows, A.num_cols
    c_pos, c_neg = positive_part(c), negative_part(c)

    entries: list[tuple[int, int, int]] = [(0, 0, -1)]
    for j in range(n):
        if c_neg[j]:
            entries.append((0, 1 + j, c_neg[j]))
        if c_pos[j]:
            entries.append((0, 1 + n + j, c_pos[j]))
    for i, j, value in A.iter_entries():
        entries.append((1 + i, 1 + n + j, value))
    for j in range(n):
        entries.append((1 + m + j, 1 + j, 1))
        entries.append((1 + m + j, 1 + n + j, 1))
    enlarged = SparseIntMatrix(1 + m + n, 1 + 2 * n, entries)

    z_bar = ip.feasible_hint
    y_bar = tuple(tj - zj for tj, zj in zip(t, z_bar))
    if any(y < 0 for y in y_bar):
        raise ValueError("feasible hint exceeds an upper bound")
    tracker = sum(a * y for a, y in zip(c_neg, y_bar)) + sum(
        a * z for a, z in zip(c_pos, z_bar)
    )
    start = (tracker,) + y_bar + z_bar
    rhs = (0,) + b + t
    assert enlarged.apply(start) == rhs

    dims = 1 + 2 * n
    order = MonomialOrder.grlex(dims) if graded else MonomialOrder.lex(dims)
    return NormalFormReduction(enlarged, rhs, start, order, c, t)


def solve_ip_via_normal_form(ip: IntegerProgram, *, graded: bool = False) -> tuple[Vec, int]:
    """Round trip: embed the program, compute the normal form of the start
    exponent with the join-tree machinery, and read off the optimum.

    The lattice bound is the largest coordinate reachable by any feasible
    point of the embedded system, so the bounded fiber is the whole fiber and
    the computed normal form is exact.
    """
    reduction = ip_to_normalform(ip, graded=graded)
    c, t = reduction.source_objective, reduction.source_upper
    tracker_max = sum(abs(cj) * tj for cj, tj in zip(c, t))
    bound = max([tracker_max, 1, *t])
    lattice = build_lattice(reduction.matrix, bound)
    result = normal_form_bounded(
        reduction.matrix, lattice, reduction.order, reduction.start_exponent
    )
    return reduction.extract_solution(result.normal_exponent)


# ---------------------------------------------------------------------------
# vertex cover front end


def vertex_cover_ip(graph: Graph) -> IntegerProgram:
    """0/1 program whose optimum is the size of a smallest vertex cover.

    One variable per vertex, one per edge; each edge constrains its indicator
    to vertex_a + vertex_b - 1; taking every vertex is the feasible hint.
    """
    edges = sorted(graph.edges)
    nv, ne = graph.num_vertices, len(edges)
    entries = []
    for k, (a, b) in enumerate(edges):
        entries.append((k, a, 1))
        entries.append((k, b, 1))
        entries.append((k, nv + k, -1))
    matrix = SparseIntMatrix(ne, nv + ne, entries)
    return IntegerProgram(
        matrix=matrix,
        rhs=(1,) * ne,
        objective=(1,) * nv + (0,) * ne,
        lower=(0,) * (nv + ne),
        upper=(1,) * (nv + ne),
        feasible_hint=(1,) * (nv + ne),
    )
