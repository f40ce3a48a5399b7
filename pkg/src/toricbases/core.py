"""Exact-integer data model: sparse matrices, exponent vectors, binomials,
and weighted monomial orders.

Everything here uses arbitrary-precision Python integers; no operation is
allowed to overflow a machine word.  All types are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, ...]


class ToricError(Exception):
    """Base class for domain errors raised by this package."""


class DimensionMismatch(ToricError):
    pass


# ---------------------------------------------------------------------------
# vectors


def as_vector(coords: Iterable[int]) -> Vec:
    return tuple(int(c) for c in coords)


def positive_part(v: Sequence[int]) -> Vec:
    return tuple(x if x > 0 else 0 for x in v)


def negative_part(v: Sequence[int]) -> Vec:
    return tuple(-x if x < 0 else 0 for x in v)


def vector_add(u: Sequence[int], v: Sequence[int]) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vector_sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def infinity_norm(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


def one_norm(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def is_nonnegative(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v)


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Sign-compatible componentwise domination: u_i v_i >= 0 and |u_i| <= |v_i|."""
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# sparse matrices


class SparseIntMatrix:
    """Immutable sparse integer matrix stored as a coordinate list with a
    row-major index.

    Zero rows are representable (the incidence matrix of a graph with an
    isolated vertex has one), but the text parser rejects them by default
    since they add no constraint; see :func:`matrix_from_text`.
    """

    __slots__ = ("num_rows", "num_cols", "_rows", "_entries", "max_abs")

    def __init__(self, num_rows: int, num_cols: int, entries: Iterable[tuple[int, int, int]]):
        if num_rows < 0 or num_cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        seen: dict[tuple[int, int], int] = {}
        for i, j, value in entries:
            i, j, value = int(i), int(j), int(value)
            if not (0 <= i < num_rows and 0 <= j < num_cols):
                raise ValueError(f"entry ({i},{j}) out of range for {num_rows}x{num_cols}")
            if value == 0:
                raise ValueError(f"explicit zero entry at ({i},{j})")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i},{j})")
            seen[(i, j)] = value

        rows: list[list[tuple[int, int]]] = [[] for _ in range(num_rows)]
        for (i, j), value in seen.items():
            rows[i].append((j, value))

        self.num_rows = num_rows
        self.num_cols = num_cols
        self._rows: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(sorted(r)) for r in rows
        )
        self._entries: dict[tuple[int, int], int] = {
            (i, j): value for i, row in enumerate(self._rows) for j, value in row
        }
        self.max_abs = max((abs(v) for v in self._entries.values()), default=0)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        entries = []
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("ragged dense matrix")
            for j, value in enumerate(row):
                if value:
                    entries.append((i, j, value))
        return cls(m, n, entries)

    def zero_rows(self) -> list[int]:
        return [i for i, row in enumerate(self._rows) if not row]

    def without_zero_rows(self) -> "SparseIntMatrix":
        keep = [i for i, row in enumerate(self._rows) if row]
        renumber = {i: k for k, i in enumerate(keep)}
        return SparseIntMatrix(
            len(keep),
            self.num_cols,
            ((renumber[i], j, v) for i, j, v in self.iter_entries()),
        )

    def entry(self, i: int, j: int) -> int:
        return self._entries.get((i, j), 0)

    def row(self, i: int) -> tuple[tuple[int, int], ...]:
        """Nonzero entries of row i as (column, value) pairs, column-sorted."""
        return self._rows[i]

    def iter_entries(self) -> Iterator[tuple[int, int, int]]:
        for i, row in enumerate(self._rows):
            for j, value in row:
                yield i, j, value

    def apply(self, v: Sequence[int]) -> Vec:
        """A.v with exact arithmetic."""
        if len(v) != self.num_cols:
            raise DimensionMismatch(f"expected length {self.num_cols}, got {len(v)}")
        return tuple(sum(value * v[j] for j, value in row) for row in self._rows)

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            self.num_cols, self.num_rows, ((j, i, v) for i, j, v in self.iter_entries())
        )

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.num_cols for _ in range(self.num_rows)]
        for i, j, value in self.iter_entries():
            out[i][j] = value
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (
            self.num_rows == other.num_rows
            and self.num_cols == other.num_cols
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        return hash((self.num_rows, self.num_cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.num_rows}x{self.num_cols}, {len(self._entries)} nonzeros)"


def matrix_to_text(A: SparseIntMatrix, *, sparse: bool | None = None) -> str:
    """Bit-exact text format.

    Dense: first line ``m n``, then m lines of n space-separated integers.
    Sparse: first line ``sparse m n k``, then k lines ``i j value`` (0-based).
    By default the dense form is used unless fewer than a quarter of the
    entries are nonzero.
    """
    nnz = sum(1 for _ in A.iter_entries())
    if sparse is None:
        sparse = A.num_rows * A.num_cols > 0 and nnz * 4 < A.num_rows * A.num_cols
    lines = []
    if sparse:
        lines.append(f"sparse {A.num_rows} {A.num_cols} {nnz}")
        for i, j, value in sorted(A.iter_entries()):
            lines.append(f"{i} {j} {value}")
    else:
        lines.append(f"{A.num_rows} {A.num_cols}")
        for row in A.to_dense():
            lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str, *, drop_zero_rows: bool = False) -> SparseIntMatrix:
    """Parse either text form.

    Zero rows are rejected at parse time (they carry no constraint); pass
    ``drop_zero_rows=True`` to remove them with a warning instead.
    """
    tokens_by_line = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not tokens_by_line:
        raise ValueError("empty matrix file")
    head = tokens_by_line[0]
    if head[0] == "sparse":
        if len(head) != 4:
            raise ValueError("sparse header must be 'sparse m n k'")
        m, n, k = int(head[1]), int(head[2]), int(head[3])
        body = tokens_by_line[1:]
        if len(body) != k:
            raise ValueError(f"expected {k} sparse entries, found {len(body)}")
        matrix = SparseIntMatrix(m, n, [(int(t[0]), int(t[1]), int(t[2])) for t in body])
    else:
        if len(head) != 2:
            raise ValueError("dense header must be 'm n'")
        m, n = int(head[0]), int(head[1])
        body = tokens_by_line[1:]
        if len(body) != m:
            raise ValueError(f"expected {m} rows, found {len(body)}")
        rows = []
        for t in body:
            if len(t) != n:
                raise ValueError(f"expected {n} columns, found {len(t)}")
            rows.append([int(x) for x in t])
        matrix = SparseIntMatrix.from_dense(rows) if m else SparseIntMatrix(0, n, [])
    zero = matrix.zero_rows()
    if zero:
        if not drop_zero_rows:
            raise ValueError(f"zero rows {zero}; pass drop_zero_rows=True to remove them")
        warnings.warn(f"dropping {len(zero)} zero row(s): {zero}", stacklevel=2)
        matrix = matrix.without_zero_rows()
    return matrix


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """Weight-vector order: compare weighted degree first, then break ties by
    the earliest differing coordinate (smaller entry first).

    Zero weights give the plain lexicographic order; all-ones weights give the
    graded lexicographic order.
    """

    weights: Vec

    def __post_init__(self):
        w = as_vector(self.weights)
        if any(x < 0 for x in w):
            raise ValueError("order weights must be nonnegative")
        object.__setattr__(self, "weights", w)

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls((0,) * n)

    @classmethod
    def grlex(cls, n: int) -> "MonomialOrder":
        return cls((1,) * n)

    @property
    def num_vars(self) -> int:
        return len(self.weights)

    @property
    def is_unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != len(self.weights):
            raise DimensionMismatch(f"expected length {len(self.weights)}, got {len(v)}")

    def key(self, v: Sequence[int]) -> Vec:
        """Additive comparison key (w.v, v_1, ..., v_n).

        Lexicographic comparison of keys matches :meth:`compare`, and
        key(u + v) = key(u) + key(v) componentwise.
        """
        self._check(v)
        return (sum(w * x for w, x in zip(self.weights, v)),) + tuple(v)

    def compare(self, u: Sequence[int], v: Sequence[int]) -> int:
        """-1, 0 or +1 according to whether x^u is below, equal to or above x^v."""
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return -1
        if ku > kv:
            return 1
        return 0


# ---------------------------------------------------------------------------
# binomials


@dataclass(frozen=True)
class Binomial:
    """x^head - x^tail with nonnegative exponent vectors."""

    head: Vec
    tail: Vec

    def __post_init__(self):
        head, tail = as_vector(self.head), as_vector(self.tail)
        if len(head) != len(tail):
            raise DimensionMismatch("head and tail lengths differ")
        if not (is_nonnegative(head) and is_nonnegative(tail)):
            raise ValueError("binomial exponents must be nonnegative")
        if head == tail:
            raise ValueError("degenerate binomial: head equals tail")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)

    @classmethod
    def from_kernel_vector(cls, v: Sequence[int]) -> "Binomial":
        return cls(positive_part(v), negative_part(v))

    def kernel_vector(self) -> Vec:
        return vector_sub(self.head, self.tail)

    def oriented(self, order: MonomialOrder) -> "Binomial":
        """The same binomial with head strictly above tail under the order."""
        if order.compare(self.head, self.tail) < 0:
            return Binomial(self.tail, self.head)
        return self


# ---------------------------------------------------------------------------
# ideal membership


def ideal_membership(A: SparseIntMatrix, terms: Iterable[tuple[int, Sequence[int]]]) -> bool:
    """Whether the polynomial sum(coef * x^u) lies in the toric ideal of A.

    Terms are grouped by the image A.u; the polynomial is in the ideal exactly
    when the coefficients cancel within every group.
    """
    sums: dict[Vec, int] = {}
    for coef, u in terms:
        u = as_vector(u)
        if not is_nonnegative(u):
            raise ValueError("exponents must be nonnegative")
        image = A.apply(u)
        sums[image] = sums.get(image, 0) + int(coef)
    return all(s == 0 for s in sums.values())
