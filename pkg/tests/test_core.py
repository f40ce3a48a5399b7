import random

import pytest

from toricbases import (
    Binomial,
    DimensionMismatch,
    MonomialOrder,
    SparseIntMatrix,
    ideal_membership,
    matrix_from_text,
    matrix_to_text,
)
from toricbases.core import negative_part, positive_part
from toricbases.oracle import two_by_two_minors_matrix


def test_compare_lex_first_negative_entry():
    order = MonomialOrder.lex(2)
    assert order.compare((0, 1), (1, 0)) == -1
    assert order.compare((1, 0), (0, 1)) == 1


def test_compare_weight_dominates():
    order = MonomialOrder((1, 1))
    assert order.compare((2, 0), (0, 1)) == 1


def test_compare_reflexive():
    order = MonomialOrder((3, 0, 7))
    for v in [(0, 0, 0), (1, 2, 3), (5, 0, 1)]:
        assert order.compare(v, v) == 0


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        MonomialOrder.lex(2).compare((1, 0, 0), (0, 1))


def test_order_key_examples():
    assert MonomialOrder((1, 1)).key((2, 0)) == (2, 2, 0)
    assert MonomialOrder.lex(2).key((0, 0)) == (0, 0, 0)


def test_order_key_additive():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        order = MonomialOrder(tuple(rng.randint(0, 3) for _ in range(n)))
        u = tuple(rng.randint(0, 4) for _ in range(n))
        v = tuple(rng.randint(0, 4) for _ in range(n))
        total = tuple(a + b for a, b in zip(u, v))
        assert tuple(
            a + b for a, b in zip(order.key(u), order.key(v))
        ) == order.key(total)


def test_compare_matches_key_comparison_exhaustively():
    order = MonomialOrder((2, 0, 1))
    grid = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    for u in grid:
        for v in grid:
            by_key = (order.key(u) > order.key(v)) - (order.key(u) < order.key(v))
            assert order.compare(u, v) == by_key


def test_compare_total_order_on_random_triples():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 4)
        order = MonomialOrder(tuple(rng.randint(0, 2) for _ in range(n)))
        u, v, w = (tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(3))
        # trichotomy
        assert (order.compare(u, v) == 0) == (u == v)
        assert order.compare(u, v) == -order.compare(v, u)
        # transitivity
        if order.compare(u, v) <= 0 and order.compare(v, w) <= 0:
            assert order.compare(u, w) <= 0


def test_positive_negative_parts():
    rng = random.Random(3)
    for _ in range(200):
        v = tuple(rng.randint(-5, 5) for _ in range(rng.randint(1, 6)))
        pos, neg = positive_part(v), negative_part(v)
        assert all(x >= 0 for x in pos) and all(x >= 0 for x in neg)
        assert tuple(p - q for p, q in zip(pos, neg)) == v
        assert all(p * q == 0 for p, q in zip(pos, neg))


def test_binomial_from_kernel_vector():
    b = Binomial.from_kernel_vector((1, -2, 0, 1))
    assert b.head == (1, 0, 0, 1)
    assert b.tail == (0, 2, 0, 0)
    assert b.kernel_vector() == (1, -2, 0, 1)


def test_binomial_rejects_degenerate():
    with pytest.raises(ValueError):
        Binomial((1, 0), (1, 0))
    with pytest.raises(ValueError):
        Binomial((-1, 0), (0, 0))


def test_ideal_membership_single_row():
    A = SparseIntMatrix.from_dense([[1, 1]])
    assert ideal_membership(A, [(1, (1, 0)), (-1, (0, 1))])
    assert not ideal_membership(A, [(1, (1, 0)), (1, (0, 1))])


def test_ideal_membership_k22_minor(k22):
    # columns are ordered x11, x21, x12, x22; the minor is x11*x22 - x21*x12
    assert ideal_membership(k22, [(1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0))])


def test_ideal_membership_kernel_vectors_random():
    rng = random.Random(23)
    for _ in range(50):
        m, n = rng.randint(1, 3), rng.randint(2, 5)
        entries = []
        for i in range(m):
            cols = rng.sample(range(n), rng.randint(1, n))
            entries.extend((i, j, rng.choice([-2, -1, 1, 2])) for j in cols)
        A = SparseIntMatrix(m, n, entries)
        # search a small kernel vector
        found = None
        import itertools

        for v in itertools.product(range(-2, 3), repeat=n):
            if any(v) and not any(A.apply(v)):
                found = v
                break
        if found is not None:
            assert ideal_membership(
                A, [(1, positive_part(found)), (-1, negative_part(found))]
            )
        bad = tuple(rng.randint(0, 2) for _ in range(n))
        if any(A.apply(bad)):
            assert not ideal_membership(A, [(1, bad), (-1, (0,) * n)])


def test_matrix_invariants():
    A = SparseIntMatrix.from_dense([[1, 0, -2], [0, 3, 0]])
    assert A.max_abs == 3
    assert A.entry(0, 2) == -2 and A.entry(1, 0) == 0
    assert A.apply((1, 1, 1)) == (-1, 3)
    assert A.transpose().to_dense() == [[1, 0], [0, 3], [-2, 0]]


def test_matrix_rejects_bad_entries():
    with pytest.raises(ValueError):
        SparseIntMatrix(1, 2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        SparseIntMatrix(1, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(ValueError):
        SparseIntMatrix(1, 2, [(0, 5, 1)])


def test_matrix_zero_row_policy():
    text = "2 2\n1 1\n0 0\n"
    with pytest.raises(ValueError):
        matrix_from_text(text)
    with pytest.warns(UserWarning):
        A = matrix_from_text(text, drop_zero_rows=True)
    assert A.num_rows == 1
    # the in-memory type itself may hold zero rows
    B = SparseIntMatrix.from_dense([[1, 1], [0, 0]])
    assert B.zero_rows() == [1]
    assert B.without_zero_rows().num_rows == 1


def test_matrix_text_round_trip_dense_and_sparse():
    A = two_by_two_minors_matrix(2, 3)
    for sparse in (False, True, None):
        text = matrix_to_text(A, sparse=sparse)
        assert matrix_from_text(text) == A


def test_matrix_text_parse_errors():
    with pytest.raises(ValueError):
        matrix_from_text("")
    with pytest.raises(ValueError):
        matrix_from_text("2 2\n1 1\n")
    with pytest.raises(ValueError):
        matrix_from_text("sparse 2 2 1\n0 0 1\n0 1 1\n")
