"""Pairing, sequence, set, and tree encodings."""

import pytest
from hypothesis import given, strategies as st

from funalg import codec
from funalg.codec import (FinSet, NotAPairError, ack_decode, ack_encode,
                          base_pair, base_unpair, head, is_tree,
                          list_decode, list_encode, pair, seq_concat,
                          seq_decode, seq_encode, seq_len, seq_prefix,
                          seq_prefix_proper, tail, tuple_encode, unpair)


def test_pair_worked_examples():
    assert pair(0, 0) == 1
    assert pair(0, 1) == 2
    assert pair(1, 0) == 3
    assert pair(1, 1) == 5
    assert pair(2, 0) == 6
    assert pair(5, 0) == 21


def test_pair_defining_equation():
    for x in range(40):
        for y in range(40):
            z = pair(x, y)
            assert 2 * z == (x + y) * (x + y + 1) + 2 * x + 2


def test_unpair_inverse_small():
    for z in range(1, 10_001):
        x, y = unpair(z)
        assert pair(x, y) == z


def test_projections_below():
    for z in range(1, 10_001):
        assert head(z) < z
        assert tail(z) < z


def test_projections_total_at_zero():
    assert head(0) == 0
    assert tail(0) == 0


def test_unpair_rejects_zero():
    with pytest.raises(NotAPairError):
        unpair(0)


@given(st.integers(min_value=0, max_value=10**9),
       st.integers(min_value=0, max_value=10**9))
def test_pair_unpair_roundtrip(x, y):
    assert unpair(pair(x, y)) == (x, y)


@given(st.integers(min_value=1, max_value=10**12))
def test_unpair_pair_roundtrip(z):
    assert pair(*unpair(z)) == z


def test_pair_monotone():
    for x in range(20):
        for y in range(20):
            assert pair(x + 1, y) > pair(x, y)
            assert pair(x, y + 1) > pair(x, y)


def test_tuple_right_associated():
    assert tuple_encode([7]) == 7
    assert tuple_encode([1, 2, 3]) == pair(1, pair(2, 3))


def test_list_roundtrip():
    for lst in ([], [0], [5], [1, 2], [3, 3, 3], list(range(6))):
        assert list_decode(list_encode(lst)) == lst
    assert list_encode([]) == 0


def test_seq_worked_examples():
    # the code of the bit-vector 0100 is 20; its length is 4
    assert seq_encode([0, 1, 0, 0]) == 20
    assert seq_len(1) == 0
    assert seq_len(20) == 4


def test_seq_all_zero_one():
    for i in range(21):
        assert seq_encode([0] * i) == 2 ** i
        assert seq_encode([1] * i) == 2 ** (i + 1) - 1


@given(st.lists(st.integers(min_value=0, max_value=1), max_size=40))
def test_seq_roundtrip(bits):
    assert seq_decode(seq_encode(bits)) == bits


@given(st.lists(st.integers(min_value=0, max_value=1), max_size=15),
       st.lists(st.integers(min_value=0, max_value=1), max_size=15))
def test_seq_concat(a, b):
    assert seq_concat(seq_encode(a), seq_encode(b)) == seq_encode(a + b)


def test_seq_concat_worked_example():
    assert seq_concat(2, 3) == 5


def test_seq_prefix():
    a = seq_encode([0, 1])
    b = seq_encode([0, 1, 1])
    assert seq_prefix(a, b)
    assert seq_prefix_proper(a, b)
    assert seq_prefix(a, a)
    assert not seq_prefix_proper(a, a)
    assert not seq_prefix(b, a)


def test_ack_roundtrip():
    import itertools
    for n in range(6):
        for els in itertools.combinations(range(12), n):
            s = FinSet(els)
            assert ack_decode(ack_encode(s)) == s


def test_ack_membership_is_bit():
    s = FinSet((0, 2, 5))
    code = ack_encode(s)
    for x in range(8):
        assert ((code >> x) & 1 == 1) == (x in s)


def test_finset_size():
    assert FinSet(()).size() == 0
    assert FinSet((0, 2)).size() == 3  # one more than the largest element


def test_tree_predicate():
    assert is_tree(frozenset({1, 2, 5}))
    assert not is_tree(frozenset({5}))
    assert is_tree(frozenset({1}))
    assert is_tree(frozenset())


def test_base_pair_roundtrip():
    for b in (2, 5, 10):
        for x in range(12):
            for y in range(b):
                assert base_unpair(base_pair(x, y, b), b) == (x, y)
