from math import comb

import pytest
from hypothesis import given, strategies as st

from densityforge.partitions import (
    Partition,
    conjugate,
    dominates,
    enumerate_partitions,
    insert_sorted,
    n_stat,
    partitions_up_to,
)

partitions = st.integers(0, 12).flatmap(lambda d: st.sampled_from(enumerate_partitions(d)))


def test_partition_validation():
    assert Partition((3, 1, 1)) == (3, 1, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.from_parts((0, 1, 3, 1)) == (3, 1, 1)


@pytest.mark.parametrize("text,parts", [("3,1,1", (3, 1, 1)), ("-", ()), ("", ()), ("()", ()), ("(2,1)", (2, 1))])
def test_parse(text, parts):
    assert Partition.parse(text) == parts


@given(partitions)
def test_serialize_roundtrip(lam):
    assert Partition.parse(lam.serialize()) == lam


def test_enumeration_order_and_counts():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    # p(n) for n = 0..10
    assert [len(enumerate_partitions(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert enumerate_partitions(5, max_len=2) == [(5,), (4, 1), (3, 2)]
    assert len(partitions_up_to(3)) == 1 + 1 + 2 + 3


@given(partitions)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()


def test_insert_sorted():
    assert insert_sorted(2, (3, 1)) == (3, 2, 1)
    assert insert_sorted(0, (3, 1)) == (3, 1)
    assert insert_sorted(4, ()) == (4,)
    with pytest.raises(ValueError):
        insert_sorted(-1, (1,))


def test_n_stat():
    assert n_stat((1, 1, 1)) == 3
    assert n_stat((3,)) == 0
    # n(1^k) = k choose 2
    assert all(n_stat((1,) * k) == comb(k, 2) for k in range(8))


@given(partitions, partitions)
def test_dominance_reverses_under_conjugation(lam, mu):
    if sum(lam) == sum(mu):
        assert dominates(lam, mu) == dominates(conjugate(mu), conjugate(lam))


def test_dominance_examples():
    assert dominates((2, 2), (2, 1, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2))
    assert not dominates((2, 2, 2), (3, 1, 1, 1))
