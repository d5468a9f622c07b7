"""Partition core: parsing, bijection with permutations, predicates, counts."""

import pytest
from hypothesis import given, strategies as st

from nccp.partitions import Partition, catalan, enumerate_partitions

parse = Partition.parse


# ---------------------------------------------------------------------------
# parsing and serialization
# ---------------------------------------------------------------------------


def test_parse_basic():
    p = parse("24/3/1")
    assert p.n == 4
    assert p.blocks == ((2, 4), (3,), (1,))


def test_parse_singleton():
    assert parse("1") == Partition(1, ((1,),))


def test_parse_comma_form_and_str():
    p = parse("1,5/4,6/2,3")
    assert p.blocks == ((1, 5), (4, 6), (2, 3))
    assert str(p) == "1,5/4,6/2,3"
    assert parse(str(p)) == p


def test_parse_duplicate_is_error():
    with pytest.raises(ValueError):
        parse("12/13")


def test_parse_rejects_non_increasing_block():
    with pytest.raises(ValueError):
        parse("21/3")


def test_parse_rejects_missing_descent():
    # max of first block must exceed min of the next
    with pytest.raises(ValueError):
        parse("12/34")


def test_parse_large_singletons_fall_back_to_whole_numbers():
    text = "/".join(str(i) for i in range(12, 0, -1))
    p = parse(text)
    assert p.n == 12
    assert p.block_count() == 12


def test_compact_form():
    assert parse("2,4/3/1").compact() == "24/3/1"
    with pytest.raises(ValueError):
        Partition.from_permutation(tuple(range(10, 0, -1))).compact()


def test_json_round_trip():
    p = parse("8/37/4/15/26")
    assert Partition.from_json(p.to_json()) == p


# ---------------------------------------------------------------------------
# permutation bijection
# ---------------------------------------------------------------------------


def test_from_permutation_descents():
    assert Partition.from_permutation((8, 3, 7, 4, 1, 5, 2, 6)).compact() == "8/37/4/15/26"
    assert Partition.from_permutation((1, 2, 3, 4)).compact() == "1234"
    assert Partition.from_permutation((2, 4, 3, 1)).compact() == "24/3/1"


def test_to_permutation():
    assert parse("24/3/1").to_permutation() == (2, 4, 3, 1)
    assert parse("4/23/1").to_permutation() == (4, 2, 3, 1)


@given(st.permutations(list(range(1, 8))))
def test_round_trip_permutation(word):
    word = tuple(word)
    assert Partition.from_permutation(word).to_permutation() == word


def test_round_trip_partition_small():
    for n in range(1, 7):
        for p in enumerate_partitions(n):
            assert Partition.from_permutation(p.to_permutation()) == p


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def test_noncrossing_examples():
    assert not parse("24/13").is_noncrossing()
    assert not parse("13/24").is_noncrossing()
    assert parse("4/23/1").is_noncrossing()


def test_canonical_examples():
    assert parse("24/13").is_canonical()
    assert not parse("13/24").is_canonical()
    assert parse("4/3/2/1").is_canonical()


def test_avoids_examples():
    assert not parse("3/12").avoids(312)
    assert not parse("24/13").avoids(312)
    assert parse("24/3/1").avoids(312)
    with pytest.raises(ValueError):
        parse("1").avoids(231)


def test_rank_and_blocks():
    assert parse("24/3/1").rank() == 1
    assert parse("24/3/1").block_count() == 3
    assert parse("1234").rank() == 3
    assert parse("4/3/2/1").rank() == 0


def test_inversions():
    assert parse("1234").inversions() == 0
    assert parse("3/2/1").inversions() == 3
    assert parse("13/2").inversions() == 1


def test_type_sequence():
    assert parse("24/3/1").type_sequence() == (2, 1, 1)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def test_enumerate_n3_nccp():
    got = [p.compact() for p in enumerate_partitions(3, "NCCP")]
    assert got == ["123", "13/2", "2/13", "23/1", "3/12", "3/2/1"]


def test_enumerate_counts():
    for n in range(1, 8):
        assert len(enumerate_partitions(n, "NCCP")) == _factorial(n)
    for n in range(1, 8):
        assert len(enumerate_partitions(n, "NCP")) == catalan(n)
        assert len(enumerate_partitions(n, "NCCP312")) == catalan(n)
        assert len(enumerate_partitions(n, "NCCP132")) == catalan(n)


def test_ncp_equals_nccp132():
    for n in range(1, 8):
        assert set(enumerate_partitions(n, "NCP")) == set(
            enumerate_partitions(n, "NCCP132")
        )


def test_ncp_is_noncrossing_canonical_filter():
    for n in range(1, 7):
        expected = [
            p
            for p in enumerate_partitions(n, "NCCP")
            if p.is_noncrossing() and p.is_canonical()
        ]
        assert enumerate_partitions(n, "NCP") == expected


def test_enumerate_314_membership():
    assert "24/13" not in {p.compact() for p in enumerate_partitions(4, "NCCP312")}
    assert len(enumerate_partitions(4, "NCCP312")) == 14
    assert len(enumerate_partitions(4, "NCP")) == 14


def test_enumerate_rejects_n0():
    with pytest.raises(ValueError):
        enumerate_partitions(0)
    with pytest.raises(ValueError):
        enumerate_partitions(3, "NOPE")


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out
