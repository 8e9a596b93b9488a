from math import factorial

import pytest

from src.combinatorics import (
    Partition,
    StandardTableau,
    cocharge,
    conjugate,
    hook_length_count,
    hook_lengths,
    index_tableau,
    index_word,
    monomial,
    parse_partition,
    parse_tableau,
    partitions,
    standard_tableaux,
)


def P(*parts: int) -> Partition:
    return Partition(parts)


def T(*rows) -> StandardTableau:
    return StandardTableau(tuple(tuple(r) for r in rows))


def test_partitions_of_four_in_reverse_lex_order() -> None:
    assert [p.to_json() for p in partitions(4)] == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]


@pytest.mark.parametrize("n,count", [(1, 1), (5, 7), (8, 22), (10, 42)])
def test_partition_counts(n: int, count: int) -> None:
    found = partitions(n)
    assert len(found) == count
    assert len(set(found)) == count
    assert all(p.n == n for p in found)


def test_partitions_rejects_non_positive() -> None:
    with pytest.raises(ValueError):
        partitions(0)


def test_partition_validation() -> None:
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert str(P(3, 1)) == "[3, 1]"


@pytest.mark.parametrize(
    "shape,expected",
    [((4,), (1, 1, 1, 1)), ((2, 2), (2, 2)), ((3, 2, 2, 1), (4, 3, 1))],
)
def test_conjugate(shape, expected) -> None:
    assert conjugate(Partition(shape)) == Partition(expected)
    assert conjugate(conjugate(Partition(shape))) == Partition(shape)


def test_standard_tableaux_of_221() -> None:
    found = standard_tableaux(P(2, 2, 1))
    assert len(found) == 5
    assert len(set(found)) == 5
    words = [t.reading_word() for t in found]
    assert words == sorted(words)


def test_row_shape_has_single_tableau() -> None:
    assert standard_tableaux(P(4)) == (T([1, 2, 3, 4]),)


def test_tableau_validation() -> None:
    with pytest.raises(ValueError):
        T([1], [2, 3])
    with pytest.raises(ValueError):
        T([2, 1])
    with pytest.raises(ValueError):
        T([1, 3], [4], [2])
    with pytest.raises(ValueError):
        T([1, 2], [4])


@pytest.mark.parametrize("shape,count", [((4, 3, 2, 1), 768), ((5,), 1), ((2, 2, 1), 5), ((3, 2), 5)])
def test_hook_length_count(shape, count) -> None:
    assert hook_length_count(Partition(shape)) == count


def test_hook_lengths_of_staircase() -> None:
    assert hook_lengths(P(4, 3, 2, 1)) == [[7, 5, 3, 1], [5, 3, 1], [3, 1], [1]]


@pytest.mark.parametrize("n", range(1, 9))
def test_sum_of_squares_is_factorial(n: int) -> None:
    assert sum(hook_length_count(shape) ** 2 for shape in partitions(n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 8))
def test_hook_formula_matches_enumeration(n: int) -> None:
    for shape in partitions(n):
        assert hook_length_count(shape) == len(standard_tableaux(shape))


def test_index_word_of_worked_example() -> None:
    s = T([1, 2, 4], [3, 5])
    assert index_word(s) == [(3, 1), (1, 0), (5, 2), (2, 0), (4, 1)]
    assert index_tableau(s).to_json() == [[0, 0, 1], [1, 2]]


def test_index_word_of_column() -> None:
    column = T([1], [2], [3], [4])
    assert index_word(column) == [(4, 3), (3, 2), (2, 1), (1, 0)]
    assert cocharge(column) == 6


def test_cocharge_values() -> None:
    assert cocharge(T([1, 2, 3, 4])) == 0
    assert cocharge(T([1, 2], [3, 4])) == 2
    assert index_tableau(T([1, 3], [2, 4])).to_json() == [[0, 1], [1, 2]]
    assert cocharge(T([1, 3], [2, 4])) == 4


def test_monomial_of_worked_example() -> None:
    assert monomial(T([1, 2, 4], [3, 5]), T([1, 3, 5], [2, 4])) == (0, 1, 0, 2, 1)


def test_monomial_small_cases() -> None:
    assert monomial(T([1, 2, 3]), T([1, 2, 3])) == (0, 0, 0)
    column = T([1], [2], [3])
    assert monomial(column, column) == (0, 1, 2)


def test_monomial_rejects_shape_mismatch() -> None:
    with pytest.raises(ValueError):
        monomial(T([1, 2, 3]), T([1, 2], [3]))


@pytest.mark.parametrize("n", range(1, 8))
def test_cocharge_equals_monomial_degree(n: int) -> None:
    for shape in partitions(n):
        tableaux = standard_tableaux(shape)
        for s in tableaux:
            assert cocharge(s) == index_tableau(s).total()
            assert sum(monomial(s, tableaux[-1])) == cocharge(s)


def test_parsers() -> None:
    assert parse_partition("[3, 1]") == P(3, 1)
    assert parse_partition("2 2 1") == P(2, 2, 1)
    assert parse_tableau("[[1,2,4],[3,5]]") == T([1, 2, 4], [3, 5])
    with pytest.raises(ValueError):
        parse_partition("three")
    with pytest.raises(ValueError):
        parse_tableau("[1,2]")
    assert str(T([1, 2, 4], [3, 5])) == "[[1,2,4],[3,5]]"
