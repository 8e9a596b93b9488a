import random
from itertools import permutations as all_orderings

import pytest

from src.combinatorics import Partition
from src.errors import CycleParseError, ResourceLimitError
from src.permgroup import (
    Permutation,
    PermutationGroup,
    compose,
    cyclic_group,
    edge_action_group,
    inverse,
    parse_generators,
    parse_permutation,
    signed_action_group,
    symmetric_group,
)

pytestmark = pytest.mark.usefixtures("specht_settings")


def klein() -> PermutationGroup:
    return PermutationGroup(4, parse_generators("(1,2)(3,4);(1,4)(2,3)", 4))


def test_parse_examples() -> None:
    assert parse_permutation("(1,2)(3,4)", 4).images == (2, 1, 4, 3)
    assert parse_permutation("", 5) == Permutation.identity(5)
    assert parse_permutation("()", 3) == Permutation.identity(3)
    assert parse_permutation("(1,2,3)", 3).images == (2, 3, 1)
    assert parse_permutation(" ( 1 , 2 ) ", 2).images == (2, 1)


def test_cycles_apply_left_to_right() -> None:
    # First (1,2), then (2,3): 1 -> 2 -> 3, 2 -> 1, 3 -> 2.
    assert parse_permutation("(1,2)(2,3)", 3).images == (3, 1, 2)


@pytest.mark.parametrize(
    "text,position",
    [
        ("(1,5)", 3),
        ("(1,2,1)", 5),
        ("(1,2", 0),
        ("1,2)", 0),
        ("(1;2)", 2),
        ("(1,,2)", 3),
    ],
)
def test_parse_errors_report_positions(text: str, position: int) -> None:
    with pytest.raises(CycleParseError) as excinfo:
        parse_permutation(text, 4)
    assert excinfo.value.position == position
    assert isinstance(excinfo.value, ValueError)


def test_parse_generators_offsets_positions() -> None:
    assert len(parse_generators("(1,2);(2,3); ", 3)) == 2
    with pytest.raises(CycleParseError) as excinfo:
        parse_generators("(1,2);(2,9)", 3)
    assert excinfo.value.position == 9


def test_parse_then_print_round_trips() -> None:
    rng = random.Random(7)
    for _ in range(50):
        images = list(range(1, 8))
        rng.shuffle(images)
        sigma = Permutation(tuple(images))
        assert parse_permutation(str(sigma), 7) == sigma
    assert str(Permutation.identity(4)) == "()"


def test_compose_and_inverse() -> None:
    a = parse_permutation("(1,2)", 3)
    b = parse_permutation("(2,3)", 3)
    e = Permutation.identity(3)

    assert compose(e, b) == b
    assert compose(a, a) == e
    ab = compose(a, b)
    assert all(ab(k) == a(b(k)) for k in range(1, 4))
    assert ab.cycle_type() == Partition((3,))
    assert compose(ab, inverse(ab)) == e
    with pytest.raises(ValueError):
        compose(a, Permutation.identity(4))


def test_cycle_types_and_signs() -> None:
    assert Permutation.identity(3).cycle_type() == Partition((1, 1, 1))
    assert parse_permutation("(1,2)(3,4)", 4).cycle_type() == Partition((2, 2))
    assert parse_permutation("(1,2,3)", 3).cycle_type() == Partition((3,))
    assert parse_permutation("(1,2)", 4).sign() == -1
    assert parse_permutation("(1,2,3,4)", 4).sign() == -1
    assert parse_permutation("(1,2)(3,4)", 4).sign() == 1


def test_cycle_type_is_conjugation_invariant() -> None:
    rng = random.Random(11)
    all_perms = [Permutation(p) for p in all_orderings(range(1, 6))]
    for _ in range(100):
        g, a = rng.choice(all_perms), rng.choice(all_perms)
        assert (g * a * g.inverse()).cycle_type() == a.cycle_type()


def test_group_orders() -> None:
    assert klein().order == 4
    assert PermutationGroup(5, []).elements() == frozenset({Permutation.identity(5)})
    assert PermutationGroup(5, parse_generators("(1,2);(1,2,3,4,5)", 5)).order == 120
    assert cyclic_group(6).order == 6
    assert symmetric_group(4).order == 24


def test_elements_are_closed() -> None:
    group = PermutationGroup(4, parse_generators("(1,2,3,4);(1,3)", 4))
    elements = group.elements()
    assert len(elements) == 8
    assert all(a * b in elements for a in elements for b in elements)
    assert all(a.inverse() in elements for a in elements)


def test_order_cap(specht_settings) -> None:
    specht_settings(group_order_cap=100)
    with pytest.raises(ResourceLimitError, match="SPECHT_GROUP_ORDER_CAP"):
        symmetric_group(5).elements()


def test_klein_classes() -> None:
    classes = klein().conjugacy_classes()
    assert [c.size for c in classes] == [1, 1, 1, 1]
    assert [c.cycle_type.to_json() for c in classes] == [[1, 1, 1, 1], [2, 2], [2, 2], [2, 2]]


def test_s3_classes_and_representatives() -> None:
    classes = PermutationGroup(3, parse_generators("(1,2);(1,2,3)", 3)).conjugacy_classes()
    assert sorted(c.size for c in classes) == [1, 2, 3]
    assert classes[0].representative == Permutation.identity(3)
    for cls in classes:
        members = {g * cls.representative * g.inverse() for g in symmetric_group(3).elements()}
        assert cls.representative == min(members)


def test_class_sizes_divide_order() -> None:
    for group in (symmetric_group(5), cyclic_group(5), edge_action_group(4)):
        classes = group.conjugacy_classes()
        assert sum(c.size for c in classes) == group.order
        assert all(group.order % c.size == 0 for c in classes)


def test_trivial_group_has_one_class() -> None:
    classes = PermutationGroup(3, []).conjugacy_classes()
    assert len(classes) == 1 and classes[0].size == 1


@pytest.mark.parametrize("m,degree,order", [(2, 1, 1), (4, 6, 24), (5, 10, 120)])
def test_edge_action_group(m: int, degree: int, order: int) -> None:
    group = edge_action_group(m)
    assert group.degree == degree
    assert group.order == order


def test_signed_action_group() -> None:
    group = signed_action_group(5)
    assert group.degree == 10
    assert group.order == 120
    # (1,2) swaps the points (1,+),(2,-) and (1,-),(2,+).
    assert group.generators[0].images[:4] == (4, 3, 2, 1)
