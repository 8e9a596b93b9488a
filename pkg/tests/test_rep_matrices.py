import random
from fractions import Fraction

import pytest
from sympy import Matrix

from src.combinatorics import Partition, partitions
from src.exact_linalg import RationalMatrix, fixed_space
from src.permgroup import Permutation, parse_generators, parse_permutation
from src.rep_matrices import adjacent_matrix, get_factory, rep_matrix
from src.sym_characters import mn_character

CASES_PER_DEGREE = 200


def P(*parts: int) -> Partition:
    return Partition(parts)


def _random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def test_trivial_and_sign_representations() -> None:
    for k in range(1, 4):
        assert adjacent_matrix(get_factory(P(4)), k).to_fractions() == [[1]]
        assert adjacent_matrix(get_factory(P(1, 1, 1, 1)), k).to_fractions() == [[-1]]


def test_adjacent_matrix_of_21() -> None:
    a = adjacent_matrix(get_factory(P(2, 1)), 1)
    assert a.trace() == 0
    assert Matrix(a.to_fractions()).det() == -1


def test_adjacent_index_is_checked() -> None:
    factory = get_factory(P(2, 1))
    with pytest.raises(ValueError):
        factory.adjacent_matrix(0)
    with pytest.raises(ValueError):
        factory.adjacent_matrix(3)


def test_rep_matrix_examples() -> None:
    factory = get_factory(P(2, 1))
    assert rep_matrix(factory, Permutation.identity(3)) == RationalMatrix.identity(2)
    assert rep_matrix(factory, parse_permutation("(1,2,3)", 3)).trace() == -1
    assert rep_matrix(get_factory(P(2, 2)), parse_permutation("(1,2)(3,4)", 4)).trace() == 2
    with pytest.raises(ValueError):
        rep_matrix(factory, Permutation.identity(4))


def test_klein_fixed_space_in_22() -> None:
    factory = get_factory(P(2, 2))
    gens = parse_generators("(1,2)(3,4);(1,4)(2,3)", 4)
    assert fixed_space([factory.rep_matrix(g) for g in gens]).dim == 2


@pytest.mark.parametrize("n", range(3, 7))
def test_involution_and_braid_relations(n: int) -> None:
    for shape in partitions(n):
        factory = get_factory(shape)
        identity = RationalMatrix.identity(factory.dimension)
        for k in range(1, n):
            a = factory.adjacent_matrix(k)
            assert a @ a == identity
            if k + 1 < n:
                b = factory.adjacent_matrix(k + 1)
                assert a @ b @ a == b @ a @ b
            for j in range(k + 2, n):
                c = factory.adjacent_matrix(j)
                assert a @ c == c @ a


@pytest.mark.parametrize("n", range(3, 7))
def test_homomorphism_and_characters(n: int) -> None:
    rng = random.Random(1000 + n)
    shapes = partitions(n)
    for _ in range(CASES_PER_DEGREE):
        shape = rng.choice(shapes)
        factory = get_factory(shape)
        sigma = _random_permutation(rng, n)
        tau = _random_permutation(rng, n)

        assert factory.rep_matrix(sigma * tau) == factory.rep_matrix(sigma) @ factory.rep_matrix(tau)
        assert factory.rep_matrix(sigma).trace() == Fraction(mn_character(shape, sigma.cycle_type()))


def test_swap_word_counts_inversions() -> None:
    factory = get_factory(P(3, 2))
    sigma = parse_permutation("(1,5,2)(3,4)", 5)
    inversions = sum(1 for i in range(5) for j in range(i + 1, 5) if sigma.images[i] > sigma.images[j])
    assert len(factory.swap_word(sigma)) == inversions
    assert factory.swap_word(Permutation.identity(5)) == []


@pytest.mark.parametrize("shape", [P(3, 1), P(2, 2), P(3, 2), P(2, 2, 1)])
def test_act_matches_the_full_matrix(shape: Partition) -> None:
    rng = random.Random(7)
    factory = get_factory(shape)
    f = factory.dimension
    block = RationalMatrix.from_rows([[rng.randint(-2, 2) for _ in range(3)] for _ in range(f)])
    for _ in range(10):
        sigma = _random_permutation(rng, shape.n)
        assert factory.act(sigma, block) == factory.rep_matrix(sigma) @ block
    with pytest.raises(ValueError):
        factory.act(Permutation.identity(shape.n), RationalMatrix.identity(f + 1))
