"""Young's seminormal form: exact matrices of S_n irreducibles on the standard-tableaux basis."""

import logging
from fractions import Fraction
from threading import Lock
from typing import Dict, List, Tuple

from src.combinatorics import Partition, StandardTableau, standard_tableaux
from src.exact_linalg import RationalMatrix
from src.permgroup import Permutation

logger = logging.getLogger(__name__)

_FACTORIES: Dict[Partition, "IrrepMatrixFactory"] = {}
_FACTORIES_LOCK = Lock()


def _content(cell: Tuple[int, int]) -> int:
    row, col = cell
    return col - row


class IrrepMatrixFactory:
    """Matrices of the irreducible `shape` in the canonical tableau order.

    Column j of every matrix is the image of the basis vector of basis[j].
    """

    def __init__(self, shape: Partition) -> None:
        self.shape = shape
        self.basis: Tuple[StandardTableau, ...] = standard_tableaux(shape)
        self.index: Dict[StandardTableau, int] = {t: i for i, t in enumerate(self.basis)}
        self._adjacent: Dict[int, RationalMatrix] = {}
        self._lock = Lock()

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.shape.n

    def adjacent_matrix(self, k: int) -> RationalMatrix:
        if not 1 <= k < self.n:
            raise ValueError(f"adjacent transposition index {k} outside 1..{self.n - 1}")
        cached = self._adjacent.get(k)
        if cached is not None:
            return cached
        matrix = self._build_adjacent(k)
        with self._lock:
            return self._adjacent.setdefault(k, matrix)

    def _build_adjacent(self, k: int) -> RationalMatrix:
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j, tableau in enumerate(self.basis):
            here, there = tableau.positions[k], tableau.positions[k + 1]
            rho = Fraction(1, _content(there) - _content(here))
            entries[(j, j)] = rho
            if here[0] == there[0] or here[1] == there[1]:
                continue
            partner = self.index[tableau.swapped(k, k + 1)]
            entries[(partner, j)] = Fraction(1) if there[0] > here[0] else 1 - rho * rho
        return RationalMatrix.from_entries(entries, (self.dimension, self.dimension))

    def swap_word(self, sigma: Permutation) -> List[int]:
        """Bubble-sorts the image word; each swap at (k, k+1) peels a factor s_k off the right.

        The factors are listed in the order they are applied.
        """
        if sigma.degree != self.n:
            raise ValueError(
                f"permutation of degree {sigma.degree} for a representation of S_{self.n}"
            )
        word: List[int] = list(sigma.images)
        factors: List[int] = []
        swapped = True
        while swapped:
            swapped = False
            for pos in range(self.n - 1):
                if word[pos] > word[pos + 1]:
                    word[pos], word[pos + 1] = word[pos + 1], word[pos]
                    factors.append(pos + 1)
                    swapped = True
        return factors

    def act(self, sigma: Permutation, block: RationalMatrix) -> RationalMatrix:
        """rep_matrix(sigma) @ block, one sparse adjacent factor at a time."""
        if block.rows != self.dimension:
            raise ValueError(f"block of shape {block.shape} for a representation of dimension {self.dimension}")
        result = block
        for k in self.swap_word(sigma):
            result = self.adjacent_matrix(k) @ result
        return result

    def rep_matrix(self, sigma: Permutation) -> RationalMatrix:
        return self.act(sigma, RationalMatrix.identity(self.dimension))


def get_factory(shape: Partition) -> IrrepMatrixFactory:
    factory = _FACTORIES.get(shape)
    if factory is not None:
        return factory
    created = IrrepMatrixFactory(shape)
    with _FACTORIES_LOCK:
        factory = _FACTORIES.setdefault(shape, created)
    logger.debug(
        "Created seminormal factory",
        extra={"partition": str(shape), "dimension": factory.dimension},
    )
    return factory


def adjacent_matrix(factory: IrrepMatrixFactory, k: int) -> RationalMatrix:
    return factory.adjacent_matrix(k)


def rep_matrix(factory: IrrepMatrixFactory, sigma: Permutation) -> RationalMatrix:
    return factory.rep_matrix(sigma)
