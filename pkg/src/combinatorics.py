"""Partitions, standard tableaux and the index-word statistics behind higher Specht polynomials.

Tableaux are stored row by row, longest row first (rows[0] is the bottom row of
the French drawing). Columns increase from row j to row j+1.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Tuple

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
# Exponent of x_k sits at position k-1.
ExponentVector = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...]
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {list(parts)}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {list(parts)}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return "[" + ", ".join(str(p) for p in self.parts) + "]"

    def cells(self) -> List[Cell]:
        return [(r, c) for r, length in enumerate(self.parts) for c in range(length)]

    def to_json(self) -> List[int]:
        return list(self.parts)


def parse_partition(text: str) -> Partition:
    """Accept `[3,1]`, `3,1` or `3 1`."""
    cleaned = text.strip().strip("[]()").replace(",", " ")
    try:
        parts = [int(token) for token in cleaned.split()]
    except ValueError as exc:
        raise ValueError(f"invalid partition {text!r}") from exc
    if not parts:
        raise ValueError(f"invalid partition {text!r}")
    return Partition(tuple(parts))


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order, [n] first."""
    if n < 1:
        raise ValueError(f"partitions() needs n >= 1, got {n}")

    def gen(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - part, part):
                yield (part,) + rest

    return tuple(Partition(parts) for parts in gen(n, n))


def conjugate(shape: Partition) -> Partition:
    if not shape.parts:
        return shape
    return Partition(tuple(sum(1 for p in shape.parts if p > c) for c in range(shape.parts[0])))


def hook_lengths(shape: Partition) -> List[List[int]]:
    columns = conjugate(shape).parts
    return [
        [length - c + columns[c] - r - 1 for c in range(length)]
        for r, length in enumerate(shape.parts)
    ]


def hook_length_count(shape: Partition) -> int:
    """f^lambda = n! / product of hook lengths."""
    hooks = prod(h for row in hook_lengths(shape) for h in row)
    return factorial(shape.n) // hooks


@dataclass(frozen=True)
class StandardTableau:
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        shape = Partition(tuple(len(row) for row in rows))
        entries = sorted(v for row in rows for v in row)
        if entries != list(range(1, shape.n + 1)):
            raise ValueError(f"tableau entries must be exactly 1..{shape.n}: {self.to_json()}")
        for row in rows:
            if any(row[c] >= row[c + 1] for c in range(len(row) - 1)):
                raise ValueError(f"tableau rows must increase: {self.to_json()}")
        for j in range(len(rows) - 1):
            if any(rows[j][c] >= rows[j + 1][c] for c in range(len(rows[j + 1]))):
                raise ValueError(f"tableau columns must increase: {self.to_json()}")

    @cached_property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def n(self) -> int:
        return self.shape.n

    @cached_property
    def positions(self) -> Dict[int, Cell]:
        return {v: (r, c) for r, row in enumerate(self.rows) for c, v in enumerate(row)}

    def reading_word(self) -> Tuple[int, ...]:
        """Columns left to right, each read from the top of the French drawing down."""
        word: List[int] = []
        for c in range(len(self.rows[0]) if self.rows else 0):
            for r in range(len(self.rows) - 1, -1, -1):
                if c < len(self.rows[r]):
                    word.append(self.rows[r][c])
        return tuple(word)

    def swapped(self, a: int, b: int) -> "StandardTableau":
        """Tableau with entries a and b exchanged; raises if the result is not standard."""
        swap = {a: b, b: a}
        return StandardTableau(tuple(tuple(swap.get(v, v) for v in row) for row in self.rows))

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def parse_tableau(text: str) -> StandardTableau:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"tableau must be a JSON array of rows: {text!r}") from exc
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ValueError(f"tableau must be a JSON array of rows: {text!r}")
    return StandardTableau(tuple(tuple(row) for row in rows))


@lru_cache(maxsize=None)
def standard_tableaux(shape: Partition) -> Tuple[StandardTableau, ...]:
    """All standard tableaux of the shape, ordered by their column reading word."""
    n = shape.n
    fill: List[List[int]] = [[] for _ in shape.parts]
    found: List[StandardTableau] = []

    def place(value: int) -> None:
        if value > n:
            found.append(StandardTableau(tuple(tuple(row) for row in fill)))
            return
        for r, length in enumerate(shape.parts):
            size = len(fill[r])
            if size < length and (r == 0 or len(fill[r - 1]) > size):
                fill[r].append(value)
                place(value + 1)
                fill[r].pop()

    place(1)
    found.sort(key=lambda t: t.reading_word())
    logger.debug(
        "Enumerated standard tableaux",
        extra={"partition": str(shape), "count": len(found)},
    )
    return tuple(found)


def index_word(tableau: StandardTableau) -> List[Tuple[int, int]]:
    """The reading word with indices: 1 gets 0, k+1 gets one more than k when it sits left of k."""
    word = tableau.reading_word()
    where = {v: i for i, v in enumerate(word)}
    index = {1: 0}
    for k in range(2, tableau.n + 1):
        index[k] = index[k - 1] + (1 if where[k] < where[k - 1] else 0)
    return [(v, index[v]) for v in word]


@dataclass(frozen=True)
class IndexTableau:
    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def total(self) -> int:
        return sum(sum(row) for row in self.rows)

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


def index_tableau(tableau: StandardTableau) -> IndexTableau:
    index = dict(index_word(tableau))
    rows = tuple(tuple(index[v] for v in row) for row in tableau.rows)
    return IndexTableau(shape=tableau.shape, rows=rows)


def cocharge(tableau: StandardTableau) -> int:
    return index_tableau(tableau).total()


def monomial(source: StandardTableau, target: StandardTableau) -> ExponentVector:
    """x_T^{i(S)}: the cell of T names the variable, the same cell of i(S) its exponent."""
    if source.shape != target.shape:
        raise ValueError(
            f"tableaux must share a shape: {source.shape} vs {target.shape}"
        )
    exponents = [0] * target.n
    for index_row, target_row in zip(index_tableau(source).rows, target.rows):
        for exponent, variable in zip(index_row, target_row):
            exponents[variable - 1] = exponent
    return tuple(exponents)
