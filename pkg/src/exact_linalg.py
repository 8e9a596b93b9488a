"""Exact rational linear algebra over sympy's DomainMatrix.

Entries cross the module boundary as fractions.Fraction; inside, everything
stays in sympy's ground types. Elimination is fraction-free: rows are cleared
to integers and reduced over ZZ with rref_den, lightest rows first so that
pivots come from the smallest entries available. Subspaces are always held in
reduced row echelon form, so equal subspaces compare equal.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from src.errors import ConsistencyError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Tuple[Fraction, ...]


def to_qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(element) -> Fraction:
    return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))


def _sparse_rows(dm: DomainMatrix) -> Dict[int, Dict[int, object]]:
    return dm.to_sparse().rep


def _build(rows: Dict[int, Dict[int, object]], shape: Tuple[int, int]) -> DomainMatrix:
    cleaned = {}
    for i, row in rows.items():
        kept = {j: v for j, v in row.items() if v}
        if kept:
            cleaned[i] = kept
    return DomainMatrix(cleaned, shape, QQ)


class RationalMatrix:
    """Immutable exact matrix; arithmetic returns new matrices."""

    __slots__ = ("_dm",)

    def __init__(self, dm: DomainMatrix) -> None:
        if dm.domain != QQ:
            dm = dm.convert_to(QQ)
        self._dm = dm.to_sparse()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != width for r in rows):
            raise ValueError("rows must all have the same length")
        data = {i: {j: to_qq(v) for j, v in enumerate(r) if v} for i, r in enumerate(rows)}
        return cls(_build(data, (len(rows), width)))

    @classmethod
    def from_entries(cls, entries: Dict[Tuple[int, int], Scalar], shape: Tuple[int, int]) -> "RationalMatrix":
        data: Dict[int, Dict[int, object]] = {}
        for (i, j), v in entries.items():
            if not (0 <= i < shape[0] and 0 <= j < shape[1]):
                raise ValueError(f"entry ({i}, {j}) outside a {shape[0]}x{shape[1]} matrix")
            if v:
                data.setdefault(i, {})[j] = to_qq(v)
        return cls(_build(data, shape))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(_build({i: {i: QQ(1)} for i in range(n)}, (n, n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(_build({}, (rows, cols)))

    @property
    def domain_matrix(self) -> DomainMatrix:
        return self._dm

    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self._dm.shape)

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside a {self.rows}x{self.cols} matrix")
        value = _sparse_rows(self._dm).get(i, {}).get(j)
        return from_qq(value) if value is not None else Fraction(0)

    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {
            (i, j): from_qq(v)
            for i, row in _sparse_rows(self._dm).items()
            for j, v in row.items()
        }

    def row(self, i: int) -> List[Fraction]:
        values = [Fraction(0)] * self.cols
        for j, v in _sparse_rows(self._dm).get(i, {}).items():
            values[j] = from_qq(v)
        return values

    def to_fractions(self) -> List[List[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def _check_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return RationalMatrix(self._dm.matmul(other._dm))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(self._dm + other._dm)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same_shape(other)
        return RationalMatrix(self._dm - other._dm)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(-self._dm)

    def scale(self, factor: Scalar) -> "RationalMatrix":
        return RationalMatrix(self._dm * to_qq(factor))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and _sparse_rows(self._dm) == _sparse_rows(other._dm)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self.entries())})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self._dm.transpose())

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError(f"trace of a non-square {self.shape} matrix")
        rows = _sparse_rows(self._dm)
        return sum((from_qq(rows[i][i]) for i in rows if i in rows[i]), Fraction(0))

    def apply(self, vector: Sequence[Scalar]) -> List[Fraction]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for a {self.shape} matrix")
        column = RationalMatrix.from_rows([[v] for v in vector], cols=1) if vector else None
        if column is None:
            return [Fraction(0)] * self.rows
        product = self @ column
        return [product[i, 0] for i in range(self.rows)]

    def vstack(self, *others: "RationalMatrix") -> "RationalMatrix":
        data: Dict[int, Dict[int, object]] = {}
        offset = 0
        for m in (self,) + others:
            if m.cols != self.cols:
                raise ValueError(f"cannot stack {m.shape} under {self.shape}")
            for i, row in _sparse_rows(m._dm).items():
                data[offset + i] = dict(row)
            offset += m.rows
        return RationalMatrix(_build(data, (offset, self.cols)))

    def hstack(self, *others: "RationalMatrix") -> "RationalMatrix":
        data: Dict[int, Dict[int, object]] = {}
        offset = 0
        for m in (self,) + others:
            if m.rows != self.rows:
                raise ValueError(f"cannot place {m.shape} beside {self.shape}")
            for i, row in _sparse_rows(m._dm).items():
                data.setdefault(i, {}).update({offset + j: v for j, v in row.items()})
            offset += m.cols
        return RationalMatrix(_build(data, (self.rows, offset)))


def _bit_size(row: Dict[int, object]) -> int:
    return max(int(v).bit_length() for v in row.values())


def _integer_rows(dm: DomainMatrix) -> Optional[DomainMatrix]:
    """Same row space over ZZ: each row cleared of denominators, lightest rows first.

    Returns None when every row is zero.
    """
    if dm.shape[0] == 0:
        return None
    _, numerators = dm.to_sparse().clear_denoms_rowwise(convert=True)
    rows = [row for row in _sparse_rows(numerators).values() if row]
    if not rows:
        return None
    rows.sort(key=_bit_size)
    data = {i: dict(row) for i, row in enumerate(rows)}
    return DomainMatrix(data, (len(rows), dm.shape[1]), ZZ).to_dense()


def _fraction_free_rref(dm: DomainMatrix) -> Optional[Tuple[DomainMatrix, int, Tuple[int, ...]]]:
    integer = _integer_rows(dm)
    if integer is None:
        return None
    reduced, den, pivots = integer.rref_den()
    return reduced, int(den), tuple(pivots)


def rref(matrix: RationalMatrix) -> Tuple[RationalMatrix, Tuple[int, ...], int]:
    if matrix.rows == 0 or matrix.cols == 0:
        return matrix, (), 0
    eliminated = _fraction_free_rref(matrix.domain_matrix)
    if eliminated is None:
        return matrix, (), 0
    reduced, den, pivots = eliminated
    scaled = reduced.convert_to(QQ) * QQ(1, den)
    rows = {i: row for i, row in _sparse_rows(scaled).items() if i < len(pivots)}
    return RationalMatrix(_build(rows, matrix.shape)), pivots, len(pivots)


def rank(matrix: RationalMatrix) -> int:
    return rref(matrix)[2]


def _fraction_rows(matrix: RationalMatrix, count: int) -> Tuple[Vector, ...]:
    return tuple(tuple(matrix.row(i)) for i in range(count))


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise ValueError(f"vectors must have length {ambient_dim}")
        if not rows:
            return cls.zero(ambient_dim)
        reduced, _, r = rref(RationalMatrix.from_rows(rows, cols=ambient_dim))
        return cls(ambient_dim, _fraction_rows(reduced, r))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            tuple(
                tuple(Fraction(1) if j == i else Fraction(0) for j in range(ambient_dim))
                for i in range(ambient_dim)
            ),
        )

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.basis, cols=self.ambient_dim)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        if len(vector) != self.ambient_dim:
            raise ValueError(f"vector of length {len(vector)} in a {self.ambient_dim}-dimensional space")
        if not any(vector):
            return True
        return rank(self.as_matrix().vstack(RationalMatrix.from_rows([vector]))) == self.dim

    def to_json(self) -> List[List[str]]:
        return [[str(x) for x in v] for v in self.basis]


def _kernel_vectors(dm: DomainMatrix) -> List[List[int]]:
    """Primitive integer vectors spanning {v : M v = 0}, one per free column."""
    cols = dm.shape[1]
    eliminated = _fraction_free_rref(dm)
    if eliminated is None:
        return [[1 if j == i else 0 for j in range(cols)] for i in range(cols)]
    reduced, den, pivots = eliminated
    reduced_rows = _sparse_rows(reduced)
    pivot_set = set(pivots)
    vectors = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [0] * cols
        v[free] = den
        for i, p in enumerate(pivots):
            value = reduced_rows.get(i, {}).get(free)
            if value:
                v[p] = -int(value)
        common = gcd(*v)
        vectors.append([x // common for x in v])
    logger.debug(
        "Computed kernel",
        extra={"shape": list(dm.shape), "rank": len(pivots), "nullity": len(vectors)},
    )
    return vectors


def nullspace(matrix: RationalMatrix) -> Subspace:
    """{v : M v = 0}, built from the free columns of the fraction-free rref of M."""
    if matrix.cols == 0:
        return Subspace.zero(0)
    return Subspace.from_vectors(_kernel_vectors(matrix.domain_matrix), matrix.cols)


def annihilator(space: Subspace) -> Subspace:
    if space.dim == 0:
        return Subspace.full(space.ambient_dim)
    return nullspace(space.as_matrix())


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"cannot intersect subspaces of R^{a.ambient_dim} and R^{b.ambient_dim}")
    n = a.ambient_dim
    constraints = list(annihilator(a).basis) + list(annihilator(b).basis)
    if not constraints:
        return Subspace.full(n)
    return nullspace(RationalMatrix.from_rows(constraints, cols=n))


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"cannot add subspaces of R^{a.ambient_dim} and R^{b.ambient_dim}")
    return Subspace.from_vectors(list(a.basis) + list(b.basis), a.ambient_dim)


def contains(space: Subspace, vector: Sequence[Scalar]) -> bool:
    return space.contains(vector)


def fixed_space(mats: Sequence[RationalMatrix], dim: Optional[int] = None) -> Subspace:
    """Common fixed vectors of all matrices; the whole space when there are none."""
    if not mats:
        if dim is None:
            raise ValueError("fixed_space() of no matrices needs an explicit dimension")
        return Subspace.full(dim)
    size = mats[0].rows
    if dim is not None and dim != size:
        raise ValueError(f"matrices are {size}x{size}, expected dimension {dim}")
    for m in mats:
        if not m.is_square() or m.rows != size:
            raise ValueError(f"fixed_space() needs square {size}x{size} matrices, got {m.shape}")
    return common_fixed_space([m.__matmul__ for m in mats], size)


def common_fixed_space(actions: Sequence[Callable[[RationalMatrix], RationalMatrix]], dim: int) -> Subspace:
    """Vectors fixed by every action, found by restricting one action at a time.

    Each action maps a dim x k block B to M B for its matrix M; M itself may
    never be formed. B holds the columns still fixed so far and is replaced by
    B K, where K spans the kernel of M B - B.
    """
    block = RationalMatrix.identity(dim)
    for act in actions:
        if block.cols == 0:
            break
        moved = act(block) - block
        kernel = _kernel_vectors(moved.domain_matrix)
        if len(kernel) == block.cols:
            continue
        block = block @ RationalMatrix.from_rows(kernel, cols=block.cols).transpose()
        logger.debug("Restricted fixed block", extra={"ambient_dim": dim, "rank": block.cols})
    return Subspace.from_vectors(block.transpose().to_fractions(), dim)


def solve(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """X with A X = B; free unknowns are set to zero."""
    if a.rows != b.rows:
        raise ValueError(f"cannot solve {a.shape} X = {b.shape}")
    k = a.cols
    reduced, pivots, _ = rref(a.hstack(b))
    if any(p >= k for p in pivots):
        raise ConsistencyError(
            "linear system has no solution",
            report={"lhs_shape": list(a.shape), "rhs_shape": list(b.shape)},
        )
    entries: Dict[Tuple[int, int], Fraction] = {}
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            value = reduced[i, k + j]
            if value:
                entries[(p, j)] = value
    return RationalMatrix.from_entries(entries, (k, b.cols))
