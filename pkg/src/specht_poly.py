"""Sparse rational polynomials, the variable action of S_n, Young symmetrizers and higher Specht polynomials."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as all_orderings
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.combinatorics import (
    ExponentVector,
    StandardTableau,
    monomial,
    partitions,
    standard_tableaux,
)
from src.errors import ConsistencyError
from src.exact_linalg import RationalMatrix
from src.permgroup import Permutation

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _act(images: Sequence[int], exponents: ExponentVector) -> ExponentVector:
    # x_k -> x_{sigma(k)}: the exponent of x_k moves to position sigma(k).
    moved = [0] * len(exponents)
    for k, e in enumerate(exponents):
        moved[images[k] - 1] = e
    return tuple(moved)


def _term_key(exponents: ExponentVector) -> Tuple[int, Tuple[int, ...]]:
    return (sum(exponents), tuple(reversed(exponents)))


def _format_monomial(exponents: ExponentVector) -> str:
    factors = []
    for k, e in enumerate(exponents, start=1):
        if e == 1:
            factors.append(f"x{k}")
        elif e > 1:
            factors.append(f"x{k}^{e}")
    return "*".join(factors)


class SparsePolynomial:
    """Polynomial in x1..xn with Fraction coefficients; zero coefficients are never stored."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[ExponentVector, Scalar]] = None) -> None:
        self.n = n
        cleaned: Dict[ExponentVector, Fraction] = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != n:
                raise ValueError(f"exponent vector {list(exponents)} has length != {n}")
            if any(e < 0 for e in exponents):
                raise ValueError(f"negative exponent in {list(exponents)}")
            coeff = Fraction(coeff)
            if coeff:
                cleaned[exponents] = coeff
        self._terms = cleaned

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "SparsePolynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, k: int) -> "SparsePolynomial":
        if not 1 <= k <= n:
            raise ValueError(f"variable x{k} outside x1..x{n}")
        return cls(n, {tuple(1 if i == k - 1 else 0 for i in range(n)): 1})

    @classmethod
    def monomial(cls, exponents: ExponentVector, coeff: Scalar = 1) -> "SparsePolynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    @property
    def terms(self) -> Mapping[ExponentVector, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> List[Tuple[ExponentVector, Fraction]]:
        """Total degree descending, then lexicographically descending from x_n down to x_1."""
        return sorted(self._terms.items(), key=lambda item: _term_key(item[0]), reverse=True)

    def coefficient(self, exponents: ExponentVector) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _check_compatible(self, other: "SparsePolynomial") -> None:
        if self.n != other.n:
            raise ValueError(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_compatible(other)
        total = dict(self._terms)
        for e, c in other._terms.items():
            total[e] = total.get(e, Fraction(0)) + c
        return SparsePolynomial(self.n, total)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def __mul__(self, other: Union["SparsePolynomial", int, Fraction]) -> "SparsePolynomial":
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial(self.n, {e: c * other for e, c in self._terms.items()})
        self._check_compatible(other)
        total: Dict[ExponentVector, Fraction] = defaultdict(Fraction)
        for (e1, c1), (e2, c2) in product(self._terms.items(), other._terms.items()):
            total[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return SparsePolynomial(self.n, total)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.n}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for exponents, coeff in self.sorted_terms():
            mono = _format_monomial(exponents)
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def permute(self, sigma: Permutation) -> "SparsePolynomial":
        if sigma.degree != self.n:
            raise ValueError(
                f"permutation of degree {sigma.degree} acting on {self.n} variables"
            )
        return SparsePolynomial(self.n, {_act(sigma.images, e): c for e, c in self._terms.items()})

    def to_json(self) -> List[Dict]:
        return [{"coeff": str(c), "exponents": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, n: int, payload: Iterable[Dict]) -> "SparsePolynomial":
        terms: Dict[ExponentVector, Fraction] = {}
        for item in payload:
            exponents = tuple(int(e) for e in item["exponents"])
            terms[exponents] = terms.get(exponents, Fraction(0)) + Fraction(item["coeff"])
        return cls(n, terms)


def permute_variables(p: SparsePolynomial, sigma: Permutation) -> SparsePolynomial:
    return p.permute(sigma)


def _stabilizer(blocks: Sequence[Sequence[int]], n: int) -> Tuple[Permutation, ...]:
    """All permutations of 1..n mapping every block onto itself."""
    per_block = [list(all_orderings(block)) for block in blocks]
    found: List[Permutation] = []
    for choice in product(*per_block):
        images = list(range(1, n + 1))
        for block, image in zip(blocks, choice):
            for src, dst in zip(block, image):
                images[src - 1] = dst
        found.append(Permutation(tuple(images)))
    return tuple(sorted(found))


@dataclass(frozen=True)
class YoungSymmetrizer:
    tableau: StandardTableau
    row_group: Tuple[Permutation, ...]
    column_group: Tuple[Permutation, ...]

    def apply(self, exponents: ExponentVector) -> SparsePolynomial:
        """sum over tau in C(T), sigma in R(T) of sign(tau) tau.sigma.x^m: rows act first."""
        row_sum: Dict[ExponentVector, int] = defaultdict(int)
        for sigma in self.row_group:
            row_sum[_act(sigma.images, exponents)] += 1
        total: Dict[ExponentVector, int] = defaultdict(int)
        for tau in self.column_group:
            sign = tau.sign()
            for e, c in row_sum.items():
                total[_act(tau.images, e)] += sign * c
        return SparsePolynomial(self.tableau.n, total)


@lru_cache(maxsize=None)
def young_symmetrizer(tableau: StandardTableau) -> YoungSymmetrizer:
    n = tableau.n
    columns = [
        [row[c] for row in tableau.rows if c < len(row)]
        for c in range(len(tableau.rows[0]) if tableau.rows else 0)
    ]
    return YoungSymmetrizer(
        tableau=tableau,
        row_group=_stabilizer(tableau.rows, n),
        column_group=_stabilizer(columns, n),
    )


def apply_symmetrizer(tableau: StandardTableau, exponents: ExponentVector) -> SparsePolynomial:
    if len(exponents) != tableau.n:
        raise ValueError(
            f"exponent vector of length {len(exponents)} for a tableau of size {tableau.n}"
        )
    return young_symmetrizer(tableau).apply(tuple(exponents))


@lru_cache(maxsize=None)
def higher_specht(source: StandardTableau, target: StandardTableau) -> SparsePolynomial:
    """F_T^S: the symmetrizer of T applied to x_T^{i(S)}."""
    poly = apply_symmetrizer(target, monomial(source, target))
    if poly.is_zero():
        raise ConsistencyError(
            "higher Specht polynomial vanished",
            report={"S": source.to_json(), "T": target.to_json()},
        )
    return poly


def specht_table(n: int) -> List[Tuple[StandardTableau, StandardTableau, SparsePolynomial]]:
    """Every F_T^S for shapes of n, in canonical shape, then S, then T order."""
    table = []
    for shape in partitions(n):
        tableaux = standard_tableaux(shape)
        for source in tableaux:
            for target in tableaux:
                table.append((source, target, higher_specht(source, target)))
    logger.debug("Built higher Specht table", extra={"n": n, "count": len(table)})
    return table


def coefficient_matrix(polys: Sequence[SparsePolynomial]) -> Tuple[RationalMatrix, List[ExponentVector]]:
    """Rows are the polynomials, columns the monomials they use (canonical order)."""
    monomials = sorted({e for p in polys for e in p.terms}, key=_term_key, reverse=True)
    column = {e: j for j, e in enumerate(monomials)}
    entries = {
        (i, column[e]): c
        for i, p in enumerate(polys)
        for e, c in p.terms.items()
    }
    return RationalMatrix.from_entries(entries, (len(polys), len(monomials))), monomials
