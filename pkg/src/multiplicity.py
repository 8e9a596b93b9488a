"""Trivial-representation multiplicities of G inside the S_n irreducibles, and the series built from them.

The numerator sum_lambda m_lambda * phi(lambda, z) over prod_{i=1..n} (1 - z^i)
must reproduce the Molien series of G; hilbert_consistency() checks exactly that.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from src import config
from src.combinatorics import Partition, conjugate, cocharge, hook_length_count, partitions, standard_tableaux
from src.errors import ConsistencyError
from src.exact_linalg import from_qq, to_qq
from src.permgroup import PermutationGroup
from src.sym_characters import character_table

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

SERIES_RING, _Z = ring("z", QQ)


@dataclass(frozen=True)
class UnivariateSeries:
    """An element of QQ[z] held in sympy's sparse polynomial ring.

    `order` is None for an exact polynomial; otherwise coefficients are known
    through z^order and nothing past it is ever produced.
    """

    poly: PolyElement
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.order is not None:
            if self.order < 0:
                raise ValueError(f"truncation order must be >= 0, got {self.order}")
            object.__setattr__(self, "poly", rs_trunc(self.poly, _Z, self.order + 1))

    @classmethod
    def polynomial(cls, coefficients: Sequence[Scalar]) -> "UnivariateSeries":
        return cls(SERIES_RING.from_dict({(d,): to_qq(c) for d, c in enumerate(coefficients) if c}))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "UnivariateSeries":
        return cls.polynomial([0] * degree + [coeff])

    @classmethod
    def geometric(cls, step: int, order: int) -> "UnivariateSeries":
        """1 / (1 - z^step) through z^order."""
        if step < 1:
            raise ValueError(f"geometric step must be positive, got {step}")
        return cls(rs_series_inversion(SERIES_RING.one - _Z**step, _Z, order + 1), order)

    @property
    def is_polynomial(self) -> bool:
        return self.order is None

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """Lowest degree first, up to the last nonzero one."""
        return tuple(self._coefficient_at(d) for d in range(self.degree() + 1))

    def _merged_order(self, other: "UnivariateSeries") -> Optional[int]:
        orders = [o for o in (self.order, other.order) if o is not None]
        return min(orders) if orders else None

    def _coefficient_at(self, degree: int) -> Fraction:
        return from_qq(self.poly.get((degree,), QQ.zero))

    def coefficient(self, degree: int) -> Fraction:
        if self.order is not None and degree > self.order:
            raise ValueError(f"coefficient of z^{degree} is past the truncation order {self.order}")
        return self._coefficient_at(degree)

    def coefficients_through(self, order: int) -> List[Fraction]:
        return [self.coefficient(d) for d in range(order + 1)]

    def degree(self) -> int:
        return max((monomial[0] for monomial in self.poly.keys()), default=-1)

    def __add__(self, other: "UnivariateSeries") -> "UnivariateSeries":
        return UnivariateSeries(self.poly + other.poly, self._merged_order(other))

    def __neg__(self) -> "UnivariateSeries":
        return UnivariateSeries(-self.poly, self.order)

    def __sub__(self, other: "UnivariateSeries") -> "UnivariateSeries":
        return self + (-other)

    def __mul__(self, other: Union["UnivariateSeries", int, Fraction]) -> "UnivariateSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        order = self._merged_order(other)
        if order is None:
            return UnivariateSeries(self.poly * other.poly)
        return UnivariateSeries(rs_mul(self.poly, other.poly, _Z, order + 1), order)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "UnivariateSeries":
        return UnivariateSeries(self.poly.mul_ground(to_qq(factor)), self.order)

    def truncate(self, order: int) -> "UnivariateSeries":
        if self.order is not None and order > self.order:
            raise ValueError(f"cannot extend a series known through z^{self.order} to z^{order}")
        return UnivariateSeries(self.poly, order)

    def value_at_one(self) -> Fraction:
        if self.order is not None:
            raise ValueError("value at z=1 of a truncated series is undefined")
        return sum(self.coefficients, Fraction(0))

    def __str__(self) -> str:
        pieces: List[str] = []
        for d, c in enumerate(self.coefficients):
            if not c:
                continue
            magnitude = abs(c)
            power = "" if d == 0 else ("z" if d == 1 else f"z^{d}")
            if not power:
                body = str(magnitude)
            elif magnitude == 1:
                body = power
            else:
                body = f"{magnitude}*{power}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        text = "".join(pieces) or "0"
        if self.order is not None:
            text += f" + O(z^{self.order + 1})"
        return text

    def to_json(self) -> Dict:
        payload: Dict = {"coefficients": [str(c) for c in self.coefficients]}
        if self.order is not None:
            payload["coefficients"] = [str(c) for c in self.coefficients_through(self.order)]
            payload["order"] = self.order
        return payload


def trivial_multiplicity(group: PermutationGroup, shape: Partition) -> int:
    """<chi^shape restricted to G, 1_G>, from the class sums of G."""
    if shape.n != group.degree:
        raise ValueError(f"{shape} is not a partition of the group degree {group.degree}")
    table = character_table(group.degree)
    total = sum(cls.size * table.value(shape, cls.cycle_type) for cls in group.conjugacy_classes())
    value, remainder = divmod(total, group.order)
    if remainder:
        raise ConsistencyError(
            "character scalar product is not an integer",
            report={"partition": shape.to_json(), "sum": total, "group_order": group.order},
        )
    return value


@dataclass(frozen=True)
class MultiplicityTable:
    degree: int
    group_order: int
    values: Tuple[Tuple[Partition, int], ...]
    _lookup: Dict[Partition, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_lookup", dict(self.values))

    def __getitem__(self, shape: Partition) -> int:
        return self._lookup[shape]

    def __iter__(self) -> Iterator[Tuple[Partition, int]]:
        return iter(self.values)

    def nonzero(self) -> List[Tuple[Partition, int]]:
        return [(shape, m) for shape, m in self.values if m]

    def total(self) -> int:
        return sum(m * hook_length_count(shape) for shape, m in self.values)

    def expected_total(self) -> int:
        return factorial(self.degree) // self.group_order

    def check(self) -> None:
        trivial = Partition((self.degree,))
        report = {
            "total": self.total(),
            "expected_total": self.expected_total(),
            "trivial": self._lookup.get(trivial),
        }
        if report["total"] != report["expected_total"] or report["trivial"] != 1:
            raise ConsistencyError("multiplicity table fails its counting checks", report=report)

    def to_json(self) -> Dict:
        return {
            "degree": self.degree,
            "group_order": self.group_order,
            "multiplicities": {str(shape): m for shape, m in self.values},
        }


def multiplicity_table(group: PermutationGroup) -> MultiplicityTable:
    values = tuple((shape, trivial_multiplicity(group, shape)) for shape in partitions(group.degree))
    table = MultiplicityTable(degree=group.degree, group_order=group.order, values=values)
    table.check()
    logger.info(
        "Computed multiplicity table",
        extra={"degree": group.degree, "group_order": group.order, "nonzero": len(table.nonzero())},
    )
    return table


def multiplicity_enumerator_text(table: MultiplicityTable) -> str:
    """P(G, t) written as `t[1,1,1,1] + 2*t[2,2] + t[4]`."""
    pieces = []
    for shape, m in reversed(table.values):
        if not m:
            continue
        label = "t[" + ",".join(str(p) for p in shape.parts) + "]"
        pieces.append(label if m == 1 else f"{m}*{label}")
    return " + ".join(pieces) or "0"


def appearance_polynomial(shape: Partition) -> UnivariateSeries:
    degrees = Counter(cocharge(t) for t in standard_tableaux(shape))
    top = max(degrees)
    return UnivariateSeries.polynomial([degrees.get(d, 0) for d in range(top + 1)])


def _paired_shape(shape: Partition, pairing: str) -> Partition:
    if pairing == "direct":
        return shape
    if pairing == "conjugate":
        return conjugate(shape)
    raise ValueError(f"unknown pairing convention {pairing!r}")


def secondary_degree_numerator(
    group: PermutationGroup,
    pairing: Optional[str] = None,
    table: Optional[MultiplicityTable] = None,
) -> UnivariateSeries:
    pairing = pairing or config.get_settings().pairing
    table = table or multiplicity_table(group)
    numerator = UnivariateSeries.polynomial([])
    for shape, m in table.nonzero():
        numerator = numerator + appearance_polynomial(_paired_shape(shape, pairing)).scale(m)
    if any(c < 0 for c in numerator.coefficients) or numerator.value_at_one() != table.expected_total():
        raise ConsistencyError(
            "secondary degree numerator fails its checks",
            report={
                "numerator": [str(c) for c in numerator.coefficients],
                "expected_value_at_one": table.expected_total(),
                "pairing": pairing,
            },
        )
    return numerator


def molien_series(group: PermutationGroup, order: Optional[int] = None) -> UnivariateSeries:
    """(1/|G|) sum over G of prod over cycles of 1/(1 - z^len), through z^order."""
    order = config.get_settings().series_order if order is None else order
    by_type: Counter = Counter()
    for cls in group.conjugacy_classes():
        by_type[cls.cycle_type] += cls.size
    total = UnivariateSeries(SERIES_RING.zero, order)
    for cycle_type, count in sorted(by_type.items()):
        term = UnivariateSeries.polynomial([1]).truncate(order)
        for length in cycle_type.parts:
            term = term * UnivariateSeries.geometric(length, order)
        total = total + term.scale(count)
    return total.scale(Fraction(1, group.order))


def hilbert_denominator_inverse(n: int, order: int) -> UnivariateSeries:
    """1 / prod_{i=1..n} (1 - z^i) through z^order."""
    denominator = SERIES_RING.one
    for i in range(1, n + 1):
        denominator = denominator * (SERIES_RING.one - _Z**i)
    return UnivariateSeries(rs_series_inversion(denominator, _Z, order + 1), order)


@dataclass(frozen=True)
class HilbertReport:
    order: int
    match: bool
    lhs: Tuple[Fraction, ...]
    rhs: Tuple[Fraction, ...]
    first_mismatch_degree: Optional[int] = None

    def to_json(self) -> Dict:
        payload: Dict = {
            "order": self.order,
            "match": self.match,
            "lhs": [str(c) for c in self.lhs],
            "rhs": [str(c) for c in self.rhs],
        }
        if self.first_mismatch_degree is not None:
            payload["first_mismatch_degree"] = self.first_mismatch_degree
        return payload


def hilbert_consistency(
    group: PermutationGroup,
    order: Optional[int] = None,
    pairing: Optional[str] = None,
) -> HilbertReport:
    """Numerator over prod (1 - z^i) (lhs) against the Molien series (rhs)."""
    order = config.get_settings().series_order if order is None else order
    try:
        numerator = secondary_degree_numerator(group, pairing=pairing)
    except ConsistencyError as exc:
        if "numerator" not in exc.report:
            raise
        # A numerator that fails its own checks still gets compared term by term.
        numerator = UnivariateSeries.polynomial([Fraction(c) for c in exc.report.get("numerator", [])])
    lhs = (numerator * hilbert_denominator_inverse(group.degree, order)).coefficients_through(order)
    rhs = molien_series(group, order).coefficients_through(order)
    mismatch = next((d for d in range(order + 1) if lhs[d] != rhs[d]), None)
    report = HilbertReport(
        order=order,
        match=mismatch is None,
        lhs=tuple(lhs),
        rhs=tuple(rhs),
        first_mismatch_degree=mismatch,
    )
    if not report.match:
        logger.warning(
            "Hilbert series mismatch",
            extra={"degree": group.degree, "first_mismatch_degree": mismatch, "pairing": pairing},
        )
    return report


def coinvariant_poincare(n: int) -> UnivariateSeries:
    """prod_{i=1..n} (1 + z + ... + z^{i-1})."""
    result = UnivariateSeries.polynomial([1])
    for i in range(1, n + 1):
        result = result * UnivariateSeries.polynomial([1] * i)
    return result
