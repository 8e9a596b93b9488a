"""Secondary invariants of a permutation group as combinations of higher Specht polynomials.

For each shape lambda with m_lambda > 0 the engine takes the common fixed space
of the seminormal generator matrices, translates it to coefficients over the
F_T^S (one block per tableau S), and optionally expands and verifies them.
Shapes are independent jobs; results are merged in canonical partition order.

Translation strategies:
- concrete: re-derive the generator matrices on span{F_T^S : T} by exact
  expansion and solving; always correct.
- seminormal-direct: reuse the seminormal fixed vectors unchanged. Expanded
  output always goes through verify_invariance; unexpanded output is labelled
  as seminormal coordinates rather than Specht combinations.
- auto (opt-in): concrete up to Settings.concrete_max_degree,
  seminormal-direct above.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from src import config
from src.combinatorics import Partition, StandardTableau, cocharge, hook_length_count, partitions
from src.errors import ConsistencyError, InvarianceError
from src.exact_linalg import RationalMatrix, Subspace, common_fixed_space, fixed_space, rank, solve
from src.multiplicity import (
    MultiplicityTable,
    UnivariateSeries,
    multiplicity_table,
    secondary_degree_numerator,
    trivial_multiplicity,
)
from src.permgroup import Permutation, PermutationGroup
from src.rep_matrices import get_factory
from src.specht_poly import SparsePolynomial, coefficient_matrix, higher_specht

logger = logging.getLogger(__name__)

CONCRETE = "concrete"
SEMINORMAL_DIRECT = "seminormal-direct"
AUTO = "auto"

SPECHT_COMBINATION = "specht-combination"
SEMINORMAL_COORDINATES = "seminormal-coordinates"


@dataclass(frozen=True)
class EngineOptions:
    expand: bool = False
    verify: bool = False
    strategy: Optional[str] = None
    workers: Optional[int] = None
    timings: bool = True
    pairing: Optional[str] = None


@dataclass(frozen=True)
class SecondaryInvariant:
    shape: Partition
    source: StandardTableau
    combination: Tuple[Tuple[StandardTableau, Fraction], ...]
    basis: int
    verified: bool
    expanded: Optional[SparsePolynomial] = None
    coordinates: str = SPECHT_COMBINATION

    @property
    def degree(self) -> int:
        return cocharge(self.source)

    def to_json(self) -> Dict:
        payload = {
            "shape": self.shape.to_json(),
            "S": self.source.to_json(),
            "basis": self.basis,
            "combination": [{"T": t.to_json(), "coeff": str(c)} for t, c in self.combination],
            "degree": self.degree,
            "verified": self.verified,
            "coordinates": self.coordinates,
        }
        if self.expanded is not None:
            payload["expanded"] = self.expanded.to_json()
        return payload


@dataclass(frozen=True)
class ShapeRecord:
    partition: Partition
    ambient_dim: int
    rank: int
    elapsed_ms: int
    strategy: str
    seminormal_agrees: Optional[bool] = None

    def to_json(self, timings: bool = True) -> Dict:
        payload: Dict = {
            "partition": self.partition.to_json(),
            "ambient_dim": self.ambient_dim,
            "rank": self.rank,
            "strategy": self.strategy,
        }
        if self.seminormal_agrees is not None:
            payload["seminormal_agrees"] = self.seminormal_agrees
        if timings:
            payload["elapsed_ms"] = self.elapsed_ms
        return payload


@dataclass(frozen=True)
class EngineReport:
    degree: int
    generators: Tuple[str, ...]
    group_order: int
    total_expected: int
    total_found: int
    records: Tuple[ShapeRecord, ...]
    reduction_bound: int
    elapsed_ms: int

    def trace_lines(self) -> List[str]:
        lines: List[str] = []
        for record in self.records:
            lines.append(f"{record.partition}  ambient dimension -->  {record.ambient_dim}")
            lines.append(f"rank in S_n repr :  {record.rank}")
        lines.append(f"total :  {self.total_found}")
        lines.append(f"n! / |G| :  {self.total_expected}")
        return lines

    def to_json(self, timings: bool = True) -> Dict:
        payload: Dict = {
            "degree": self.degree,
            "generators": list(self.generators),
            "group_order": self.group_order,
            "total_expected": self.total_expected,
            "total_found": self.total_found,
            "reduction_bound": self.reduction_bound,
            "per_lambda": [r.to_json(timings) for r in self.records],
        }
        if timings:
            payload["elapsed_ms"] = self.elapsed_ms
        return payload


@dataclass(frozen=True)
class EngineResult:
    invariants: Tuple[SecondaryInvariant, ...]
    report: EngineReport

    def to_json(self, timings: bool = True) -> Dict:
        payload = self.report.to_json(timings)
        payload["invariants"] = [inv.to_json() for inv in self.invariants]
        return payload


def resolve_strategy(strategy: Optional[str], degree: int) -> str:
    settings = config.get_settings()
    strategy = strategy or settings.translation
    if strategy == AUTO:
        return CONCRETE if degree <= settings.concrete_max_degree else SEMINORMAL_DIRECT
    if strategy not in (CONCRETE, SEMINORMAL_DIRECT):
        raise ValueError(f"unknown translation strategy {strategy!r}")
    return strategy


def reduction_bound(group: PermutationGroup, table: MultiplicityTable) -> int:
    """r * sum m_lambda (f^lambda)^2: the size of the elimination work, in matrix entries."""
    return len(group.generators) * sum(m * hook_length_count(shape) ** 2 for shape, m in table.nonzero())


def abstract_fixed_basis(
    group: PermutationGroup,
    shape: Partition,
    expected: Optional[int] = None,
) -> Subspace:
    """Vectors of the seminormal model of `shape` fixed by every generator of G."""
    if shape.n != group.degree:
        raise ValueError(f"{shape} is not a partition of the group degree {group.degree}")
    factory = get_factory(shape)
    fixed = common_fixed_space([partial(factory.act, g) for g in group.generators], factory.dimension)
    if expected is None:
        expected = trivial_multiplicity(group, shape)
    if fixed.dim != expected:
        raise ConsistencyError(
            "fixed space dimension disagrees with the character computation",
            report={
                "partition": shape.to_json(),
                "fixed_dim": fixed.dim,
                "multiplicity": expected,
                "ambient_dim": factory.dimension,
            },
        )
    return fixed


def concrete_generator_matrix(
    shape: Partition,
    source: StandardTableau,
    generator: Permutation,
) -> RationalMatrix:
    """Matrix of `generator` on span{F_T^S : T}, columns indexed like the tableau basis."""
    basis = get_factory(shape).basis
    polys = [higher_specht(source, t) for t in basis]
    images = [p.permute(generator) for p in polys]
    coefficients, _ = coefficient_matrix(polys + images)
    f = len(basis)
    columns = coefficients.transpose()
    lhs = RationalMatrix.from_entries(
        {(i, j): v for (i, j), v in columns.entries().items() if j < f},
        (columns.rows, f),
    )
    rhs = RationalMatrix.from_entries(
        {(i, j - f): v for (i, j), v in columns.entries().items() if j >= f},
        (columns.rows, f),
    )
    try:
        return solve(lhs, rhs)
    except ConsistencyError as exc:
        raise ConsistencyError(
            "generator image leaves the higher Specht span",
            report={
                "partition": shape.to_json(),
                "S": source.to_json(),
                "generator": str(generator),
            },
        ) from exc


def translate_to_specht_basis(
    fixed: Subspace,
    group: PermutationGroup,
    shape: Partition,
    source: StandardTableau,
    strategy: str = CONCRETE,
) -> Subspace:
    """Coefficient vectors c (over the tableau basis) with sum c_T F_T^S fixed by G."""
    if strategy == SEMINORMAL_DIRECT:
        return fixed
    if strategy != CONCRETE:
        raise ValueError(f"unknown translation strategy {strategy!r}")
    matrices = [concrete_generator_matrix(shape, source, g) for g in group.generators]
    concrete = fixed_space(matrices, dim=fixed.ambient_dim)
    if concrete.dim != fixed.dim:
        raise ConsistencyError(
            "concrete fixed space dimension disagrees with the seminormal one",
            report={
                "partition": shape.to_json(),
                "S": source.to_json(),
                "concrete_dim": concrete.dim,
                "seminormal_dim": fixed.dim,
            },
        )
    return concrete


def expand_combination(
    source: StandardTableau,
    combination: Sequence[Tuple[StandardTableau, Fraction]],
) -> SparsePolynomial:
    total = SparsePolynomial(source.n)
    for target, coeff in combination:
        total = total + higher_specht(source, target) * coeff
    return total


def verify_invariance(p: SparsePolynomial, group: PermutationGroup) -> bool:
    return all(p.permute(g) == p for g in group.generators)


def _moving_generator(p: SparsePolynomial, group: PermutationGroup) -> Optional[Permutation]:
    return next((g for g in group.generators if p.permute(g) != p), None)


def _combination(basis: Sequence[StandardTableau], vector: Sequence[Fraction]) -> Tuple[Tuple[StandardTableau, Fraction], ...]:
    return tuple((t, c) for t, c in zip(basis, vector) if c)


def _shape_job(
    group: PermutationGroup,
    shape: Partition,
    multiplicity: int,
    strategy: str,
    options: EngineOptions,
) -> Tuple[List[SecondaryInvariant], ShapeRecord]:
    started = time.perf_counter()
    factory = get_factory(shape)
    fixed = abstract_fixed_basis(group, shape, expected=multiplicity)
    expand = options.expand or options.verify
    check = options.verify or (expand and strategy == SEMINORMAL_DIRECT)
    coordinates = SPECHT_COMBINATION if strategy == CONCRETE or check else SEMINORMAL_COORDINATES
    invariants: List[SecondaryInvariant] = []
    agrees: Optional[bool] = None
    shared = [_combination(factory.basis, v) for v in fixed.basis]

    for source in factory.basis:
        if strategy == CONCRETE:
            translated = translate_to_specht_basis(fixed, group, shape, source, CONCRETE)
            agrees = (agrees is not False) and translated == fixed
            combinations = [_combination(factory.basis, v) for v in translated.basis]
        else:
            combinations = shared

        block: List[SecondaryInvariant] = []
        for index, combination in enumerate(combinations):
            expanded = expand_combination(source, combination) if expand else None
            verified = strategy == CONCRETE
            if check:
                if not verify_invariance(expanded, group):
                    moving = _moving_generator(expanded, group)
                    raise InvarianceError(
                        "expanded invariant is not fixed by a generator",
                        report={
                            "partition": shape.to_json(),
                            "S": source.to_json(),
                            "basis": index,
                            "generator": str(moving),
                            "strategy": strategy,
                        },
                    )
                verified = True
            block.append(
                SecondaryInvariant(
                    shape=shape,
                    source=source,
                    combination=combination,
                    basis=index,
                    verified=verified,
                    expanded=expanded,
                    coordinates=coordinates,
                )
            )
        if check and block:
            independent, _ = coefficient_matrix([inv.expanded for inv in block])
            if rank(independent) != len(block):
                raise ConsistencyError(
                    "invariants of one block are linearly dependent",
                    report={"partition": shape.to_json(), "S": source.to_json(), "size": len(block)},
                )
        invariants.extend(block)

    elapsed_ms = int((time.perf_counter() - started) * 1000)
    record = ShapeRecord(
        partition=shape,
        ambient_dim=factory.dimension,
        rank=fixed.dim,
        elapsed_ms=elapsed_ms,
        strategy=strategy,
        seminormal_agrees=agrees,
    )
    logger.info(
        "Processed shape",
        extra={
            "partition": str(shape),
            "ambient_dim": factory.dimension,
            "rank": fixed.dim,
            "elapsed_ms": elapsed_ms,
            "strategy": strategy,
            "invariants": len(invariants),
        },
    )
    return invariants, record


def _degree_census(invariants: Sequence[SecondaryInvariant]) -> UnivariateSeries:
    counts = Counter(inv.degree for inv in invariants)
    top = max(counts) if counts else -1
    return UnivariateSeries.polynomial([counts.get(d, 0) for d in range(top + 1)])


def secondary_invariants(
    group: PermutationGroup,
    options: Optional[EngineOptions] = None,
    table: Optional[MultiplicityTable] = None,
) -> EngineResult:
    options = options or EngineOptions()
    settings = config.get_settings()
    started = time.perf_counter()
    table = table or multiplicity_table(group)
    strategy = resolve_strategy(options.strategy, group.degree)
    workers = max(1, int(options.workers or settings.workers))
    jobs = table.nonzero()
    logger.info(
        "Computing secondary invariants",
        extra={
            "degree": group.degree,
            "group_order": group.order,
            "shapes": len(jobs),
            "strategy": strategy,
            "workers": workers,
        },
    )

    by_shape: Dict[Partition, Tuple[List[SecondaryInvariant], ShapeRecord]] = {}
    if workers == 1 or len(jobs) <= 1:
        for shape, m in jobs:
            by_shape[shape] = _shape_job(group, shape, m, strategy, options)
    else:
        # Warm the shared caches before fanning out.
        group.conjugacy_classes()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            future_map = {
                pool.submit(_shape_job, group, shape, m, strategy, options): shape
                for shape, m in jobs
            }
            for fut in as_completed(future_map):
                by_shape[future_map[fut]] = fut.result()

    invariants: List[SecondaryInvariant] = []
    records: List[ShapeRecord] = []
    for shape in partitions(group.degree):
        if shape in by_shape:
            found, record = by_shape[shape]
            invariants.extend(found)
            records.append(record)

    expected = factorial(group.degree) // group.order
    report = EngineReport(
        degree=group.degree,
        generators=tuple(str(g) for g in group.generators),
        group_order=group.order,
        total_expected=expected,
        total_found=sum(r.rank * r.ambient_dim for r in records),
        records=tuple(records),
        reduction_bound=reduction_bound(group, table),
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )
    if len(invariants) != expected or report.total_found != expected:
        raise ConsistencyError(
            "number of secondary invariants differs from n!/|G|",
            report={"found": len(invariants), "expected": expected},
        )
    numerator = secondary_degree_numerator(group, pairing=options.pairing, table=table)
    census = _degree_census(invariants)
    if census != numerator:
        raise ConsistencyError(
            "degree census of the invariants differs from the Hilbert numerator",
            report={
                "census": [str(c) for c in census.coefficients],
                "numerator": [str(c) for c in numerator.coefficients],
            },
        )
    return EngineResult(invariants=tuple(invariants), report=report)
