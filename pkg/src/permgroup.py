"""Permutations, generated groups and their conjugacy classes.

Composition is (a*b)(k) = a(b(k)); cycle strings apply left to right, so
"(1,2)(2,3)" means first (1,2), then (2,3).
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import factorial
from threading import Lock
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from src import config
from src.combinatorics import Partition
from src.errors import CycleParseError, ResourceLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Product of the cycles, applied left to right."""
        result = cls.identity(n)
        for cycle in cycles:
            images = list(range(1, n + 1))
            for i, point in enumerate(cycle):
                images[point - 1] = cycle[(i + 1) % len(cycle)]
            result = cls(tuple(images)).compose(result)
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        if self.degree != other.degree:
            raise ValueError(
                f"cannot compose permutations of degree {self.degree} and {other.degree}"
            )
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for k, v in enumerate(self.images, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        seen = set()
        found: List[Tuple[int, ...]] = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            if len(cycle) > 1 or include_fixed:
                found.append(tuple(cycle))
        return found

    def cycle_type(self) -> Partition:
        return Partition(tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True)))

    def sign(self) -> int:
        transpositions = sum(len(c) - 1 for c in self.cycles())
        return -1 if transpositions % 2 else 1

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    return a.compose(b)


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def cycle_type(a: Permutation) -> Partition:
    return a.cycle_type()


def parse_permutation(text: str, n: int, offset: int = 0) -> Permutation:
    """Parse cycle notation such as "(1,2)(3,4)"; "" and "()" are the identity.

    `offset` shifts reported positions when the text is a slice of a longer input.
    """
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    cycles: List[List[int]] = []
    i = 0
    length = len(text)

    def skip_spaces(pos: int) -> int:
        while pos < length and text[pos].isspace():
            pos += 1
        return pos

    i = skip_spaces(i)
    while i < length:
        if text[i] != "(":
            raise CycleParseError(f"expected '(' but found {text[i]!r}", offset + i)
        open_pos = i
        i = skip_spaces(i + 1)
        cycle: List[int] = []
        if i < length and text[i] == ")":
            cycles.append(cycle)
            i = skip_spaces(i + 1)
            continue
        while True:
            start = i
            while i < length and text[i].isdigit():
                i += 1
            if start == i:
                if i >= length:
                    raise CycleParseError("unclosed '('", offset + open_pos)
                raise CycleParseError(f"expected a point but found {text[i]!r}", offset + i)
            point = int(text[start:i])
            if not 1 <= point <= n:
                raise CycleParseError(f"point {point} is outside 1..{n}", offset + start)
            if point in cycle:
                raise CycleParseError(f"point {point} repeated within a cycle", offset + start)
            cycle.append(point)
            i = skip_spaces(i)
            if i >= length:
                raise CycleParseError("unclosed '('", offset + open_pos)
            if text[i] == ",":
                i = skip_spaces(i + 1)
                continue
            if text[i] == ")":
                i = skip_spaces(i + 1)
                break
            raise CycleParseError(f"expected ',' or ')' but found {text[i]!r}", offset + i)
        cycles.append(cycle)
    return Permutation.from_cycles(n, [c for c in cycles if c])


def parse_generators(text: str, n: int) -> List[Permutation]:
    """Generators separated by ';'. Empty pieces are skipped."""
    generators: List[Permutation] = []
    pos = 0
    for piece in text.split(";"):
        if piece.strip():
            generators.append(parse_permutation(piece, n, offset=pos))
        pos += len(piece) + 1
    return generators


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    cycle_type: Partition

    def to_json(self) -> Dict:
        return {
            "representative": str(self.representative),
            "size": self.size,
            "cycle_type": self.cycle_type.to_json(),
        }


class PermutationGroup:
    """A group given by generators; elements and classes are materialized on first use."""

    def __init__(self, degree: int, generators: Sequence[Permutation], name: Optional[str] = None) -> None:
        if degree < 1:
            raise ValueError(f"degree must be at least 1, got {degree}")
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        self.name = name
        self._elements: Optional[FrozenSet[Permutation]] = None
        self._classes: Optional[Tuple[ConjugacyClass, ...]] = None
        self._lock = Lock()

    def __repr__(self) -> str:
        gens = ";".join(str(g) for g in self.generators)
        return f"PermutationGroup(degree={self.degree}, generators={gens!r})"

    def elements(self) -> FrozenSet[Permutation]:
        with self._lock:
            if self._elements is None:
                self._elements = self._closure()
            return self._elements

    def _closure(self) -> FrozenSet[Permutation]:
        cap = config.get_settings().group_order_cap
        identity = Permutation.identity(self.degree)
        seen = {identity}
        queue = deque([identity])
        while queue:
            current = queue.popleft()
            for g in self.generators:
                nxt = g.compose(current)
                if nxt in seen:
                    continue
                seen.add(nxt)
                if len(seen) > cap:
                    raise ResourceLimitError(
                        f"group of degree {self.degree} has more than {cap} elements",
                        limit=cap,
                        setting="SPECHT_GROUP_ORDER_CAP",
                    )
                queue.append(nxt)
        logger.debug(
            "Materialized group elements",
            extra={"degree": self.degree, "order": len(seen), "generators": len(self.generators)},
        )
        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements())

    def index(self) -> int:
        """n! / |G|: the number of secondary invariants."""
        return factorial(self.degree) // self.order

    def conjugacy_classes(self) -> Tuple[ConjugacyClass, ...]:
        elements = self.elements()
        with self._lock:
            if self._classes is None:
                self._classes = self._compute_classes(elements)
            return self._classes

    def _compute_classes(self, elements: FrozenSet[Permutation]) -> Tuple[ConjugacyClass, ...]:
        inverses = [g.inverse() for g in self.generators]
        assigned = set()
        classes: List[ConjugacyClass] = []
        for element in sorted(elements):
            if element in assigned:
                continue
            orbit = {element}
            frontier = [element]
            while frontier:
                x = frontier.pop()
                for g, g_inv in zip(self.generators, inverses):
                    y = g.compose(x).compose(g_inv)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            assigned.update(orbit)
            classes.append(
                ConjugacyClass(representative=element, size=len(orbit), cycle_type=element.cycle_type())
            )
        return tuple(classes)

    def generator_text(self) -> str:
        return ";".join(str(g) for g in self.generators)


def symmetric_group(n: int) -> PermutationGroup:
    generators: List[Permutation] = []
    if n >= 2:
        generators.append(Permutation.from_cycles(n, [(1, 2)]))
    if n >= 3:
        generators.append(Permutation.from_cycles(n, [tuple(range(1, n + 1))]))
    return PermutationGroup(n, generators, name=f"S{n}")


def cyclic_group(n: int) -> PermutationGroup:
    generators = [Permutation.from_cycles(n, [tuple(range(1, n + 1))])] if n >= 2 else []
    return PermutationGroup(n, generators, name=f"C{n}")


def _induced(points: Sequence, act) -> Permutation:
    number = {p: i for i, p in enumerate(points, start=1)}
    return Permutation(tuple(number[act(p)] for p in points))


def edge_action_group(m: int) -> PermutationGroup:
    """S_m acting on the m(m-1)/2 unordered pairs, numbered in lexicographic order."""
    if m < 2:
        raise ValueError(f"edge_action_group() needs m >= 2, got {m}")
    pairs = list(combinations(range(1, m + 1), 2))
    generators = []
    for sigma in symmetric_group(m).generators:
        generators.append(_induced(pairs, lambda p, s=sigma: tuple(sorted((s(p[0]), s(p[1]))))))
    return PermutationGroup(len(pairs), generators, name=f"edges(K{m})")


def signed_action_group(m: int) -> PermutationGroup:
    """S_m acting on the 2m points (i, +1), (i, -1) by sigma.(i, s) = (sigma(i), sign(sigma) * s).

    Points are numbered (1,+1), (1,-1), (2,+1), ...
    """
    if m < 2:
        raise ValueError(f"signed_action_group() needs m >= 2, got {m}")
    points = [(i, s) for i in range(1, m + 1) for s in (1, -1)]
    generators = []
    for sigma in symmetric_group(m).generators:
        generators.append(_induced(points, lambda p, s=sigma: (s(p[0]), s.sign() * p[1])))
    return PermutationGroup(len(points), generators, name=f"signed(S{m})")
