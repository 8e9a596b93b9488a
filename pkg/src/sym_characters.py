"""Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Convention: [n] is the trivial character, [1^n] the sign.
Tables are cached in memory and, when enabled, under Settings.cache_dir as
`chartable-<n>.txt` (header `specht-chartable v1 n=<n>`, then one row of
space-separated integers per irreducible, canonical partition order).
"""

import logging
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from threading import Lock
from typing import Dict, List, Optional, Tuple

from src import config
from src.combinatorics import Partition, hook_length_count, partitions
from src.errors import ResourceLimitError

logger = logging.getLogger(__name__)

CACHE_HEADER = "specht-chartable v1 n={n}"

_MN_CACHE: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int] = {}
_MN_LOCK = Lock()
_TABLES: Dict[int, "CharacterTable"] = {}
_TABLES_LOCK = Lock()


def _strip_rim_hooks(parts: Tuple[int, ...], length: int) -> List[Tuple[Tuple[int, ...], int]]:
    """Every way to remove a border strip of `length` cells, with its sign.

    Works on the beta-set b_i = parts[i] + (l - 1 - i): a strip of length r is
    the move b -> b - r onto a free non-negative position, and its height is the
    number of beta numbers jumped over.
    """
    ell = len(parts)
    betas = [parts[i] + (ell - 1 - i) for i in range(ell)]
    occupied = set(betas)
    results: List[Tuple[Tuple[int, ...], int]] = []
    for b in betas:
        target = b - length
        if target < 0 or target in occupied:
            continue
        height = sum(1 for x in betas if target < x < b)
        moved = sorted((target if x == b else x for x in betas), reverse=True)
        remaining = tuple(p for p in (moved[i] - (ell - 1 - i) for i in range(ell)) if p > 0)
        results.append((remaining, -1 if height % 2 else 1))
    return results


def _mn(parts: Tuple[int, ...], cycle_type: Tuple[int, ...]) -> int:
    if not cycle_type:
        return 1 if not parts else 0
    key = (parts, cycle_type)
    cached = _MN_CACHE.get(key)
    if cached is not None:
        return cached

    head, rest = cycle_type[0], cycle_type[1:]
    value = sum(sign * _mn(remaining, rest) for remaining, sign in _strip_rim_hooks(parts, head))

    # Recursion happens outside the lock; concurrent writers store the same value.
    with _MN_LOCK:
        _MN_CACHE[key] = value
    return value


def mn_character(shape: Partition, cycle_type: Partition) -> int:
    """chi^shape evaluated on the class of the given cycle type."""
    if shape.n != cycle_type.n:
        raise ValueError(
            f"character {shape} and class {cycle_type} have different sizes"
        )
    return _mn(shape.parts, cycle_type.parts)


def class_size(cycle_type: Partition) -> int:
    denominator = 1
    for part, count in Counter(cycle_type.parts).items():
        denominator *= part**count * factorial(count)
    return factorial(cycle_type.n) // denominator


@dataclass(frozen=True)
class CharacterTable:
    n: int
    row_index: Tuple[Partition, ...]
    col_index: Tuple[Partition, ...]
    values: Tuple[Tuple[int, ...], ...]

    @cached_property
    def _rows(self) -> Dict[Partition, int]:
        return {p: i for i, p in enumerate(self.row_index)}

    @cached_property
    def _cols(self) -> Dict[Partition, int]:
        return {p: i for i, p in enumerate(self.col_index)}

    def value(self, shape: Partition, cycle_type: Partition) -> int:
        try:
            return self.values[self._rows[shape]][self._cols[cycle_type]]
        except KeyError as exc:
            raise ValueError(
                f"{shape} / {cycle_type} is not indexed by the degree-{self.n} table"
            ) from exc

    def column(self, cycle_type: Partition) -> List[int]:
        j = self._cols[cycle_type]
        return [row[j] for row in self.values]

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "partitions": [p.to_json() for p in self.row_index],
            "values": [list(row) for row in self.values],
        }


def _cache_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"chartable-{n}.txt")


def save_table(table: CharacterTable, cache_dir: str) -> str:
    path = _cache_path(cache_dir, table.n)
    os.makedirs(cache_dir, exist_ok=True)
    tmp_path = path + ".tmp"
    with open(tmp_path, "w", encoding="utf-8") as f:
        f.write(CACHE_HEADER.format(n=table.n) + "\n")
        for row in table.values:
            f.write(" ".join(str(v) for v in row) + "\n")
    os.replace(tmp_path, path)
    logger.debug("Saved character table", extra={"n": table.n, "path": path})
    return path


def load_table(n: int, cache_dir: str) -> Optional[CharacterTable]:
    """Read a persisted table; returns None when the file is missing or unusable."""
    path = _cache_path(cache_dir, n)
    if not os.path.exists(path):
        return None
    order = partitions(n)
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line.strip() for line in f if line.strip()]
        if not lines or lines[0] != CACHE_HEADER.format(n=n):
            raise ValueError("unexpected header")
        rows = tuple(tuple(int(v) for v in line.split()) for line in lines[1:])
        if len(rows) != len(order) or any(len(row) != len(order) for row in rows):
            raise ValueError("table has the wrong size")
    except (OSError, ValueError) as exc:
        logger.warning(
            "Ignoring unreadable character table cache",
            extra={"n": n, "path": path, "error": str(exc)},
        )
        return None
    return CharacterTable(n=n, row_index=order, col_index=order, values=rows)


def _compute_table(n: int) -> CharacterTable:
    order = partitions(n)
    values = tuple(tuple(mn_character(shape, mu) for mu in order) for shape in order)
    return CharacterTable(n=n, row_index=order, col_index=order, values=values)


def character_table(n: int) -> CharacterTable:
    settings = config.get_settings()
    if n < 1:
        raise ValueError(f"character_table() needs n >= 1, got {n}")
    if n > settings.chartable_max_degree:
        raise ResourceLimitError(
            f"character table of S_{n} requested",
            limit=settings.chartable_max_degree,
            setting="SPECHT_CHARTABLE_MAX_DEGREE",
        )

    table = _TABLES.get(n)
    if table is not None:
        return table

    if settings.persist_chartables:
        table = load_table(n, settings.cache_dir)
    if table is None:
        table = _compute_table(n)
        logger.info("Computed character table", extra={"n": n, "size": len(table.row_index)})
        if settings.persist_chartables:
            try:
                save_table(table, settings.cache_dir)
            except OSError as exc:
                logger.warning(
                    "Could not persist character table",
                    extra={"n": n, "cache_dir": settings.cache_dir, "error": str(exc)},
                )

    with _TABLES_LOCK:
        return _TABLES.setdefault(n, table)


def clear_caches() -> None:
    with _MN_LOCK:
        _MN_CACHE.clear()
    with _TABLES_LOCK:
        _TABLES.clear()


def counting_check(n: int) -> Tuple[int, int]:
    """(sum of (f^lambda)^2, n!); the two agree for every n."""
    return sum(hook_length_count(shape) ** 2 for shape in partitions(n)), factorial(n)
