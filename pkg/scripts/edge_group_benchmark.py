"""Degree-10 benchmark: abstract secondary invariants of S_5 acting on ten points.

The published trace below lists (shape, f^shape, rank) for the 33 shapes with a
nonzero rank. Its ranks are the multiplicities of S_5 acting on the cosets of A_4
(`signed_action_group(5)`); the edge action on K_5 has the same total but a
different distribution, so `--group edges` only checks totals.
"""

import argparse
import json
import time
from typing import Dict, List, Optional, Sequence, Tuple

from src import config, logging_utils
from src.combinatorics import Partition
from src.permgroup import PermutationGroup, edge_action_group, signed_action_group
from src.secondary_engine import EngineOptions, EngineReport, secondary_invariants

PUBLISHED_TOTAL = 30240

PUBLISHED_TRACE: Tuple[Tuple[Tuple[int, ...], int, int], ...] = (
    ((3, 2, 2, 1, 1, 1), 315, 2),
    ((6, 1, 1, 1, 1), 126, 3),
    ((6, 4), 90, 3),
    ((4, 3, 1, 1, 1), 525, 5),
    ((5, 2, 2, 1), 525, 4),
    ((5, 2, 1, 1, 1), 448, 4),
    ((3, 2, 1, 1, 1, 1, 1), 160, 1),
    ((6, 2, 1, 1), 350, 2),
    ((4, 4, 2), 252, 5),
    ((2, 1, 1, 1, 1, 1, 1, 1, 1), 9, 1),
    ((3, 3, 2, 2), 252, 2),
    ((4, 4, 1, 1), 300, 2),
    ((4, 2, 2, 2), 300, 5),
    ((4, 2, 2, 1, 1), 567, 3),
    ((2, 2, 2, 1, 1, 1, 1), 75, 2),
    ((3, 2, 2, 2, 1), 288, 3),
    ((4, 2, 1, 1, 1, 1), 350, 3),
    ((3, 1, 1, 1, 1, 1, 1, 1), 36, 1),
    ((7, 1, 1, 1), 84, 1),
    ((5, 1, 1, 1, 1, 1), 126, 3),
    ((2, 2, 2, 2, 2), 42, 3),
    ((6, 3, 1), 315, 1),
    ((8, 2), 35, 2),
    ((3, 3, 3, 1), 210, 2),
    ((3, 3, 1, 1, 1, 1), 225, 1),
    ((5, 4, 1), 288, 3),
    ((5, 3, 2), 450, 3),
    ((10,), 1, 1),
    ((4, 3, 2, 1), 768, 6),
    ((7, 2, 1), 160, 1),
    ((6, 2, 2), 225, 3),
    ((5, 3, 1, 1), 567, 5),
    ((3, 3, 2, 1, 1), 450, 4),
)


def published_ranks() -> Dict[Partition, Tuple[int, int]]:
    return {Partition(parts): (ambient, rank) for parts, ambient, rank in PUBLISHED_TRACE}


def compare_with_published(report: EngineReport) -> List[str]:
    """Human-readable differences between a run and the published trace; empty when they agree."""
    expected = published_ranks()
    found = {r.partition: (r.ambient_dim, r.rank) for r in report.records}
    problems: List[str] = []
    for shape in sorted(set(expected) | set(found), reverse=True):
        if expected.get(shape) != found.get(shape):
            problems.append(f"{shape}: published {expected.get(shape)}, computed {found.get(shape)}")
    if report.total_found != PUBLISHED_TOTAL:
        problems.append(f"total: published {PUBLISHED_TOTAL}, computed {report.total_found}")
    return problems


def build_group(kind: str, m: int) -> PermutationGroup:
    if kind == "edges":
        return edge_action_group(m)
    if kind == "signed":
        return signed_action_group(m)
    raise ValueError(f"unknown group kind {kind!r}")


def run_benchmark(kind: str = "signed", m: int = 5, workers: int = 1) -> EngineReport:
    group = build_group(kind, m)
    options = EngineOptions(strategy="seminormal-direct", workers=workers)
    return secondary_invariants(group, options).report


def print_trace(report: EngineReport, timings: bool = True) -> None:
    for record in report.records:
        print(f"{record.partition}  ambient dimension -->  {record.ambient_dim}")
        print(f"rank in S_n repr :  {record.rank}")
        if timings:
            print(f"time :  {record.elapsed_ms / 1000:.2f} s")
    print(f"total :  {report.total_found}")
    print(f"n! / |G| :  {report.total_expected}")


def main(argv: Optional[Sequence[str]] = None) -> None:
    parser = argparse.ArgumentParser(description="Abstract secondary invariants for S_m acting on ten points.")
    parser.add_argument("--group", choices=("signed", "edges"), default="signed")
    parser.add_argument("--m", type=int, default=5, help="Size of the acting symmetric group")
    parser.add_argument("--workers", type=int, default=None, help="Parallel jobs (default: SPECHT_WORKERS)")
    parser.add_argument("--json", action="store_true", help="Print the engine report as JSON")
    args = parser.parse_args(argv)

    logging_utils.configure_bootstrap()
    settings = config.get_settings()
    logging_utils.configure_logging(settings)

    started = time.perf_counter()
    report = run_benchmark(args.group, args.m, args.workers or settings.workers)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print_trace(report)
        print(f"wall time :  {time.perf_counter() - started:.1f} s")

    if args.group == "signed" and args.m == 5:
        problems = compare_with_published(report)
        for line in problems:
            print(f"MISMATCH {line}")
        if problems:
            raise SystemExit(1)
        print("matches the published trace")


if __name__ == "__main__":
    main()
