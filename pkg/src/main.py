"""Command-line front end: `python -m src.main --degree 4 --generators "(1,2)(3,4);(1,4)(2,3)"`.

Results go to standard out, logs to standard error. Exit codes: 0 success,
1 internal consistency failure (JSON report on standard out), 2 bad input or a
resource limit.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from math import comb
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from src import config, logging_utils
from src.combinatorics import (
    Partition,
    cocharge,
    index_tableau,
    parse_partition,
    partitions,
    standard_tableaux,
)
from src.errors import ConsistencyError, ResourceLimitError
from src.multiplicity import (
    hilbert_consistency,
    molien_series,
    multiplicity_enumerator_text,
    multiplicity_table,
    secondary_degree_numerator,
)
from src.permgroup import (
    Permutation,
    PermutationGroup,
    edge_action_group,
    parse_generators,
    signed_action_group,
)
from src.secondary_engine import EngineOptions, secondary_invariants
from src.specht_poly import higher_specht
from src.sym_characters import character_table

logger = logging.getLogger(__name__)

COMMANDS = (
    "multiplicities",
    "numerator",
    "molien",
    "hilbert",
    "secondaries",
    "chartable",
    "specht-table",
    "tableaux",
)


@dataclass(frozen=True)
class RunConfig:
    degree: int
    command: str = "secondaries"
    generator_text: str = ""
    generators: Tuple[Permutation, ...] = ()
    edge_group: Optional[int] = None
    signed_group: Optional[int] = None
    shape: Optional[Partition] = None
    expand: bool = False
    verify: bool = False
    order: Optional[int] = None
    workers: Optional[int] = None
    cache_dir: Optional[str] = None
    output_format: str = "text"
    strategy: Optional[str] = None
    pairing: Optional[str] = None
    timings: bool = True
    verbose: bool = False


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secondaries",
        description="Secondary invariants of permutation groups via higher Specht polynomials.",
    )
    parser.add_argument("--degree", type=int, help="Degree n of the group (acts on 1..n)")
    parser.add_argument(
        "--generators",
        default=None,
        help='Generators in cycle notation separated by ";", e.g. "(1,2)(3,4);(1,4)(2,3)"',
    )
    parser.add_argument("--edge-group", type=int, help="Use S_m acting on the edges of K_m")
    parser.add_argument(
        "--signed-group",
        type=int,
        help="Use S_m acting on the 2m points (i, +/-1) through the sign character",
    )
    parser.add_argument("--command", choices=COMMANDS, default="secondaries")
    parser.add_argument("--shape", help="Partition for tableaux/specht-table, e.g. 3,1")
    parser.add_argument("--expand", action="store_true", help="Expand invariants into polynomials")
    parser.add_argument("--verify", action="store_true", help="Expand and check invariance exactly")
    parser.add_argument("--order", type=int, help="Series truncation order")
    parser.add_argument("--workers", type=int, help="Parallel jobs over partitions")
    parser.add_argument("--cache-dir", help="Character table cache directory")
    parser.add_argument("--format", dest="output_format", choices=("text", "json"), default="text")
    parser.add_argument("--strategy", choices=config.TRANSLATION_STRATEGIES)
    parser.add_argument("--pairing", choices=config.PAIRING_CONVENTIONS)
    parser.add_argument("--no-timings", action="store_true", help="Omit timings from the output")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on standard error")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = _build_parser()
    args = parser.parse_args(argv)

    named_groups = [flag for flag, value in (("--edge-group", args.edge_group), ("--signed-group", args.signed_group)) if value is not None]
    if len(named_groups) > 1 or (named_groups and args.generators is not None):
        used = named_groups + (["--generators"] if args.generators is not None else [])
        parser.error(f"{' and '.join(used)} cannot be combined")

    shape: Optional[Partition] = None
    if args.shape:
        try:
            shape = parse_partition(args.shape)
        except ValueError as exc:
            parser.error(f"--shape: {exc}")

    degree = args.degree
    implied: Optional[int] = None
    if args.edge_group is not None:
        if args.edge_group < 2:
            parser.error("--edge-group needs m >= 2")
        implied = comb(args.edge_group, 2)
    elif args.signed_group is not None:
        if args.signed_group < 2:
            parser.error("--signed-group needs m >= 2")
        implied = 2 * args.signed_group
    elif shape is not None and args.command in ("tableaux", "specht-table"):
        implied = shape.n
    if implied is not None:
        if degree is not None and degree != implied:
            parser.error(f"--degree {degree} contradicts the implied degree {implied}")
        degree = implied

    if degree is None:
        parser.error("the following arguments are required: --degree")
    if degree < 1:
        parser.error("--degree must be at least 1")
    if shape is not None and shape.n != degree:
        parser.error(f"--shape {shape} is not a partition of {degree}")
    if args.order is not None and args.order < 0:
        parser.error("--order must be >= 0")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be >= 1")

    generator_text = args.generators or ""
    try:
        generators = tuple(parse_generators(generator_text, degree))
    except ValueError as exc:
        parser.error(f"--generators: {exc}")

    return RunConfig(
        degree=degree,
        command=args.command,
        generator_text=generator_text,
        generators=generators,
        edge_group=args.edge_group,
        signed_group=args.signed_group,
        shape=shape,
        expand=args.expand,
        verify=args.verify,
        order=args.order,
        workers=args.workers,
        cache_dir=args.cache_dir,
        output_format=args.output_format,
        strategy=args.strategy,
        pairing=args.pairing,
        timings=not args.no_timings,
        verbose=args.verbose,
    )


def build_group(run_config: RunConfig) -> PermutationGroup:
    if run_config.edge_group is not None:
        return edge_action_group(run_config.edge_group)
    if run_config.signed_group is not None:
        return signed_action_group(run_config.signed_group)
    return PermutationGroup(run_config.degree, run_config.generators)


def _emit(out: TextIO, run_config: RunConfig, payload: Any, lines: List[str]) -> None:
    if run_config.output_format == "json":
        out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _run_multiplicities(run_config: RunConfig, out: TextIO) -> None:
    table = multiplicity_table(build_group(run_config))
    payload = table.to_json()
    payload["enumerator"] = multiplicity_enumerator_text(table)
    lines = [f"{shape}: {m}" for shape, m in table]
    lines.append(f"P(G, t) = {payload['enumerator']}")
    _emit(out, run_config, payload, lines)


def _run_numerator(run_config: RunConfig, out: TextIO) -> None:
    group = build_group(run_config)
    numerator = secondary_degree_numerator(group, pairing=run_config.pairing)
    payload = {
        "degree": group.degree,
        "group_order": group.order,
        "numerator": numerator.to_json()["coefficients"],
        "text": str(numerator),
    }
    _emit(out, run_config, payload, [str(numerator)])


def _run_molien(run_config: RunConfig, out: TextIO) -> None:
    group = build_group(run_config)
    series = molien_series(group, run_config.order)
    payload = {"degree": group.degree, "group_order": group.order, **series.to_json(), "text": str(series)}
    _emit(out, run_config, payload, [str(series)])


def _run_hilbert(run_config: RunConfig, out: TextIO) -> None:
    report = hilbert_consistency(build_group(run_config), run_config.order, pairing=run_config.pairing)
    lines = [
        f"match: {str(report.match).lower()}",
        "lhs: " + " ".join(str(c) for c in report.lhs),
        "rhs: " + " ".join(str(c) for c in report.rhs),
    ]
    if report.first_mismatch_degree is not None:
        lines.append(f"first mismatch at degree {report.first_mismatch_degree}")
    _emit(out, run_config, report.to_json(), lines)


def _run_secondaries(run_config: RunConfig, out: TextIO) -> None:
    options = EngineOptions(
        expand=run_config.expand,
        verify=run_config.verify,
        strategy=run_config.strategy,
        workers=run_config.workers,
        timings=run_config.timings,
        pairing=run_config.pairing,
    )
    result = secondary_invariants(build_group(run_config), options)
    lines = result.report.trace_lines()
    if run_config.expand or run_config.verify:
        for inv in result.invariants:
            lines.append(f"{inv.shape} S={inv.source} #{inv.basis} degree {inv.degree}: {inv.expanded}")
    _emit(out, run_config, result.to_json(run_config.timings), lines)


def _run_chartable(run_config: RunConfig, out: TextIO) -> None:
    table = character_table(run_config.degree)
    lines = [" ".join(str(p) for p in table.col_index)]
    lines.extend(f"{shape}: " + " ".join(str(v) for v in row) for shape, row in zip(table.row_index, table.values))
    _emit(out, run_config, table.to_json(), lines)


def _shapes(run_config: RunConfig) -> Tuple[Partition, ...]:
    return (run_config.shape,) if run_config.shape is not None else partitions(run_config.degree)


def _run_specht_table(run_config: RunConfig, out: TextIO) -> None:
    payload: List[Dict] = []
    lines: List[str] = []
    for shape in _shapes(run_config):
        tableaux = standard_tableaux(shape)
        for source in tableaux:
            for target in tableaux:
                poly = higher_specht(source, target)
                payload.append({"S": source.to_json(), "T": target.to_json(), "polynomial": poly.to_json()})
                lines.append(f"S={source} T={target}: {poly}")
    _emit(out, run_config, payload, lines)


def _run_tableaux(run_config: RunConfig, out: TextIO) -> None:
    payload: List[Dict] = []
    lines: List[str] = []
    for shape in _shapes(run_config):
        for tableau in standard_tableaux(shape):
            index = index_tableau(tableau)
            payload.append(
                {
                    "shape": shape.to_json(),
                    "tableau": tableau.to_json(),
                    "reading_word": list(tableau.reading_word()),
                    "index_tableau": index.to_json(),
                    "cocharge": cocharge(tableau),
                }
            )
            lines.append(
                f"{tableau}  index={json.dumps(index.to_json(), separators=(',', ':'))}  cocharge={cocharge(tableau)}"
            )
    _emit(out, run_config, payload, lines)


_HANDLERS = {
    "multiplicities": _run_multiplicities,
    "numerator": _run_numerator,
    "molien": _run_molien,
    "hilbert": _run_hilbert,
    "secondaries": _run_secondaries,
    "chartable": _run_chartable,
    "specht-table": _run_specht_table,
    "tableaux": _run_tableaux,
}


def run(run_config: RunConfig, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if run_config.cache_dir:
        os.environ["SPECHT_CACHE_DIR"] = run_config.cache_dir
        config.get_settings(force=True)
    if run_config.verbose:
        logging_utils.update_log_level(logging.DEBUG)

    logger.info(
        "Running command",
        extra={"command": run_config.command, "degree": run_config.degree, "generators": run_config.generator_text},
    )
    try:
        _HANDLERS[run_config.command](run_config, out)
    except ConsistencyError as exc:
        logger.error("Consistency check failed", extra={"report": exc.report}, exc_info=True)
        out.write(json.dumps(exc.to_json(), ensure_ascii=False, indent=2) + "\n")
        return 1
    except (ValueError, ResourceLimitError) as exc:
        logger.error("Input rejected", extra={"error": str(exc)})
        err.write(f"secondaries: error: {exc}\n")
        return 2
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging_utils.configure_bootstrap()
    logging_utils.configure_logging(config.get_settings())
    return run(parse_args(argv))


if __name__ == "__main__":
    raise SystemExit(main())
