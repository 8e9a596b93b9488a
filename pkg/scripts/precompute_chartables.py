import argparse
import os
import time
from typing import List

from src import config, logging_utils
from src.sym_characters import character_table, load_table, save_table


def precompute(max_degree: int, force: bool = False) -> List[str]:
    settings = config.get_settings()
    if not settings.persist_chartables:
        raise RuntimeError("SPECHT_PERSIST_CHARTABLES is false; nothing would be written")
    written: List[str] = []
    for n in range(1, max_degree + 1):
        path = os.path.join(settings.cache_dir, f"chartable-{n}.txt")
        if not force and load_table(n, settings.cache_dir) is not None:
            print(f"n={n}: cached ({path})")
            continue
        if force and os.path.exists(path):
            os.remove(path)
        started = time.perf_counter()
        table = character_table(n)
        if not os.path.exists(path):
            save_table(table, settings.cache_dir)
        print(f"n={n}: {len(table.row_index)} partitions in {time.perf_counter() - started:.2f}s")
        written.append(path)
    return written


def main() -> None:
    parser = argparse.ArgumentParser(description="Precompute and persist S_n character tables.")
    parser.add_argument("--max-degree", type=int, default=None, help="Largest n (default: SPECHT_CHARTABLE_MAX_DEGREE)")
    parser.add_argument("--cache-dir", help="Override SPECHT_CACHE_DIR")
    parser.add_argument("--force", action="store_true", help="Recompute tables that are already cached")
    args = parser.parse_args()

    if args.cache_dir:
        os.environ["SPECHT_CACHE_DIR"] = args.cache_dir
    logging_utils.configure_bootstrap()
    settings = config.get_settings(force=True)
    logging_utils.configure_logging(settings)

    max_degree = args.max_degree or settings.chartable_max_degree
    if max_degree > settings.chartable_max_degree:
        raise RuntimeError(
            f"--max-degree {max_degree} exceeds SPECHT_CHARTABLE_MAX_DEGREE={settings.chartable_max_degree}"
        )
    written = precompute(max_degree, force=args.force)
    print(f"wrote {len(written)} table(s) to {settings.cache_dir}")


if __name__ == "__main__":
    main()
