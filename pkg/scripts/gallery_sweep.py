"""Sweep every gallery entry against its oracle and print one line per entry."""
import argparse
import time

from dagpic.gallery import NAMES, gallery
from dagpic.harness import SweepConfig, check_gallery


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(NAMES))
    ap.add_argument("--max-rows", type=int, default=3)
    ap.add_argument("--max-cols", type=int, default=3)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--sample", type=int)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    config = SweepConfig(args.max_rows, args.max_cols, args.max_len, sample=args.sample,
                         seed=args.seed, jobs=args.jobs)
    failed = 0
    for name in args.names:
        t0 = time.perf_counter()
        report = check_gallery(gallery(name), config)
        failed += not report.ok
        print(f"{name:12s} {report.summary()}  ({time.perf_counter() - t0:.1f}s)")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
