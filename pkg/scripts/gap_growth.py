#!/usr/bin/env python3
"""Tabulate the integer-quantization gap over a growing ladder of trial counts.

For a fixed analyzer-angle difference the predicted plus-product fraction
x = sin^2(delta/2) is generally irrational, so the expected count n*x never
lands on an integer. This script prints the standard sweep table over a
geometric ladder of n: the gap wanders inside [0, 1/2] instead of shrinking,
while the shot-noise scale sigma grows like sqrt(n).
"""

import argparse
import math
import sys

from spincorr import emit_csv, significance_compare, sweep_reports, sweep_row_record


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--delta-deg", type=float, default=2.4,
                        help="analyzer-angle difference in degrees (default 2.4)")
    parser.add_argument("--n-start", type=int, default=10,
                        help="smallest trial count (default 10)")
    parser.add_argument("--factor", type=float, default=10.0,
                        help="geometric growth factor between rows (default 10)")
    parser.add_argument("--steps", type=int, default=7,
                        help="number of ladder rungs (default 7)")
    args = parser.parse_args()

    ns = sorted({max(1, round(args.n_start * args.factor**k)) for k in range(args.steps)})
    reports = sweep_reports([math.radians(args.delta_deg)], ns)
    records = [sweep_row_record(report, significance_compare(report)) for report in reports]
    emit_csv(records, sys.stdout)


if __name__ == "__main__":
    main()
