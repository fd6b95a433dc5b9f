"""Sweep q and print exact ground-state counts over the large-q form, as CSV.

The n!-adjusted column should drift to 1 like 1 + (3n^2 + n) / (2q) for d = 1.

    python3 scripts/asymptotic_sweep.py --d 1 --ns 0,1,2,3 --qs 50,100,200,400,600
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from vicwalk.rmt import asymptotic_ratio


@dataclass(frozen=True)
class SweepConfig:
    d: int = 1
    ns: tuple[int, ...] = (0, 1, 2, 3)
    qs: tuple[int, ...] = field(default=(25, 50, 100, 200, 400, 600))


def sweep(cfg: SweepConfig):
    for q in cfg.qs:
        for n in cfg.ns:
            r = asymptotic_ratio(cfg.d, n, q)
            predicted = 1 + (3 * n * n + n) / (2 * q) if cfg.d == 1 else float("nan")
            yield {
                "d": cfg.d,
                "n": n,
                "q": q,
                "ratio": r["ratio"],
                "ratio_times_n_factorial": r["ratio_times_n_factorial"],
                "first_order_prediction": predicted,
            }


def _ints(text):
    return tuple(int(t) for t in text.split(","))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--ns", type=_ints, default=SweepConfig.ns)
    p.add_argument("--qs", type=_ints, default=SweepConfig().qs)
    a = p.parse_args(argv)
    rows = list(sweep(SweepConfig(a.d, a.ns, a.qs)))
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


if __name__ == "__main__":
    main()
