"""Run every exact identity over a (d, q, n) grid and print one line per check.

Exits 1 if any check fails. Larger grids than the test suite are fine here:

    python3 scripts/identity_grid.py --max-d 4 --max-q 3 --max-n 6 --order 16
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from vicwalk.enumeration import forrester_check, rsk_chain_check
from vicwalk.operators import commutation_report
from vicwalk.series import gessel_report, theorem2_report


@dataclass(frozen=True)
class GridConfig:
    max_d: int = 3
    max_q: int = 2
    max_n: int = 5
    order: int = 14
    seed: int = 1


def checks(cfg: GridConfig):
    ds = range(1, cfg.max_d + 1)
    for d in ds:
        for q in range(cfg.max_q + 1):
            yield f"toeplitz d={d} q={q}", lambda d=d, q=q: theorem2_report(d, q, cfg.order)
    for d in ds:
        yield f"forrester d={d}", lambda d=d: forrester_check(d, min(cfg.max_n, 7))
        yield f"gessel d={d}", lambda d=d: gessel_report(d, min(cfg.order, 18))
        yield f"commute d={d}", lambda d=d: commutation_report(d, 200, 50, cfg.seed)
        for q in range(cfg.max_q + 1):
            for n in range(cfg.max_n + 1):
                yield f"rsk-chain d={d} q={q} n={n}", lambda d=d, q=q, n=n: rsk_chain_check(d, n, q)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--max-q", type=int, default=2)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--order", type=int, default=14)
    p.add_argument("--seed", type=int, default=1)
    cfg = GridConfig(**vars(p.parse_args(argv)))
    failures = 0
    for name, check in checks(cfg):
        t = time.perf_counter()
        ok = check().holds
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name:<28} {time.perf_counter() - t:6.2f}s")
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
