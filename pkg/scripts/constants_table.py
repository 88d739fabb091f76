"""Table of C_{p,n} over a grid of n and p, with closed-form cross-checks."""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass

from sharpconst.constants import c_pn
from sharpconst.params import Params


@dataclass
class TableConfig:
    n_max: int = 6
    p_values: tuple[float, ...] = (1.0, 1.25, 1.5, 2.0, 3.0, 4.0, math.inf)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=TableConfig.n_max)
    cfg = TableConfig(n_max=ap.parse_args().n_max)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "p", "q", "C", "method", "beta_star", "cross_check_delta"])
    for n in range(1, cfg.n_max + 1):
        for p in cfg.p_values:
            rec = c_pn(Params.from_p(n, p))
            w.writerow([n, p, rec.params.q, f"{rec.c_value:.15g}", rec.method.value,
                        f"{rec.beta_star:.12g}", f"{rec.cross_check_delta:.2e}"])


if __name__ == "__main__":
    main()
