"""Randomised check of the derivative bound plus the strip-map sharpness probe."""

from __future__ import annotations

import argparse
import json
import math
from dataclasses import dataclass, field

from sharpconst.harness import run_trials, sharpness_probe, summarize
from sharpconst.params import Params


@dataclass
class FuzzConfig:
    n: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    p: list[float] = field(default_factory=lambda: [1.0, 1.5, 2.0, 3.0, math.inf])
    trials: int = 1000
    seed: int = 0
    tol: float = 1e-9
    degrees: list[int] = field(default_factory=lambda: [10, 50, 100, 400])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = FuzzConfig(trials=args.trials, seed=args.seed)
    params = [Params.from_p(n, p) for n in cfg.n for p in cfg.p]
    summary = summarize(run_trials(params, cfg.trials, cfg.seed, cfg.tol, raise_on_violation=False),
                        cfg.tol)
    print(json.dumps({k: summary[k] for k in ("trials", "min_slack", "sharpest_ratio")}, indent=2))
    print(f"violations: {len(summary['violations'])}")
    for taper in ("none", "fejer"):
        ratios = sharpness_probe(1, math.inf, cfg.degrees, taper)
        print(f"strip map ({taper:>5}): " + ", ".join(f"d={d}: {r:.5f}" for d, r in zip(cfg.degrees, ratios)))


if __name__ == "__main__":
    main()
