"""Monotonicity scan of F_q over an (n, q) grid, written as JSON."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from sharpconst.optimizer import scan_conjecture


@dataclass
class ScanConfig:
    n: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5, 6])
    q: list[float] = field(default_factory=lambda: [1.0, 1.25, 1.5, 2.0, 3.0, 4.0])
    resolution: int = 64
    tol: float = 1e-12
    out: str = "conjecture_scan.json"


def run(cfg: ScanConfig) -> dict:
    t0 = time.perf_counter()
    reports = scan_conjecture(cfg.n, cfg.q, cfg.resolution, cfg.tol)
    rows = [{
        "n": r.params.n, "q": r.params.q,
        "observed": r.classification.value, "predicted": r.predicted.value,
        "predicted_alt": r.predicted_alt.value if r.predicted_alt else None,
        "agrees": r.agrees, "argmax": r.argmax,
        "f_at_0": r.f_at_0, "f_at_half_pi": r.f_at_half_pi,
    } for r in reports]
    return {"config": asdict(cfg), "seconds": time.perf_counter() - t0, "reports": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=64)
    ap.add_argument("--out", default="conjecture_scan.json")
    args = ap.parse_args()
    result = run(ScanConfig(resolution=args.resolution, out=args.out))
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2)
    for row in result["reports"]:
        flag = "" if row["agrees"] else "  <- differs from the parity rule"
        print(f"n={row['n']} q={row['q']:<5} {row['observed']:<12} predicted {row['predicted']}{flag}")
    print(f"{len(result['reports'])} pairs in {result['seconds']:.1f} s -> {args.out}")


if __name__ == "__main__":
    main()
