"""Maximisation of F_q over beta in [0, pi/2] and the monotonicity scanner.

F_q is even about both 0 and pi/2 (it is pi-periodic and symmetric under
beta -> pi - beta), so both endpoints are always stationary and the maximum
over [0, pi] is already attained on [0, pi/2].
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .kernel import fq_beta
from .params import Params
from .search import golden_max

DEFAULT_GRID = 257
FLAT_REL = 1e-9
BETA_XTOL = 1e-10
NOISE_FACTOR = 10.0
HALF_PI = 0.5 * math.pi


class Monotonicity(str, enum.Enum):
    INCREASING = "INCREASING"
    DECREASING = "DECREASING"
    FLAT = "FLAT"
    NON_MONOTONE = "NON_MONOTONE"


@dataclass(frozen=True)
class BetaProfile:
    params: Params
    grid: tuple[tuple[float, float], ...]
    argmax_bracket: tuple[float, float]
    argmax: float
    max_value: float
    flat: bool
    f_at_0: float
    f_at_half_pi: float
    interior_max: float

    def __post_init__(self):
        betas = [b for b, _ in self.grid]
        if any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
            raise ValueError("profile grid must be strictly increasing")
        if betas[0] != 0.0 or not math.isclose(betas[-1], HALF_PI):
            raise ValueError("profile grid must cover [0, pi/2]")

    @property
    def betas(self) -> np.ndarray:
        return np.array([b for b, _ in self.grid])

    @property
    def values(self) -> np.ndarray:
        return np.array([f for _, f in self.grid])


@dataclass(frozen=True)
class MonotonicityReport:
    params: Params
    classification: Monotonicity
    resolution: int
    witness: tuple[float, float] | None
    predicted: Monotonicity
    predicted_alt: Monotonicity | None = None
    agrees: bool = False
    argmax: float = 0.0
    max_value: float = 0.0
    f_at_0: float = 0.0
    f_at_half_pi: float = 0.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.witness is not None) != (self.classification is Monotonicity.NON_MONOTONE):
            raise ValueError("witness must be present exactly for NON_MONOTONE")


def _evaluate(params: Params, betas, tol: float) -> np.ndarray:
    return np.array([fq_beta(params, float(b), tol).value for b in betas])


def profile(params: Params, gridsize: int = DEFAULT_GRID, tol: float = 1e-12,
            xtol: float = BETA_XTOL) -> BetaProfile:
    """Sample F_q on a uniform grid of [0, pi/2] and refine the best cell by golden section.

    A refined maximiser that is indistinguishable (within quadrature noise)
    from a stationary endpoint is snapped to that endpoint.
    """
    if gridsize < 3:
        raise ValueError("gridsize must be >= 3")
    if math.isinf(params.q):
        raise ValueError("no beta profile for q = inf")
    betas = np.linspace(0.0, HALF_PI, gridsize)
    betas[-1] = HALF_PI
    vals = _evaluate(params, betas, tol)
    top = float(vals.max())
    noise = NOISE_FACTOR * tol * top
    grid = tuple((float(b), float(v)) for b, v in zip(betas, vals))
    f0, fh = float(vals[0]), float(vals[-1])
    interior = float(vals[1:-1].max())

    if top - float(vals.min()) <= FLAT_REL * top:
        return BetaProfile(params, grid, (0.0, float(betas[1])), 0.0, top, True, f0, fh, interior)

    j = int(np.argmax(vals))
    lo, hi = float(betas[max(j - 1, 0)]), float(betas[min(j + 1, gridsize - 1)])
    f = lambda b: fq_beta(params, b, tol).value
    x, fx = golden_max(f, lo, hi, xtol)
    if fx < vals[j]:
        x, fx = float(betas[j]), float(vals[j])
    for end, fend in ((0.0, f0), (HALF_PI, fh)):
        if lo <= end <= hi and fend >= fx - noise:
            x = end
            break
    return BetaProfile(params, grid, (lo, hi), x, max(fx, top), False, f0, fh, interior)


def stationarity_check(params: Params, h: float = 1e-4, tol: float = 1e-13) -> tuple[float, float]:
    """Central differences of F_q at beta = 0 and beta = pi/2.

    F_q is evaluated on both sides of each point (negative beta included), so
    the result tests the symmetry numerically rather than assuming it.
    """
    if not 0.0 < h <= 1e-3:
        raise ValueError("h must lie in (0, 1e-3]")
    f = lambda b: fq_beta(params, b, tol).value
    d0 = (f(h) - f(-h)) / (2.0 * h)
    d1 = (f(HALF_PI + h) - f(HALF_PI - h)) / (2.0 * h)
    return d0, d1


def classify(values, tol: float = 1e-12) -> tuple[Monotonicity, int | None]:
    """Monotonicity of a sampled sequence; second item is the index of a violating step."""
    values = np.asarray(values, dtype=float)
    scale = float(np.max(np.abs(values)))
    noise = NOISE_FACTOR * tol * scale
    if float(values.max() - values.min()) <= FLAT_REL * scale:
        return Monotonicity.FLAT, None
    d = np.diff(values)
    if np.all(d >= -noise):
        return Monotonicity.INCREASING, None
    if np.all(d <= noise):
        return Monotonicity.DECREASING, None
    rising = values[-1] >= values[0]
    bad = np.nonzero(d < -noise)[0] if rising else np.nonzero(d > noise)[0]
    return Monotonicity.NON_MONOTONE, int(bad[0])


def conjecture_prediction(n: int, q: float) -> tuple[Monotonicity, Monotonicity | None]:
    """Predicted behaviour on [0, pi/2]; the second item is set when floor((n+1)q/2) is ambiguous.

    q > 2: decreasing.  q <= 2: nondecreasing when floor((n+1)q/2) is even,
    nonincreasing when odd.  When (n+1)q/2 is itself an integer the parity of
    the neighbouring integer below is returned as the alternative.
    """
    if q > 2:
        return Monotonicity.DECREASING, None
    x = 0.5 * (n + 1) * q
    k = math.floor(x + 1e-12)
    pick = lambda k: Monotonicity.INCREASING if k % 2 == 0 else Monotonicity.DECREASING
    alt = pick(k - 1) if abs(x - round(x)) < 1e-12 else None
    return pick(k), alt


def _agrees(observed: Monotonicity, predicted: Monotonicity, strict: bool) -> bool:
    if observed is predicted:
        return True
    return not strict and observed is Monotonicity.FLAT


def scan_conjecture(n_list, q_list, resolution: int = 64, tol: float = 1e-12
                    ) -> list[MonotonicityReport]:
    """Classify F_q on [0, pi/2] for every (n, q) pair and compare with the conjecture.

    Discrepancies are reported in the ``agrees`` field, never raised.
    """
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    reports = []
    for n in n_list:
        for q in q_list:
            params = Params.from_q(int(n), float(q))
            prof = profile(params, resolution + 1, tol)
            cls, bad = classify(prof.values, tol)
            witness = None
            if bad is not None:
                witness = (float(prof.betas[bad]), float(prof.betas[bad + 1]))
            pred, alt = conjecture_prediction(params.n, params.q)
            strict = params.q > 2
            ok = _agrees(cls, pred, strict) or (alt is not None and _agrees(cls, alt, strict))
            reports.append(MonotonicityReport(
                params, cls, resolution, witness, pred, alt, ok,
                prof.argmax, prof.max_value, prof.f_at_0, prof.f_at_half_pi))
    return reports
