"""Randomised checks of |f^(n)(z)| <= C_{p,n} (1-|z|^2)^{-1/p-n} ||Re f||_{h^p}.

Test functions are polynomials, so boundary values are exact and the h^p
norm reduces to a periodic integral.  The norm is taken against dt on
[0, 2pi]; pass ``normalized=True`` to :func:`hp_norm` for the probability
measure instead.  The polynomial subtracted inside the norm is always 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .constants import BoundQuery, ConstantRecord, bound_rhs, c_pn
from .params import Params

DEFAULT_GRID = 2 ** 14
FINE_GRID = 2 ** 16
NORM_REL_ERR = 1e-6


class Kind(str, enum.Enum):
    POLY = "POLY"
    STRIP_TRUNC = "STRIP_TRUNC"
    STRIP_FEJER = "STRIP_FEJER"


@dataclass(frozen=True)
class TestFunction:
    kind: Kind
    coefficients: tuple[complex, ...]

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in self.coefficients):
            raise ValueError("coefficients must be finite")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def boundary_real(self, gridsize: int) -> np.ndarray:
        """Re f(e^{2 pi i k / N}) for k = 0..N-1."""
        c = np.zeros(gridsize, dtype=complex)
        d = min(len(self.coefficients), gridsize)
        if len(self.coefficients) > gridsize:
            raise ValueError("grid too coarse for the polynomial degree")
        c[:d] = self.coefficients[:d]
        return (np.fft.ifft(c) * gridsize).real

    def real_at(self, t: float) -> float:
        z = complex(math.cos(t), math.sin(t))
        return float(np.polynomial.polynomial.polyval(z, np.asarray(self.coefficients)).real)

    def scaled(self, rho: float) -> "TestFunction":
        """f(rho z)."""
        return TestFunction(self.kind, tuple(c * rho ** k for k, c in enumerate(self.coefficients)))


@dataclass(frozen=True)
class TrialReport:
    params: Params
    z: complex
    lhs: float
    rhs: float
    slack: float
    norm_value: float
    norm_err: float
    kind: str = Kind.POLY.value
    degree: int = 0

    def to_json(self) -> dict:
        d = asdict(self)
        d["params"] = {"n": self.params.n, "p": _num(self.params.p), "q": _num(self.params.q)}
        d["z"] = [self.z.real, self.z.imag]
        d["rhs"] = _num(self.rhs)
        return d


def _num(x: float):
    return "inf" if math.isinf(x) else x


class InequalityViolation(AssertionError):
    def __init__(self, report: TrialReport):
        super().__init__(f"slack {report.slack:.3e} < 0 for {report}")
        self.report = report


def sample_function(seed: int, max_degree: int) -> TestFunction:
    """Random polynomial of degree in [1, max_degree] with coefficients decaying like 1/(k+1)."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, max_degree + 1))
    raw = rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)
    coeffs = raw / (1.0 + np.arange(d + 1))
    if coeffs[-1] == 0:
        coeffs[-1] = 1.0
    return TestFunction(Kind.POLY, tuple(complex(c) for c in coeffs))


def strip_function(degree: int, taper: str = "none") -> TestFunction:
    """Taylor polynomial of (2i/pi) log((1+z)/(1-z)) = (4i/pi) sum_{k odd} z^k/k.

    ``taper="fejer"`` multiplies coefficient k by (1 - k/(degree+1)); the
    Fejér mean of the boundary square wave stays within [-1, 1], while the
    plain truncation overshoots by the Gibbs constant.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    coeffs = [0j] * (degree + 1)
    for k in range(1, degree + 1, 2):
        w = 1.0 - k / (degree + 1) if taper == "fejer" else 1.0
        coeffs[k] = 4j / (math.pi * k) * w
    if taper not in ("none", "fejer"):
        raise ValueError(f"unknown taper {taper!r}")
    return TestFunction(Kind.STRIP_FEJER if taper == "fejer" else Kind.STRIP_TRUNC, tuple(coeffs))


def _lp(u: np.ndarray, p: float, normalized: bool) -> float:
    mean = float(np.mean(np.abs(u) ** p))
    if not normalized:
        mean *= 2.0 * math.pi
    return mean ** (1.0 / p)


def hp_norm(f: TestFunction, p: float, gridsize: int = DEFAULT_GRID,
            normalized: bool = False) -> tuple[float, float]:
    """(||Re f||_{h^p}, error estimate) from the boundary values on a uniform grid.

    Finite p: periodic trapezoid compared against the half grid.  p = inf:
    grid maximum polished by a bounded scalar search around it.
    """
    if gridsize < 1024 or gridsize & (gridsize - 1):
        raise ValueError("gridsize must be a power of two >= 1024")
    u = f.boundary_real(gridsize)
    if math.isinf(p):
        k = int(np.argmax(np.abs(u)))
        grid_max = float(abs(u[k]))
        h = 2.0 * math.pi / gridsize
        t0 = k * h
        res = minimize_scalar(lambda t: -abs(f.real_at(t)), bounds=(t0 - h, t0 + h),
                              method="bounded", options={"xatol": 1e-13})
        best = max(grid_max, -float(res.fun))
        return best, best - grid_max
    if p < 1:
        raise ValueError("p must be >= 1")
    full = _lp(u, p, normalized)
    half = _lp(u[::2], p, normalized)
    return full, abs(full - half)


def derivative_at(f: TestFunction, n: int, z: complex) -> complex:
    """Exact n-th derivative of the polynomial at z."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0j
    for k in range(len(f.coefficients) - 1, n - 1, -1):
        total = total * z + f.coefficients[k] * math.perm(k, n)
    return total


def _norm(f: TestFunction, p: float) -> tuple[float, float]:
    val, err = hp_norm(f, p, DEFAULT_GRID)
    if not math.isinf(p) and err > NORM_REL_ERR * val and f.degree < FINE_GRID:
        val, err = hp_norm(f, p, FINE_GRID)
    return val, err


def trial(record: ConstantRecord, f: TestFunction, z: complex, tol: float = 1e-9) -> TrialReport:
    params = record.params
    lhs = abs(derivative_at(f, params.n, z))
    norm, err = _norm(f, params.p)
    rhs = bound_rhs(record, BoundQuery(z, norm))
    return TrialReport(params, z, lhs, rhs, rhs - lhs, norm, err, f.kind.value, f.degree)


def _sample_z(rng: np.random.Generator, rmax: float) -> complex:
    r = rmax * math.sqrt(float(rng.random()))
    t = 2.0 * math.pi * float(rng.random())
    return complex(r * math.cos(t), r * math.sin(t))


def run_trials(params_list, trials: int = 1000, seed: int = 0, tol: float = 1e-9,
               max_degree: int = 8, rmax: float = 0.95, raise_on_violation: bool = True
               ) -> list[TrialReport]:
    """Evaluate both sides of the bound on ``trials`` random (params, f, z) triples.

    Trial i draws from its own stream spawned from ``seed``, so results do not
    depend on evaluation order.  A slack below ``-tol * rhs`` raises
    :class:`InequalityViolation` unless ``raise_on_violation`` is false.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    params_list = list(params_list)
    children = np.random.SeedSequence(seed).spawn(trials)
    reports = []
    for i, ss in enumerate(children):
        rng = np.random.default_rng(ss)
        params = params_list[int(rng.integers(len(params_list)))]
        fseed = int(rng.integers(2 ** 63))
        f = sample_function(fseed, max_degree)
        z = _sample_z(rng, rmax)
        rep = trial(c_pn(params), f, z, tol)
        if rep.slack < -tol * max(rep.rhs, 1.0) and raise_on_violation:
            raise InequalityViolation(rep)
        reports.append(rep)
    return reports


def summarize(reports: list[TrialReport], tol: float = 1e-9, config: dict | None = None) -> dict:
    """JSON-ready summary: config, trial count, min slack, violations, sharpest trial."""
    violations = [r for r in reports if r.slack < -tol * max(r.rhs, 1.0)]
    finite = [r for r in reports if math.isfinite(r.rhs) and r.rhs > 0]
    sharpest = max(finite, key=lambda r: r.lhs / r.rhs) if finite else None
    return {
        "config": config or {},
        "trials": len(reports),
        "min_slack": min(r.slack for r in reports),
        "violations": [r.to_json() for r in violations],
        "sharpest": sharpest.to_json() if sharpest else None,
        "sharpest_ratio": (sharpest.lhs / sharpest.rhs) if sharpest else None,
    }


def sharpness_probe(n: int, p: float, d_list, taper: str = "fejer",
                    gridsize: int = DEFAULT_GRID) -> list[float]:
    """lhs/rhs at z = 0 for the strip-map polynomials of the listed degrees."""
    record = c_pn(Params.from_p(n, p))
    out = []
    for d in d_list:
        f = strip_function(d, taper)
        norm, _ = hp_norm(f, p, max(gridsize, 4 * 2 ** math.ceil(math.log2(d + 1))))
        lhs = abs(derivative_at(f, n, 0j))
        rhs = bound_rhs(record, BoundQuery(0j, norm))
        out.append(lhs / rhs)
    return out
