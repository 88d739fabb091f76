"""Problem parameters and small value types shared across modules."""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from dataclasses import dataclass, field

import mpmath

DIGITS_ENV = "SHARPCONST_DIGITS"


def default_digits() -> int:
    """Working precision for big-float evaluation; env var overrides the built-in 30."""
    raw = os.environ.get(DIGITS_ENV)
    if raw:
        try:
            digits = int(raw)
        except ValueError as exc:
            raise ValueError(f"{DIGITS_ENV} must be an integer, got {raw!r}") from exc
        if digits < 15:
            raise ValueError(f"{DIGITS_ENV} must be >= 15")
        return digits
    return 30


def conjugate(x: float) -> float:
    """Hölder conjugate of an exponent in [1, inf]."""
    if x == 1:
        return math.inf
    if math.isinf(x):
        return 1.0
    return x / (x - 1.0)


@dataclass(frozen=True)
class Params:
    """Derivative order ``n`` with Hardy exponent ``p`` and its conjugate ``q``."""

    n: int
    p: float
    q: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        for name, val in (("p", self.p), ("q", self.q)):
            if math.isnan(val) or val < 1:
                raise ValueError(f"{name} must lie in [1, inf], got {val!r}")
        if math.isinf(self.p) != (self.q == 1) or math.isinf(self.q) != (self.p == 1):
            raise ValueError(f"p={self.p} and q={self.q} are not conjugate")
        if not (math.isinf(self.p) or math.isinf(self.q)):
            if abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
                raise ValueError(f"p={self.p} and q={self.q} are not conjugate")

    @classmethod
    def from_p(cls, n: int, p: float) -> "Params":
        return cls(n, float(p), conjugate(float(p)))

    @classmethod
    def from_q(cls, n: int, q: float) -> "Params":
        return cls(n, conjugate(float(q)), float(q))

    @property
    def sine_exponent(self) -> float:
        """Exponent (n+1) - 2/q of the sine factor; equals n+1 when q is infinite."""
        if math.isinf(self.q):
            return float(self.n + 1)
        return (self.n + 1) - 2.0 / self.q

    @property
    def inv_p(self) -> float:
        return 0.0 if math.isinf(self.p) else 1.0 / self.p

    @property
    def inv_q(self) -> float:
        return 0.0 if math.isinf(self.q) else 1.0 / self.q


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    panels: int
    kinks: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("quadrature value is not finite")
        if not self.err_estimate >= 0:
            raise ValueError("error estimate must be non-negative")


@dataclass(frozen=True)
class PrecisionCtx:
    """Decimal digits of working precision for mpmath evaluation."""

    digits: int = field(default_factory=default_digits)

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be >= 15")

    @contextmanager
    def active(self):
        with mpmath.workdps(self.digits):
            yield self
