"""Certified numeric brackets and exponent bookkeeping.

A SpectralEstimate is a bracket [lower, upper] for one scalar functional,
together with the monotone certificate sequences that produced each side.
Every certificate entry is individually a valid bound of its direction, so
the sequences double as an audit trail: the bracket never claims more than
its worst surviving entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SpecRadLabError

# one-sided outward rounding applied when a bound is a root/power of floats
OUTWARD = 1e-13


@dataclass
class Certificate:
    label: str
    values: list[float]

    def to_json(self):
        return {"label": self.label, "values": [float(v) for v in self.values]}


@dataclass
class SpectralEstimate:
    """Bracket [lower, upper] with per-side certificates.

    ``point_estimate`` (extrapolation, ratio estimate, ...) is attached for
    reporting only and is never used as a bound.
    """

    lower: float
    upper: float
    lower_certificate: Certificate
    upper_certificate: Certificate
    method: str
    target: str
    point_estimate: float | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.lower <= self.upper or math.isclose(self.lower, self.upper,
                                                         rel_tol=1e-9, abs_tol=1e-12)):
            raise SpecRadLabError(
                f"invalid bracket for {self.target}: lower {self.lower} > upper {self.upper}"
            )
        self.lower = min(self.lower, self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def relative_quality(self) -> float:
        """lower/upper in [0, 1]; 1 means a collapsed (exact) bracket."""
        if self.upper <= 0:
            return 1.0
        return max(0.0, self.lower) / self.upper

    def to_json(self):
        out = {
            "target": self.target,
            "method": self.method,
            "lower": float(self.lower),
            "upper": float(self.upper),
            "lower_certificate": self.lower_certificate.to_json(),
            "upper_certificate": self.upper_certificate.to_json(),
        }
        if self.point_estimate is not None:
            out["point_estimate"] = float(self.point_estimate)
        if self.extras:
            out["extras"] = _jsonable(self.extras)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return float(x)
    return str(x)


def conjugate_exponent(p: Fraction | float) -> Fraction:
    """Exact conjugate q with 1/p + 1/q = 1; p may be a Fraction or float
    representing a rational on the standard grid."""
    p = Fraction(p).limit_denominator(10**6)
    if p == 1:
        return Fraction(10**18)  # effectively infinity; callers special-case p=1
    if p <= 0:
        raise SpecRadLabError(f"exponent {p} out of range")
    return p / (p - 1)


@dataclass
class InterpolationParams:
    """Exponent triple p1 < p2 < p3 in [1, 2] with the interpolation weight
    theta solving 1/p2 = (1-theta)/p1 + theta/p3, plus exact conjugates."""

    p1: Fraction
    p2: Fraction
    p3: Fraction
    theta: float
    q1: Fraction
    q2: Fraction
    q3: Fraction

    @staticmethod
    def from_triple(p1, p2, p3) -> "InterpolationParams":
        p1, p2, p3 = (Fraction(p).limit_denominator(10**6) for p in (p1, p2, p3))
        if not (1 <= p1 < p2 < p3 <= 2):
            raise SpecRadLabError(f"need 1 <= p1 < p2 < p3 <= 2, got {p1}, {p2}, {p3}")
        theta_exact = (Fraction(1, 1) / p1 - 1 / p2) / (Fraction(1, 1) / p1 - 1 / p3)
        theta = float(theta_exact)
        if not 0 < theta < 1:
            raise SpecRadLabError("interpolation weight escaped (0, 1)")
        return InterpolationParams(
            p1, p2, p3, theta,
            conjugate_exponent(p1), conjugate_exponent(p2), conjugate_exponent(p3),
        )

    def to_json(self):
        return {
            "p1": str(self.p1), "p2": str(self.p2), "p3": str(self.p3),
            "theta": self.theta,
            "q1": str(self.q1), "q2": str(self.q2), "q3": str(self.q3),
        }


def running_max(values) -> list[float]:
    out, cur = [], -math.inf
    for v in values:
        cur = max(cur, v)
        out.append(cur)
    return out


def running_min(values) -> list[float]:
    out, cur = [], math.inf
    for v in values:
        cur = min(cur, v)
        out.append(cur)
    return out
