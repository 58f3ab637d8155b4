"""Scalar backends: exact rationals and the truncated odd theta function."""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from ._pykernels import GenericityError

__all__ = [
    "ApproxPolicy",
    "GenericityError",
    "ThetaConfig",
    "approx_eq",
    "format_rational",
    "parse_rational",
    "tau_sign",
    "theta",
]

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a reduced Fraction.

    The sign belongs to the numerator; a signed denominator is rejected.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    m = _RATIONAL_RE.fullmatch(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ApproxPolicy:
    tol_rel: float = 1e-8
    tol_abs: float = 1e-12

    def __post_init__(self):
        if not self.tol_rel > 0:
            raise ValueError("tol_rel must be positive")
        if not self.tol_abs >= 0:
            raise ValueError("tol_abs must be non-negative")


DEFAULT_POLICY = ApproxPolicy()


def _check_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value {z!r}")
    return z


def approx_eq(a, b, policy: ApproxPolicy = DEFAULT_POLICY) -> bool:
    a = _check_finite(a)
    b = _check_finite(b)
    return abs(a - b) <= policy.tol_abs + policy.tol_rel * max(abs(a), abs(b))


def rel_residual(a, b) -> float:
    """|a-b| / max(|a|,|b|), or the absolute gap when both vanish."""
    a, b = complex(a), complex(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else abs(a - b)


@dataclass(frozen=True)
class ThetaConfig:
    """Nome parameter ``tau`` (Im > 0) and truncation ``trunc`` of the series."""

    tau: complex = 0.8j
    trunc: int = 40

    def __post_init__(self):
        tau = _check_finite(self.tau)
        object.__setattr__(self, "tau", tau)
        if not tau.imag > 0:
            raise ValueError(f"Im(tau) must be positive, got {tau!r}")
        if int(self.trunc) != self.trunc or self.trunc < 10:
            raise ValueError(f"trunc must be an integer >= 10, got {self.trunc!r}")


DEFAULT_THETA = ThetaConfig()


def theta(z, cfg: ThetaConfig = DEFAULT_THETA) -> complex:
    """[z] = -sum_{j in Z+1/2, |j| <= N+1/2} exp(i pi j^2 tau + 2 pi i j (z+1/2))."""
    return kernels.theta(_check_finite(z), cfg.tau, cfg.trunc)


@lru_cache(maxsize=32)
def tau_sign(cfg: ThetaConfig = DEFAULT_THETA) -> int:
    """The sign s with [z+tau] = s * exp(-2 pi i z - pi i tau) [z], read off the series."""
    samples = (0.137 + 0.041j, -0.29 + 0.11j, 0.43 - 0.07j)
    ratios = []
    for z in samples:
        lhs = theta(z + cfg.tau, cfg)
        rhs = cmath.exp(-2j * cmath.pi * z - 1j * cmath.pi * cfg.tau) * theta(z, cfg)
        ratios.append(lhs / rhs)
    s = round(ratios[0].real)
    if s not in (1, -1) or any(abs(r - s) > 1e-8 for r in ratios):
        raise ArithmeticError(f"could not resolve tau-sign from ratios {ratios}")
    return s
