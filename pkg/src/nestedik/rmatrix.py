"""Vertex weights of the three R-matrix families and Yang-Baxter checkers.

A vertex is described by ``VertexIO(west_in, south_in, east_out, north_out)``.
The horizontal (auxiliary) line carries the first spectral argument and the
vertical (quantum) line the second.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .scalars import GenericityError, ThetaConfig, theta

MODELS = ("rational", "trigonometric", "elliptic")
DENOMINATOR_FLOOR = 1e-10
LATTICE_MARGIN = 1e-6


class VertexIO(NamedTuple):
    west_in: int
    south_in: int
    east_out: int
    north_out: int


@dataclass(frozen=True)
class ModelParams:
    model: str
    q: Fraction | None = None
    tau: complex = 0.8j
    gamma: complex = 0j
    lam: tuple = field(default=())
    trunc: int = 40

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "trigonometric":
            if self.q is None:
                raise ValueError("trigonometric model needs q")
            if self.q in (0, 1):
                raise ValueError("q must avoid 0 and 1")
        if self.model == "elliptic":
            object.__setattr__(self, "lam", tuple(complex(v) for v in self.lam))
            object.__setattr__(self, "gamma", complex(self.gamma))
            ThetaConfig(self.tau, self.trunc)

    @property
    def theta_cfg(self) -> ThetaConfig:
        return ThetaConfig(self.tau, self.trunc)

    def check_generic(self, span: int = 12) -> None:
        """Reject lambda_i - lambda_j close to gamma*Z + Z + tau*Z."""
        lam = self.lam
        for i, j in itertools.combinations(range(len(lam)), 2):
            for n in range(-span, span + 1):
                d = lam[i] - lam[j] - n * self.gamma
                if near_period_lattice(d, self.tau, LATTICE_MARGIN):
                    raise GenericityError(
                        f"lambda_{i + 1} - lambda_{j + 1} lies near the lattice (n={n})")


def near_period_lattice(d: complex, tau: complex, margin: float) -> bool:
    b = round(d.imag / tau.imag)
    d = d - b * tau
    d = d - round(d.real)
    return abs(d) < margin


def weight_rational(io: VertexIO, x, y):
    w, s, e, n = io
    if {w, s} != {e, n} or (w == s and e != w):
        return 0
    if w == s:
        return x - y + 1
    return x - y if e == w else 1


def weight_trig(io: VertexIO, u, v, q):
    w, s, e, n = io
    if {w, s} != {e, n} or (w == s and e != w):
        return 0
    if w == s:
        return u - q * v
    if e == w:
        return q * (u - v) if w > s else u - v
    return (1 - q) * u if w < s else (1 - q) * v


def _bracket_den(lam, cfg):
    den = theta(lam, cfg)
    if abs(den) < DENOMINATOR_FLOOR:
        raise GenericityError(f"[{lam}] vanishes")
    return den


def alpha(z, lam, gamma, cfg):
    return theta(z, cfg) * theta(lam + gamma, cfg) / _bracket_den(lam, cfg)


def beta(z, lam, gamma, cfg):
    return -theta(z + lam, cfg) * theta(gamma, cfg) / _bracket_den(lam, cfg)


def weight_elliptic(io: VertexIO, z, w, lam_face, gamma, cfg: ThetaConfig):
    """Weight with north-west face value ``lam_face`` (a covector, 1-based colors)."""
    a, b, e, n = io
    if {a, b} != {e, n} or (a == b and e != a):
        return 0j
    if a == b:
        return theta(z - w - gamma, cfg)
    if e == a:
        return alpha(z - w, lam_face[a - 1] - lam_face[b - 1], gamma, cfg)
    return beta(z - w, lam_face[b - 1] - lam_face[a - 1], gamma, cfg)


def vertex_weight(io: VertexIO, x, y, params: ModelParams, lam_face=None):
    if params.model == "rational":
        return weight_rational(io, x, y)
    if params.model == "trigonometric":
        return weight_trig(io, x, y, params.q)
    return weight_elliptic(io, x, y, lam_face, params.gamma, params.theta_cfg)


def _outputs(a, b):
    return ((a, b),) if a == b else ((a, b), (b, a))


def _apply(vec, i, j, x, y, params, dim, lam_of=None):
    """Apply R_ij(x, y) to a sparse vector over basis triples."""
    out = {}
    for basis, coeff in vec.items():
        a, b = basis[i], basis[j]
        lam = lam_of(basis) if lam_of is not None else None
        for c, d in _outputs(a, b):
            wt = vertex_weight(VertexIO(a, b, c, d), x, y, params, lam)
            if wt == 0:
                continue
            new = list(basis)
            new[i], new[j] = c, d
            new = tuple(new)
            out[new] = out.get(new, 0) + coeff * wt
    return out


def check_ybe(model: str, dim: int, spectral, params: ModelParams):
    """Max |R23 R13 R12 - R12 R13 R23| over basis triples, with R_ij = R(x_i, x_j).

    Products act right to left.  Returns an exact Fraction for the rational and
    trigonometric models.
    """
    if params.model != model:
        raise ValueError("params.model does not match model")
    x1, x2, x3 = spectral
    worst = 0
    for basis in itertools.product(range(1, dim + 1), repeat=3):
        v = {basis: 1}
        lhs = _apply(_apply(_apply(v, 0, 1, x1, x2, params, dim), 0, 2, x1, x3, params, dim),
                     1, 2, x2, x3, params, dim)
        rhs = _apply(_apply(_apply(v, 1, 2, x2, x3, params, dim), 0, 2, x1, x3, params, dim),
                     0, 1, x1, x2, params, dim)
        for key in set(lhs) | set(rhs):
            worst = max(worst, abs(lhs.get(key, 0) - rhs.get(key, 0)))
    return worst


def _shifted(lam, gamma, slot):
    def lam_of(basis):
        if slot is None:
            return lam
        out = list(lam)
        out[basis[slot] - 1] -= gamma
        return out
    return lam_of


def check_dybe(dim: int, spectral, lam, gamma, cfg: ThetaConfig) -> float:
    """Relative residual of the dynamical Yang-Baxter equation.

    R23(z23, lam) R13(z13, lam - gamma h2) R12(z12, lam)
      = R12(z12, lam - gamma h3) R13(z13, lam) R23(z23, lam - gamma h1),
    each h_i read off the current basis vector in its slot.  The middle
    factor on the right carries no shift; with a -gamma h2 shift there the
    identity fails for these weights.
    """
    params = ModelParams("elliptic", tau=cfg.tau, gamma=gamma, lam=tuple(lam), trunc=cfg.trunc)
    z1, z2, z3 = spectral
    worst = 0.0
    for basis in itertools.product(range(1, dim + 1), repeat=3):
        v = {basis: 1 + 0j}
        lhs = _apply(v, 0, 1, z1, z2, params, dim, _shifted(lam, gamma, None))
        lhs = _apply(lhs, 0, 2, z1, z3, params, dim, _shifted(lam, gamma, 1))
        lhs = _apply(lhs, 1, 2, z2, z3, params, dim, _shifted(lam, gamma, None))
        rhs = _apply(v, 1, 2, z2, z3, params, dim, _shifted(lam, gamma, 0))
        rhs = _apply(rhs, 0, 2, z1, z3, params, dim, _shifted(lam, gamma, None))
        rhs = _apply(rhs, 0, 1, z1, z2, params, dim, _shifted(lam, gamma, 2))
        scale = max([abs(c) for c in lhs.values()] + [abs(c) for c in rhs.values()] + [1e-300])
        for key in set(lhs) | set(rhs):
            worst = max(worst, abs(lhs.get(key, 0) - rhs.get(key, 0)) / scale)
    return worst


def random_generic_lambda(rng, n: int, gamma: complex, tau: complex) -> tuple:
    """Draw lambda in C^n with every difference well away from the period lattice."""
    while True:
        lam = tuple(complex(rng.uniform(-0.5, 0.5), rng.uniform(0.05, 0.3)) for _ in range(n))
        p = ModelParams("elliptic", tau=tau, gamma=gamma, lam=lam)
        try:
            p.check_generic()
        except GenericityError:
            continue
        return lam


__all__ = [
    "MODELS", "ModelParams", "VertexIO", "alpha", "beta", "check_dybe", "check_ybe",
    "near_period_lattice", "random_generic_lambda", "vertex_weight", "weight_elliptic",
    "weight_rational", "weight_trig"
]
