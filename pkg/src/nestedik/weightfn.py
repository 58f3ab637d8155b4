"""Closed-form multisymmetric weight functions.

All three extended forms share one skeleton: a sum over permutations of every
layer's auxiliary variables, and for each layer p and each a = 1..k_p a row of
factors against the merged quantum row ``yI(p) | x(p+1) permuted | yII(p)``.
Positions before the induced index get one factor, the induced position gets a
model-specific middle factor, positions after it get another.
"""

from __future__ import annotations

import cmath
import itertools

from . import kernels
from .labels import Shape, check_colors, count_C, fm_from_colors, lambda_shift
from .rmatrix import DENOMINATOR_FLOOR
from .scalars import GenericityError, theta
from .spectral import SpectralData

__all__ = [
    "SpectralData", "m_select", "weight_closed", "weight_closed_elliptic",
    "weight_closed_rational", "weight_closed_trig", "weight_elliptic_normalized",
    "weight_elliptic_reduced", "weight_konno_norm", "weight_rtv", "rtv_counters",
]


def m_select(i: int, yI, xnext, yII):
    nI, nx = len(yI), len(xnext)
    if not 1 <= i <= nI + nx + len(yII):
        raise IndexError(f"selector index {i} out of range")
    if i <= nI:
        return yI[i - 1]
    if i <= nI + nx:
        return xnext[i - nI - 1]
    return yII[i - nI - nx - 1]


def _layer_positions(shape, label):
    """Per layer, the 1-based induced position of each a in the merged row."""
    out = [label.Itilde[p - 1] for p in range(1, shape.M)]
    shift = sum(shape.LI)
    out.append(tuple(i - shift for i in label.I[-1]))
    return out


def _merged_row(shape, spectral, p, perm_next):
    if p == shape.M:
        return spectral.y
    xn = spectral.x[p]
    return spectral.yI[p - 1] + tuple(xn[s] for s in perm_next) + spectral.yII[p - 1]


def _check_distinct(shape, spectral, model):
    for p, xs in enumerate(spectral.x, start=1):
        for a, b in itertools.combinations(range(len(xs)), 2):
            d = xs[a] - xs[b]
            if model == "elliptic":
                if abs(theta(d)) < DENOMINATOR_FLOOR:
                    raise GenericityError(f"[x_a - x_b] vanishes in layer {p}")
            elif d == 0:
                raise ZeroDivisionError(f"coinciding auxiliary variables in layer {p}")


def _permutation_sum(shape, spectral, layer_factor, cross, zero):
    """Sum over sigma_1..sigma_M of prod_p layer_factor(p, X_perm, row) * cross."""
    perms = [list(itertools.permutations(range(n))) for n in shape.k]
    total = zero
    for sig in itertools.product(*perms):
        term = None
        for p in range(1, shape.M + 1):
            X = tuple(spectral.x[p - 1][s] for s in sig[p - 1])
            row = _merged_row(shape, spectral, p, sig[p] if p < shape.M else None)
            f = layer_factor(p, X, row)
            for a, b in itertools.combinations(range(len(X)), 2):
                f *= cross(X[a], X[b])
            term = f if term is None else term * f
        total += term
    return total


def weight_closed_rational(shape: Shape, spectral: SpectralData, colors):
    colors = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "rational")
    pos = _layer_positions(shape, fm_from_colors(colors, shape))

    def layer(p, X, row):
        f = 1
        for a, t in enumerate(pos[p - 1]):
            for i, m in enumerate(row, start=1):
                if i < t:
                    f *= X[a] - m
                elif i > t:
                    f *= X[a] - m + 1
        return f

    return _permutation_sum(shape, spectral, layer, lambda a, b: (a - b - 1) / (a - b), 0)


def weight_closed_trig(shape: Shape, spectral: SpectralData, colors, q):
    colors = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "trigonometric")
    pos = _layer_positions(shape, fm_from_colors(colors, shape))

    def layer(p, U, row):
        f = 1
        for a, t in enumerate(pos[p - 1]):
            for i, m in enumerate(row, start=1):
                if i < t:
                    f *= U[a] - m
                elif i > t:
                    f *= U[a] - q * m
            f *= (1 - q) * U[a]
        return f

    return _permutation_sum(shape, spectral, layer, lambda a, b: (q * a - b) / (a - b), 0)


def _den(value, cfg):
    d = theta(value, cfg)
    if abs(d) < DENOMINATOR_FLOOR:
        raise GenericityError(f"[{value}] vanishes")
    return d


def weight_closed_elliptic(shape: Shape, spectral: SpectralData, colors, lam, gamma, cfg):
    colors = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "elliptic")
    label = fm_from_colors(colors, shape)
    pos = _layer_positions(shape, label)
    M = shape.M
    # dynamical data for each (p, a): lambda shift, C counters and colors
    dyn = []
    for p in range(1, M + 1):
        lp = lambda_shift(p, colors, shape, lam, gamma)
        rows = []
        for Ia in label.I[p - 1]:
            c = colors[Ia - 1]
            cc = count_C(p, Ia, c, colors, shape)
            cn = count_C(p, Ia, p + 1, colors, shape)
            shift = lp[p] - lp[c - 1] + gamma * (cc - cn - 1)
            den = _den(lp[c - 1] - lp[p] + gamma * (1 - cc), cfg)
            rows.append((shift, den))
        dyn.append(rows)

    def layer(p, Z, row):
        f = 1 + 0j
        for a, t in enumerate(pos[p - 1]):
            for i, m in enumerate(row, start=1):
                if i < t:
                    f *= theta(Z[a] - m, cfg)
                elif i > t:
                    f *= theta(Z[a] - m - gamma, cfg)
                else:
                    shift, den = dyn[p - 1][a]
                    f *= theta(Z[a] - m + shift, cfg) / den
        return f

    def cross(a, b):
        return theta(a - b + gamma, cfg) / theta(a - b, cfg)

    total = _permutation_sum(shape, spectral, layer, cross, 0j)
    return theta(gamma, cfg) ** sum(shape.k) * total


def weight_closed(shape, spectral, colors, params):
    if params.model == "rational":
        return weight_closed_rational(shape, spectral, colors)
    if params.model == "trigonometric":
        return weight_closed_trig(shape, spectral, colors, params.q)
    return weight_closed_elliptic(shape, spectral, colors, params.lam, params.gamma,
                                  params.theta_cfg)


# ------------------------------------------------------------ LI = LII = 0 forms


def _require_plain(shape):
    if any(shape.LI) or any(shape.LII):
        raise ValueError("this weight function needs LI = LII = 0")


def _plain_data(shape, colors):
    """Induced positions (layer M uses I itself) and simple counters C(k, l)."""
    label = fm_from_colors(colors, shape)
    pos = list(label.Itilde) + [label.I[-1]]

    def C(kcut, l):
        return sum(1 for j in range(kcut) if colors[j] == l)

    return label, pos, C


def weight_elliptic_reduced(shape, spectral, colors, lam, gamma, cfg):
    """Extended form specialised to LI = LII = 0, written independently."""
    _require_plain(shape)
    colors = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "elliptic")
    label, pos, C = _plain_data(shape, colors)

    def layer(p, Z, row):
        f = 1 + 0j
        for a, t in enumerate(pos[p - 1]):
            Ia = label.I[p - 1][a]
            c = colors[Ia - 1]
            for i in range(1, t):
                f *= theta(Z[a] - row[i - 1], cfg)
            for i in range(t + 1, len(row) + 1):
                f *= theta(Z[a] - row[i - 1] - gamma, cfg)
            num = theta(Z[a] - row[t - 1] + lam[p] - lam[c - 1]
                        + gamma * (C(Ia, c) - C(Ia, p + 1) - 1), cfg)
            f *= num / _den(lam[c - 1] - lam[p] + gamma * (1 - C(Ia, c)), cfg)
        return f

    def cross(a, b):
        return theta(a - b + gamma, cfg) / theta(a - b, cfg)

    return theta(gamma, cfg) ** sum(shape.k) * _permutation_sum(shape, spectral, layer, cross, 0j)


def weight_elliptic_normalized(shape, spectral, colors, lam, gamma, cfg):
    """Normalised form: no [gamma] prefactor and no lambda denominators."""
    _require_plain(shape)
    colors = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "elliptic")
    label, pos, C = _plain_data(shape, colors)

    def layer(p, Z, row):
        f = 1 + 0j
        for a, t in enumerate(pos[p - 1]):
            Ia = label.I[p - 1][a]
            c = colors[Ia - 1]
            for i in range(1, t):
                f *= theta(Z[a] - row[i - 1], cfg)
            for i in range(t + 1, len(row) + 1):
                f *= theta(Z[a] - row[i - 1] - gamma, cfg)
            f *= theta(Z[a] - row[t - 1] + lam[p] - lam[c - 1]
                       + gamma * (C(Ia, c) - C(Ia, p + 1) - 1), cfg)
        return f

    def cross(a, b):
        return theta(a - b + gamma, cfg) / theta(a - b, cfg)

    return _permutation_sum(shape, spectral, layer, cross, 0j)


def weight_konno_norm(shape, spectral, colors, P, gamma, cfg):
    """Symmetrised rewritten form, driven directly by the naive label mu.

    Index sets are I^(l) = {s : mu_s <= l} for l <= M and all sites for
    l = M+1, with nu^(M+1)_s = w_s.  Comparisons are between coordinates.
    """
    _require_plain(shape)
    mu = check_colors(colors, shape)
    spectral.check(shape)
    _check_distinct(shape, spectral, "elliptic")
    n, N = shape.LM, shape.M + 1
    sets = [tuple(s for s in range(1, n + 1) if mu[s - 1] <= l) for l in range(1, N)]
    sets.append(tuple(range(1, n + 1)))

    def count(upto, color):
        return sum(1 for j in range(upto) if mu[j] == color)

    perms = [list(itertools.permutations(range(len(spectral.x[l])))) for l in range(N - 1)]
    total = 0j
    for sig in itertools.product(*perms):
        nu = [tuple(spectral.x[l][s] for s in sig[l]) for l in range(N - 1)]
        nu.append(tuple(spectral.y))
        U = 1 + 0j
        for l in range(1, N):
            lo, hi = sets[l - 1], sets[l]
            for a, ia in enumerate(lo):
                for b, ib in enumerate(hi):
                    d = nu[l - 1][a] - nu[l][b]
                    if ib < ia:
                        U *= theta(d, cfg)
                    elif ib > ia:
                        U *= theta(d - gamma, cfg)
                    else:
                        s = ia
                        U *= theta(d + P[l] - P[mu[s - 1] - 1]
                                   + gamma * (count(s, mu[s - 1]) - 1)
                                   - gamma * count(s, l + 1), cfg)
                for b in range(a + 1, len(lo)):
                    d = nu[l - 1][a] - nu[l - 1][b]
                    U *= theta(d + gamma, cfg) / theta(d, cfg)
        total += U
    return total


def rtv_counters(colors, N):
    """p_{I,j}(m) = |I_j ∩ {1..m-1}| for j = 1..N, m = 1..n+1, as p[j-1][m-1]."""
    n = len(colors)
    return [[sum(1 for s in range(1, m) if colors[s - 1] == j) for m in range(1, n + 2)]
            for j in range(1, N + 1)]


def weight_rtv(shape, t, zq, h, mu, colors, nome, nfactors: int = 60):
    """Multiplicative-variable form with the three-case psi factor.

    ``t`` lists t^(1..M) and ``zq`` the n quantum variables (t^(N) := zq).
    Square roots take the principal branch.
    """
    _require_plain(shape)
    colors = check_colors(colors, shape)
    N = shape.M + 1
    n = shape.LM
    if len(t) != shape.M or any(len(r) != kk for r, kk in zip(t, shape.k)) or len(zq) != n:
        raise ValueError("variables do not match the shape")
    sets = [tuple(s for s in range(1, n + 1) if colors[s - 1] <= k) for k in range(1, N)]
    sets.append(tuple(range(1, n + 1)))
    p = rtv_counters(colors, N)

    def vt(x):
        return kernels.multiplicative_theta(x, nome, nfactors)

    perms = [list(itertools.permutations(range(kk))) for kk in shape.k]
    total = 0j
    for sig in itertools.product(*perms):
        tt = [tuple(t[k][s] for s in sig[k]) for k in range(shape.M)]
        tt.append(tuple(zq))
        U = 1 + 0j
        for k in range(1, N):
            lo, hi = sets[k - 1], sets[k]
            for a, ia in enumerate(lo):
                for c, ic in enumerate(hi):
                    x = tt[k - 1][a] / tt[k][c]
                    if ic < ia:
                        U *= vt(x)
                    elif ic > ia:
                        U *= vt(x / h)
                    else:
                        j = colors[ia - 1]
                        expo = p[j - 1][ia - 1] - p[k][ia - 1]
                        U *= vt(x * h ** expo * mu[k] / mu[j - 1])
                for b in range(a + 1, len(lo)):
                    U *= vt(h * tt[k - 1][a] / tt[k - 1][b]) / vt(tt[k - 1][b] / tt[k - 1][a])
        total += U
    return total


def multiplicative_bridge(spectral, lam, gamma, tau):
    """Map additive (z, w, lambda, gamma, tau) to multiplicative (t, zq, mu, h, nome)."""
    ex = lambda v: cmath.exp(2j * cmath.pi * v)  # noqa: E731
    t = [tuple(ex(v) for v in row) for row in spectral.x]
    zq = tuple(ex(v) for v in spectral.y)
    return t, zq, ex(gamma), tuple(ex(v) for v in lam), ex(tau)
