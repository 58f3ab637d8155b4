"""Pure-Python implementations of the hot kernels.

These mirror ``_ckernels.pyx`` function for function and are used whenever the
compiled extension is unavailable (or ``NESTEDIK_PURE=1`` is set).
"""

from __future__ import annotations

import cmath
from functools import lru_cache

import numpy as np

MODEL_RATIONAL = 0
MODEL_TRIG = 1
MODEL_ELLIPTIC = 2


class GenericityError(ArithmeticError):
    """A theta-bracket denominator fell below the genericity floor."""


@lru_cache(maxsize=64)
def _theta_exponents(tau: complex, n: int) -> tuple[np.ndarray, np.ndarray]:
    js = np.arange(-n - 1, n + 1, dtype=float) + 0.5
    return js, 1j * np.pi * js * js * tau


def theta(z: complex, tau: complex, n: int) -> complex:
    js, quad = _theta_exponents(complex(tau), int(n))
    return complex(-np.exp(quad + 2j * np.pi * js * (z + 0.5)).sum())


def theta_many(zs, tau: complex, n: int) -> np.ndarray:
    js, quad = _theta_exponents(complex(tau), int(n))
    zs = np.asarray(zs, dtype=complex)
    arg = quad[None, :] + 2j * np.pi * js[None, :] * (zs.reshape(-1, 1) + 0.5)
    return -np.exp(arg).sum(axis=1).reshape(zs.shape)


def _vertex_weight(model, w, s, e, x, y, lam_w, lam_s, q, gamma, tau, n, floor):
    """Weight of one vertex with west/south inputs ``w, s`` and east output ``e``."""
    if model == MODEL_RATIONAL:
        if w == s:
            return x - y + 1
        return x - y if e == w else 1.0
    if model == MODEL_TRIG:
        if w == s:
            return x - q * y
        if e == w:
            return q * (x - y) if w > s else x - y
        return (1 - q) * x if w < s else (1 - q) * y
    if w == s:
        return theta(x - y - gamma, tau, n)
    if e == w:
        lam = lam_w - lam_s
        den = theta(lam, tau, n)
        if abs(den) < floor:
            raise GenericityError(lam)
        return theta(x - y, tau, n) * theta(lam + gamma, tau, n) / den
    lam = lam_s - lam_w
    den = theta(lam, tau, n)
    if abs(den) < floor:
        raise GenericityError(lam)
    return -theta(x - y + lam, tau, n) * theta(gamma, tau, n) / den


def dfs_contract(model, west, south, east, north, init_color, required,
                 xs, ys, base_lam, face_ptr, face_edges,
                 q=0j, gamma=0j, tau=1j, n=40, floor=1e-10) -> complex:
    """Sum vertex-weight products over every admissible edge coloring.

    Vertices are visited in the given order; each vertex's west and south
    edges must already be colored when it is reached.  ``required[e] > 0``
    pins the color an output edge must carry.  For the elliptic model the
    north-west face of vertex ``v`` is ``base_lam[v] - gamma * counts`` where
    ``counts`` tallies the colors of ``face_edges[face_ptr[v]:face_ptr[v+1]]``.
    """
    nv = len(west)
    color = [int(c) for c in init_color]
    req = [int(c) for c in required]
    west = [int(v) for v in west]
    south = [int(v) for v in south]
    east = [int(v) for v in east]
    north = [int(v) for v in north]
    xs = [complex(v) for v in xs]
    ys = [complex(v) for v in ys]
    ncol = base_lam.shape[1] if model == MODEL_ELLIPTIC else 0
    base = [[complex(base_lam[v, c]) for c in range(ncol)] for v in range(nv)] if ncol else []
    fptr = [int(v) for v in face_ptr]
    fedges = [int(v) for v in face_edges]
    q = complex(q)
    gamma = complex(gamma)
    tau = complex(tau)
    total = 0j

    def face_value(v, c):
        cnt = 0
        for k in range(fptr[v], fptr[v + 1]):
            if color[fedges[k]] == c:
                cnt += 1
        return base[v][c - 1] - gamma * cnt

    def rec(v, acc):
        nonlocal total
        if v == nv:
            total += acc
            return
        w = color[west[v]]
        s = color[south[v]]
        options = ((w, s),) if w == s else ((w, s), (s, w))
        lam_w = lam_s = 0j
        if model == MODEL_ELLIPTIC and w != s:
            lam_w = face_value(v, w)
            lam_s = face_value(v, s)
        for e_col, n_col in options:
            re_, rn = req[east[v]], req[north[v]]
            if (re_ and re_ != e_col) or (rn and rn != n_col):
                continue
            wt = _vertex_weight(model, w, s, e_col, xs[v], ys[v], lam_w, lam_s,
                                q, gamma, tau, n, floor)
            if wt == 0:
                continue
            color[east[v]] = e_col
            color[north[v]] = n_col
            rec(v + 1, acc * wt)
            color[east[v]] = 0
            color[north[v]] = 0

    rec(0, 1 + 0j)
    return complex(total)


def multiplicative_theta(x: complex, nome: complex, nfactors: int) -> complex:
    """(x^{1/2} - x^{-1/2}) prod_{s=1}^{nfactors} (1 - nome^s x)(1 - nome^s / x)."""
    r = cmath.sqrt(x)
    out = r - 1 / r
    qs = 1 + 0j
    for _ in range(nfactors):
        qs *= nome
        out *= (1 - qs * x) * (1 - qs / x)
    return out
