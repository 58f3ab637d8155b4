# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; same signatures as ``_pykernels``."""

import numpy as np

from ._pykernels import GenericityError

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csqrt(double complex)
    double cabs(double complex)

ctypedef long long idx_t

cdef enum:
    RATIONAL = 0
    TRIG = 1
    ELLIPTIC = 2


cdef class _Theta:
    """exp(i pi j^2 tau) and 2 pi i j for the half-integers |j| <= n + 1/2."""
    cdef double complex[::1] quad
    cdef double complex[::1] lin
    cdef int m

    def __init__(self, double complex tau, int n):
        self.m = 2 * n + 2
        js = np.arange(-n - 1, n + 1, dtype=float) + 0.5
        self.quad = np.ascontiguousarray(np.exp(1j * np.pi * js * js * tau))
        self.lin = np.ascontiguousarray(2j * np.pi * js)

    cdef double complex eval(self, double complex z) nogil:
        cdef double complex acc = 0
        cdef double complex w = z + 0.5
        cdef int i
        for i in range(self.m):
            acc = acc + self.quad[i] * cexp(self.lin[i] * w)
        return -acc


_cache = {}


cdef _Theta _theta_obj(tau, n):
    key = (complex(tau), int(n))
    obj = _cache.get(key)
    if obj is None:
        if len(_cache) > 64:
            _cache.clear()
        obj = _Theta(key[0], key[1])
        _cache[key] = obj
    return obj


def theta(z, tau, n):
    return complex(_theta_obj(tau, n).eval(complex(z)))


def theta_many(zs, tau, n):
    cdef _Theta th = _theta_obj(tau, n)
    arr = np.asarray(zs, dtype=complex)
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty_like(flat)
    cdef double complex[::1] src = flat
    cdef double complex[::1] dst = out
    cdef Py_ssize_t i
    for i in range(src.shape[0]):
        dst[i] = th.eval(src[i])
    return out.reshape(arr.shape)


cdef class _Contract:
    cdef int model, nv
    cdef idx_t[::1] west, south, east, north, fptr, fedges, req
    cdef idx_t[::1] color
    cdef double complex[::1] xs, ys
    cdef double complex[:, ::1] base
    cdef double complex q, gamma, th_gamma
    cdef double floor
    cdef _Theta th
    cdef double complex total
    cdef int bad
    cdef double complex bad_lam

    cdef double complex face(self, int v, idx_t c) nogil:
        cdef int cnt = 0
        cdef idx_t k
        for k in range(self.fptr[v], self.fptr[v + 1]):
            if self.color[self.fedges[k]] == c:
                cnt += 1
        return self.base[v, c - 1] - self.gamma * cnt

    cdef double complex weight(self, int v, idx_t w, idx_t s, idx_t e) nogil:
        cdef double complex x = self.xs[v]
        cdef double complex y = self.ys[v]
        cdef double complex lam, den
        if self.model == RATIONAL:
            if w == s:
                return x - y + 1
            if e == w:
                return x - y
            return 1
        if self.model == TRIG:
            if w == s:
                return x - self.q * y
            if e == w:
                return self.q * (x - y) if w > s else x - y
            return (1 - self.q) * x if w < s else (1 - self.q) * y
        if w == s:
            return self.th.eval(x - y - self.gamma)
        if e == w:
            lam = self.face(v, w) - self.face(v, s)
            den = self.th.eval(lam)
            if cabs(den) < self.floor:
                self.bad = 1
                self.bad_lam = lam
                return 0
            return self.th.eval(x - y) * self.th.eval(lam + self.gamma) / den
        lam = self.face(v, s) - self.face(v, w)
        den = self.th.eval(lam)
        if cabs(den) < self.floor:
            self.bad = 1
            self.bad_lam = lam
            return 0
        return -self.th.eval(x - y + lam) * self.th_gamma / den

    cdef void rec(self, int v, double complex acc) nogil:
        cdef idx_t w, s, e_col, n_col, re_, rn
        cdef int opt, nopt
        cdef double complex wt
        if self.bad:
            return
        if v == self.nv:
            self.total = self.total + acc
            return
        w = self.color[self.west[v]]
        s = self.color[self.south[v]]
        nopt = 1 if w == s else 2
        re_ = self.req[self.east[v]]
        rn = self.req[self.north[v]]
        for opt in range(nopt):
            if opt == 0:
                e_col, n_col = w, s
            else:
                e_col, n_col = s, w
            if (re_ and re_ != e_col) or (rn and rn != n_col):
                continue
            wt = self.weight(v, w, s, e_col)
            if self.bad:
                return
            if wt == 0:
                continue
            self.color[self.east[v]] = e_col
            self.color[self.north[v]] = n_col
            self.rec(v + 1, acc * wt)
            self.color[self.east[v]] = 0
            self.color[self.north[v]] = 0


def dfs_contract(model, west, south, east, north, init_color, required,
                 xs, ys, base_lam, face_ptr, face_edges,
                 q=0j, gamma=0j, tau=1j, n=40, floor=1e-10):
    """Sum vertex-weight products over every admissible edge coloring."""
    cdef _Contract c = _Contract()
    as_long = lambda a: np.ascontiguousarray(a, dtype=np.int64)
    c.model = int(model)
    c.nv = len(west)
    c.west, c.south = as_long(west), as_long(south)
    c.east, c.north = as_long(east), as_long(north)
    c.color = np.array(init_color, dtype=np.int64)
    c.req = as_long(required)
    c.xs = np.ascontiguousarray(xs, dtype=complex)
    c.ys = np.ascontiguousarray(ys, dtype=complex)
    base = np.ascontiguousarray(base_lam, dtype=complex)
    if base.ndim != 2 or base.shape[1] == 0:
        base = np.zeros((max(c.nv, 1), 1), dtype=complex)
    c.base = base
    c.fptr, c.fedges = as_long(face_ptr), as_long(face_edges)
    c.q, c.gamma = complex(q), complex(gamma)
    c.floor = floor
    c.th = _theta_obj(tau, n)
    c.th_gamma = c.th.eval(c.gamma)
    c.total = 0
    c.bad = 0
    with nogil:
        c.rec(0, 1)
    if c.bad:
        raise GenericityError(complex(c.bad_lam))
    return complex(c.total)


def multiplicative_theta(x, nome, int nfactors):
    """(x^{1/2} - x^{-1/2}) prod_{s=1}^{nfactors} (1 - nome^s x)(1 - nome^s / x)."""
    cdef double complex xv = complex(x)
    cdef double complex p = complex(nome)
    cdef double complex r = csqrt(xv)
    cdef double complex out = r - 1 / r
    cdef double complex qs = 1
    cdef int i
    for i in range(nfactors):
        qs = qs * p
        out = out * (1 - qs * xv) * (1 - qs / xv)
    return complex(out)
