"""Brute-force evaluation of the layered lattice partition function.

Layer p has k_p horizontal rows (row 1 on top) crossing the columns
``yI(p) | x(p+1) | yII(p)`` (the top layer has ``y(M)``).  Boundary colors:
layer-1 rows enter from the west with color 1, layer-p columns enter from the
south with color p+1 and layer-p rows leave east with color p+1.  The north
end of the b-th x(p+1) column of layer p is the west end of row b of layer
p+1.  Coordinate columns leave north with the color of the label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .labels import Shape, check_colors, coordinate_layers, lambda_shift
from .rmatrix import VertexIO, vertex_weight
from .scalars import GenericityError
from .spectral import SpectralData


class Vertex(NamedTuple):
    layer: int
    row: int
    col: int
    west: int
    south: int
    east: int
    north: int


@dataclass
class LatticeGraph:
    shape: Shape
    vertices: list = field(default_factory=list)   # processing order
    nedges: int = 0
    fixed: dict = field(default_factory=dict)       # input edge -> color
    east_out: dict = field(default_factory=dict)    # east boundary edge -> color
    coord_edge: dict = field(default_factory=dict)  # coordinate index -> top edge
    bonds: list = field(default_factory=list)       # (edge, lower layer p, row b of p+1)
    hedge: dict = field(default_factory=dict)       # (p, r, c) -> edge west of column c
    vedge: dict = field(default_factory=dict)       # (p, r, c) -> edge above row r

    def required(self, colors) -> dict:
        req = dict(self.east_out)
        for idx, e in self.coord_edge.items():
            req[e] = colors[idx - 1]
        return req


def _column_coordinates(shape: Shape) -> dict:
    """(layer, column) -> coordinate index for every coordinate column."""
    out = {}
    idx = 1
    for p in range(1, shape.M):
        for c in range(1, shape.LI[p - 1] + 1):
            out[(p, c)] = idx
            idx += 1
    for c in range(1, shape.LM + 1):
        out[(shape.M, c)] = idx
        idx += 1
    for p in range(shape.M - 1, 0, -1):
        base = shape.LI[p - 1] + shape.k[p]
        for c in range(1, shape.LII[p - 1] + 1):
            out[(p, base + c)] = idx
            idx += 1
    return out


def build_lattice(shape: Shape) -> LatticeGraph:
    g = LatticeGraph(shape)
    counter = 0

    def new_edge():
        nonlocal counter
        counter += 1
        return counter - 1

    coords = _column_coordinates(shape)
    for p in range(1, shape.M + 1):
        k, n = shape.k[p - 1], shape.ncols(p)
        for r in range(1, k + 1):
            for c in range(1, n + 2):
                if c == 1 and p > 1:
                    lower = g.vedge[(p - 1, 1, shape.LI[p - 2] + r)]
                    g.hedge[(p, r, c)] = lower
                    g.bonds.append((lower, p - 1, r))
                else:
                    g.hedge[(p, r, c)] = new_edge()
        for r in range(1, k + 2):
            for c in range(1, n + 1):
                g.vedge[(p, r, c)] = new_edge()
        if p == 1:
            for r in range(1, k + 1):
                g.fixed[g.hedge[(1, r, 1)]] = 1
        for c in range(1, n + 1):
            g.fixed[g.vedge[(p, k + 1, c)]] = p + 1
            if (p, c) in coords:
                g.coord_edge[coords[(p, c)]] = g.vedge[(p, 1, c)]
        for r in range(1, k + 1):
            g.east_out[g.hedge[(p, r, n + 1)]] = p + 1
        for c in range(1, n + 1):
            for r in range(k, 0, -1):
                g.vertices.append(Vertex(p, r, c, g.hedge[(p, r, c)], g.vedge[(p, r + 1, c)],
                                         g.hedge[(p, r, c + 1)], g.vedge[(p, r, c)]))
    g.nedges = counter
    return g


def _vertex_vars(shape, spectral):
    out = {}
    for p in range(1, shape.M + 1):
        cols = spectral.columns(p, shape)
        for r, x in enumerate(spectral.x[p - 1], start=1):
            for c, y in enumerate(cols, start=1):
                out[(p, r, c)] = (x, y)
    return out


def _layer_bases(shape, colors, params):
    if params.model != "elliptic":
        return None
    return {p: lambda_shift(p, colors, shape, params.lam, params.gamma)
            for p in range(1, shape.M + 1)}


# ---------------------------------------------------------------- transfer sweep


def _sweep(shape, spectral, colors, params):
    elliptic = params.model == "elliptic"
    zero = 0j if elliptic else 0
    one = 1 + 0j if elliptic else 1
    gamma = params.gamma
    bases = _layer_bases(shape, colors, params)
    coords = _column_coordinates(shape)
    M = shape.M
    states = {((1,) * shape.k[0], ()): one}
    for p in range(1, M + 1):
        k = shape.k[p - 1]
        if p > 1:
            lo = shape.LI[p - 2]
            fresh = {}
            for (h, tops), amp in sorted(states.items()):
                if any(v != p for v in h):
                    continue
                key = (tops[lo:lo + k], ())
                fresh[key] = fresh.get(key, zero) + amp
            states = fresh
        xs = spectral.x[p - 1]
        cols = spectral.columns(p, shape)
        base = bases[p] if elliptic else None
        cache = {}

        def outcomes(c, h, topcount):
            """Every (new row colors, top color, weight) of column c."""
            y = cols[c - 1]
            partial = [((), p + 1, one)]
            for r in range(k, 0, -1):
                a = h[r - 1]
                face = None
                if elliptic:
                    cnt = list(topcount)
                    for rr in range(r - 1):
                        cnt[h[rr] - 1] += 1
                    face = [base[i] - gamma * cnt[i] for i in range(M + 1)]
                nxt = []
                for east_tail, b, wt in partial:
                    for e, n in (((a, b),) if a == b else ((a, b), (b, a))):
                        w = vertex_weight(VertexIO(a, b, e, n), xs[r - 1], y, params, face)
                        if w == 0:
                            continue
                        nxt.append(((e,) + east_tail, n, wt * w))
                partial = nxt
            return partial

        for c in range(1, shape.ncols(p) + 1):
            req = colors[coords[(p, c)] - 1] if (p, c) in coords else None
            new = {}
            for (h, tops), amp in sorted(states.items()):
                if elliptic:
                    topcount = [0] * (M + 1)
                    for t in tops:
                        topcount[t - 1] += 1
                    ckey = (c, h, tuple(topcount))
                else:
                    topcount = None
                    ckey = (c, h)
                res = cache.get(ckey)
                if res is None:
                    res = cache[ckey] = outcomes(c, h, topcount)
                for hnew, top, wt in res:
                    if req is not None and top != req:
                        continue
                    key = (hnew, tops + (top,))
                    new[key] = new.get(key, zero) + amp * wt
            states = new
    total = zero
    for (h, _), amp in sorted(states.items()):
        if all(v == M + 1 for v in h):
            total += amp
    return total


# ------------------------------------------------------------------ enumeration


def iter_configurations(graph: LatticeGraph, colors):
    """Yield every ice-rule edge coloring compatible with the boundary."""
    req = graph.required(colors)
    col = [0] * graph.nedges
    for e, c in graph.fixed.items():
        col[e] = c
    verts = graph.vertices

    def rec(i):
        if i == len(verts):
            yield list(col)
            return
        v = verts[i]
        a, b = col[v.west], col[v.south]
        for e, n in (((a, b),) if a == b else ((a, b), (b, a))):
            if req.get(v.east, e) != e or req.get(v.north, n) != n:
                continue
            col[v.east], col[v.north] = e, n
            yield from rec(i + 1)
            col[v.east] = col[v.north] = 0

    yield from rec(0)


def nw_face_edges(graph: LatticeGraph, v: Vertex) -> list:
    """Edges whose colors are subtracted from lambda^[p] at the NW face of v."""
    p, r, c = v.layer, v.row, v.col
    out = [graph.vedge[(p, 1, cc)] for cc in range(1, c)]
    out += [graph.hedge[(p, rr, c)] for rr in range(1, r)]
    return out


def configuration_weight(graph, edge_colors, spectral, params, colors):
    shape = graph.shape
    vv = _vertex_vars(shape, spectral)
    bases = _layer_bases(shape, colors, params)
    out = 1 + 0j if params.model == "elliptic" else 1
    for v in graph.vertices:
        face = None
        if bases is not None:
            face = list(bases[v.layer])
            for e in nw_face_edges(graph, v):
                face[edge_colors[e] - 1] -= params.gamma
        x, y = vv[(v.layer, v.row, v.col)]
        io = VertexIO(edge_colors[v.west], edge_colors[v.south],
                      edge_colors[v.east], edge_colors[v.north])
        out *= vertex_weight(io, x, y, params, face)
    return out


def flatten(graph: LatticeGraph, spectral, colors, params, backend=None):
    """Arrays in the layout expected by ``dfs_contract``."""
    shape = graph.shape
    vv = _vertex_vars(shape, spectral)
    verts = graph.vertices
    nv = len(verts)
    ints = lambda seq: np.asarray(seq, dtype=np.int64)  # noqa: E731
    init = np.zeros(graph.nedges, dtype=np.int64)
    for e, c in graph.fixed.items():
        init[e] = c
    req = np.zeros(graph.nedges, dtype=np.int64)
    for e, c in graph.required(colors).items():
        req[e] = c
    xs = np.array([complex(vv[(v.layer, v.row, v.col)][0]) for v in verts], dtype=complex)
    ys = np.array([complex(vv[(v.layer, v.row, v.col)][1]) for v in verts], dtype=complex)
    ncol = shape.M + 1
    base = np.zeros((nv, ncol), dtype=complex)
    ptr = [0]
    fedges = []
    if params.model == "elliptic":
        bases = _layer_bases(shape, colors, params)
        for i, v in enumerate(verts):
            base[i] = bases[v.layer]
            fedges += nw_face_edges(graph, v)
            ptr.append(len(fedges))
    else:
        ptr += [0] * nv
    q = complex(params.q) if params.model == "trigonometric" else 0j
    return dict(
        model=kernels.MODEL_CODES[params.model],
        west=ints([v.west for v in verts]), south=ints([v.south for v in verts]),
        east=ints([v.east for v in verts]), north=ints([v.north for v in verts]),
        init_color=init, required=req, xs=xs, ys=ys, base_lam=base,
        face_ptr=ints(ptr), face_edges=ints(fedges if fedges else [0]),
        q=q, gamma=complex(params.gamma), tau=complex(params.tau), n=int(params.trunc),
    )


def _enumerate(shape, spectral, colors, params, backend=None):
    graph = build_lattice(shape)
    if params.model == "elliptic":
        impl = kernels if backend is None else kernels.backend(backend)
        return impl.dfs_contract(**flatten(graph, spectral, colors, params))
    total = 0
    for cfg in iter_configurations(graph, colors):
        total += configuration_weight(graph, cfg, spectral, params, colors)
    return total


def eval_partition(shape: Shape, spectral: SpectralData, colors, params,
                   method: str = "sweep", backend=None):
    """Partition function of the lattice with the given output colors."""
    spectral.check(shape)
    colors = check_colors(colors, shape)
    if params.model == "elliptic" and len(params.lam) != shape.M + 1:
        raise ValueError(f"lambda must have M+1 = {shape.M + 1} components")
    if method == "sweep":
        return _sweep(shape, spectral, colors, params)
    if method == "enumerate":
        return _enumerate(shape, spectral, colors, params, backend)
    raise ValueError(f"unknown method {method!r}")


def face_lambdas(graph: LatticeGraph, edge_colors, colors, lam, gamma) -> dict:
    """Face covectors of every layer, keyed by (layer, face row i, face column j).

    Face (p, 0, 0) is the NW corner lambda^[p].  Each face is reached both from
    the north and from the west; any disagreement raises ValueError.
    """
    shape = graph.shape
    out = {}
    for p in range(1, shape.M + 1):
        k, n = shape.k[p - 1], shape.ncols(p)
        F = {(0, 0): list(lambda_shift(p, colors, shape, lam, gamma))}
        for i in range(k + 1):
            for j in range(n + 1):
                if (i, j) == (0, 0):
                    continue
                cands = []
                if j > 0:
                    f = list(F[(i, j - 1)])
                    f[edge_colors[graph.vedge[(p, i + 1, j)]] - 1] -= gamma
                    cands.append(f)
                if i > 0:
                    f = list(F[(i - 1, j)])
                    f[edge_colors[graph.hedge[(p, i, j + 1)]] - 1] -= gamma
                    cands.append(f)
                if len(cands) == 2 and any(abs(a - b) > 1e-12 for a, b in zip(*cands)):
                    raise ValueError(f"face ({p},{i},{j}) is path dependent")
                F[(i, j)] = cands[0]
        for key, f in F.items():
            out[(p,) + key] = tuple(f)
    return out


__all__ = [
    "GenericityError", "LatticeGraph", "Vertex", "build_lattice", "configuration_weight",
    "coordinate_layers", "eval_partition", "face_lambdas", "flatten", "iter_configurations",
    "nw_face_edges",
]
