"""Shapes, coordinates, color assignments and the set-valued labelling.

Coordinates are numbered 1..T in the order
``yI(1), ..., yI(M-1), y(M), yII(M-1), ..., yII(1)``.  A color assignment is
a tuple ``colors`` with ``colors[p-1]`` the output color at coordinate ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


class LabelError(ValueError):
    pass


@dataclass(frozen=True)
class Shape:
    M: int
    k: tuple
    LI: tuple = ()
    LII: tuple = ()
    LM: int = 1

    def __post_init__(self):
        k, LI, LII = tuple(self.k), tuple(self.LI), tuple(self.LII)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "LI", LI)
        object.__setattr__(self, "LII", LII)
        M = self.M
        if not isinstance(M, int) or M < 1:
            raise LabelError(f"M must be a positive integer, got {M!r}")
        if len(k) != M:
            raise LabelError(f"k must have length M={M}, got {len(k)}")
        if len(LI) != M - 1 or len(LII) != M - 1:
            raise LabelError(f"LI and LII must have length M-1={M - 1}")
        if any(not isinstance(v, int) or v < 1 for v in k):
            raise LabelError("every k_j must be an integer >= 1")
        if any(not isinstance(v, int) or v < 0 for v in LI + LII):
            raise LabelError("LI and LII entries must be integers >= 0")
        if not isinstance(self.LM, int) or self.k[-1] > self.LM:
            raise LabelError(f"need k_M <= L_M, got k_M={k[-1]}, L_M={self.LM}")
        for p in range(1, M):
            if k[p - 1] > self.ncols(p):
                raise LabelError(
                    f"k_{p}={k[p - 1]} exceeds the {self.ncols(p)} columns of layer {p}")

    @property
    def T(self) -> int:
        return sum(self.LI) + sum(self.LII) + self.LM

    @property
    def P(self) -> int:
        """Pivot coordinate: the last quantum space of the top layer."""
        return sum(self.LI) + self.LM

    def ncols(self, p: int) -> int:
        if p == self.M:
            return self.LM
        return self.LI[p - 1] + self.k[p] + self.LII[p - 1]

    def nvertices(self) -> int:
        return sum(self.k[p - 1] * self.ncols(p) for p in range(1, self.M + 1))

    def to_dict(self) -> dict:
        return {"M": self.M, "k": list(self.k), "LI": list(self.LI),
                "LII": list(self.LII), "LM": self.LM}

    @classmethod
    def from_dict(cls, d) -> "Shape":
        M = d["M"]
        return cls(M, tuple(d["k"]), tuple(d.get("LI", [0] * (M - 1))),
                   tuple(d.get("LII", [0] * (M - 1))), d["LM"])

    def __str__(self):
        return (f"M={self.M} k={list(self.k)} LI={list(self.LI)} "
                f"LII={list(self.LII)} LM={self.LM}")


class Coordinate(NamedTuple):
    index: int
    layer: int
    kind: str  # "yI", "top" or "yII"
    offset: int


def layer_of(index: int, shape: Shape) -> Coordinate:
    if not 1 <= index <= shape.T:
        raise LabelError(f"coordinate {index} outside 1..{shape.T}")
    i = index
    for p in range(1, shape.M):
        if i <= shape.LI[p - 1]:
            return Coordinate(index, p, "yI", i)
        i -= shape.LI[p - 1]
    if i <= shape.LM:
        return Coordinate(index, shape.M, "top", i)
    i -= shape.LM
    for p in range(shape.M - 1, 0, -1):
        if i <= shape.LII[p - 1]:
            return Coordinate(index, p, "yII", i)
        i -= shape.LII[p - 1]
    raise AssertionError("unreachable")


def coordinate_layers(shape: Shape) -> tuple:
    """Layer of every coordinate, as a tuple indexed by ``index - 1``."""
    out = []
    for p in range(1, shape.M):
        out += [p] * shape.LI[p - 1]
    out += [shape.M] * shape.LM
    for p in range(shape.M - 1, 0, -1):
        out += [p] * shape.LII[p - 1]
    return tuple(out)


def column_of(coord: Coordinate, shape: Shape) -> int:
    """1-based column of a coordinate inside its own layer."""
    if coord.kind == "yII":
        p = coord.layer
        return shape.LI[p - 1] + shape.k[p] + coord.offset
    return coord.offset


def check_colors(colors, shape: Shape) -> tuple:
    colors = tuple(int(c) for c in colors)
    if len(colors) != shape.T:
        raise LabelError(f"expected {shape.T} colors, got {len(colors)}")
    layers = coordinate_layers(shape)
    for idx, (c, p) in enumerate(zip(colors, layers), start=1):
        if not 1 <= c <= p + 1:
            raise LabelError(f"coordinate {idx} in layer {p} cannot carry color {c}")
    for j in range(1, shape.M + 1):
        n = sum(1 for c, p in zip(colors, layers) if p >= j and c <= j)
        if n != shape.k[j - 1]:
            raise LabelError(f"|I^({j})| = {n} but k_{j} = {shape.k[j - 1]}")
    return colors


@dataclass(frozen=True)
class FMLabel:
    """Sets I^(1..M) of coordinate indices and induced sets Itilde^(1..M-1).

    ``Itilde[p-1]`` holds positions among the columns of layer ``p``.  An
    ``Itilde`` of None means "derive it" when decoding.
    """

    I: tuple
    Itilde: tuple

    def to_dict(self) -> dict:
        return {"I": [list(s) for s in self.I], "Itilde": [list(s) for s in self.Itilde]}


def fm_from_colors(colors, shape: Shape) -> FMLabel:
    colors = check_colors(colors, shape)
    layers = coordinate_layers(shape)
    I = []
    for j in range(1, shape.M + 1):
        I.append(tuple(i + 1 for i, (c, p) in enumerate(zip(colors, layers))
                       if p >= j and c <= j))
    Itilde = []
    for j in range(1, shape.M):
        # squeeze: drop colors >= j+2 from the coordinates of layers >= j
        kept = [i + 1 for i, (c, p) in enumerate(zip(colors, layers))
                if p >= j and c <= j + 1]
        pos = {idx: n for n, idx in enumerate(kept, start=1)}
        Itilde.append(tuple(pos[i] for i in I[j - 1]))
    return FMLabel(tuple(I), tuple(Itilde))


def colors_from_fm(label: FMLabel, shape: Shape) -> tuple:
    I = [tuple(s) for s in label.I]
    if len(I) != shape.M or (label.Itilde is not None and len(label.Itilde) != shape.M - 1):
        raise LabelError("label has the wrong number of sets")
    layers = coordinate_layers(shape)
    for j in range(1, shape.M + 1):
        s = I[j - 1]
        if list(s) != sorted(set(s)):
            raise LabelError(f"I^({j}) must be strictly increasing")
        if any(not 1 <= i <= shape.T or layers[i - 1] < j for i in s):
            raise LabelError(f"I^({j}) leaves the coordinates of layers >= {j}")
        if j < shape.M:
            upper = set(I[j])
            if any(layers[i - 1] >= j + 1 and i not in upper for i in s):
                raise LabelError(f"nesting violated between I^({j}) and I^({j + 1})")
    colors = []
    for i in range(1, shape.T + 1):
        c = next((j for j in range(1, shape.M + 1) if i in I[j - 1]), None)
        colors.append(c if c is not None else layers[i - 1] + 1)
    colors = tuple(colors)
    derived = fm_from_colors(colors, shape)
    Itilde = derived.Itilde if label.Itilde is None else tuple(tuple(t) for t in label.Itilde)
    if derived != FMLabel(tuple(I), Itilde):
        raise LabelError("label is inconsistent with its own color reconstruction")
    return colors


def enumerate_labels(shape: Shape) -> list:
    """All valid color assignments in lexicographic order."""
    layers = coordinate_layers(shape)
    M, T = shape.M, shape.T
    # remaining[i][j]: coordinates at positions >= i lying in layers >= j
    remaining = [[0] * (M + 2) for _ in range(T + 1)]
    for i in range(T - 1, -1, -1):
        for j in range(1, M + 1):
            remaining[i][j] = remaining[i + 1][j] + (layers[i] >= j)
    counts = [0] * (M + 1)
    cur = []
    out = []

    def rec(i):
        if i == T:
            if all(counts[j] == shape.k[j - 1] for j in range(1, M + 1)):
                out.append(tuple(cur))
            return
        p = layers[i]
        for c in range(1, p + 2):
            ok = True
            for j in range(1, M + 1):
                n = counts[j] + (p >= j and c <= j)
                if n > shape.k[j - 1] or n + remaining[i + 1][j] < shape.k[j - 1]:
                    ok = False
                    break
            if not ok:
                continue
            for j in range(c, p + 1):
                counts[j] += 1
            cur.append(c)
            rec(i + 1)
            cur.pop()
            for j in range(c, p + 1):
                counts[j] -= 1

    rec(0)
    return out


def _pivot_color(colors, shape):
    return colors[shape.P - 1]


def caseA_map(colors, shape: Shape):
    """Freeze the pivot column and the bottom row of the top layer.

    The pivot coordinate becomes the first y_II quantum space of layer M-1
    (for M = 1 it disappears).  Returns ``(colors, shape)`` of the reduced
    instance.
    """
    colors = check_colors(colors, shape)
    if _pivot_color(colors, shape) == shape.M + 1:
        raise LabelError("case A needs the pivot coordinate colored below M+1")
    if shape.k[-1] < 2:
        raise LabelError("case A needs k_M >= 2; use initial_map for k_M = 1")
    M = shape.M
    k = shape.k[:-1] + (shape.k[-1] - 1,)
    if M == 1:
        new = Shape(1, k, (), (), shape.LM - 1)
        return check_colors(colors[:-1], new), new
    LII = shape.LII[:-1] + (shape.LII[-1] + 1,)
    new = Shape(M, k, shape.LI, LII, shape.LM - 1)
    return check_colors(colors, new), new


def caseB_map(colors, shape: Shape):
    """Drop the pivot column, which is colored M+1."""
    colors = check_colors(colors, shape)
    if _pivot_color(colors, shape) != shape.M + 1:
        raise LabelError("case B needs the pivot coordinate colored M+1")
    if shape.LM - 1 < shape.k[-1]:
        raise LabelError("case B would leave fewer top columns than k_M")
    new = Shape(shape.M, shape.k, shape.LI, shape.LII, shape.LM - 1)
    P = shape.P
    return check_colors(colors[:P - 1] + colors[P:], new), new


def initial_map(colors, shape: Shape):
    """Remove the top layer when it has a single row.

    The row x^(M)_1 becomes a quantum space of layer M-1, sitting between
    its y_I and y_II spaces and carrying the pivot color.
    """
    colors = check_colors(colors, shape)
    if shape.M < 2:
        raise LabelError("initial_map needs M >= 2")
    if shape.k[-1] != 1:
        raise LabelError("initial_map needs k_M = 1")
    P = shape.P
    if _pivot_color(colors, shape) == shape.M + 1:
        raise LabelError("initial_map needs the pivot coordinate colored below M+1")
    M = shape.M
    new = Shape(M - 1, shape.k[:-1], shape.LI[:-1], shape.LII[:-1],
                shape.LI[-1] + shape.LII[-1] + 1)
    new_colors = colors[:P - shape.LM] + (colors[P - 1],) + colors[P:]
    return check_colors(new_colors, new), new


def count_C(p: int, kcut: int, l: int, colors, shape: Shape) -> int:
    """Coordinates j <= kcut lying in layers p..M and colored l."""
    layers = coordinate_layers(shape)
    return sum(1 for j in range(min(kcut, shape.T))
               if layers[j] >= p and colors[j] == l)


def lambda_shift(p: int, colors, shape: Shape, lam, gamma) -> tuple:
    """lambda^[p]: add gamma*mu_c for every y_I coordinate of layers p..M-1."""
    if not 1 <= p <= shape.M:
        raise LabelError(f"layer {p} outside 1..{shape.M}")
    out = list(lam)
    start = sum(shape.LI[:p - 1])
    for idx in range(start, sum(shape.LI)):
        out[colors[idx] - 1] += gamma
    return tuple(out)
