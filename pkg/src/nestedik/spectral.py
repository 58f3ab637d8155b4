"""Spectral variables attached to the lines of the layered lattice."""

from __future__ import annotations

from dataclasses import dataclass

from .labels import LabelError, Shape


@dataclass(frozen=True)
class SpectralData:
    """Auxiliary variables ``x[p-1]`` (length k_p) and quantum variables.

    ``yI[p-1]``/``yII[p-1]`` belong to layer p < M and ``y`` to the top layer.
    The same container holds u/v (trigonometric) and z/w (elliptic) values.
    """

    x: tuple
    yI: tuple
    yII: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(tuple(r) for r in self.x))
        object.__setattr__(self, "yI", tuple(tuple(r) for r in self.yI))
        object.__setattr__(self, "yII", tuple(tuple(r) for r in self.yII))
        object.__setattr__(self, "y", tuple(self.y))

    def check(self, shape: Shape) -> "SpectralData":
        if len(self.x) != shape.M or any(len(r) != n for r, n in zip(self.x, shape.k)):
            raise LabelError("auxiliary variables do not match k")
        if [len(r) for r in self.yI] != list(shape.LI):
            raise LabelError("yI variables do not match LI")
        if [len(r) for r in self.yII] != list(shape.LII):
            raise LabelError("yII variables do not match LII")
        if len(self.y) != shape.LM:
            raise LabelError("top quantum variables do not match LM")
        return self

    def columns(self, p: int, shape: Shape) -> tuple:
        """Column variables of layer p, west to east."""
        if p == shape.M:
            return self.y
        return self.yI[p - 1] + self.x[p] + self.yII[p - 1]

    def coordinate_values(self, shape: Shape) -> tuple:
        """Quantum variable of every coordinate in global order."""
        out = []
        for r in self.yI:
            out += list(r)
        out += list(self.y)
        for r in reversed(self.yII):
            out += list(r)
        return tuple(out)

    def replace(self, **kw) -> "SpectralData":
        d = {"x": self.x, "yI": self.yI, "yII": self.yII, "y": self.y}
        d.update(kw)
        return SpectralData(**d)

    def permute_layer(self, j: int, perm) -> "SpectralData":
        """Reorder x^(j) so that the new a-th entry is the old perm[a]-th (0-based)."""
        xs = list(self.x)
        xs[j - 1] = tuple(self.x[j - 1][i] for i in perm)
        return self.replace(x=tuple(xs))
