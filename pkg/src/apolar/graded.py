"""Graded dimension tables: Hilbert functions, graded T^i, Betti tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

Degree = Union[int, tuple[int, int]]


@dataclass(frozen=True)
class GradedDims:
    """Map degree (or bidegree) -> dimension, with the scanned window.

    ``vanishing`` is the closed interval of total degrees outside which the
    entries are zero for structural reasons; entries outside ``window`` are
    reported as 0 only when they also lie outside ``vanishing``.
    """

    dims: dict
    window: tuple[int, int] | None = None
    vanishing: tuple[int, int] | None = None

    def __getitem__(self, deg: Degree) -> int:
        return self.dims.get(deg, 0)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.dims))

    def items(self):
        return sorted(self.dims.items())

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def support(self) -> list:
        return sorted(d for d, v in self.dims.items() if v)

    def as_tuple(self) -> tuple[int, ...]:
        """Dimensions in degrees 0..max as a tuple (Hilbert function form)."""
        sup = self.support()
        if not sup:
            return ()
        return tuple(self[i] for i in range(0, max(sup) + 1))

    def nonzero(self) -> dict:
        return {d: v for d, v in sorted(self.dims.items()) if v}

    def restrict(self, pred) -> GradedDims:
        return GradedDims({d: v for d, v in self.dims.items() if pred(d)}, self.window, self.vanishing)

    def to_json(self) -> dict:
        def key(d):
            return ",".join(map(str, d)) if isinstance(d, tuple) else str(d)

        out = {"dims": {key(d): v for d, v in sorted(self.dims.items())}}
        if self.window is not None:
            out["window"] = list(self.window)
        if self.vanishing is not None:
            out["vanishing"] = list(self.vanishing)
        return out

    def __str__(self) -> str:
        inner = ", ".join(f"{d}: {v}" for d, v in self.nonzero().items())
        return "{" + inner + "}"


def hf_text(dims: GradedDims | tuple) -> str:
    t = dims.as_tuple() if isinstance(dims, GradedDims) else tuple(dims)
    return "(" + ",".join(map(str, t)) + ")"


@dataclass(frozen=True)
class BettiTable:
    """Minimal graded Betti numbers beta_{i,j} for homological steps i <= 2."""

    entries: dict = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def row(self, i: int) -> dict[int, int]:
        return {j: v for (ii, j), v in sorted(self.entries.items()) if ii == i and v}

    def degrees(self, i: int) -> list[int]:
        return sorted(self.row(i))

    def to_json(self) -> dict:
        return {str(i): {str(j): v for j, v in self.row(i).items()} for i in (0, 1, 2)}

    def __str__(self) -> str:
        lines = []
        for i in (0, 1, 2):
            row = self.row(i)
            lines.append(f"beta_{i}: " + (", ".join(f"{j}:{v}" for j, v in row.items()) or "-"))
        return "\n".join(lines)
