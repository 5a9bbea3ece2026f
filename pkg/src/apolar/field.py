"""Ground fields: a prime field F_p or the rationals, both exact."""

from __future__ import annotations

import os
from fractions import Fraction

import flint
import numpy as np

DEFAULT_PRIME = 32003
MAX_PRIME = 2**26


class Field:
    """Exact coefficient field.

    Elements of F_p are plain ints in ``[0, p)``; rationals are
    :class:`fractions.Fraction`.  Arithmetic goes through ordinary Python
    operators followed by :meth:`reduce`.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = DEFAULT_PRIME):
        if p is not None:
            p = int(p)
            if p < 3 or p % 2 == 0 or not flint.fmpz(p).is_prime():
                raise ValueError(f"field characteristic must be an odd prime, got {p}")
            if p >= MAX_PRIME:
                # dense int64 products of residues must not overflow
                raise ValueError(f"prime too large; p < {MAX_PRIME} is supported")
        self.p = p

    @classmethod
    def fp(cls, p: int = DEFAULT_PRIME) -> Field:
        return cls(p)

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @classmethod
    def from_spec(cls, spec: str) -> Field:
        """Parse ``"fp:P"``, ``"fp"`` or ``"rational"``."""
        spec = spec.strip().lower()
        if spec in ("rational", "q", "qq"):
            return cls.rational()
        if spec == "fp":
            return cls.fp()
        if spec.startswith("fp:"):
            try:
                return cls.fp(int(spec[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {spec!r}: {exc}") from None
        raise ValueError(f"bad field spec {spec!r}; expected fp:P or rational")

    @classmethod
    def default(cls) -> Field:
        spec = os.environ.get("APOLAR_FIELD")
        return cls.from_spec(spec) if spec else cls.fp()

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def spec(self) -> str:
        return "rational" if self.p is None else f"fp:{self.p}"

    def to_json(self) -> dict:
        if self.p is None:
            return {"type": "rational"}
        return {"type": "fp", "p": self.p}

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"Field({self.spec})"

    # scalar arithmetic

    def __call__(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def to_text(self, x) -> str:
        """Canonical text; F_p elements use the symmetric representative."""
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        x = int(x) % self.p
        if x > self.p // 2:
            x -= self.p
        return str(x)

    def random(self, rng: np.random.Generator, bound: int = 50):
        """Uniform element of F_p, or a small random integer in rational mode."""
        if self.p is None:
            return Fraction(int(rng.integers(-bound, bound + 1)))
        return int(rng.integers(0, self.p))

    # array helpers

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def array(self, data) -> np.ndarray:
        if self.p is None:
            arr = np.empty(np.shape(data), dtype=object)
            arr[...] = data
            return arr
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            arr = np.empty(shape, dtype=object)
            arr.fill(Fraction(0))
            return arr
        return np.zeros(shape, dtype=np.int64)

    def mod(self, arr: np.ndarray) -> np.ndarray:
        return arr if self.p is None else arr % self.p
