"""Exact multivariate polynomials, grevlex order and the contraction action."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    NonIntegerExponent,
    NotBigraded,
    PolySyntaxError,
    RingMismatch,
    UnknownVariable,
)
from .field import Field

MAX_VARIABLES = 16

Monomial = tuple[int, ...]


def grevlex_key(exp: Monomial):
    """Sort key: larger key means larger monomial in graded reverse lex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of a given degree, in decreasing grevlex order."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


@lru_cache(maxsize=None)
def shift_table(nvars: int, degree: int) -> np.ndarray:
    """``table[i, k]`` is the index in degree+1 of ``x_i`` times monomial ``k``."""
    target = monomial_index(nvars, degree + 1)
    mons = monomials(nvars, degree)
    table = np.empty((nvars, len(mons)), dtype=np.int64)
    for i in range(nvars):
        for k, m in enumerate(mons):
            e = list(m)
            e[i] += 1
            table[i, k] = target[tuple(e)]
    return table


@dataclass(frozen=True)
class Ring:
    """Polynomial ring descriptor: variable names, field, optional x/y block tags."""

    names: tuple[str, ...]
    field: Field
    blocks: tuple[str, ...] | None = None
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"variable names must be unique: {self.names}")
        if len(self.names) > MAX_VARIABLES:
            raise ValueError(f"at most {MAX_VARIABLES} variables are supported")
        if self.order != "grevlex":
            raise ValueError("only the grevlex order is supported")
        if self.blocks is not None:
            object.__setattr__(self, "blocks", tuple(self.blocks))
            if len(self.blocks) != len(self.names) or not set(self.blocks) <= {"x", "y"}:
                raise ValueError("blocks must tag every variable with 'x' or 'y'")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_bigraded(self) -> bool:
        return self.blocks is not None

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def gen(self, i: int | str) -> MPoly:
        if isinstance(i, str):
            i = self.index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return MPoly(self, {tuple(exp): self.field.one})

    def gens(self) -> list[MPoly]:
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self) -> MPoly:
        return MPoly(self, {})

    def one(self) -> MPoly:
        return self.constant(1)

    def constant(self, c) -> MPoly:
        c = self.field(c)
        return MPoly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp: Monomial, coeff=1) -> MPoly:
        c = self.field(coeff)
        return MPoly(self, {tuple(exp): c} if c else {})

    def dual(self) -> Ring:
        """Same positions with the other letter case (operators <-> dual variables)."""
        return Ring(tuple(n.swapcase() for n in self.names), self.field, self.blocks)

    def operator_ring(self) -> Ring:
        return Ring(tuple(n.lower() for n in self.names), self.field, self.blocks)

    def divided_power_ring(self) -> Ring:
        return Ring(tuple(n.upper() for n in self.names), self.field, self.blocks)

    def with_field(self, field: Field) -> Ring:
        return Ring(self.names, field, self.blocks)

    def with_blocks(self, blocks) -> Ring:
        return Ring(self.names, self.field, blocks)

    def bidegree(self, exp: Monomial) -> tuple[int, int]:
        if self.blocks is None:
            return (sum(exp), 0)
        dx = sum(e for e, b in zip(exp, self.blocks) if b == "x")
        return (dx, sum(exp) - dx)

    def compatible(self, other: Ring) -> bool:
        return self.nvars == other.nvars and self.field == other.field

    def __str__(self) -> str:
        return f"{self.field.spec}[{', '.join(self.names)}]"


class MPoly:
    """Immutable sparse polynomial; terms are kept in a dict without zeros."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: Ring, terms: dict[Monomial, object]):
        self.ring = ring
        self._terms = terms
        self._sorted = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[Monomial, object]]) -> MPoly:
        field = ring.field
        acc: dict[Monomial, object] = {}
        for exp, c in terms:
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise ValueError("exponent vector length does not match the ring")
            acc[exp] = acc.get(exp, 0) + c
        clean = {}
        for exp, c in acc.items():
            c = field(c)
            if c:
                clean[exp] = c
        return cls(ring, clean)

    # inspection

    @property
    def field(self) -> Field:
        return self.ring.field

    def terms(self) -> list[tuple[Monomial, object]]:
        """Terms sorted by decreasing monomial order (the canonical form)."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        return self._sorted

    def as_dict(self) -> dict[Monomial, object]:
        return dict(self._terms)

    def coeff(self, exp: Monomial):
        return self._terms.get(tuple(exp), self.field.zero)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def lead_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no lead monomial")
        return self.terms()[0][0]

    @property
    def lead_coeff(self):
        return self.terms()[0][1]

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def homogeneous_components(self) -> dict[int, MPoly]:
        parts: dict[int, dict] = {}
        for exp, c in self._terms.items():
            parts.setdefault(sum(exp), {})[exp] = c
        return {d: MPoly(self.ring, t) for d, t in sorted(parts.items())}

    def variables_used(self) -> set[int]:
        return {i for exp in self._terms for i, e in enumerate(exp) if e}

    # arithmetic

    def _check(self, other: MPoly):
        if not self.ring.compatible(other.ring):
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> MPoly:
        other = self._lift(other)
        red = self.field.reduce
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = red(out.get(exp, 0) + c)
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        red = self.field.reduce
        return MPoly(self.ring, {e: red(-c) for e, c in self._terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MPoly:
        return self._lift(other) - self

    def scale(self, c) -> MPoly:
        c = self.field(c)
        if not c:
            return self.ring.zero()
        red = self.field.reduce
        return MPoly(self.ring, {e: red(v * c) for e, v in self._terms.items()})

    def mul_term(self, exp: Monomial, c=1) -> MPoly:
        c = self.field(c)
        if not c:
            return self.ring.zero()
        red = self.field.reduce
        return MPoly(self.ring, {mono_mul(e, exp): red(v * c) for e, v in self._terms.items()})

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        red = self.field.reduce
        out: dict[Monomial, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.ring, {e: v for e, v in ((e, red(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def monic(self) -> MPoly:
        if not self._terms:
            return self
        return self.scale(self.field.inv(self.lead_coeff))

    def diff(self, i: int) -> MPoly:
        """Ordinary partial derivative with respect to variable ``i``."""
        red = self.field.reduce
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                v = red(c * exp[i])
                if v:
                    out[tuple(e)] = v
        return MPoly(self.ring, out)

    def rename(self, ring: Ring, positions: list[int] | None = None) -> MPoly:
        """Re-express in ``ring``, sending variable ``i`` to ``positions[i]``."""
        if positions is None:
            if ring.nvars != self.ring.nvars:
                raise RingMismatch("rename needs explicit positions when sizes differ")
            positions = list(range(ring.nvars))
        out = {}
        for exp, c in self._terms.items():
            e = [0] * ring.nvars
            for i, a in enumerate(exp):
                if a:
                    e[positions[i]] += a
            out[tuple(e)] = c
        return MPoly.from_terms(ring, out.items())

    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ring.compatible(other.ring) and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MPoly({format_poly(self)!r})"


# text form


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[\^*+\-/]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif ident is not None:
            tokens.append(("var", ident, start))
        else:
            if op == "**":
                raise PolySyntaxError("'**' is not valid; use '^' for powers", start)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, ring: Ring) -> MPoly:
    """Parse ``coeff*x1^2*x2 - x3 + ...`` into a canonical polynomial."""
    toks = _tokenize(text)
    field = ring.field
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    def parse_coeff():
        kind, val, at = take()
        if "." in val:
            raise PolySyntaxError(f"non-integer coefficient {val!r}", at)
        if peek()[:2] == ("op", "/"):
            take()
            k2, v2, at2 = take()
            if k2 != "num" or "." in v2:
                raise PolySyntaxError("expected integer denominator", at2)
            if not field.is_rational:
                raise PolySyntaxError("rational coefficients need the rational field", at)
            if int(v2) == 0:
                raise PolySyntaxError("zero denominator", at2)
            return Fraction(int(val), int(v2))
        return int(val)

    def parse_factor(exp):
        kind, name, at = take()
        if kind != "var":
            raise PolySyntaxError(f"expected a variable, got {name or 'end of input'!r}", at)
        try:
            i = ring.index(name)
        except UnknownVariable:
            raise UnknownVariable(f"unknown variable {name!r}", at) from None
        power = 1
        if peek()[:2] == ("op", "^"):
            take()
            k2, v2, at2 = take()
            if k2 == "op" and v2 == "-":
                raise NonIntegerExponent("negative exponent", at2)
            if k2 != "num":
                raise PolySyntaxError("expected exponent after '^'", at2)
            if "." in v2:
                raise NonIntegerExponent(f"non-integer exponent {v2!r}", at2)
            power = int(v2)
        exp[i] += power

    def parse_term():
        exp = [0] * ring.nvars
        coeff: object = 1
        kind, val, at = peek()
        if kind == "num":
            coeff = parse_coeff()
            if peek()[:2] != ("op", "*"):
                return tuple(exp), coeff
            take()
        parse_factor(exp)
        while peek()[:2] == ("op", "*"):
            take()
            parse_factor(exp)
        return tuple(exp), coeff

    terms = []
    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    if peek()[0] == "end":
        raise PolySyntaxError("empty polynomial", peek()[2])
    while True:
        exp, c = parse_term()
        terms.append((exp, sign * c))
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
            continue
        raise PolySyntaxError(f"unexpected token {val!r}", at)
    return MPoly.from_terms(ring, terms)


def format_poly(p: MPoly) -> str:
    if not p:
        return "0"
    names = p.ring.names
    field = p.field
    pieces = []
    for exp, c in p.terms():
        text = field.to_text(c)
        neg = text.startswith("-")
        if neg:
            text = text[1:]
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e]
        if not factors:
            body = text
        elif text == "1":
            body = "*".join(factors)
        else:
            body = text + "*" + "*".join(factors)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_INDEXED = re.compile(r"^([A-Za-z_]+)(\d+)$")


def natural_key(name: str):
    m = _INDEXED.match(name)
    return (m.group(1), int(m.group(2))) if m else (name, -1)


def ring_for_texts(texts: Iterable[str], field: Field, fill_gaps: bool = True) -> Ring:
    """Build a ring from the identifiers appearing in ``texts``.

    Names are ordered naturally (``x2`` before ``x10``).  With ``fill_gaps``,
    indexed names sharing one prefix are completed to ``prefix1..prefixN``.
    """
    names: set[str] = set()
    for t in texts:
        names.update(tok[1] for tok in _tokenize(t) if tok[0] == "var")
    if fill_gaps and names:
        matches = [_INDEXED.match(n) for n in names]
        if all(matches) and len({m.group(1) for m in matches}) == 1:
            prefix = matches[0].group(1)
            top = max(int(m.group(2)) for m in matches)
            if min(int(m.group(2)) for m in matches) >= 1:
                names = {f"{prefix}{i}" for i in range(1, top + 1)}
    return Ring(tuple(sorted(names, key=natural_key)), field)


# contraction and bigrading


def contract(s: MPoly, form: MPoly) -> MPoly:
    """Divided-power contraction ``s o F``: x^a o X^b = X^(b-a) when b >= a, else 0."""
    if not s.ring.compatible(form.ring):
        raise RingMismatch(f"cannot contract {s.ring} against {form.ring}")
    red = form.field.reduce
    out: dict[Monomial, object] = {}
    for a, c in s._terms.items():
        for b, d in form._terms.items():
            if divides(a, b):
                e = mono_div(b, a)
                out[e] = out.get(e, 0) + c * d
    return MPoly(form.ring, {e: v for e, v in ((e, red(v)) for e, v in out.items()) if v})


class BidegreeComponent(NamedTuple):
    bidegree: tuple[int, int]
    poly: MPoly

    @property
    def kind(self) -> str:
        return bidegree_kind(self.bidegree)


def bidegree_kind(bidegree: tuple[int, int]) -> str:
    """``pure-x`` for (k,0), ``pure-y`` for (0,l), ``mixed`` otherwise; (0,0) is ``neither``."""
    a, b = bidegree
    if a == 0 and b == 0:
        return "neither"
    if b == 0:
        return "pure-x"
    if a == 0:
        return "pure-y"
    return "mixed"


def bidegree_components(p: MPoly) -> list[BidegreeComponent]:
    if not p.ring.is_bigraded:
        raise NotBigraded("ring carries no bidegree tags")
    parts: dict[tuple[int, int], dict] = {}
    for exp, c in p._terms.items():
        parts.setdefault(p.ring.bidegree(exp), {})[exp] = c
    return [BidegreeComponent(bd, MPoly(p.ring, t)) for bd, t in sorted(parts.items())]
