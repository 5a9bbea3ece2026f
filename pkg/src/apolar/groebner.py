"""Groebner bases, normal forms, Hilbert functions, syzygies and Betti numbers.

Two engines live here.  :func:`buchberger` is the classical pair-reduction
algorithm on sparse polynomials and works for any ideal.  :class:`GradedIdeal`
stores a homogeneous Artinian ideal degree by degree as RREF subspaces of the
spaces of forms; its pivots are the lead monomials, so the reduced Groebner
basis, the normal-form maps and the multiplication of the quotient all fall
out of the echelon forms.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (
    InconsistentRing,
    Inhomogeneous,
    NotArtinian,
    NotGenerating,
    RingMismatch,
)
from .field import Field
from .graded import BettiTable, GradedDims
from .poly import (
    Monomial,
    MPoly,
    Ring,
    divides,
    grevlex_key,
    mono_div,
    mono_lcm,
    mono_mul,
    monomial_index,
    monomials,
    shift_table,
)

# sparse polynomial engine


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by increasing lead monomial)."""

    ring: Ring
    polys: tuple[MPoly, ...]

    @property
    def lead_monomials(self) -> list[Monomial]:
        return [g.lead_monomial for g in self.polys]

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.polys)

    @property
    def is_artinian(self) -> bool:
        if self.is_unit:
            return True
        lms = self.lead_monomials
        for i in range(self.ring.nvars):
            if not any(lm[i] and sum(lm) == lm[i] for lm in lms):
                return False
        return True

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def _divide(f: MPoly, basis: list[MPoly], with_quotients: bool = False):
    """Full multivariate division of ``f`` by ``G`` (first divisor wins)."""
    field = f.field
    red = field.reduce
    p = dict(f._terms)
    rem: dict = {}
    lms = [g.lead_monomial for g in basis]
    inv_lcs = [field.inv(g.lead_coeff) for g in basis]
    qs = [dict() for _ in basis] if with_quotients else None
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for idx, lm in enumerate(lms):
            if divides(lm, m):
                q = mono_div(m, lm)
                factor = red(c * inv_lcs[idx])
                for e, v in basis[idx]._terms.items():
                    e2 = mono_mul(e, q)
                    nv = red(p.get(e2, 0) - factor * v)
                    if nv:
                        p[e2] = nv
                    else:
                        p.pop(e2, None)
                if with_quotients:
                    qs[idx][q] = red(qs[idx].get(q, 0) + factor)
                break
        else:
            rem[m] = c
            del p[m]
    remainder = MPoly(f.ring, rem)
    if not with_quotients:
        return remainder
    return remainder, [MPoly(f.ring, {e: v for e, v in q.items() if v}) for q in qs]


def _spoly(f: MPoly, g: MPoly) -> MPoly:
    L = mono_lcm(f.lead_monomial, g.lead_monomial)
    a = f.mul_term(mono_div(L, f.lead_monomial), f.field.inv(f.lead_coeff))
    b = g.mul_term(mono_div(L, g.lead_monomial), g.field.inv(g.lead_coeff))
    return a - b


def _interreduce(basis: list[MPoly]) -> list[MPoly]:
    basis = sorted((g.monic() for g in basis if g), key=lambda g: grevlex_key(g.lead_monomial))
    if any(g.is_constant() for g in basis):
        return [basis[0].ring.one()]
    keep: list[MPoly] = []
    for g in basis:
        if not any(divides(k.lead_monomial, g.lead_monomial) for k in keep):
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        out.append(_divide(g, others).monic() if others else g)
    return sorted(out, key=lambda g: grevlex_key(g.lead_monomial))


def _common_ring(gens: list[MPoly], ring: Ring | None) -> Ring:
    if ring is None:
        if not gens:
            raise ValueError("a ring is required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if not g.ring.compatible(ring):
            raise InconsistentRing(f"generator over {g.ring}, expected {ring}")
    return ring


def buchberger(gens: list[MPoly], ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    insertion index) and pairs with coprime lead monomials are skipped.
    """
    ring = _common_ring(gens, ring)
    basis: list[MPoly] = []
    pairs: list = []
    counter = 0

    def add(h: MPoly):
        nonlocal counter
        h = h.monic()
        j = len(basis)
        basis.append(h)
        for i in range(j):
            L = mono_lcm(basis[i].lead_monomial, h.lead_monomial)
            heapq.heappush(pairs, (grevlex_key(L), counter, i, j))
            counter += 1

    for g in gens:
        if g:
            r = _divide(g, basis) if basis else g
            if r:
                add(r)
                if r.is_constant():
                    return GroebnerBasis(ring, (ring.one(),))
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        a, b = basis[i].lead_monomial, basis[j].lead_monomial
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        r = _divide(_spoly(basis[i], basis[j]), basis)
        if r:
            if r.is_constant():
                return GroebnerBasis(ring, (ring.one(),))
            add(r)
    return GroebnerBasis(ring, tuple(_interreduce(basis)))


def normal_form(p: MPoly, gb: GroebnerBasis) -> MPoly:
    if not p.ring.compatible(gb.ring):
        raise RingMismatch(f"{p.ring} vs {gb.ring}")
    if not gb.polys:
        return p
    return _divide(p, list(gb.polys))


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of an Artinian quotient, sliced by degree."""

    by_degree: tuple[tuple[Monomial, ...], ...]

    @property
    def monomials(self) -> list[Monomial]:
        return [m for sl in self.by_degree for m in sl]

    @property
    def length(self) -> int:
        return sum(len(sl) for sl in self.by_degree)

    def hilbert(self) -> GradedDims:
        return GradedDims({k: len(sl) for k, sl in enumerate(self.by_degree)})


def standard_monomials(gb: GroebnerBasis) -> QuotientBasis:
    if gb.is_unit:
        return QuotientBasis(())
    if not gb.is_artinian:
        raise NotArtinian("some variable has no pure power among the lead monomials")
    lms = gb.lead_monomials
    out = []
    k = 0
    while True:
        sl = tuple(m for m in monomials(gb.ring.nvars, k) if not any(divides(lm, m) for lm in lms))
        if not sl:
            break
        out.append(sl)
        k += 1
    return QuotientBasis(tuple(out))


def hilbert_function(gb: GroebnerBasis) -> GradedDims:
    """Hilbert function of ``S/I`` from the standard monomials of ``gb``."""
    return standard_monomials(gb).hilbert()


# dense degreewise engine


def poly_to_vec(p: MPoly, k: int) -> np.ndarray:
    idx = monomial_index(p.ring.nvars, k)
    v = p.field.zeros(len(idx))
    for exp, c in p._terms.items():
        if sum(exp) != k:
            raise Inhomogeneous(f"term of degree {sum(exp)} in a degree-{k} form")
        v[idx[exp]] = c
    return v


def vec_to_poly(ring: Ring, v: np.ndarray, k: int) -> MPoly:
    mons = monomials(ring.nvars, k)
    return MPoly(ring, {mons[i]: ring.field(v[i]) for i in np.flatnonzero(v)})


def shift_rows(R: np.ndarray, nvars: int, k: int, field: Field) -> np.ndarray:
    """All products ``x_i * r`` for rows ``r`` of forms of degree ``k``."""
    if R.shape[0] == 0 or nvars == 0:
        return field.zeros((0, len(monomials(nvars, k + 1))))
    table = shift_table(nvars, k)
    width = len(monomials(nvars, k + 1))
    out = field.zeros((nvars * R.shape[0], width))
    r = R.shape[0]
    for i in range(nvars):
        out[i * r : (i + 1) * r][:, table[i]] = R
    return out


def macaulay_rank(gens: list[MPoly], k: int) -> int:
    """Rank of the degree-k Macaulay matrix (rows: monomial multiples of gens)."""
    ring = gens[0].ring
    field = ring.field
    idx = monomial_index(ring.nvars, k)
    rows = []
    for g in gens:
        t = g.degree
        if not g or t > k:
            continue
        for m in monomials(ring.nvars, k - t):
            v = field.zeros(len(idx))
            for exp, c in g._terms.items():
                v[idx[mono_mul(exp, m)]] = c
            rows.append(v)
    if not rows:
        return 0
    return linalg.rank(np.vstack(rows), field)


class GradedIdeal:
    """Homogeneous Artinian ideal stored as RREF subspaces ``I_k`` of ``S_k``.

    ``pieces[k]`` is ``(R, pivots)`` for ``0 <= k <= top + 1``, where ``top``
    is the socle degree of the quotient (``-1`` for the unit ideal) and
    ``I_{top+1} = S_{top+1}``.
    """

    def __init__(self, ring: Ring, pieces: dict[int, tuple[np.ndarray, list[int]]], top: int):
        self.ring = ring
        self.field = ring.field
        self.n = ring.nvars
        self.pieces = pieces
        self.top = top
        self._s1: dict[int, tuple[np.ndarray, list[int]]] = {}
        self._nf: dict[int, np.ndarray] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}
        self._var: dict[tuple[int, int], np.ndarray] = {}

    # construction

    @classmethod
    def from_generators(
        cls, gens: list[MPoly], ring: Ring | None = None, top: int | None = None, cap: int | None = None
    ) -> GradedIdeal:
        """Span ``I_k = S_1 I_{k-1} + <gens of degree k>`` until ``I_k = S_k``."""
        ring = _common_ring(gens, ring)
        field = ring.field
        gens = [g for g in gens if g]
        for g in gens:
            if not g.is_homogeneous():
                raise Inhomogeneous(f"generator {g} is not homogeneous")
        by_deg: dict[int, list[MPoly]] = {}
        for g in gens:
            by_deg.setdefault(g.degree, []).append(g)
        n = ring.nvars
        if cap is None:
            T = max(by_deg, default=0)
            cap = top + 1 if top is not None else max(n * max(T - 1, 0) + 1, T)
        pieces: dict[int, tuple[np.ndarray, list[int]]] = {}
        s1: dict[int, tuple[np.ndarray, list[int]]] = {}
        k = 0
        while True:
            width = len(monomials(n, k))
            blocks = []
            if k > 0:
                shifted = shift_rows(pieces[k - 1][0], n, k - 1, field)
                s1[k] = linalg.rref(shifted, field) if shifted.shape[0] else (field.zeros((0, width)), [])
                blocks.append(s1[k][0])
            blocks.extend(poly_to_vec(g, k)[None, :] for g in by_deg.get(k, []))
            M = linalg.stack(blocks, width, field)
            pieces[k] = linalg.rref(M, field) if M.shape[0] else (field.zeros((0, width)), [])
            if len(pieces[k][1]) == width:
                break
            if k >= cap:
                raise NotArtinian(f"ideal does not contain all forms of degree {k}")
            k += 1
        gi = cls(ring, pieces, k - 1)
        gi._s1 = s1
        if top is not None and gi.top != top:
            raise NotArtinian(f"expected socle degree {top}, found {gi.top}")
        return gi

    @classmethod
    def from_groebner(cls, gb: GroebnerBasis) -> GradedIdeal:
        """Degreewise pieces from a homogeneous Artinian Groebner basis."""
        if not gb.is_homogeneous:
            raise Inhomogeneous("degreewise pieces need a homogeneous ideal")
        qb = standard_monomials(gb)
        ring = gb.ring
        field = ring.field
        top = len(qb.by_degree) - 1
        pieces = {}
        polys = list(gb.polys)
        for k in range(top + 2):
            mons = monomials(ring.nvars, k)
            std = set(qb.by_degree[k]) if k <= top else set()
            rows, pivots = [], []
            for i, m in enumerate(mons):
                if m in std:
                    continue
                mono = ring.monomial(m)
                v = poly_to_vec(mono - normal_form(mono, gb), k) if polys else None
                rows.append(v)
                pivots.append(i)
            R = np.vstack(rows) if rows else field.zeros((0, len(mons)))
            pieces[k] = (R, pivots)
        return cls(ring, pieces, top)

    @classmethod
    def from_subspaces(cls, ring: Ring, bases: dict[int, np.ndarray], top: int) -> GradedIdeal:
        """Pieces from explicit spanning rows of ``I_k``, ``0 <= k <= top + 1``."""
        field = ring.field
        pieces = {}
        for k in range(top + 2):
            width = len(monomials(ring.nvars, k))
            M = bases.get(k)
            if M is None or M.shape[0] == 0:
                pieces[k] = (field.zeros((0, width)), [])
            else:
                pieces[k] = linalg.rref(M, field)
        if len(pieces[top + 1][1]) != len(monomials(ring.nvars, top + 1)):
            raise NotArtinian(f"degree {top + 1} piece is not everything")
        return cls(ring, pieces, top)

    def with_ring(self, ring: Ring) -> GradedIdeal:
        """Same pieces over a ring differing only in names or block tags."""
        if not ring.compatible(self.ring):
            raise RingMismatch(f"{ring} vs {self.ring}")
        return GradedIdeal(ring, self.pieces, self.top)

    # ideal side

    def dim_S(self, k: int) -> int:
        return len(monomials(self.n, k))

    def dim(self, k: int) -> int:
        """dim I_k."""
        if k < 0:
            return 0
        if k > self.top:
            return self.dim_S(k)
        return len(self.pieces[k][1])

    def basis(self, k: int) -> np.ndarray:
        return self.pieces[k][0]

    def s1_span(self, k: int) -> tuple[np.ndarray, list[int]]:
        """RREF of ``S_1 * I_{k-1}`` inside ``S_k``."""
        if k not in self._s1:
            width = self.dim_S(k)
            if k == 0:
                self._s1[k] = (self.field.zeros((0, width)), [])
            else:
                prev = self.pieces[k - 1][0] if k - 1 <= self.top + 1 else None
                shifted = shift_rows(prev, self.n, k - 1, self.field)
                self._s1[k] = (
                    linalg.rref(shifted, self.field) if shifted.shape[0] else (self.field.zeros((0, width)), [])
                )
        return self._s1[k]

    @cached_property
    def minimal_generators(self) -> list[MPoly]:
        """Degreewise complement of ``S_1 I_{k-1}`` in ``I_k`` (RREF rows, sorted by degree)."""
        gens = []
        for k in range(0, self.top + 2):
            R, piv = self.pieces[k]
            _, piv_small = self.s1_span(k)
            for i in linalg.complement_rows(R, piv, piv_small):
                gens.append(vec_to_poly(self.ring, R[i], k))
        return gens

    @cached_property
    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.minimal_generators]

    def groebner_basis(self) -> GroebnerBasis:
        """Reduced Groebner basis read off the echelon forms."""
        lead: list[Monomial] = []
        polys: list[MPoly] = []
        for k in range(self.top + 2):
            R, piv = self.pieces[k]
            mons = monomials(self.n, k)
            for i, p in enumerate(piv):
                m = mons[p]
                if not any(divides(lm, m) for lm in lead):
                    polys.append(vec_to_poly(self.ring, R[i], k))
            lead.extend(mons[p] for p in piv)
            lead = [m for m in lead if sum(m) == k]
        polys.sort(key=lambda g: grevlex_key(g.lead_monomial))
        return GroebnerBasis(self.ring, tuple(polys))

    def contains(self, p: MPoly) -> bool:
        for k, part in p.homogeneous_components().items():
            if k > self.top:
                continue
            if np.any(self.nf_vector(poly_to_vec(part, k), k)):
                return False
        return True

    # quotient side

    @cached_property
    def hilbert(self) -> GradedDims:
        return GradedDims({k: self.dim_S(k) - self.dim(k) for k in range(self.top + 1)})

    @property
    def length(self) -> int:
        return self.hilbert.total

    def std(self, k: int) -> list[Monomial]:
        """Standard monomials of degree ``k`` (non-pivot columns)."""
        if k < 0 or k > self.top:
            return []
        piv = set(self.pieces[k][1])
        return [m for i, m in enumerate(monomials(self.n, k)) if i not in piv]

    def std_columns(self, k: int) -> list[int]:
        if k < 0 or k > self.top:
            return []
        piv = set(self.pieces[k][1])
        return [i for i in range(self.dim_S(k)) if i not in piv]

    def hdim(self, k: int) -> int:
        """dim B_k."""
        if k < 0 or k > self.top:
            return 0
        return self.dim_S(k) - self.dim(k)

    def nf_matrix(self, k: int) -> np.ndarray:
        """Normal-form map ``S_k -> B_k`` as a ``(dim S_k, dim B_k)`` matrix."""
        if k not in self._nf:
            field = self.field
            if k < 0 or k > self.top:
                self._nf[k] = field.zeros((max(self.dim_S(k), 0), 0))
            else:
                R, piv = self.pieces[k]
                cols = self.std_columns(k)
                N = field.zeros((self.dim_S(k), len(cols)))
                for j, c in enumerate(cols):
                    N[c, j] = field.one
                if piv:
                    N[piv, :] = field.mod(-R[:, cols])
                self._nf[k] = N
        return self._nf[k]

    def nf_vector(self, v: np.ndarray, k: int) -> np.ndarray:
        return self.field.mod(v @ self.nf_matrix(k))

    def nf_poly(self, p: MPoly) -> dict[int, np.ndarray]:
        """Normal form of ``p`` as coordinates on the standard monomials, per degree."""
        out = {}
        for k, part in p.homogeneous_components().items():
            if 0 <= k <= self.top:
                out[k] = self.nf_vector(poly_to_vec(part, k), k)
        return out

    def var_mult(self, i: int, k: int) -> np.ndarray:
        """Multiplication by ``x_i`` as a ``(dim B_k, dim B_{k+1})`` matrix."""
        key = (i, k)
        if key not in self._var:
            if k < 0 or k + 1 > self.top or self.hdim(k) == 0:
                self._var[key] = self.field.zeros((self.hdim(k), self.hdim(k + 1)))
            else:
                table = shift_table(self.n, k)[i]
                self._var[key] = self.nf_matrix(k + 1)[table[self.std_columns(k)]]
        return self._var[key]

    def mult_tensor(self, a: int, b: int) -> np.ndarray:
        """Multiplication ``B_a x B_b -> B_{a+b}`` as a 3-tensor."""
        key = (a, b)
        if key not in self._mult:
            da, db, dc = self.hdim(a), self.hdim(b), self.hdim(a + b)
            T = self.field.zeros((da, db, dc))
            if da and db and dc:
                idx = monomial_index(self.n, a + b)
                N = self.nf_matrix(a + b)
                sa, sb = self.std(a), self.std(b)
                prod_idx = np.array([[idx[mono_mul(u, v)] for v in sb] for u in sa], dtype=np.int64)
                T = N[prod_idx]
            self._mult[key] = T
        return self._mult[key]

    # Koszul homology of B

    def koszul_differential(self, i: int, j: int) -> np.ndarray:
        """``d_i : L^i V (x) B_{j-i} -> L^{i-1} V (x) B_{j-i+1}`` (target rows, source cols)."""
        field = self.field
        src_sets = list(combinations(range(self.n), i))
        tgt_sets = list(combinations(range(self.n), i - 1))
        tgt_index = {s: t for t, s in enumerate(tgt_sets)}
        ds, dt = self.hdim(j - i), self.hdim(j - i + 1)
        D = field.zeros((len(tgt_sets) * dt, len(src_sets) * ds))
        if ds == 0 or dt == 0 or i == 0:
            return D
        for c, A in enumerate(src_sets):
            for k, a in enumerate(A):
                rest = A[:k] + A[k + 1 :]
                t = tgt_index[rest]
                M = self.var_mult(a, j - i)
                block = M.T if k % 2 == 0 else field.mod(-M.T)
                D[t * dt : (t + 1) * dt, c * ds : (c + 1) * ds] = field.mod(
                    D[t * dt : (t + 1) * dt, c * ds : (c + 1) * ds] + block
                )
        return D

    def koszul_homology_dim(self, i: int, j: int) -> int:
        """``dim Tor_i(B, k)_j`` via the Koszul complex on the variables."""
        if i < 0 or i > self.n:
            return 0
        size = len(list(combinations(range(self.n), i))) * self.hdim(j - i)
        if size == 0:
            return 0
        r_out = linalg.rank(self.koszul_differential(i, j), self.field) if i > 0 else 0
        r_in = linalg.rank(self.koszul_differential(i + 1, j), self.field) if i < self.n else 0
        return size - r_out - r_in

    def koszul_products_dim(self, s: int) -> int:
        """Dimension of ``Tor_1 * Tor_1`` inside ``Tor_2(B, k)_s``."""
        field = self.field
        n = self.n
        reps = {t: self._tor1_representatives(t) for t in range(1, s)}
        pair_index = {pq: k for k, pq in enumerate(combinations(range(n), 2))}
        dc = self.hdim(s - 2)
        if dc == 0 or not pair_index:
            return 0
        prods = []
        for a in range(1, s):
            b = s - a
            if a > b:
                break
            Za, Zb = reps[a], reps[b]
            if Za.shape[0] == 0 or Zb.shape[0] == 0:
                continue
            M = self.mult_tensor(a - 1, b - 1)
            Za3 = Za.reshape(Za.shape[0], n, -1)
            Zb3 = Zb.reshape(Zb.shape[0], n, -1)
            left = field.mod(np.einsum("kpu,uvc->kpvc", Za3, M))
            P = field.mod(np.einsum("kpvc,lqv->klpqc", left, Zb3))
            W = field.zeros((P.shape[0], P.shape[1], len(pair_index), dc))
            for (p, q), t in pair_index.items():
                W[:, :, t, :] = field.mod(P[:, :, p, q, :] - P[:, :, q, p, :])
            prods.append(W.reshape(-1, len(pair_index) * dc))
        if not prods:
            return 0
        boundaries = self.koszul_differential(3, s).T
        base = linalg.rank(boundaries, field) if boundaries.size else 0
        full = linalg.rank(linalg.stack([boundaries] + prods, len(pair_index) * dc, field), field)
        return full - base

    def _tor1_representatives(self, t: int) -> np.ndarray:
        """Cycles in ``V (x) B_{t-1}`` whose classes form a basis of ``Tor_1(B,k)_t``."""
        field = self.field
        width = self.n * self.hdim(t - 1)
        if width == 0:
            return field.zeros((0, width))
        Z = linalg.nullspace(self.koszul_differential(1, t), field)
        if Z.shape[0] == 0:
            return Z
        Bd = self.koszul_differential(2, t).T
        Rz, pz = linalg.rref(Z, field)
        _, pb = linalg.rref(Bd, field) if Bd.size else (None, [])
        keep = linalg.complement_rows(Rz, pz, pb)
        return Rz[keep]


# syzygies


@dataclass(frozen=True)
class SyzygyModule:
    """Relations ``sum_j a_j g_j = 0`` among generators ``g_j``."""

    generators: tuple[MPoly, ...]
    rows: tuple[tuple[MPoly, ...], ...]
    minimal: bool = False

    @property
    def generator_degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def row_degree(self, row) -> int:
        for a, t in zip(row, self.generator_degrees):
            if a:
                return a.degree + t
        raise ValueError("zero row")

    def evaluate(self, row) -> MPoly:
        ring = self.generators[0].ring
        total = ring.zero()
        for a, g in zip(row, self.generators):
            total = total + a * g
        return total

    def __len__(self) -> int:
        return len(self.rows)


def _express_in_generators(h: MPoly, gens: list[MPoly]) -> list[MPoly]:
    """Coefficients ``c_j`` with ``h = sum c_j g_j`` for homogeneous data."""
    ring = h.ring
    field = ring.field
    t = h.degree
    cols = []
    layout = []
    for j, g in enumerate(gens):
        if g.degree > t:
            continue
        for m in monomials(ring.nvars, t - g.degree):
            cols.append(poly_to_vec(g.mul_term(m), t))
            layout.append((j, m))
    target = poly_to_vec(h, t)
    if not cols:
        raise NotGenerating(f"{h} is not in the ideal of the generators")
    A = np.column_stack(cols + [target])
    K = linalg.nullspace(A, field)
    for row in K:
        if row[-1]:
            scale = field.inv(field.reduce(-row[-1]))
            coeffs = [dict() for _ in gens]
            for (j, m), v in zip(layout, row[:-1]):
                if v:
                    coeffs[j][m] = field.reduce(v * scale)
            return [MPoly(ring, c) for c in coeffs]
    raise NotGenerating(f"{h} is not in the ideal of the generators")


def first_syzygies(gens: list[MPoly], gb: GroebnerBasis | None = None) -> SyzygyModule:
    """Generating set of the relations among ``gens`` (Schreyer's construction).

    Pair syzygies of the Groebner basis come from standard representations of
    S-polynomials; they are rewritten to ``gens`` through the conversion
    matrices between the two generating sets.  The result is usually not minimal.
    """
    gens = [g for g in gens]
    if not gens:
        raise ValueError("no generators")
    ring = _common_ring(gens, None)
    for g in gens:
        if not g.is_homogeneous():
            raise Inhomogeneous("syzygies are computed for homogeneous generators")
    if gb is None:
        gb = buchberger(gens)
    basis = list(gb.polys)
    zero = ring.zero()
    to_gens = [_express_in_generators(h, gens) for h in basis]
    rows: list[tuple[MPoly, ...]] = []

    def push(coeffs_over_G: list[MPoly], extra: list[MPoly] | None = None):
        row = [zero] * len(gens)
        for a, c_row in zip(coeffs_over_G, to_gens):
            if a:
                row = [r + a * c for r, c in zip(row, c_row)]
        if extra is not None:
            row = [r + e for r, e in zip(row, extra)]
        if any(row):
            rows.append(tuple(row))

    for a, b in combinations(range(len(basis)), 2):
        L = mono_lcm(basis[a].lead_monomial, basis[b].lead_monomial)
        s = _spoly(basis[a], basis[b])
        rem, qs = _divide(s, basis, with_quotients=True)
        if rem:
            raise NotGenerating("input is not a Groebner basis of the generators' ideal")
        sigma = [-q for q in qs]
        sigma[a] = sigma[a] + ring.monomial(mono_div(L, basis[a].lead_monomial))
        sigma[b] = sigma[b] - ring.monomial(mono_div(L, basis[b].lead_monomial))
        push(sigma)
    for j, g in enumerate(gens):
        rem, ds = _divide(g, basis, with_quotients=True)
        if rem:
            raise NotGenerating(f"generator {g} is not in the ideal of the basis")
        unit = [zero] * len(gens)
        unit[j] = ring.one()
        push([-d for d in ds], unit)
    return SyzygyModule(tuple(gens), tuple(dict.fromkeys(rows)), minimal=False)


def _free_layout(degrees: list[int], n: int, s: int) -> list[tuple[int, int, int]]:
    """Blocks ``(j, offset, size)`` of ``F1_s = sum_j S_{s - t_j}``."""
    out, off = [], 0
    for j, t in enumerate(degrees):
        size = len(monomials(n, s - t)) if s >= t else 0
        out.append((j, off, size))
        off += size
    return out


def syzygy_space(gens: list[MPoly], s: int) -> np.ndarray:
    """Basis of ``R_s = ker(F1_s -> S_s)`` in monomial coordinates of ``F1_s``."""
    ring = gens[0].ring
    field = ring.field
    n = ring.nvars
    degrees = [g.degree for g in gens]
    layout = _free_layout(degrees, n, s)
    width = sum(size for _, _, size in layout)
    if width == 0:
        return field.zeros((0, 0))
    idx = monomial_index(n, s)
    A = field.zeros((len(idx), width))
    for j, off, size in layout:
        for c, m in enumerate(monomials(n, s - degrees[j])):
            for exp, v in gens[j]._terms.items():
                A[idx[mono_mul(exp, m)], off + c] = v
    return linalg.nullspace(A, field)


def _shift_free(Rrows: np.ndarray, degrees: list[int], n: int, s: int, field: Field) -> np.ndarray:
    """``S_1 * R_{s-1}`` as rows in ``F1_s`` coordinates."""
    lo = _free_layout(degrees, n, s - 1)
    hi = _free_layout(degrees, n, s)
    width = sum(size for _, _, size in hi)
    if Rrows.shape[0] == 0:
        return field.zeros((0, width))
    r = Rrows.shape[0]
    out = field.zeros((n * r, width))
    for (j, off_lo, size_lo), (_, off_hi, _) in zip(lo, hi):
        if size_lo == 0:
            continue
        table = shift_table(n, s - 1 - degrees[j])
        for i in range(n):
            out[i * r : (i + 1) * r][:, off_hi + table[i]] = Rrows[:, off_lo : off_lo + size_lo]
    return out


def koszul_rows(gens: list[MPoly], s: int) -> np.ndarray:
    """Koszul relations ``g_j e_i - g_i e_j`` of internal degree ``s``."""
    ring = gens[0].ring
    field = ring.field
    n = ring.nvars
    degrees = [g.degree for g in gens]
    layout = _free_layout(degrees, n, s)
    width = sum(size for _, _, size in layout)
    rows = []
    for i, j in combinations(range(len(gens)), 2):
        if degrees[i] + degrees[j] != s:
            continue
        v = field.zeros(width)
        v[layout[i][1] : layout[i][1] + layout[i][2]] = poly_to_vec(gens[j], degrees[j])
        v[layout[j][1] : layout[j][1] + layout[j][2]] = field.mod(-poly_to_vec(gens[i], degrees[i]))
        rows.append(v)
    return np.vstack(rows) if rows else field.zeros((0, width))


def syzygy_degree_data(gens: list[MPoly], s_max: int) -> dict[int, dict]:
    """Per degree ``s``: ``dim R_s``, ``rank(m R)_s`` and ``rank(m R + R0)_s``."""
    ring = gens[0].ring
    field = ring.field
    n = ring.nvars
    degrees = [g.degree for g in gens]
    out = {}
    prev = None
    for s in range(min(degrees) + 1, s_max + 1):
        R = syzygy_space(gens, s)
        width = sum(size for _, _, size in _free_layout(degrees, n, s))
        mR = _shift_free(prev, degrees, n, s, field) if prev is not None else field.zeros((0, width))
        K0 = koszul_rows(gens, s)
        r_m = linalg.rank(mR, field) if mR.shape[0] else 0
        r_mk = linalg.rank(linalg.stack([mR, K0], width, field), field) if (mR.shape[0] or K0.shape[0]) else 0
        out[s] = {"R": R, "dim": R.shape[0], "mR": r_m, "mR+R0": r_mk}
        prev = R
    return out


def minimal_syzygies(gens: list[MPoly], s_max: int) -> SyzygyModule:
    """Minimal generators of the relation module, degree by degree up to ``s_max``."""
    ring = gens[0].ring
    field = ring.field
    n = ring.nvars
    degrees = [g.degree for g in gens]
    rows = []
    prev = None
    for s in range(min(degrees) + 1, s_max + 1):
        R = syzygy_space(gens, s)
        width = sum(size for _, _, size in _free_layout(degrees, n, s))
        if R.shape[0]:
            mR = _shift_free(prev, degrees, n, s, field) if prev is not None else field.zeros((0, width))
            Rr, pr = linalg.rref(R, field)
            _, pm = linalg.rref(mR, field) if mR.shape[0] else (None, [])
            for i in linalg.complement_rows(Rr, pr, pm):
                rows.append(_row_to_polys(Rr[i], gens, s))
        prev = R
    return SyzygyModule(tuple(gens), tuple(rows), minimal=True)


def _row_to_polys(v: np.ndarray, gens: list[MPoly], s: int) -> tuple[MPoly, ...]:
    ring = gens[0].ring
    degrees = [g.degree for g in gens]
    out = []
    for j, off, size in _free_layout(degrees, ring.nvars, s):
        out.append(vec_to_poly(ring, v[off : off + size], s - degrees[j]) if size else ring.zero())
    return tuple(out)


# Betti numbers


def _as_graded_ideal(obj) -> GradedIdeal:
    if isinstance(obj, GradedIdeal):
        return obj
    if isinstance(obj, GroebnerBasis):
        if not obj.is_artinian:
            raise NotArtinian("Betti numbers are computed for Artinian quotients")
        return GradedIdeal.from_groebner(obj)
    ideal = getattr(obj, "ideal", None)
    if isinstance(ideal, GradedIdeal):
        return ideal
    raise TypeError(f"cannot interpret {type(obj).__name__} as a graded ideal")


SYZYGY_ROUTE_LIMIT = 2500


def minimal_betti(obj, method: str = "auto") -> BettiTable:
    """Minimal graded Betti numbers beta_{i,j}, i <= 2.

    ``beta_1`` is the degreewise Nakayama count ``dim I_j - dim S_1 I_{j-1}``.
    ``beta_2`` is ``dim R_j - dim (m R)_j`` for the relation module ``R`` of
    the minimal generators (``method="syzygy"``) or ``dim Tor_2(B,k)_j`` from
    the Koszul complex of the quotient (``method="koszul"``).  ``auto`` uses
    the syzygy route while the free module stays small.
    """
    gi = _as_graded_ideal(obj)
    entries: dict[tuple[int, int], int] = {}
    if gi.top < 0:
        return BettiTable({})
    entries[(0, 0)] = 1
    for k in range(1, gi.top + 2):
        b = gi.dim(k) - len(gi.s1_span(k)[1])
        if b:
            entries[(1, k)] = b
    gens = gi.minimal_generators
    if not gens:
        return BettiTable(entries)
    degrees = [g.degree for g in gens]
    s_max = gi.top + 2
    if method == "auto":
        widest = max(sum(size for _, _, size in _free_layout(degrees, gi.n, s)) for s in range(s_max + 1))
        method = "syzygy" if widest <= SYZYGY_ROUTE_LIMIT else "koszul"
    if method == "syzygy":
        for s, d in syzygy_degree_data(gens, s_max).items():
            b = d["dim"] - d["mR"]
            if b:
                entries[(2, s)] = b
    elif method == "koszul":
        for s in range(2, s_max + 1):
            b = gi.koszul_homology_dim(2, s)
            if b:
                entries[(2, s)] = b
    else:
        raise ValueError(f"unknown method {method!r}")
    return BettiTable(entries)
