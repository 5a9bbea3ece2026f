"""Graded cotangent invariants of an Artinian graded quotient ``B = S/I``.

Degree convention: a homomorphism or derivation of degree ``e`` sends a
generator of degree ``t`` to ``B_{t+e}``; negative tangents have ``e < 0``.

``Hom_B(I/I^2, B)_e`` is solved on the minimal generators ``g_j``: unknowns
``phi_j`` in ``B_{t_j+e}``, one linear condition ``sum_j b_j phi_j = 0`` in
``B_{s+e}`` for every relation ``sum_j a_j g_j = 0`` with images ``b_j`` of
``a_j`` in ``B``.  The image of ``Der(S, B)`` is the Jacobian map
``delta -> (sum_i d g_j / d x_i * delta(x_i))_j`` and
``T^1_e = dim Hom_e - rank Jac_e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .apolarity import AlgebraPresentation
from .errors import NotBigraded
from .graded import GradedDims
from .groebner import (
    SyzygyModule,
    poly_to_vec,
    shift_rows,
    syzygy_degree_data,
)
from .poly import bidegree_kind, monomial_index, monomials

# relations projected to B


@dataclass(frozen=True)
class Relations:
    """Images in ``B`` of a generating set of relations, keyed by internal degree.

    ``rows[s]`` has one row per relation; its columns are the blocks
    ``B_{s - t_j}`` of the minimal generators in order.
    """

    rows: dict
    source: str = "I2"

    def count(self) -> int:
        return sum(r.shape[0] for r in self.rows.values())


def _layout(alg: AlgebraPresentation, shift: int) -> list[tuple[int, int, int]]:
    """Blocks ``(j, offset, size)`` for ``sum_j B_{t_j + shift}``."""
    out, off = [], 0
    for j, t in enumerate(alg.generator_degrees):
        size = alg.hdim(t + shift)
        out.append((j, off, size))
        off += size
    return out


def _width(layout) -> int:
    return sum(size for _, _, size in layout)


def _degree_groups(alg: AlgebraPresentation) -> list[tuple[int, int, int]]:
    """Runs ``(t, first index, count)`` of generators of equal degree."""
    groups = []
    for j, t in enumerate(alg.generator_degrees):
        if groups and groups[-1][0] == t:
            groups[-1][2] += 1
        else:
            groups.append([t, j, 1])
    return [tuple(g) for g in groups]


def _square_pieces(alg: AlgebraPresentation, s_max: int) -> dict[int, tuple[np.ndarray, list[int]]]:
    """RREF of ``(I^2)_s`` for ``s <= s_max``."""
    field, n = alg.field, alg.nvars
    gens = alg.generators
    degs = alg.generator_degrees
    out: dict[int, tuple[np.ndarray, list[int]]] = {}
    start = 2 * min(degs)
    for s in range(start, s_max + 1):
        width = len(monomials(n, s))
        blocks = []
        if s - 1 in out:
            blocks.append(shift_rows(out[s - 1][0], n, s - 1, field))
        prods = [
            poly_to_vec(gens[i] * gens[j], s)[None, :]
            for i in range(len(gens))
            for j in range(i, len(gens))
            if degs[i] + degs[j] == s
        ]
        blocks.extend(prods)
        M = linalg.stack(blocks, width, field)
        out[s] = linalg.rref(M, field) if M.shape[0] else (field.zeros((0, width)), [])
    return out


def _needed_degrees(alg: AlgebraPresentation) -> list[int]:
    """Internal degrees carrying minimal relations (Koszul homology count)."""
    gi = alg.ideal
    lo = min(alg.generator_degrees) + 1
    return [s for s in range(lo, gi.top + 3) if gi.koszul_homology_dim(2, s) > 0]


def projected_relations(alg: AlgebraPresentation, degrees: list[int] | None = None) -> Relations:
    """``pi(R_s) = ker(sum_j B_{s-t_j} -> S_s / (I^2)_s)`` for the degrees that matter.

    Relations of degree ``s`` are ``S_1``-multiples of lower ones unless a
    minimal relation lives in degree ``s``, and multiples impose no new
    conditions, so only degrees with minimal relations are computed.
    """
    field, n = alg.field, alg.nvars
    if not alg.generators:
        return Relations({})
    if degrees is None:
        degrees = _needed_degrees(alg)
    squares = _square_pieces(alg, max(degrees)) if degrees else {}
    gi = alg.ideal
    rows = {}
    for s in degrees:
        layout = _offsets(alg, s)
        width = _width(layout)
        idx = monomial_index(n, s)
        V = field.zeros((width, len(idx)))
        for (j, off, size), g in zip(layout, alg.generators):
            for r, u in enumerate(gi.std(s - g.degree)):
                for exp, c in g.mul_term(u)._terms.items():
                    V[off + r, idx[exp]] = c
        if s in squares and squares[s][1]:
            V = linalg.reduce_rows(V, squares[s][0], squares[s][1], field)
        K = linalg.nullspace(V.T, field) if width else field.zeros((0, 0))
        if K.shape[0]:
            rows[s] = K
    return Relations(rows, "I2")


def relations_from_module(alg: AlgebraPresentation, module: SyzygyModule) -> Relations:
    """Project explicit relation rows (e.g. Schreyer syzygies) to ``B``."""
    gi = alg.ideal
    grouped: dict[int, list[np.ndarray]] = {}
    for row in module.rows:
        s = module.row_degree(row)
        parts = []
        for a, t in zip(row, alg.generator_degrees):
            k = s - t
            size = alg.hdim(k)
            if size == 0:
                parts.append(alg.field.zeros(0))
            elif not a:
                parts.append(alg.field.zeros(size))
            else:
                parts.append(gi.nf_vector(poly_to_vec(a, k), k))
        v = np.concatenate(parts) if parts else alg.field.zeros(0)
        if np.any(v):
            grouped.setdefault(s, []).append(v)
    return Relations({s: np.vstack(v) for s, v in grouped.items()}, "module")


def augment_relations(alg: AlgebraPresentation, rel: Relations, rng: np.random.Generator) -> Relations:
    """A redundant generating set: random combinations and variable multiples added."""
    field = alg.field
    gi = alg.ideal
    out = {s: r.copy() for s, r in rel.rows.items()}
    for s, r in rel.rows.items():
        if r.shape[0] == 0:
            continue
        coeffs = field.array([[field.random(rng) for _ in range(r.shape[0])] for _ in range(2)])
        out[s] = np.vstack([out[s], field.mod(coeffs @ r)])
        i = int(rng.integers(0, alg.nvars))
        k = int(rng.integers(0, r.shape[0]))
        parts = []
        for (j, off, size), t in zip(_offsets(alg, s), alg.generator_degrees):
            M = gi.var_mult(i, s - t)
            parts.append(field.mod(r[k, off : off + size] @ M) if size else field.zeros(alg.hdim(s + 1 - t)))
        v = np.concatenate(parts)
        if np.any(v):
            out[s + 1] = np.vstack([out[s + 1], v[None, :]]) if s + 1 in out else v[None, :]
    perm = {s: rng.permutation(r.shape[0]) for s, r in out.items()}
    return Relations({s: r[perm[s]] for s, r in out.items()}, rel.source + "+augmented")


def _offsets(alg: AlgebraPresentation, s: int) -> list[tuple[int, int, int]]:
    """Blocks ``(j, offset, size)`` for ``sum_j B_{s - t_j}``."""
    out, off = [], 0
    for j, t in enumerate(alg.generator_degrees):
        size = alg.hdim(s - t)
        out.append((j, off, size))
        off += size
    return out


# linear systems for a fixed degree


def hom_system(alg: AlgebraPresentation, e: int, rel: Relations) -> np.ndarray:
    """Conditions on ``(phi_j)`` in ``sum_j B_{t_j+e}``; one row per (relation, output coordinate)."""
    field = alg.field
    gi = alg.ideal
    groups = _degree_groups(alg)
    unknown = _width(_layout(alg, e))
    blocks = []
    for s, K in sorted(rel.rows.items()):
        dc = alg.hdim(s + e)
        if dc == 0 or unknown == 0 or K.shape[0] == 0:
            continue
        offs = _offsets(alg, s)
        cols = []
        for t, first, count in groups:
            du, dv = alg.hdim(s - t), alg.hdim(t + e)
            if dv == 0:
                continue
            if du == 0:
                cols.append(field.zeros((K.shape[0] * dc, count * dv)))
                continue
            off = offs[first][1]
            Kt = K[:, off : off + count * du].reshape(K.shape[0], count, du)
            M = gi.mult_tensor(s - t, t + e)
            C = field.mod(np.einsum("kju,uvc->kcjv", Kt, M))
            cols.append(C.reshape(K.shape[0] * dc, count * dv))
        blocks.append(np.hstack(cols))
    return linalg.stack(blocks, unknown, field)


def _jacobian_pieces(alg: AlgebraPresentation) -> dict[int, np.ndarray]:
    """Per degree group: normal forms of the partials, shape ``(count, n, dim B_{t-1})``."""
    cache = getattr(alg, "_jacobian_cache", None)
    if cache is not None:
        return cache
    gi = alg.ideal
    field = alg.field
    out = {}
    for t, first, count in _degree_groups(alg):
        du = alg.hdim(t - 1)
        D = field.zeros((count, alg.nvars, du))
        if du:
            for a in range(count):
                g = alg.generators[first + a]
                for i in range(alg.nvars):
                    dg = g.diff(i)
                    if dg:
                        D[a, i] = gi.nf_vector(poly_to_vec(dg, t - 1), t - 1)
        out[t] = D
    alg._jacobian_cache = out
    return out


def jacobian_matrix(alg: AlgebraPresentation, e: int) -> np.ndarray:
    """Rows: derivations ``x_i -> w`` (``w`` a basis element of ``B_{1+e}``); columns: Hom coordinates."""
    field = alg.field
    gi = alg.ideal
    dw = alg.hdim(1 + e)
    unknown = _width(_layout(alg, e))
    if dw == 0 or unknown == 0:
        return field.zeros((alg.nvars * dw, unknown))
    pieces = _jacobian_pieces(alg)
    cols = []
    for t, first, count in _degree_groups(alg):
        dv = alg.hdim(t + e)
        if dv == 0:
            continue
        D = pieces[t]
        if D.shape[2] == 0:
            cols.append(field.zeros((alg.nvars * dw, count * dv)))
            continue
        M = gi.mult_tensor(t - 1, 1 + e)
        J = field.mod(np.einsum("jiu,uwv->iwjv", D, M))
        cols.append(J.reshape(alg.nvars * dw, count * dv))
    return np.hstack(cols)


def unknown_bidegrees(alg: AlgebraPresentation, e: int) -> list[tuple[int, int]]:
    """Bidegree of the tangent direction carried by each Hom coordinate."""
    ring = alg.ring
    out = []
    for g, t in zip(alg.generators, alg.generator_degrees):
        bg = ring.bidegree(g.lead_monomial)
        for v in alg.ideal.std(t + e):
            bv = ring.bidegree(v)
            out.append((bv[0] - bg[0], bv[1] - bg[1]))
    return out


def derivation_bidegrees(alg: AlgebraPresentation, e: int) -> list[tuple[int, int]]:
    ring = alg.ring
    out = []
    for i in range(alg.nvars):
        bx = ring.bidegree(tuple(1 if k == i else 0 for k in range(alg.nvars)))
        for w in alg.ideal.std(1 + e):
            bw = ring.bidegree(w)
            out.append((bw[0] - bx[0], bw[1] - bx[1]))
    return out


# reports


def default_window(alg: AlgebraPresentation) -> tuple[int, int]:
    d = alg.socle_degree
    return (-(d + 2), d)


def structural_window(alg: AlgebraPresentation) -> tuple[int, int]:
    """Degrees outside which Hom (hence T^1) vanishes: ``[-max t_j, top - min t_j]``."""
    degs = alg.generator_degrees or [0]
    return (-max(degs), alg.socle_degree - min(degs))


@dataclass
class TangentReport:
    """Graded ``Der(B,B)`` and ``T^1(B,B)`` over a window of degrees, with cross-checks."""

    t0: GradedDims
    t1: GradedDims
    hom: GradedDims
    jacobian_rank: dict
    window: tuple[int, int]
    char_ok: bool = True
    two_path_ok: bool | None = None
    inclusion_ok: bool | None = None
    relations: str = "I2"
    extras: dict = field(default_factory=dict)

    @property
    def negative(self) -> dict[int, int]:
        return {e: v for e, v in self.t1.nonzero().items() if e < 0}

    @property
    def positive(self) -> dict[int, int]:
        return {e: v for e, v in self.t1.nonzero().items() if e > 0}

    @property
    def tnt(self) -> bool:
        return not self.negative

    @property
    def concentrated_minus_one(self) -> bool:
        return all(e == -1 for e in self.negative)

    @property
    def positive_vanishes(self) -> bool:
        return not self.positive

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "t0": self.t0.to_json(),
            "t1": self.t1.to_json(),
            "hom": self.hom.to_json(),
            "tnt": self.tnt,
            "concentrated_minus_one": self.concentrated_minus_one,
            "positive_vanishes": self.positive_vanishes,
            "char_ok": self.char_ok,
            "two_path_ok": self.two_path_ok,
            "inclusion_ok": self.inclusion_ok,
        }


def _char_ok(alg: AlgebraPresentation) -> bool:
    p = alg.field.characteristic
    return p == 0 or p > alg.length


def _resolve_relations(alg, syzygies) -> Relations:
    if syzygies is None:
        return projected_relations(alg)
    if isinstance(syzygies, Relations):
        return syzygies
    if isinstance(syzygies, SyzygyModule):
        return relations_from_module(alg, syzygies)
    raise TypeError(f"unsupported relation data {type(syzygies).__name__}")


def t1_graded(
    alg: AlgebraPresentation,
    window: tuple[int, int] | None = None,
    syzygies: Relations | SyzygyModule | None = None,
    check: bool = True,
) -> TangentReport:
    """Graded ``T^1(B,B)`` and ``Der(B,B)`` by the four-term exact sequence.

    The scan starts two degrees below ``window`` to confirm structural
    vanishing there.  With ``check``, the Jacobian image is verified to
    satisfy the Hom conditions and ``T^1`` is recomputed as an explicit
    quotient of the Hom solution space.
    """
    field = alg.field
    window = window or default_window(alg)
    rel = _resolve_relations(alg, syzygies)
    hom, t0, t1, jr = {}, {}, {}, {}
    two_path = inclusion = True if check else None
    lo, hi = window
    struct = structural_window(alg)
    for e in range(lo - 2, hi + 1):
        C = hom_system(alg, e, rel)
        J = jacobian_matrix(alg, e)
        unknown = C.shape[1]
        rank_c = linalg.rank(C, field) if C.size else 0
        rank_j = linalg.rank(J, field) if J.size else 0
        hom[e] = unknown - rank_c
        jr[e] = rank_j
        t1[e] = hom[e] - rank_j
        t0[e] = alg.nvars * alg.hdim(1 + e) - rank_j
        if e < lo and t1[e] != 0:
            raise AssertionError(f"T^1 nonzero in degree {e} outside the scan window")
        if not (struct[0] <= e <= struct[1]) and hom[e] != 0:
            raise AssertionError(f"Hom nonzero in degree {e} outside structural bounds {struct}")
        if check and unknown:
            if C.size and J.size and np.any(field.mod(C @ J.T)):
                inclusion = False
            H = linalg.nullspace(C, field) if C.shape[0] else linalg.nullspace(field.zeros((0, unknown)), field)
            if J.size and rank_j:
                Jr, pj = linalg.rref(J, field)
                H = linalg.reduce_rows(H, Jr, pj, field)
            explicit = linalg.rank(H, field) if H.size else 0
            if explicit != t1[e]:
                two_path = False
    keep = lambda d: {e: v for e, v in d.items() if lo <= e <= hi}  # noqa: E731
    return TangentReport(
        t0=GradedDims(keep(t0), window, struct),
        t1=GradedDims(keep(t1), window, struct),
        hom=GradedDims(keep(hom), window, struct),
        jacobian_rank=keep(jr),
        window=window,
        char_ok=_char_ok(alg),
        two_path_ok=two_path,
        inclusion_ok=inclusion,
        relations=rel.source,
    )


def derivations_graded(alg: AlgebraPresentation, window: tuple[int, int] | None = None) -> GradedDims:
    """``Der(B,B)_e``: derivations of ``S`` into ``B`` preserving ``I``, by degree."""
    field = alg.field
    window = window or default_window(alg)
    dims = {}
    for e in range(window[0], window[1] + 1):
        J = jacobian_matrix(alg, e)
        dims[e] = alg.nvars * alg.hdim(1 + e) - (linalg.rank(J, field) if J.size else 0)
    return GradedDims(dims, window, (-1, alg.socle_degree - 1))


@dataclass(frozen=True)
class DegreeOneDerivations:
    """``Der(B,B)_1`` of a ``(1,n,n,1)`` algebra against two closed-form counts."""

    n: int
    computed: int
    minus_n: int
    plus_n: int

    def to_json(self) -> dict:
        return {"n": self.n, "computed": self.computed, "n2-C(n+1,2)-n": self.minus_n, "n2-(C(n+1,2)-n)": self.plus_n}


def degree_one_derivations(alg: AlgebraPresentation) -> DegreeOneDerivations:
    n = alg.nvars
    computed = derivations_graded(alg, (1, 1))[1]
    return DegreeOneDerivations(n, computed, n * n - comb(n + 1, 2) - n, n * n - (comb(n + 1, 2) - n))


# bigraded tangents


@dataclass
class BigradedTangent:
    """``T^1`` split by bidegree, with the pure/mixed classification."""

    t1: GradedDims
    hom: GradedDims
    total: TangentReport
    reconciles: bool

    def kind(self, bidegree: tuple[int, int]) -> str:
        return bidegree_kind(bidegree)

    def by_kind(self, negative_only: bool = False) -> dict[str, int]:
        out: dict[str, int] = {}
        for bd, v in self.t1.nonzero().items():
            if negative_only and sum(bd) >= 0:
                continue
            out[bidegree_kind(bd)] = out.get(bidegree_kind(bd), 0) + v
        return out

    def negative_mixed(self) -> dict:
        return {bd: v for bd, v in self.t1.nonzero().items() if sum(bd) < 0 and bidegree_kind(bd) == "mixed"}

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for bd, v in self.t1.items():
            out[sum(bd)] = out.get(sum(bd), 0) + v
        return out

    def to_json(self) -> dict:
        return {
            "t1": self.t1.to_json(),
            "by_kind_negative": self.by_kind(negative_only=True),
            "negative_mixed": {f"{a},{b}": v for (a, b), v in self.negative_mixed().items()},
            "reconciles": self.reconciles,
        }


def t1_bigraded(
    alg: AlgebraPresentation,
    window: tuple[int, int] | None = None,
    syzygies: Relations | SyzygyModule | None = None,
) -> BigradedTangent:
    """Same linear algebra as :func:`t1_graded`, split into bidegree column blocks.

    Generators, standard monomials and relation images are all bihomogeneous,
    so every condition touches a single bidegree and ranks add up blockwise.
    """
    if not alg.ring.is_bigraded:
        raise NotBigraded("the presentation carries no bidegree tags")
    field = alg.field
    window = window or default_window(alg)
    rel = _resolve_relations(alg, syzygies)
    total = t1_graded(alg, window, rel)
    t1: dict = {}
    hom: dict = {}
    for e in range(window[0], window[1] + 1):
        C = hom_system(alg, e, rel)
        J = jacobian_matrix(alg, e)
        ub = unknown_bidegrees(alg, e)
        db = derivation_bidegrees(alg, e)
        for bd in sorted(set(ub)):
            cols = [k for k, b in enumerate(ub) if b == bd]
            rc = linalg.rank(C[:, cols], field) if C.shape[0] else 0
            rows = [k for k, b in enumerate(db) if b == bd]
            rj = linalg.rank(J[np.ix_(rows, cols)], field) if rows else 0
            hom[bd] = len(cols) - rc
            t1[bd] = hom[bd] - rj
    bt = BigradedTangent(GradedDims(t1, window), GradedDims(hom, window), total, True)
    sums = bt.totals()
    bt.reconciles = all(sums.get(e, 0) == total.t1[e] for e in range(window[0], window[1] + 1))
    return bt


def retag(alg: AlgebraPresentation, block: str) -> AlgebraPresentation:
    """The same algebra with every variable placed in one bidegree block."""
    ring = alg.ring.with_blocks((block,) * alg.nvars)
    return AlgebraPresentation(alg.ideal.with_ring(ring), dual=alg.dual, label=alg.label)


# T^2 with residue-field coefficients


def t2_residue_graded(
    alg: AlgebraPresentation, window: tuple[int, int] | None = None, method: str = "auto"
) -> GradedDims:
    """``T^2(B,k)_{-s} = dim R_s / (R0_s + (m R)_s)`` for the minimal generators.

    ``method="direct"`` builds the relation module ``R`` and the Koszul rows
    ``R0`` degree by degree.  ``method="koszul"`` uses the Koszul homology of
    ``B``: ``Tor_2(B,k)_s`` minus the span of products of ``Tor_1`` classes,
    which are exactly the images of the Koszul rows.
    """
    gens = alg.generators
    d = alg.socle_degree
    window = window or (-(d + 2), 0)
    if not gens:
        return GradedDims({}, window)
    s_max = d + 2
    if method == "auto":
        degs = alg.generator_degrees
        widest = sum(len(monomials(alg.nvars, s_max - t)) for t in degs if s_max >= t)
        method = "direct" if widest <= 2500 else "koszul"
    dims = {}
    if method == "direct":
        for s, data in syzygy_degree_data(gens, s_max).items():
            dims[-s] = data["dim"] - data["mR+R0"]
    elif method == "koszul":
        gi = alg.ideal
        for s in range(min(alg.generator_degrees) + 1, s_max + 1):
            b2 = gi.koszul_homology_dim(2, s)
            dims[-s] = b2 - (gi.koszul_products_dim(s) if b2 else 0)
    else:
        raise ValueError(f"unknown method {method!r}")
    dims = {k: v for k, v in dims.items() if window[0] <= k <= window[1]}
    return GradedDims(dims, window, (-s_max, -(min(alg.generator_degrees) + 1)))

