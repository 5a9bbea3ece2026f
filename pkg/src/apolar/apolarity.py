"""Macaulay duality: annihilators, apolar algebras, socles, sums and unions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    DegreeMismatch,
    DegreeTooSmall,
    Inhomogeneous,
    NotCubic,
    NotGorenstein,
    ZeroPolynomial,
)
from .field import Field
from .graded import BettiTable, GradedDims
from .groebner import (
    GradedIdeal,
    GroebnerBasis,
    QuotientBasis,
    minimal_betti,
    normal_form,
    vec_to_poly,
)
from .poly import MPoly, Ring, contract, divides, mono_div, monomial_index, monomials


@dataclass(eq=False)
class AlgebraPresentation:
    """Graded Artinian quotient ``S/I`` with its degreewise data.

    ``dual`` is the form ``F`` when the algebra was built as ``S/Ann(F)``;
    ``factors`` keeps the two pieces of a union along the point.
    """

    ideal: GradedIdeal
    dual: MPoly | None = None
    factors: tuple | None = None
    label: str = ""

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def generators(self) -> list[MPoly]:
        return self.ideal.minimal_generators

    @property
    def generator_degrees(self) -> list[int]:
        return self.ideal.generator_degrees

    @cached_property
    def groebner(self) -> GroebnerBasis:
        return self.ideal.groebner_basis()

    @cached_property
    def quotient_basis(self) -> QuotientBasis:
        return QuotientBasis(tuple(tuple(self.ideal.std(k)) for k in range(self.socle_degree + 1)))

    @property
    def hilbert(self) -> GradedDims:
        return self.ideal.hilbert

    @property
    def length(self) -> int:
        return self.ideal.length

    @property
    def socle_degree(self) -> int:
        return self.ideal.top

    def hdim(self, k: int) -> int:
        return self.ideal.hdim(k)

    def normal_form(self, p: MPoly) -> MPoly:
        return normal_form(p, self.groebner)

    def contains(self, p: MPoly) -> bool:
        return self.ideal.contains(p)

    @cached_property
    def betti(self) -> BettiTable:
        return minimal_betti(self.ideal)

    def __repr__(self) -> str:
        hf = ",".join(map(str, self.hilbert.as_tuple()))
        return f"AlgebraPresentation({self.ring}, HF=({hf}), {len(self.generators)} generators)"


# catalecticants


def _check_form(form: MPoly) -> int:
    if not form:
        raise ZeroPolynomial("the dual form is zero")
    if not form.is_homogeneous():
        raise Inhomogeneous(f"{form} is not homogeneous")
    if form.degree < 1:
        raise Inhomogeneous("the dual form must have positive degree")
    return form.degree


def catalecticant(form: MPoly, k: int) -> np.ndarray:
    """Matrix of ``S_k -> P_{d-k}``, ``s -> s o F``: rows index ``S_k``, columns ``P_{d-k}``."""
    n = form.ring.nvars
    d = form.degree
    field = form.field
    rows = monomial_index(n, k)
    cols = monomial_index(n, d - k) if d >= k else {}
    A = field.zeros((len(rows), len(cols)))
    if d < k:
        return A
    for exp, c in form._terms.items():
        for q in rows:
            if divides(q, exp):
                A[rows[q], cols[mono_div(exp, q)]] = c
    return A


def catalecticant_ranks(form: MPoly) -> GradedDims:
    """Hilbert function of ``Apolar(F)`` as ranks of the catalecticant maps."""
    d = _check_form(form)
    return GradedDims({k: linalg.rank(catalecticant(form, k), form.field) for k in range(d + 1)})


def _annihilator_ideal(form: MPoly, op_ring: Ring) -> GradedIdeal:
    d = _check_form(form)
    field = form.field
    bases = {}
    for k in range(d + 1):
        bases[k] = linalg.nullspace(catalecticant(form, k).T, field)
    bases[d + 1] = linalg.nullspace(field.zeros((0, len(monomials(op_ring.nvars, d + 1)))), field)
    return GradedIdeal.from_subspaces(op_ring, bases, top=d)


def annihilator(form: MPoly) -> list[MPoly]:
    """Minimal homogeneous generators of ``Ann(F)``, lowest degree first."""
    return apolar_algebra(form).generators


def apolar_algebra(form: MPoly) -> AlgebraPresentation:
    """``S/Ann(F)`` with the operator ring named by lowercasing the variables of ``F``."""
    op_ring = form.ring.operator_ring()
    alg = AlgebraPresentation(_annihilator_ideal(form, op_ring), dual=form)
    # Ann(F) contains every form of degree d+1, so degree d+1 closes the generation
    if alg.ideal.dim(alg.socle_degree + 1) != alg.ideal.dim_S(alg.socle_degree + 1):
        raise AssertionError("annihilator does not contain all forms of degree d+1")
    return alg


def from_generators(gens: list[MPoly], ring: Ring | None = None, label: str = "") -> AlgebraPresentation:
    return AlgebraPresentation(GradedIdeal.from_generators(gens, ring), label=label)


# socles


@dataclass(frozen=True)
class SocleData:
    """Socle of ``B`` by degree; ``dual_generator`` is set for apolar Gorenstein algebras."""

    basis: tuple[MPoly, ...]
    dims: GradedDims
    dual_generator: MPoly | None = None

    @property
    def dimension(self) -> int:
        return self.dims.total

    @property
    def is_gorenstein(self) -> bool:
        return self.dimension == 1

    @property
    def degrees(self) -> list[int]:
        return self.dims.support()


def socle(alg: AlgebraPresentation) -> SocleData:
    """Elements killed by every variable, computed degree by degree."""
    gi = alg.ideal
    field = alg.field
    basis: list[MPoly] = []
    dims = {}
    for k in range(gi.top + 1):
        dk = gi.hdim(k)
        if dk == 0:
            continue
        if k == gi.top:
            K = linalg.nullspace(field.zeros((0, dk)), field)
        else:
            M = np.hstack([gi.var_mult(i, k) for i in range(gi.n)])
            K = linalg.nullspace(M.T, field)
        if K.shape[0]:
            dims[k] = K.shape[0]
            cols = gi.std_columns(k)
            for row in K:
                v = field.zeros(gi.dim_S(k))
                v[cols] = row
                basis.append(vec_to_poly(alg.ring, v, k))
    dual_gen = None
    if len(basis) == 1 and alg.dual is not None:
        s = basis[0]
        c = contract(s, _dual_in(alg))
        value = c.coeff((0,) * alg.nvars)
        if not value:
            raise AssertionError("socle generator does not pair with the dual form")
        dual_gen = s.scale(field.inv(value))
    return SocleData(tuple(basis), GradedDims(dims), dual_gen)


def _dual_in(alg: AlgebraPresentation) -> MPoly:
    """The dual form with ring positions matching ``B``."""
    form = alg.dual
    if form.ring.nvars != alg.nvars:
        raise AssertionError("dual form lives in a ring of different size")
    return form


def is_level(alg: AlgebraPresentation, d: int | None = None) -> bool:
    """True when the socle equals the whole top piece ``B_d``."""
    if d is None:
        d = alg.socle_degree
    soc = socle(alg)
    return soc.dims.nonzero() == {d: alg.hdim(d)} and alg.hdim(d) > 0


def socle_quotient(alg: AlgebraPresentation) -> AlgebraPresentation:
    """``B`` modulo its socle generator (length drops by one)."""
    soc = socle(alg)
    if not soc.is_gorenstein:
        raise NotGorenstein(f"socle has dimension {soc.dimension}")
    gens = list(alg.generators) + [soc.basis[0]]
    return AlgebraPresentation(GradedIdeal.from_generators(gens, alg.ring), label=f"{alg.label}#0" if alg.label else "")


# very general cubics


@dataclass
class VeryGeneralReport:
    """The three conditions on a cubic, each with its evidence."""

    form: MPoly
    hilbert_ok: bool
    betti_ok: bool
    tnt: bool
    hilbert: GradedDims
    betti: BettiTable
    tangent: object = None
    seed: int | None = None
    attempt: int | None = None

    @property
    def passed(self) -> bool:
        return self.hilbert_ok and self.betti_ok and self.tnt

    def to_json(self) -> dict:
        out = {
            "form": str(self.form),
            "n": self.form.ring.nvars,
            "hilbert": list(self.hilbert.as_tuple()),
            "hilbert_ok": self.hilbert_ok,
            "betti": self.betti.to_json(),
            "betti_ok": self.betti_ok,
            "tnt": self.tnt,
            "passed": self.passed,
        }
        if self.tangent is not None:
            out["tangent"] = self.tangent.to_json()
        if self.seed is not None:
            out["seed"] = self.seed
            out["attempt"] = self.attempt
        return out


def is_very_general_cubic(form: MPoly, alg: AlgebraPresentation | None = None) -> VeryGeneralReport:
    """Check HF ``(1,n,n,1)``, quadric generators with linear syzygies only, and TNT."""
    from .cotangent import t1_graded

    _check_form(form)
    if form.degree != 3:
        raise NotCubic(f"degree {form.degree} form given")
    n = form.ring.nvars
    alg = alg or apolar_algebra(form)
    hf = alg.hilbert
    hilbert_ok = hf.as_tuple() == (1, n, n, 1)
    betti = minimal_betti(alg.ideal)
    betti_ok = set(betti.degrees(1)) == {2} and set(betti.degrees(2)) <= {3} and bool(betti.row(2))
    tangent = t1_graded(alg, check=False)
    return VeryGeneralReport(form, hilbert_ok, betti_ok, tangent.tnt, hf, betti, tangent)


def random_form(ring: Ring, degree: int, rng: np.random.Generator) -> MPoly:
    """Independent uniform coefficients on every monomial of the given degree."""
    field = ring.field
    return MPoly.from_terms(ring, ((m, field.random(rng)) for m in monomials(ring.nvars, degree)))


def cubic_ring(n: int, field: Field, prefix: str = "X") -> Ring:
    return Ring(tuple(f"{prefix}{i}" for i in range(1, n + 1)), field)


def random_cubic(n: int, seed: int, field: Field | None = None, attempt: int = 0) -> MPoly:
    rng = np.random.default_rng(np.random.SeedSequence([seed, attempt]))
    return random_form(cubic_ring(n, field or Field.default()), 3, rng)


def sample_very_general_cubic(
    n: int, seed: int, field: Field | None = None, max_tries: int = 20
) -> VeryGeneralReport:
    """First sampled cubic passing all three conditions (or the last failure)."""
    report = None
    for attempt in range(max_tries):
        form = random_cubic(n, seed, field, attempt)
        report = is_very_general_cubic(form)
        report.seed, report.attempt = seed, attempt
        if report.passed:
            break
    return report


# unions and connected sums


def _block_rings(nx: int, ny: int, field: Field) -> tuple[Ring, Ring]:
    names = tuple(f"x{i}" for i in range(1, nx + 1)) + tuple(f"y{i}" for i in range(1, ny + 1))
    op_ring = Ring(names, field, ("x",) * nx + ("y",) * ny)
    return op_ring, op_ring.divided_power_ring()


def union_along_point(alg_x: AlgebraPresentation, alg_y: AlgebraPresentation) -> AlgebraPresentation:
    """Fiber product over the residue field: ``I_X + I_Y + (x_i y_j)`` in renamed blocks."""
    if not alg_x.ring.field == alg_y.ring.field:
        raise DegreeMismatch("the two algebras live over different fields")
    if alg_x.length == 1:
        return alg_y
    if alg_y.length == 1:
        return alg_x
    nx, ny = alg_x.nvars, alg_y.nvars
    op_ring, _ = _block_rings(nx, ny, alg_x.field)
    gens = [gen.rename(op_ring, list(range(nx))) for gen in alg_x.generators]
    gens += [gen.rename(op_ring, list(range(nx, nx + ny))) for gen in alg_y.generators]
    gens += [op_ring.gen(i) * op_ring.gen(nx + j) for i in range(nx) for j in range(ny)]
    return AlgebraPresentation(GradedIdeal.from_generators(gens, op_ring), factors=(alg_x, alg_y), label="union")


class ConnectedSum(NamedTuple):
    direct: AlgebraPresentation
    quotient: AlgebraPresentation
    agree: bool


def _check_pair(form: MPoly, other: MPoly) -> int:
    _check_form(form)
    _check_form(other)
    if form.degree != other.degree:
        raise DegreeMismatch(f"degrees {form.degree} and {other.degree} differ")
    if form.degree < 3:
        raise DegreeTooSmall(f"degree {form.degree} < 3")
    if form.field != other.field:
        raise DegreeMismatch("the two forms live over different fields")
    return form.degree


def sum_form(form: MPoly, other: MPoly) -> MPoly:
    """``F + G`` with ``F`` in the X block and ``G`` in the Y block."""
    nx, ny = form.ring.nvars, other.ring.nvars
    _, dual_ring = _block_rings(nx, ny, form.field)
    return form.rename(dual_ring, list(range(nx))) + other.rename(dual_ring, list(range(nx, nx + ny)))


def connected_sum(form: MPoly, other: MPoly) -> ConnectedSum:
    """Both presentations of ``Apolar(F + G)`` and whether they agree."""
    _check_pair(form, other)
    direct = apolar_algebra(sum_form(form, other))
    alg_x, alg_y = apolar_algebra(form), apolar_algebra(other)
    quotient = connected_sum_quotient(alg_x, alg_y)
    agree = ideals_equal(direct, quotient)
    return ConnectedSum(direct, quotient, agree)


def connected_sum_quotient(alg_x: AlgebraPresentation, alg_y: AlgebraPresentation) -> AlgebraPresentation:
    """Union along the point modulo ``f - g`` for the normalized socle duals."""
    nx, ny = alg_x.nvars, alg_y.nvars
    socle_x = socle(alg_x).dual_generator
    socle_y = socle(alg_y).dual_generator
    if socle_x is None or socle_y is None:
        raise NotGorenstein("connected sums need apolar Gorenstein inputs")
    union = union_along_point(alg_x, alg_y)
    op_ring = union.ring
    diff = socle_x.rename(op_ring, list(range(nx))) - socle_y.rename(op_ring, list(range(nx, nx + ny)))
    ideal = GradedIdeal.from_generators(list(union.generators) + [diff], op_ring)
    return AlgebraPresentation(ideal, factors=(alg_x, alg_y), label="connected-sum")


def ideals_equal(first: AlgebraPresentation, second: AlgebraPresentation) -> bool:
    """Mutual membership of minimal generators by Groebner normal forms."""
    if not first.ring.compatible(second.ring):
        return False
    return all(not normal_form(gen, second.groebner) for gen in first.generators) and all(
        not normal_form(gen, first.groebner) for gen in second.generators
    )
