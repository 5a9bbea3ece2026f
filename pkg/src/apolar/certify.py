"""Certificates for non-reduced points obtained as connected sums of two forms.

Every hypothesis is tagged ``MACHINE`` (computed here) or ``CITED`` (taken
from a named literature result).  Certificates are JSON documents with a
canonical SHA-256 hash over everything except the hash and the timestamp.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

import numpy as np

from . import linalg
from .apolarity import (
    AlgebraPresentation,
    _block_rings,
    _check_pair,
    apolar_algebra,
    connected_sum,
    is_very_general_cubic,
    random_cubic,
    socle,
)
from .errors import PreconditionFailed
from .field import Field
from .graded import GradedDims
from .groebner import GradedIdeal, poly_to_vec
from .poly import MPoly, parse_poly, ring_for_texts
from .cotangent import TangentReport, t1_graded, t2_residue_graded

SCHEMA_VERSION = "1.0"
MACHINE = "MACHINE"
CITED = "CITED"

# Citation id for the literature input used when negative tangents exist: the
# negative deformation functor of a (1,m,m,1) cubic algebra is reduced.
SMOOTH_CUBIC_COMPONENT = "smooth-cubic-component"

EXPLICIT_CUBICS = {
    5: "x1*x2*x3 + x2^2*x4 + x3^2*x5 + x1*x4*x5",
    7: "x1*x3*x4 + x4^3 + x3^2*x5 + x3*x6*x7 + x6^2*x7 + x1*x7^2 + x5^3",
}


@dataclass
class Condition:
    name: str
    passed: bool
    tier: str = MACHINE
    evidence: dict = field(default_factory=dict)
    anchor: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "tier": self.tier, "evidence": self.evidence}
        if self.anchor is not None:
            out["anchor"] = self.anchor
        return out


def dual_form(text: str, field: Field) -> MPoly:
    """Parse a form in the divided-power ring; any letter case is accepted."""
    ring = ring_for_texts([text.upper()], field).divided_power_ring()
    return parse_poly(text.upper(), ring)


# per-form analysis


@dataclass
class FormAnalysis:
    """Everything the hypothesis checks need about one form ``F``."""

    form: MPoly
    algebra: AlgebraPresentation
    tangent: TangentReport
    t2: GradedDims

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def generator_degrees(self) -> list[int]:
        return self.algebra.generator_degrees

    @property
    def is_cubic_1mm1(self) -> bool:
        m = self.form.ring.nvars
        return self.degree == 3 and self.algebra.hilbert.as_tuple() == (1, m, m, 1)

    def evidence(self) -> dict:
        return {
            "form": str(self.form),
            "hilbert": list(self.algebra.hilbert.as_tuple()),
            "length": self.algebra.length,
            "generator_degrees": sorted(set(self.generator_degrees)),
            "betti": self.algebra.betti.to_json(),
            "t1": self.tangent.t1.to_json(),
            "t2_residue": self.t2.to_json(),
            "char_ok": self.tangent.char_ok,
        }


def analyse(form: MPoly) -> FormAnalysis:
    alg = apolar_algebra(form)
    return FormAnalysis(form, alg, t1_graded(alg), t2_residue_graded(alg))


# the Setting conditions


@dataclass
class SettingReport:
    degree: int
    conditions: list[Condition]
    analyses: tuple[FormAnalysis, FormAnalysis] | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failing(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.conditions]


def _side_conditions(tag: str, a: FormAnalysis, d: int) -> list[Condition]:
    low_t1 = {e: v for e, v in a.tangent.t1.nonzero().items() if e < -1}
    low_t2 = {e: v for e, v in a.t2.nonzero().items() if e < -d}
    return [
        Condition(f"{tag}: T1 vanishes below degree -1", not low_t1, evidence={"t1": a.tangent.t1.to_json()}),
        Condition(f"{tag}: T2(B,k) vanishes below degree -{d}", not low_t2, evidence={"t2": a.t2.to_json()}),
        Condition(
            f"{tag}: ideal generated in degrees <= {d - 1}",
            max(a.generator_degrees) <= d - 1,
            evidence={"generator_degrees": sorted(set(a.generator_degrees))},
        ),
    ]


def check_setting(form: MPoly, other: MPoly) -> SettingReport:
    """Evaluate the checkable hypotheses on a pair of forms of one degree ``d >= 3``."""
    d = _check_pair(form, other)
    ax, ay = analyse(form), analyse(other)
    conds = [Condition("same degree d >= 3", True, evidence={"degree": d})]
    conds += _side_conditions("X", ax, d)
    conds += _side_conditions("Y", ay, d)
    return SettingReport(d, conds, (ax, ay))


# certificates


def canonical_hash(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k not in ("canonical_hash", "timestamp")}
    text = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Certificate:
    field: Field
    inputs: dict
    setting: SettingReport
    extra: list[Condition]
    verdict: str
    seed: int | None = None
    timestamp: str = ""

    @property
    def conditions(self) -> list[Condition]:
        return list(self.setting.conditions) + list(self.extra)

    def tiers(self) -> dict[str, str]:
        return {c.name: c.tier for c in self.conditions}

    def payload(self) -> dict:
        ax, ay = self.setting.analyses
        out = {
            "schema_version": SCHEMA_VERSION,
            "field": self.field.to_json(),
            "inputs": self.inputs,
            "seed": self.seed,
            "setting": self.setting.to_json(),
            "extra": [c.to_json() for c in self.extra],
            "tiers": self.tiers(),
            "verdict": self.verdict,
            "evidence": {"X": ax.evidence(), "Y": ay.evidence(), "scope": _scope(self.field)},
        }
        out["canonical_hash"] = canonical_hash(out)
        out["timestamp"] = self.timestamp
        return out

    def to_json(self) -> dict:
        return self.payload()


def _scope(field: Field) -> str:
    if field.p is None:
        return "computed over the rationals"
    return (
        f"computed over F_{field.p}; passing checks transfer to the algebraic closure only as a "
        "semidecision (openness), and a failing check may be an artifact of the characteristic"
    )


def verify_certificate(doc: dict) -> bool:
    """Hash integrity plus consistency of the verdict with the listed conditions."""
    if doc.get("canonical_hash") != canonical_hash(doc):
        return False
    conds = list(doc.get("setting", [])) + list(doc.get("extra", []))
    if doc.get("verdict") == "certified":
        for c in conds:
            if c["tier"] == MACHINE and not c["passed"]:
                return False
            if c["tier"] == CITED and not c.get("anchor"):
                return False
    return True


def _extra_conditions(tag: str, a: FormAnalysis) -> list[Condition]:
    pos = a.tangent.positive
    out = [
        Condition(
            f"{tag}: positive T1 vanishes",
            not pos,
            evidence={"positive": {str(e): v for e, v in pos.items()}},
        )
    ]
    name = f"{tag}: negative deformations reduced"
    if a.tangent.tnt:
        out.append(Condition(name, True, evidence={"reason": "negative T1 is zero, the functor is trivial"}))
    elif a.is_cubic_1mm1:
        out.append(
            Condition(
                name,
                True,
                tier=CITED,
                anchor=SMOOTH_CUBIC_COMPONENT,
                evidence={"hilbert": list(a.algebra.hilbert.as_tuple()), "negative_t1": {str(e): v for e, v in a.tangent.negative.items()}},
            )
        )
    else:
        out.append(Condition(name, False, evidence={"reason": "no trivial functor and no applicable citation"}))
    return out


def certify_nonreduced(
    form: MPoly, other: MPoly, seed: int | None = None, timestamp: str | None = None
) -> Certificate:
    """Certificate that the connected sum of ``F`` and ``G`` is a non-reduced point.

    Raises :class:`PreconditionFailed` listing every failing condition.
    """
    setting = check_setting(form, other)
    ax, ay = setting.analyses
    extra = _extra_conditions("X", ax) + _extra_conditions("Y", ay)
    failing = setting.failing() + [c.name for c in extra if not c.passed]
    if failing:
        raise PreconditionFailed(failing)
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return Certificate(
        field=form.field,
        inputs={"F": str(form), "G": str(other)},
        setting=setting,
        extra=extra,
        verdict="certified",
        seed=seed,
        timestamp=timestamp,
    )


# the hypersurface fiber (O_X (x) O_Y) / (f - g)


def _tensor_layout(alg_x: AlgebraPresentation, alg_y: AlgebraPresentation, k: int) -> list[tuple[int, int, int]]:
    """Blocks ``(a, offset, size)`` of ``T_k = sum_{a+b=k} B_X,a (x) B_Y,b``."""
    out, off = [], 0
    for a in range(0, k + 1):
        size = alg_x.hdim(a) * alg_y.hdim(k - a)
        out.append((a, off, size))
        off += size
    return out


def _tensor_mult(alg_x, alg_y, left_x: np.ndarray, left_y: np.ndarray, dx: int, dy: int, k: int) -> np.ndarray:
    """Matrix of multiplication by ``p (x) q`` from ``T_k`` to ``T_{k+dx+dy}``.

    ``p`` lies in ``B_X,dx`` and ``q`` in ``B_Y,dy`` (coordinate vectors).
    """
    field = alg_x.field
    src = _tensor_layout(alg_x, alg_y, k)
    tgt = _tensor_layout(alg_x, alg_y, k + dx + dy)
    tgt_off = {a: (off, size) for a, off, size in tgt}
    M = field.zeros((sum(s for *_, s in src), sum(s for *_, s in tgt)))
    for a, off, size in src:
        if size == 0:
            continue
        b = k - a
        ta = a + dx
        if ta not in tgt_off or tgt_off[ta][1] == 0:
            continue
        mx = field.mod(np.einsum("p,puc->uc", left_x, alg_x.ideal.mult_tensor(dx, a)))
        my = field.mod(np.einsum("q,qvc->vc", left_y, alg_y.ideal.mult_tensor(dy, b)))
        block = field.mod(np.einsum("uc,vd->uvcd", mx, my)).reshape(mx.shape[0] * my.shape[0], -1)
        o, _ = tgt_off[ta]
        M[off : off + size, o : o + block.shape[1]] = block
    return M


@dataclass
class FiberReport:
    """The expected fiber algebra and its tangent comparison."""

    generators: list[MPoly]
    hilbert: GradedDims
    tangent_dim: int
    expected_tangent_dim: int
    generated_in_degree_one: bool
    connected_sum_negative: dict | None = None
    inputs_tnt: bool | None = None

    @property
    def length(self) -> int:
        return self.hilbert.total

    @property
    def nonreduced(self) -> bool:
        return self.length > 1

    @property
    def tangent_ok(self) -> bool:
        return self.tangent_dim == self.expected_tangent_dim and self.generated_in_degree_one

    @property
    def prediction_ok(self) -> bool | None:
        if self.connected_sum_negative is None or not self.inputs_tnt:
            return None
        neg = self.connected_sum_negative
        return set(neg) == {-1} and neg[-1] == self.tangent_dim

    def presentation(self) -> AlgebraPresentation:
        """Dense presentation in the parameter ring (small inputs only)."""
        return AlgebraPresentation(GradedIdeal.from_generators(self.generators), label="fiber")

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "hilbert": list(self.hilbert.as_tuple()),
            "length": self.length,
            "tangent_dim": self.tangent_dim,
            "expected_tangent_dim": self.expected_tangent_dim,
            "tangent_ok": self.tangent_ok,
            "nonreduced": self.nonreduced,
            "connected_sum_negative_t1": (
                None if self.connected_sum_negative is None else {str(e): v for e, v in self.connected_sum_negative.items()}
            ),
            "prediction_ok": self.prediction_ok,
        }


def expected_fiber(form: MPoly, other: MPoly, compare: bool = True) -> FiberReport:
    """``(O_X (x) O_Y) / (f(t_x) - g(t_y))`` on the tensor basis of standard monomials.

    The Hilbert function is ``dim T_k - rank(h : T_{k-d} -> T_k)`` for
    ``h = f (x) 1 - 1 (x) g``.  With ``compare``, the negative tangents of the
    connected sum are computed directly for comparison.
    """
    d = _check_pair(form, other)
    alg_x, alg_y = apolar_algebra(form), apolar_algebra(other)
    field = form.field
    f = socle(alg_x).dual_generator
    g = socle(alg_y).dual_generator
    fx = alg_x.ideal.nf_vector(poly_to_vec(f, d), d)
    gy = alg_y.ideal.nf_vector(poly_to_vec(g, d), d)
    one_x = field.array([1])
    one_y = field.array([1])
    top = alg_x.socle_degree + alg_y.socle_degree
    dims = {}
    for k in range(top + 1):
        size = sum(s for *_, s in _tensor_layout(alg_x, alg_y, k))
        if k >= d:
            H = field.mod(
                _tensor_mult(alg_x, alg_y, fx, one_y, d, 0, k - d) - _tensor_mult(alg_x, alg_y, one_x, gy, 0, d, k - d)
            )
            size -= linalg.rank(H, field) if H.size else 0
        if size:
            dims[k] = size
    hilbert = GradedDims(dims)
    generated = _generated_in_degree_one(alg_x, alg_y, fx, gy, d, top)

    nx, ny = alg_x.nvars, alg_y.nvars
    op_ring, _ = _block_rings(nx, ny, field)
    gens = [q.rename(op_ring, list(range(nx))) for q in alg_x.generators]
    gens += [q.rename(op_ring, list(range(nx, nx + ny))) for q in alg_y.generators]
    gens.append(f.rename(op_ring, list(range(nx))) - g.rename(op_ring, list(range(nx, nx + ny))))
    report = FiberReport(gens, hilbert, hilbert[1], nx + ny, generated)
    if compare:
        tnt_x = t1_graded(alg_x, check=False).tnt
        tnt_y = t1_graded(alg_y, check=False).tnt
        cs = connected_sum(form, other)
        tangent = t1_graded(cs.direct)
        report.connected_sum_negative = tangent.negative
        report.inputs_tnt = tnt_x and tnt_y
    return report


def _generated_in_degree_one(alg_x, alg_y, fx, gy, d, top) -> bool:
    """Quotient pieces of degree >= 2 are spanned by degree-one multiples.

    Checked on the tensor algebra: ``T_1 * T_{k-1} + h T_{k-d} = T_k``.
    """
    field = alg_x.field
    one = field.array([1])
    for k in range(2, top + 1):
        size = sum(s for *_, s in _tensor_layout(alg_x, alg_y, k))
        if size == 0:
            continue
        blocks = []
        for i in range(alg_x.hdim(1)):
            e = field.zeros(alg_x.hdim(1))
            e[i] = 1
            blocks.append(_tensor_mult(alg_x, alg_y, e, one, 1, 0, k - 1))
        for i in range(alg_y.hdim(1)):
            e = field.zeros(alg_y.hdim(1))
            e[i] = 1
            blocks.append(_tensor_mult(alg_x, alg_y, one, e, 0, 1, k - 1))
        if k >= d:
            blocks.append(
                field.mod(_tensor_mult(alg_x, alg_y, fx, one, d, 0, k - d) - _tensor_mult(alg_x, alg_y, one, gy, 0, d, k - d))
            )
        M = linalg.stack(blocks, size, field)
        if linalg.rank(M, field) != size:
            return False
    return True


# the two explicit cubics


@dataclass
class ExampleReport:
    m: int
    text: str
    hilbert: GradedDims
    expected_hilbert: tuple[int, ...]
    variables_used: int
    tangent: TangentReport
    setting: list[Condition]

    @property
    def hilbert_ok(self) -> bool:
        return self.hilbert.as_tuple() == self.expected_hilbert

    @property
    def concentrated_minus_one(self) -> bool:
        return self.tangent.concentrated_minus_one

    @property
    def minus_one_nonzero(self) -> bool:
        return self.tangent.t1[-1] != 0

    @property
    def passed(self) -> bool:
        return self.hilbert_ok and self.concentrated_minus_one and self.minus_one_nonzero and all(
            c.passed for c in self.setting
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "cubic": self.text,
            "variables_used": self.variables_used,
            "hilbert": list(self.hilbert.as_tuple()),
            "expected_hilbert": list(self.expected_hilbert),
            "hilbert_ok": self.hilbert_ok,
            "t1": self.tangent.t1.to_json(),
            "concentrated_minus_one": self.concentrated_minus_one,
            "minus_one_nonzero": self.minus_one_nonzero,
            "setting": [c.to_json() for c in self.setting],
            "passed": self.passed,
        }


def check_example(m: int, text: str, field: Field | None = None) -> ExampleReport:
    form = dual_form(text, field or Field.default())
    a = analyse(form)
    return ExampleReport(
        m=m,
        text=text,
        hilbert=a.algebra.hilbert,
        expected_hilbert=(1, m, m, 1),
        variables_used=len(form.variables_used()),
        tangent=a.tangent,
        setting=_side_conditions(f"m={m}", a, 3),
    )


def verify_paper_examples(field: Field | None = None) -> list[ExampleReport]:
    """Run the checks on the two explicit cubics with five and seven variables."""
    return [check_example(m, text, field) for m, text in EXPLICIT_CUBICS.items()]


# random search


@dataclass
class SearchSummary:
    n: int
    trials: int
    seed: int
    counts: dict
    records: list[dict]

    @property
    def frequencies(self) -> dict:
        return {k: (v / self.trials if self.trials else 0.0) for k, v in self.counts.items()}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "counts": self.counts,
            "frequencies": self.frequencies,
        }


BULLETS = ("hilbert_ok", "betti_ok", "tnt", "concentrated_minus_one", "t2_ok", "all_ok")


def search_records(n: int, trials: int, seed: int, field: Field | None = None) -> Iterator[dict]:
    """One record per trial; trial ``i`` draws from ``SeedSequence([seed, i])``."""
    field = field or Field.default()
    for trial in range(trials):
        form = random_cubic(n, seed, field, trial)
        alg = apolar_algebra(form)
        report = is_very_general_cubic(form, alg)
        t2 = t2_residue_graded(alg)
        t2_ok = not any(v for e, v in t2.nonzero().items() if e < -3)
        rec = {
            "n": n,
            "seed": seed,
            "trial": trial,
            "field": field.to_json(),
            "cubic": str(form),
            "hilbert": list(report.hilbert.as_tuple()),
            "hilbert_ok": report.hilbert_ok,
            "betti_ok": report.betti_ok,
            "tnt": report.tnt,
            "concentrated_minus_one": report.tangent.concentrated_minus_one,
            "t2_ok": t2_ok,
        }
        rec["all_ok"] = bool(rec["hilbert_ok"] and rec["betti_ok"] and rec["tnt"] and t2_ok)
        yield rec


def search(
    n: int, trials: int, seed: int, log_path: str | Path | None = None, field: Field | None = None
) -> SearchSummary:
    """Sample cubics, append each record to a JSONL log, and summarise the bullets."""
    counts = {b: 0 for b in BULLETS}
    records = []
    handle = open(log_path, "a", encoding="utf-8") if log_path else None
    try:
        for rec in search_records(n, trials, seed, field):
            records.append(rec)
            for b in BULLETS:
                counts[b] += int(bool(rec[b]))
            if handle:
                handle.write(json.dumps(rec, sort_keys=True) + "\n")
                handle.flush()
    finally:
        if handle:
            handle.close()
    return SearchSummary(n, trials, seed, counts, records)

