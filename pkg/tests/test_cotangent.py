import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import instances as inst
import oracles
from apolar import (
    Field,
    MPoly,
    Ring,
    apolar_algebra,
    derivations_graded,
    first_syzygies,
    from_generators,
    parse_poly,
    random_cubic,
    t1_bigraded,
    t1_graded,
    t2_residue_graded,
    union_along_point,
)
from apolar.certify import dual_form
from apolar.cotangent import (
    augment_relations,
    degree_one_derivations,
    projected_relations,
    relations_from_module,
    retag,
)
from apolar.errors import NotBigraded
from apolar.groebner import minimal_syzygies

FP = Field(32003)
QQ = Field.rational()


def ideal(texts, ring):
    return from_generators([parse_poly(t, ring) for t in texts], ring)


def dicts(alg):
    return [{e: int(c) for e, c in g.as_dict().items()} for g in alg.generators]


def assert_matches_brute_force(alg):
    report = t1_graded(alg)
    assert report.two_path_ok and report.inclusion_ok
    for e in range(report.window[0], report.window[1] + 1):
        hom, t1 = oracles.brute_t1(dicts(alg), alg.nvars, alg.socle_degree, e)
        assert (report.hom[e], report.t1[e]) == (hom, t1), e
    return report


def test_cubic_power_tangents():
    alg = ideal(["x^3"], Ring(("x",), FP))
    report = assert_matches_brute_force(alg)
    assert report.t1.nonzero() == {-3: 1, -2: 1}
    assert report.t1.total == 2
    assert derivations_graded(alg).nonzero() == {0: 1, 1: 1}


def test_cubic_power_tangents_over_rationals():
    alg = ideal(["x^3"], Ring(("x",), QQ))
    assert t1_graded(alg).t1.nonzero() == {-3: 1, -2: 1}
    assert derivations_graded(alg).nonzero() == {0: 1, 1: 1}


@pytest.mark.parametrize(
    "texts, names",
    [
        (["x^2", "x*y", "y^2"], ("x", "y")),
        (["x^2", "y^2"], ("x", "y")),
        (list(inst.WORKED_IDEAL), ("x1", "x2", "x3")),
        (["x^2", "x*y", "y^3"], ("x", "y")),
    ],
)
def test_small_quotients_match_brute_force(texts, names):
    assert_matches_brute_force(ideal(texts, Ring(names, FP)))


def test_five_variable_cubic_matches_brute_force():
    report = assert_matches_brute_force(inst.explicit(5))
    assert report.t1.nonzero() == {-1: 11, 0: 11}


def test_five_variable_cubic_degree_one_derivations():
    der = degree_one_derivations(inst.explicit(5))
    assert der.computed == 15 == der.plus_n
    assert der.minus_n == 5


def test_very_general_six_variable_cubic():
    alg = apolar_algebra(random_cubic(6, 1, FP))
    report = t1_graded(alg)
    assert report.tnt and report.positive_vanishes
    assert t2_residue_graded(alg).support() == [-3]


def test_t2_examples_both_routes():
    ring = Ring(("x", "y"), FP)
    for texts, expected in ((["x^2", "x*y", "y^2"], {-3: 2}), (["x^2", "y^2"], {})):
        alg = ideal(texts, ring)
        for method in ("direct", "koszul", "auto"):
            assert t2_residue_graded(alg, method=method).nonzero() == expected


def test_characteristic_guard():
    short = ideal(["x^7"], Ring(("x",), Field(5)))
    assert not t1_graded(short).char_ok
    assert t1_graded(ideal(["x^7"], Ring(("x",), FP))).char_ok


def test_negative_derivations_vanish_in_characteristic_zero():
    alg = apolar_algebra(dual_form(inst.WORKED_FORM, QQ))
    der = derivations_graded(alg)
    assert all(v == 0 for e, v in der.items() if e < 0)
    assert der[0] >= 1


def test_bigraded_needs_tags():
    with pytest.raises(NotBigraded):
        t1_bigraded(inst.explicit(5))


def test_bigraded_union_of_two_lines():
    # k[x]/(x^3) has tangents in degrees -3 and -2, so mixed negative classes
    # such as x^3 -> y^2, xy -> 0 do appear here
    union = union_along_point(apolar_algebra(dual_form("X^2", FP)), apolar_algebra(dual_form("Y^2", FP)))
    bt = t1_bigraded(union)
    assert bt.reconciles
    assert bt.negative_mixed() == {(-3, 2): 1, (2, -3): 1}
    report = assert_matches_brute_force(union)
    assert {e: v for e, v in bt.totals().items() if v} == report.t1.nonzero()


def test_bigraded_union_of_two_five_variable_cubics():
    five = inst.explicit(5)
    union = union_along_point(five, five)
    bt = t1_bigraded(union)
    assert bt.reconciles
    assert bt.negative_mixed() == {}
    # each side keeps its own 11 classes and gains 5 from the gluing
    assert bt.by_kind(negative_only=True) == {"pure-x": 16, "pure-y": 16}
    totals = bt.totals()
    for e in (-1, 0):
        _, t1 = oracles.brute_t1(dicts(union), union.nvars, union.socle_degree, e)
        assert totals[e] == t1


def test_point_factor_reduces_to_the_other_tangents():
    five = inst.explicit(5)
    tagged = retag(five, "y")
    bt = t1_bigraded(tagged)
    assert {k for k in bt.by_kind()} <= {"pure-y", "neither"}
    assert {e: v for e, v in bt.totals().items() if v} == t1_graded(five).t1.nonzero()


def test_report_json_shape():
    doc = t1_graded(inst.explicit(5)).to_json()
    assert {k: v for k, v in doc["t1"]["dims"].items() if v} == {"-1": 11, "0": 11}
    assert doc["t1"]["window"] == [-5, 3]
    assert doc["concentrated_minus_one"] is True and doc["tnt"] is False


# properties


@st.composite
def artinian_ideals(draw):
    n = draw(st.integers(1, 3))
    ring = Ring(tuple(f"x{i}" for i in range(1, n + 1)), FP)
    gens = []
    for _ in range(draw(st.integers(0, 3))):
        d = draw(st.integers(2, 3))
        mons = oracles.monomials(n, d)
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=3, unique=True))
        coefs = draw(st.lists(st.integers(1, FP.p - 1), min_size=len(chosen), max_size=len(chosen)))
        gens.append(MPoly.from_terms(ring, zip(chosen, coefs)))
    power = draw(st.integers(2, 3))
    for v in ring.gens():
        pure = v
        for _ in range(power - 1):
            pure = pure * v
        gens.append(pure)
    return from_generators(gens, ring)


@settings(max_examples=25, derandomize=True, deadline=None)
@given(artinian_ideals())
def test_tangents_match_brute_force(alg):
    assert_matches_brute_force(alg)


@settings(max_examples=25, derandomize=True, deadline=None)
@given(artinian_ideals())
def test_t2_matches_brute_force(alg):
    brute = oracles.brute_t2(dicts(alg), alg.nvars, alg.socle_degree + 2)
    assert t2_residue_graded(alg, method="direct").nonzero() == brute
    assert t2_residue_graded(alg, method="koszul").nonzero() == brute


@settings(max_examples=25, derandomize=True, deadline=None)
@given(artinian_ideals(), st.integers(0, 2**32 - 1))
def test_tangents_ignore_the_relation_set(alg, seed):
    base = t1_graded(alg)
    module = first_syzygies(alg.generators, alg.groebner)
    augmented = augment_relations(alg, projected_relations(alg), np.random.default_rng(seed))
    minimal = relations_from_module(alg, minimal_syzygies(alg.generators, alg.socle_degree + 2))
    for syz in (module, augmented, minimal):
        other = t1_graded(alg, syzygies=syz, check=False)
        assert other.t1 == base.t1 and other.hom == base.hom
