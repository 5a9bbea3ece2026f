import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from apolar import Field, MPoly, Ring, bidegree_components, contract, format_poly, parse_poly
from apolar.errors import NonIntegerExponent, NotBigraded, PolySyntaxError, RingMismatch, UnknownVariable
from apolar.field import MAX_PRIME
from apolar.poly import ring_for_texts

FP = Field(32003)
QQ = Field.rational()
OPS = Ring(("x1", "x2", "x3", "x4"), FP)
DUAL = OPS.divided_power_ring()


def test_parse_two_term_cubic():
    p = parse_poly("x1*x2*x3 + x2^2*x4", OPS)
    assert len(p.terms()) == 2
    assert p.degree == 3 and p.is_homogeneous()


def test_zero_exponent_is_constant_one():
    assert parse_poly("x1^0", OPS) == OPS.one()


@pytest.mark.parametrize(
    "text, error, position",
    [
        ("x1**2", PolySyntaxError, 2),
        ("x1^", PolySyntaxError, 3),
        ("x1 + * x2", PolySyntaxError, 5),
        ("x9", UnknownVariable, 0),
        ("x1^1.5", NonIntegerExponent, 3),
        ("x1^-2", NonIntegerExponent, 3),
        ("(x1", PolySyntaxError, 0),
    ],
)
def test_parse_errors_carry_position(text, error, position):
    with pytest.raises(error) as info:
        parse_poly(text, OPS)
    assert info.value.position == position


def test_fractions_only_in_rational_mode():
    with pytest.raises(PolySyntaxError):
        parse_poly("3/2*x1", OPS)
    p = parse_poly("3/2*x1 - 1/3", OPS.with_field(QQ))
    assert format_poly(p) == "3/2*x1 - 1/3"


def test_coefficients_reduce_mod_p():
    assert parse_poly("32004*x1", OPS) == parse_poly("x1", OPS)
    assert parse_poly("32003*x1 + x2", OPS) == parse_poly("x2", OPS)


def test_ring_for_texts_fills_index_gaps():
    ring = ring_for_texts(["x1*x3"], FP)
    assert ring.names == ("x1", "x2", "x3")


def test_field_bounds():
    with pytest.raises(ValueError):
        Field(MAX_PRIME + 1)
    with pytest.raises(ValueError):
        Field(15)
    assert Field.from_spec("fp:101").p == 101
    assert Field.from_spec("rational").p is None


def test_contract_example_has_no_binomial_factor():
    form = parse_poly("X1*X2*X3 + X1*X2^2", DUAL)
    assert contract(parse_poly("x2", OPS), form) == parse_poly("X1*X3 + X1*X2", DUAL)


def test_contract_degenerate_cases():
    assert contract(parse_poly("x1^2", OPS), parse_poly("X1", DUAL)).is_zero()
    form = parse_poly("3*X1*X4^2 - X2^3", DUAL)
    assert contract(OPS.one(), form) == form


def test_contract_rejects_mismatched_rings():
    other = Ring(("X1", "X2"), FP)
    with pytest.raises(RingMismatch):
        contract(parse_poly("x1", OPS), other.gen(0))


def test_bidegree_components_examples():
    ring = Ring(("x1", "x2", "y1"), FP, blocks=("x", "x", "y"))
    (comp,) = bidegree_components(parse_poly("x1*y1", ring))
    assert comp.bidegree == (1, 1) and comp.kind == "mixed"
    (comp,) = bidegree_components(parse_poly("x1*x2", ring))
    assert comp.bidegree == (2, 0) and comp.kind == "pure-x"
    comps = bidegree_components(parse_poly("x1*y1 + x1^2", ring))
    assert {c.bidegree for c in comps} == {(1, 1), (2, 0)}


def test_bidegree_zero_is_not_pure():
    ring = Ring(("x1", "y1"), FP, blocks=("x", "y"))
    (comp,) = bidegree_components(ring.constant(5))
    assert comp.kind == "neither"


def test_bidegree_needs_tags():
    with pytest.raises(NotBigraded):
        bidegree_components(parse_poly("x1", OPS))


# properties

exponents = st.tuples(*[st.integers(0, 4)] * 4)
coefficients = st.integers(0, FP.p - 1)


@st.composite
def homogeneous(draw, ring, degree=None):
    d = draw(st.integers(0, 5)) if degree is None else degree
    mons = oracles.monomials(ring.nvars, d)
    chosen = draw(st.lists(st.sampled_from(mons), max_size=5, unique=True))
    return MPoly.from_terms(ring, [(m, draw(coefficients)) for m in chosen])


@settings(max_examples=100, derandomize=True, deadline=None)
@given(homogeneous(OPS), homogeneous(OPS), homogeneous(DUAL))
def test_contraction_is_associative(s, t, form):
    assert contract(s * t, form) == contract(s, contract(t, form))


@settings(max_examples=100, derandomize=True, deadline=None)
@given(homogeneous(OPS, 2), homogeneous(OPS, 2), homogeneous(DUAL), coefficients, coefficients)
def test_contraction_is_bilinear(s, t, form, a, b):
    assert contract(s * a + t * b, form) == contract(s, form) * a + contract(t, form) * b


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.dictionaries(exponents, st.integers(-(10**6), 10**6), max_size=6))
def test_print_parse_round_trip(terms):
    p = MPoly.from_terms(OPS, terms.items())
    assert parse_poly(format_poly(p), OPS) == p


@settings(max_examples=50, derandomize=True, deadline=None)
@given(st.dictionaries(exponents, st.integers(-50, 50), max_size=5))
def test_round_trip_over_rationals(terms):
    ring = OPS.with_field(QQ)
    p = MPoly.from_terms(ring, [(e, QQ(c) / 7) for e, c in terms.items()])
    assert parse_poly(format_poly(p), ring) == p


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 4), coefficients, max_size=6))
def test_bidegree_components_sum_back(terms):
    ring = Ring(("x1", "x2", "y1", "y2"), FP, blocks=("x", "x", "y", "y"))
    p = MPoly.from_terms(ring, terms.items())
    comps = bidegree_components(p)
    total = ring.zero()
    for c in comps:
        total = total + c.poly
        assert all(sum(ring.bidegree(e)) == sum(e) and ring.bidegree(e) == c.bidegree for e in c.poly.as_dict())
    assert total == p
