import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_diagrams
from lcocycle.braid import parse_braid
from lcocycle.diagram import from_braid, linking_number, parse_dt, parse_pd, two_cable
from lcocycle.invariants import (InvariantError, SkeinBoundError, alexander, alexander_vector,
                                 conway, conway_skein_oracle, is_split, v2)
from lcocycle.poly import LaurentPolynomial as LP, conway_to_alexander

# frozen table: closures of braid words and their Conway polynomials (low degree first)
KNOWN = [
    ("1", [1]),
    ("1 1", [0, 1]),
    ("1 1 1", [1, 0, 1]),
    ("-1 -1 -1", [1, 0, 1]),
    ("2 -1 2 -1", [1, 0, -1]),
    ("1 1 1 1 1", [1, 0, 3, 0, 1]),
    ("1 1 1 1", [0, 2, 0, 1]),
    ("2 2 -1 2 -1 2 -1 -1", [1, 0, -1, 0, -2, 0, -1]),
    ("1 -2 1 -2 1 -2", [0, 0, 0, 0, 1]),
]


@pytest.mark.parametrize("w,coeffs", KNOWN)
def test_known_conway(w, coeffs):
    d = from_braid(parse_braid(w), "closed")
    assert conway(d) == LP.from_list(coeffs)
    assert conway_skein_oracle(d) == LP.from_list(coeffs)


def test_unlinks_and_split():
    d = from_braid(parse_braid("1 -1", strands=3), "closed")
    assert is_split(d) or conway(d) == LP.const(0)
    assert conway(d).is_zero()
    assert conway(parse_pd("[1,1,2,2]")) == LP.const(1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_skein_relation(seed):
    z = LP.monomial(1, 1)
    (d,) = random_diagrams(seed, 1, components=None, max_crossings=8)
    c = conway(d)
    for q, x in d.crossings.items():
        o = conway(d.switch_crossing(q))
        plus, minus = (c, o) if x.sign > 0 else (o, c)
        assert plus - minus == z * conway(d.smooth_crossing(q))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_engine_matches_oracle(seed):
    (d,) = random_diagrams(seed, 1, components=None, max_crossings=9)
    assert conway(d) == conway_skein_oracle(d)


def test_oracle_bound():
    d = from_braid(parse_braid("1 -2 1 -2 1 -2 1 -2 1 -2 1 -2"), "closed")
    with pytest.raises(SkeinBoundError):
        conway_skein_oracle(d, bound=2)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_v2_is_second_coefficient(seed):
    (d,) = random_diagrams(seed, 1, components=1, max_crossings=9)
    assert v2(d) == conway(d)[2]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_linking_is_first_coefficient(seed):
    (d,) = random_diagrams(seed, 1, components=2, max_crossings=9)
    assert linking_number(d, 0, 1) == conway(d)[1]


def test_v2_needs_component():
    with pytest.raises(InvariantError):
        v2(from_braid(parse_braid("1 1"), "closed"))


def test_alexander_of_trefoil_and_fig8():
    t = from_braid(parse_braid("1 1 1"), "closed")
    f = parse_dt("4 6 8 2")
    assert alexander(t) == LP.from_list([1, -1, 1], var="t")
    assert alexander(f) == LP.from_list([1, -3, 1], var="t")
    assert conway_to_alexander(LP.const(0)).is_zero()


def test_alexander_vector_labels_and_linking():
    d = from_braid(parse_braid("1 1 1"), "long", "green")
    c = two_cable(d)
    av = alexander_vector(c)
    assert av.labels == ("whole", "green", "red")
    assert av.lk("green", "red") == 3
    assert av.entry("green") == LP.from_list([1, 0, 1])
    three = from_braid(parse_braid("1 1 2 2"), "closed").recolored(
        {0: "red", 1: "green", 2: "black"})
    av3 = alexander_vector(three)
    assert av3.labels == ("whole", "green-black", "green-red", "black-red",
                          "green", "black", "red")
    lks = [av3.lk(*pair.split("-")) for pair in av3.labels[1:4]]
    assert sorted(lks) == [0, 1, 1]
    for lk, p in zip(lks, av3.polys[1:4]):
        assert p[1] == lk


def test_alexander_vector_rejects_uncoloured_links():
    d = from_braid(parse_braid("1 1"), "closed", "uncolored")
    with pytest.raises(InvariantError):
        alexander_vector(d)
