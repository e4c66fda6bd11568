import pytest
from hypothesis import given, settings, strategies as st

from lcocycle.braid import (BraidError, BraidWord, CUBE_EDGES, TETRAHEDRON_STRATA, cube_edge_sum,
                            equal, normal_form, parse_braid, sum_reduce, tetrahedron_sum, word)

N = 4


@st.composite
def words(draw, n=N, max_len=12):
    letters = draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))),
                            max_size=max_len))
    return BraidWord(n, tuple(letters))


def test_parse_roundtrip():
    w = parse_braid("1 -2 3 2")
    assert w.strands == 4
    assert w.ints() == [1, -2, 3, 2]
    assert str(w) == "1 -2 3 2"


@pytest.mark.parametrize("text", ["1 0 2", "1 a", "1 5"])
def test_parse_errors(text):
    with pytest.raises(BraidError):
        parse_braid(text, strands=4)


def test_letter_range_checked():
    with pytest.raises(BraidError):
        BraidWord(3, ((3, 1),))


def test_braid_relation_and_far_commutation():
    assert equal(word(1, 2, 1), word(2, 1, 2))
    assert equal(word(1, 3, strands=4), word(3, 1, strands=4))
    assert not equal(word(1, 2), word(2, 1))
    assert equal(word(1, -2, -1), word(-2, -1, 2))


def test_identity_normal_form():
    assert normal_form(word(1, -1, 2, -2, strands=3)).is_identity()
    assert not normal_form(word(1, 1, strands=3)).is_identity()


@settings(max_examples=60, deadline=None)
@given(words())
def test_inverse_cancels(w):
    assert normal_form(w * w.inverse()).is_identity()
    assert normal_form(w.inverse() * w).is_identity()


@settings(max_examples=60, deadline=None)
@given(words())
def test_normal_form_word_is_equal(w):
    assert equal(normal_form(w).to_word(), w)


@settings(max_examples=60, deadline=None)
@given(words(), st.integers(0, 12), st.integers(1, N - 1), st.sampled_from((1, -1)))
def test_normal_form_ignores_inserted_pairs(w, p, i, e):
    p = min(p, len(w))
    letters = w.letters[:p] + ((i, e), (i, -e)) + w.letters[p:]
    assert normal_form(BraidWord(N, letters)) == normal_form(w)


@settings(max_examples=40, deadline=None)
@given(words(), words())
def test_equal_respects_permutation(a, b):
    if equal(a, b):
        assert a.permutation() == b.permutation()


def test_sum_reduce_cancels():
    s = sum_reduce([(1, word(1, 2, 1)), (-1, word(2, 1, 2)), (2, word(1, strands=3))])
    assert len(s) == 1 and list(s.values()) == [2]


def test_sum_reduce_mixed_strands():
    with pytest.raises(BraidError):
        sum_reduce([(1, word(1, strands=3)), (1, word(1, strands=4))])


def test_tetrahedron_zero_and_every_stratum_needed():
    assert not tetrahedron_sum()
    for name in TETRAHEDRON_STRATA:
        assert tetrahedron_sum(exclude=[name]), name


@pytest.mark.parametrize("edge", sorted(CUBE_EDGES))
def test_cube_edges_vanish(edge):
    assert not cube_edge_sum(edge)


def test_cube_edge_aliases_and_poles():
    assert not cube_edge_sum("5-3")
    with pytest.raises(BraidError):
        cube_edge_sum("1-2")
    with pytest.raises(BraidError):
        cube_edge_sum("9-9")
