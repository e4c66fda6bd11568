import random
import xml.dom.minidom

import pytest
from hypothesis import given, settings, strategies as st

from lcocycle.braid import parse_braid
from lcocycle.diagram import (DiagramError, Morse, add_curl, crossing_class, cross, cup, cap,
                              from_braid, from_morse, invert, linking_number, open_knot,
                              parse_dt, parse_pd, product, random_morse, render_svg, simplify,
                              to_morse, two_cable, writhe_and_whitney)
from lcocycle.invariants import conway


def long(w):
    return from_braid(parse_braid(w), "long")


def test_closed_and_long_braids():
    c = from_braid(parse_braid("1 1 1"), "closed")
    lg = long("1 1 1")
    assert len(c.components) == 1 and not c.left
    assert lg.left == (0,) and lg.right == (0,)
    assert c.writhe() == lg.writhe() == 3
    assert conway(c) == conway(lg)


def test_morse_width_checks():
    with pytest.raises(DiagramError):
        Morse((), (cap(0),)).widths()
    with pytest.raises(DiagramError):
        Morse(((1, ("green", 0)), (1, ("green", 0))), (cap(0),)).directions()


def _signature(d):
    return (sorted(x.sign for x in d.crossings.values()), len(d.components),
            str(conway(d)), d.writhe())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 8))
def test_to_morse_roundtrip_closed(seed, n):
    d = from_morse(random_morse(random.Random(seed), n))
    pd_only = parse_pd(d.pd_code())
    back = from_morse(to_morse(pd_only))
    assert _signature(back)[:3] == _signature(pd_only)[:3]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=9))
def test_to_morse_roundtrip_long(ints):
    d = long(" ".join(map(str, ints)))
    stripped = type(d)(d.crossings, d.components, d.paths, d.left, d.right)
    back = from_morse(to_morse(stripped))
    assert back.left == (0,)
    assert _signature(back) == _signature(d)
    if len(d.components) > 1:
        return
    assert sorted(crossing_class(back, q) for q in back.crossings) == \
        sorted(crossing_class(d, q) for q in d.crossings)


def test_parse_pd_trefoil():
    d = parse_pd("[1,5,2,4],[3,1,4,6],[5,3,6,2]")
    assert len(d.components) == 1 and d.n_crossings() == 3
    assert str(conway(d)) == "1 + z^2"


@pytest.mark.parametrize("bad", ["1,2,3", "[1,2,3,4]"])
def test_parse_pd_errors(bad):
    with pytest.raises(DiagramError):
        parse_pd(bad)


def test_parse_dt_chirality_and_values():
    assert parse_dt("4 6 2").writhe() == -3
    assert parse_dt("-4 -6 -2").writhe() == 3
    assert str(conway(parse_dt("4 6 8 2"))) == "1 - z^2"
    # 8_17 and 6_2
    assert str(conway(parse_dt("6 8 12 14 4 16 2 10"))) == "1 - z^2 - 2z^4 - z^6"
    assert str(conway(parse_dt("4 8 10 12 2 6"))) == "1 - z^2 - z^4"


@pytest.mark.parametrize("dt", ["4 6 2", "4 6 8 2", "4 8 10 12 2 6"])
def test_open_knot_every_edge(dt):
    d = parse_dt(dt, "green")
    for e in d.paths[0]:
        lg = open_knot(d, e)
        assert lg.left == (0,) and lg.right == (0,)
        assert conway(lg) == conway(d) and lg.writhe() == d.writhe()


def test_open_knot_rejects_links():
    hopf = parse_pd("[1,3,2,4],[3,1,4,2]")
    with pytest.raises(DiagramError):
        open_knot(hopf)


def test_two_cable_is_blackboard():
    for w in ("1 1 1", "2 -1 2 -1", "2 2 -1 2 -1 2 -1 -1"):
        d = long(w)
        c = two_cable(d)
        assert sorted(x.color for x in c.components) == ["green", "red"]
        g, r = c.component_index("green"), c.component_index("red")
        assert linking_number(c, g, r) == d.writhe()
        assert c.n_crossings() == 4 * d.n_crossings()


def test_red_side_switch_changes_order():
    from lcocycle.diagram import _morse_of, two_cable_morse
    m = _morse_of(long("1 1 1"))
    right = two_cable_morse(m)[0].inputs
    left = two_cable_morse(m, red_left=True)[0].inputs
    assert [t[0] for _, t in right] == ["red", "green"]
    assert [t[0] for _, t in left] == ["green", "red"]


def test_product_and_curls():
    t, f = long("1 1 1"), long("2 -1 2 -1")
    p = product(t, f)
    assert conway(p) == conway(t) * conway(f)
    for sign in (1, -1):
        for loop in ("above", "below"):
            c = add_curl(t, sign, loop=loop)
            assert conway(c) == conway(t)
            assert c.writhe() == t.writhe() + sign
    w0 = writhe_and_whitney(t)[1]
    assert writhe_and_whitney(add_curl(t, 1, loop="above"))[1] == w0 + 1
    assert writhe_and_whitney(add_curl(t, 1, loop="below"))[1] == w0 - 1


def test_product_needs_long():
    with pytest.raises(DiagramError):
        product(from_braid(parse_braid("1 1 1")), long("1 1 1"))


def test_invert_keeps_conway_and_is_involutive():
    d = long("2 2 -1 2 -1 2 -1 -1")
    i = invert(d)
    assert conway(i) == conway(d)
    assert _signature(invert(i)) == _signature(d)


def test_crossing_class_trefoil():
    d = long("1 1 1")
    assert sorted(crossing_class(d, q) for q in d.crossings) == [0, 0, 1]


def test_smoothing_splits_colours():
    d = long("1 1 1")
    q = next(q for q in d.crossings if crossing_class(d, q) == 1)
    s = d.smooth_crossing(q, new_color="black")
    assert sorted(c.color for c in s.components) == ["black", "green"]


def test_simplify_removes_r2():
    d = long("1 1 1 2 -2")
    s = simplify(d)
    assert s.n_crossings() <= 3 and conway(s) == conway(d)


def test_standard_closure_of_long_knot():
    d = long("2 -1 2 -1")
    c = d.standard_closure()
    assert not c.left and conway(c) == conway(d)


def test_render_svg_is_xml():
    svg = render_svg(two_cable(long("2 -1 2 -1")))
    doc = xml.dom.minidom.parseString(svg)
    assert doc.documentElement.tagName == "svg"
    assert svg.count("<line") > 10
