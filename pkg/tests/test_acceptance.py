"""Acceptance criteria 1-10.

Each test records a pass/fail line that is printed in the terminal summary
(and when this file is run as a script).  Reference values marked as frozen
were produced by an independent route (skein oracle, hand-entered braid
data) and then fixed here.
"""
import random
import time

import pytest

from conftest import ACCEPTANCE, perturb, random_diagrams
from lcocycle.braid import TETRAHEDRON_STRATA, CUBE_EDGES, cube_edge_sum, parse_braid, tetrahedron_sum
from lcocycle.cli import resolve
from lcocycle.diagram import add_curl, from_braid, linking_number, parse_dt
from lcocycle.invariants import (alexander, alexander_vector, conway, conway_skein_oracle, v2)
from lcocycle.poly import LaurentPolynomial as LP
from lcocycle.scan import (ScanParameter, bracket_cycle, cancel_by_vector, enumerate_moves,
                           evaluate, scan_traces, vector_multiset)

Z = LP.monomial(1, 1, "z")
SIX_2 = LP.from_list([1, 0, -1, 0, -1])  # 1 - z^2 - z^4


def record(n, ok, note=""):
    ACCEPTANCE[n] = (bool(ok), note)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {note}")
    assert ok, note


def fig8_param(side="under"):
    K = resolve("fig8")
    return ScanParameter(K, 3, side)


def green_black(d):
    return d.component_index("green"), d.component_index("black")


# ---------------------------------------------------------------------------

def test_criterion_1_tetrahedron():
    t0 = time.time()
    full = tetrahedron_sum()
    partial = [name for name in TETRAHEDRON_STRATA if not tetrahedron_sum(exclude=[name])]
    dt = time.time() - t0
    ok = not full and not partial and dt < 1
    record(1, ok, f"sum empty={not full}, strata whose removal leaves 0: {partial}, {dt:.2f}s")


def test_criterion_2_cube_equator():
    t0 = time.time()
    bad = [e for e in CUBE_EDGES if cube_edge_sum(e)]
    dt = time.time() - t0
    record(2, not bad and len(CUBE_EDGES) == 6 and dt < 1,
           f"nonzero edges: {bad}, {dt:.2f}s")


def test_criterion_3_conway_engine():
    t0 = time.time()
    ds = random_diagrams(3, 100, components=None, max_crossings=10)
    skein_bad = oracle_bad = 0
    for d in ds:
        c = conway(d)
        if c != conway_skein_oracle(d):
            oracle_bad += 1
        for q, x in d.crossings.items():
            other = conway(d.switch_crossing(q))
            plus, minus = (c, other) if x.sign > 0 else (other, c)
            if plus - minus != Z * conway(d.smooth_crossing(q)):
                skein_bad += 1
    # the lk-3 link of the trefoil scan closes to L8a10{1}
    v = evaluate(resolve("trefoil+"), fig8_param())
    l8 = [t for t in v.terms if t.smoothing == "after" and t.event == 3][0].diagram
    l8a10 = conway(l8) == 3 * Z - Z ** 5
    six2 = conway(parse_dt("4 8 10 12 2 6")) == SIX_2
    dt = time.time() - t0
    ok = not skein_bad and not oracle_bad and l8a10 and six2 and dt < 60
    record(3, ok, f"skein failures {skein_bad}, oracle mismatches {oracle_bad}, "
                  f"L8a10 {l8a10}, 6_2 {six2}, {dt:.1f}s")


def test_criterion_4_trefoil_scan():
    t0 = time.time()
    T = resolve("trefoil+")
    v = evaluate(T, fig8_param())
    moves = [e for e in v.events if e.contributing]
    riii = [e for e in moves if e.kind == "RIII"]
    shape = (len(moves) == 4 and len(riii) == 3
             and all(e.local_type == 4 and e.sign == -1 for e in riii)
             and sum(e.kind == "RII-identical" for e in moves) == 1)
    buckets = {}
    for t in v.terms:
        g, b = green_black(t.diagram)
        buckets.setdefault(linking_number(t.diagram, g, b), []).append(t)
    cancel = all(not vector_multiset(type(v)(buckets.get(k, []))) for k in (2, 3))
    one = buckets.get(1, [])
    kinds = sorted((str(conway(t.diagram.sublink([t.diagram.component_index("green")]))),
                    str(conway(t.diagram.sublink([t.diagram.component_index("black")]))))
                   for t in one)
    lk1 = kinds == [("1", "1 + z^2"), ("1 + z^2", "1")]
    dt = time.time() - t0
    ok = shape and len(v.terms) == 8 and cancel and lk1 and dt < 10
    record(4, ok, f"moves {len(moves)} ({len(riii)} RIII), terms {len(v.terms)}, "
                  f"lk2/lk3 cancel {cancel}, lk1 (green, black) {kinds}, {dt:.1f}s")


def _lk2_green_v2(T):
    v = evaluate(T, fig8_param())
    out = []
    for t in v.terms:
        g, b = green_black(t.diagram)
        if linking_number(t.diagram, g, b) == 2:
            out.append((v2(t.diagram, g), t.event, v.events[t.event]))
    return v, out


def test_criterion_5_8_17():
    t0 = time.time()
    A, B = resolve("8_17"), resolve("inv:8_17")
    va, lka = _lk2_green_v2(A)
    vb, lkb = _lk2_green_v2(B)
    moves = (sum(e.contributing for e in va.events), sum(e.contributing for e in vb.events))
    a_ok = len(lka) == 6 and all(x[0] == 0 for x in lka)
    special = [x for x in lkb if x[0] == -1]
    b_ok = (len(lkb) == 6 and len(special) == 2 and sum(x[0] == 0 for x in lkb) == 4
            and all(e.kind == "RIII" and e.local_type == 4 and e.sign == -1 for _, _, e in special))
    # cabled: red linking numbers of the two green-6_2 terms
    p = fig8_param()
    cb = evaluate(B, p, d_green=True, cabled=True)
    pairs = []
    for t in cb.terms:
        if cb.events[t.event].roles.get("middle") != "green":
            continue
        av = alexander_vector(t.diagram)
        if av.lk("green", "black") == 2 and av.entry("green") == SIX_2:
            pairs.append((av.lk("red", "black"), av.lk("red", "green")))
    red_ok = sorted(pairs) == [(-1, 1), (0, 0)]
    # the Alexander-vector multisets (middle-red 3/4/5/7 moves dropped) differ
    ma = vector_multiset(evaluate(A, p, d_green=True, cabled=True, drop_middle_red=True))
    mb = vector_multiset(evaluate(B, p, d_green=True, cabled=True, drop_middle_red=True))
    six2_b = [k for k, m in mb.items() if dict(zip(k[0], k[1]))["green"] == SIX_2]
    six2_a = [k for k, m in ma.items() if dict(zip(k[0], k[1]))["green"] == SIX_2]
    differ = ma != mb and len(six2_b) == 2 and not six2_a
    # side check: type-8 moves with red middle branch; nontrivial green knots per move
    side = {}
    for name, T in (("8_17", A), ("-8_17", B)):
        v = evaluate(T, p, d_green=True, cabled=True)
        per_move = {}
        for t in v.terms:
            e = v.events[t.event]
            if e.kind == "RIII" and e.local_type == 8 and e.roles.get("middle") == "red":
                g = str(conway(t.diagram.sublink([t.diagram.component_index("green")])))
                if g != "1":
                    per_move.setdefault(t.event, set()).add(g)
        side[name] = sorted(sorted(gs) for gs in per_move.values())
    side_ok = side == {"8_17": [], "-8_17": [["1 + z^2"]]}
    dt = time.time() - t0
    ok = moves == (10, 10) and a_ok and b_ok and red_ok and differ and side_ok and dt < 60
    record(5, ok, f"moves {moves}, lk2 v2 8_17 {sorted(x[0] for x in lka)}, "
                  f"-8_17 {sorted(x[0] for x in lkb)}, red pairs {sorted(pairs)}, "
                  f"multisets differ {differ}, side check {side}, {dt:.1f}s")


def _green_six2(v):
    out = []
    for t in v.terms:
        d = t.diagram
        g = d.component_index("green")
        if conway(d.sublink([g])) == SIX_2:
            out.append(t)
    return out


def test_criterion_6_conway_knot():
    t0 = time.time()
    C, mC = resolve("conway"), resolve("inv:conway")
    p = fig8_param()
    hits_c = _green_six2(evaluate(C, p))
    vm = evaluate(mC, p)
    hits = _green_six2(vm)
    lks = []
    black_trivial = True
    for t in hits:
        g, b = green_black(t.diagram)
        lks.append(linking_number(t.diagram, g, b))
        black_trivial &= conway(t.diagram.sublink([b])) == LP.const(1)
    count_ok = len(hits) == 8 and sorted(lks) == [0] * 4 + [1] * 4 and black_trivial
    # moves a and b: the type-4 moves with a single green-6_2 term at lk 1
    cv = evaluate(mC, p, d_green=True, cabled=True)
    per_move = {}
    for t in _green_six2(cv):
        per_move.setdefault(t.event, []).append(t)
    ab = [ts[0] for ev, ts in per_move.items()
          if len(ts) == 1 and cv.events[ev].local_type == 4]
    ab_lk = sorted((alexander_vector(t.diagram).lk("red", "green"),
                    alexander_vector(t.diagram).lk("red", "black")) for t in ab)
    ab_ok = ab_lk == [(3, -2), (3, -2)]
    dt = time.time() - t0
    ok = count_ok and ab_ok and not hits_c and dt < 120
    record(6, ok, f"-C green-6_2 terms {len(hits)} with lk {sorted(lks)} (expected 8: 4x0, 4x1); "
                  f"moves a, b (lk(red,green), lk(red,black)) {ab_lk}; "
                  f"C green-6_2 terms {len(hits_c)}; {dt:.1f}s")


L1 = LP.from_list([2, -1, -6, 2, 2, -7, 2, 2, -6, -1, 2], 0, "t") * LP.from_list([1, -2, 1], 0, "t")
L2 = LP.from_list([2, -3, -2, 0, 0, -3, 0, 0, -2, -3, 2], 0, "t") * LP.from_list([1, -2, 1], 0, "t")


def _bracket_report(T, K):
    v = bracket_cycle(T, K, cabled=True)
    lk3 = [t for t in v.terms if alexander_vector(t.diagram).lk("green", "black") == 3]
    polys = [alexander(t.diagram) for t in lk3]
    has = [any(P.equal_up_to_units(L) for P in polys) for L in (L1, L2)]
    from_k = [t for t in lk3 if t.scan.startswith("cbar")]
    cancelled = cancel_by_vector(v)
    odd = [t for t in cancelled.terms if t.coefficient % 2]
    return has, len(from_k), len(v.terms), len(cancelled.terms), bool(odd)


def test_criterion_7_bracket():
    t0 = time.time()
    T, K = resolve("trefoil+"), resolve("fig8")
    has, from_k, raw, left, odd = _bracket_report(T, K)
    Tc = T
    for _ in range(3):
        Tc = add_curl(Tc, -1)
    has_c, from_k_c, raw_c, left_c, odd_c = _bracket_report(Tc, K)
    dt = time.time() - t0
    ok = all(has) and from_k == 0 and odd and all(has_c) and from_k_c == 0 and odd_c and dt < 300
    record(7, ok, f"L1 found {has[0]}, L2 found {has[1]}, lk-3 terms from the 4_1 side {from_k}, "
                  f"terms {raw} -> {left} after cancellation (odd coefficient {odd}); "
                  f"with three negative curls: L1 {has_c[0]}, L2 {has_c[1]}, {raw_c} -> {left_c}; "
                  f"{dt:.1f}s")


def test_criterion_8_invariance():
    t0 = time.time()
    rng = random.Random(8)
    p = fig8_param()
    words = {"3_1+": "1 1 1", "4_1": "2 -1 2 -1", "8_17": "2 2 -1 2 -1 2 -1 -1",
             "C": "2 2 2 1 -3 -2 -2 1 -2 1 -3"}
    bad = []
    for name, w in words.items():
        W = parse_braid(w)
        base = vector_multiset(evaluate(from_braid(W, "long"), p, d_green=True, cabled=True))
        for i in range(5):
            P, moves = perturb(W, rng, moves=rng.randint(1, 3))
            got = vector_multiset(evaluate(P, p, d_green=True, cabled=True))
            if got != base:
                bad.append((name, moves))
    dt = time.time() - t0
    record(8, not bad and dt < 600, f"20 perturbed diagrams, changed multisets: {bad}, {dt:.1f}s")


def test_criterion_9_cross_checks():
    t0 = time.time()
    ks = random_diagrams(9, 20, components=1, max_crossings=9, min_crossings=3)
    v2_bad = sum(v2(d) != conway(d)[2] for d in ks)
    ls = random_diagrams(99, 20, components=2, max_crossings=9, min_crossings=2)
    lk_bad = sum(linking_number(d, 0, 1) != conway(d)[1] for d in ls)
    dt = time.time() - t0
    record(9, not v2_bad and not lk_bad and dt < 60,
           f"v2 mismatches {v2_bad}/20, lk mismatches {lk_bad}/20, {dt:.1f}s")


def test_criterion_10_traces():
    p = fig8_param()
    runs = []
    for name in ("trefoil+", "8_17", "inv:8_17", "conway", "inv:conway"):
        T = resolve(name)
        runs.append((name, False, scan_traces(T, p, cabled=False)))
        if name != "trefoil+":
            runs.append((name, True, scan_traces(T, p, cabled=True)))
    T, K = resolve("trefoil+"), resolve("fig8")
    for TT, KK, c, tag in ((T, K, 3, "c"), (K, T, 2, "cbar")):
        for side in ("under", "over"):
            runs.append((f"bracket {tag}:{side}", True,
                         scan_traces(TT, ScanParameter(KK, c, side), cabled=True)))
    bad = [(n, cab) for n, cab, ok in runs if not ok]
    record(10, not bad, f"{len(runs)} scans, failures {bad}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
