"""Scans: push a long tangle T over or under one branch of a crossing c of K.

The combined diagram is K with T threaded as a bead onto the other branch of
c.  In Morse form the crossing c becomes a box: the bead strand carries the
slices of T, and the sweeping branch crosses all of T's strands at one
x-position.  Moving that position from the end of T to its start is the scan;
every crossing of T gives a triple-crossing move and every cup or cap of T an
auto-tangency.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .braid import BraidWord
from .diagram import (Diagram, DiagramError, Morse, cross, crossing_class, from_morse,
                      simplify, smooth_morse, two_cable_morse, _morse_of)


class ModelError(ValueError):
    """A configuration outside the braid-like sweep model (for example star-like)."""


# local types of braid-like triple crossings: left-hand words
TYPE_WORDS = {
    1: ((1, 1), (2, 1), (1, 1)),
    3: ((1, 1), (2, -1), (1, -1)),
    4: ((1, -1), (2, -1), (1, 1)),
    5: ((2, 1), (1, 1), (2, -1)),
    7: ((2, -1), (1, 1), (2, 1)),
    8: ((2, -1), (1, -1), (2, -1)),
}

# weight of [before with d smoothed]; the after-term gets the opposite weight
_TYPE_WEIGHT = {1: 1, 5: 1, 7: 1, 3: -1, 4: -1, 8: -1}

PARTIAL_SMOOTHINGS = {
    1: ((1, ((1, 1), (1, 1))), (-1, ((2, 1), (2, 1)))),
    3: ((1, ((1, -1), (2, 1))), (-1, ((1, 1), (2, -1)))),
    4: ((1, ((2, 1), (1, -1))), (-1, ((2, -1), (1, 1)))),
    5: ((1, ((1, 1), (2, -1))), (-1, ((1, -1), (2, 1)))),
    7: ((1, ((2, -1), (1, 1))), (-1, ((2, 1), (1, -1)))),
    8: ((1, ((1, -1), (1, -1))), (-1, ((2, -1), (2, -1)))),
    "RII": ((1, ((1, 1),)), (-1, ((1, -1),))),
}

MIDDLE_RED_TYPES = (3, 4, 5, 7)

# side of the orientation on which the red copy of a 2-cable runs;
# calibrated on the red linking numbers of the 8_17 and Conway-knot examples
RED_LEFT = False


def right_word(w):
    """Other side of the braid relation s_a^x s_b^y s_a^z = s_b^z s_a^y s_b^x."""
    (a, x), (b, y), (_, z) = w
    return ((b, z), (a, y), (b, x))


def classify_and_sign(before, after=None) -> tuple[int, int]:
    """Local type and sign of a triple-crossing move given its 3-braid words."""
    before = tuple(tuple(l) for l in before)
    for t, lhs in TYPE_WORDS.items():
        rhs = right_word(lhs)
        if before == lhs and (after is None or tuple(map(tuple, after)) == rhs):
            return t, 1
        if before == rhs and (after is None or tuple(map(tuple, after)) == lhs):
            return t, -1
    raise ModelError(f"not a braid-like triple crossing: {before} -> {after}")


def partial_smoothing(event) -> tuple:
    """The two signed local 3-braids (or 2-braids for auto-tangencies) of an event."""
    if event.kind == "RIII":
        if event.local_type not in PARTIAL_SMOOTHINGS:
            raise ModelError(f"local type {event.local_type} is star-like")
        pair = PARTIAL_SMOOTHINGS[event.local_type]
        strands = 3
    elif event.kind == "RII-identical":
        pair = PARTIAL_SMOOTHINGS["RII"]
        strands = 2
    else:
        raise ModelError("opposite-tangent auto-tangencies do not contribute")
    return tuple((event.sign * s, BraidWord(strands, tuple(w))) for s, w in pair)


# --------------------------------------------------------------------------
# parameters, events, values

@dataclass
class ScanParameter:
    """Auxiliary long knot K (uncabled), crossing id c of K, and the side."""

    K: Diagram
    c: int
    side: str = "under"  # "under": push under the over-branch; "over": over the under-branch
    name: str = ""

    def __post_init__(self):
        if self.side not in ("under", "over"):
            raise ValueError(f"side must be 'under' or 'over', not {self.side!r}")
        if len(self.K.left) != 1 or len(self.K.right) != 1 or len(self.K.components) != 1:
            raise ValueError("K must be an uncabled long knot")
        m = _morse_of(self.K)
        if not 0 <= self.c < len(m.slices) or m.slices[self.c].kind != "cross":
            raise ValueError(f"crossing {self.c} does not exist in K")
        s = m.slices[self.c]
        dirs = m.directions()[self.c]
        if dirs[s.pos] < 0 or dirs[s.pos + 1] < 0:
            raise ModelError("both branches of c must run in +x")

    def label(self):
        return self.name or f"K{self.K.n_crossings()}:c{self.c}:{self.side}"


@dataclass
class MoveEvent:
    index: int
    kind: str  # "RIII", "RII-identical", "RII-opposite"
    sign: int
    location: int  # slice of T swept past
    local_type: int | None = None
    d_colors: tuple = ()
    d_class: int | None = None
    roles: dict = field(default_factory=dict)  # highest/middle/lowest -> colour
    words: tuple = ()  # (before, after) 3-braid words
    trace: tuple = ()  # trace positions of d (and its partner for auto-tangencies)
    _terms: tuple = field(default=(), repr=False, compare=False)

    @property
    def contributing(self):
        return self.kind in ("RIII", "RII-identical")

    @property
    def d_green(self):
        return self.d_colors == ("green", "green")


@dataclass
class Term:
    coefficient: int
    diagram: Diagram
    morse: Morse = field(repr=False, default=None)
    event: int = -1
    smoothing: str = ""
    local_type: int | None = None
    scan: str = ""

    def to_json(self, vector=None):
        out = {"coefficient": self.coefficient,
               "provenance": {"scan": self.scan, "event": self.event,
                              "smoothing": self.smoothing, "local_type": self.local_type},
               "diagram": self.diagram.to_json()}
        if vector is not None:
            out["invariants"] = vector
        return out


@dataclass
class CocycleValue:
    terms: list = field(default_factory=list)
    events: list = field(default_factory=list)

    def __add__(self, other):
        return CocycleValue(self.terms + other.terms, self.events + other.events)

    def __neg__(self):
        return CocycleValue([replace(t, coefficient=-t.coefficient) for t in self.terms],
                            self.events)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


# --------------------------------------------------------------------------
# the sweep

def _level_tag(m: Morse):
    lv = 0
    for s in m.slices:
        if s.kind == "cup" and s.tag[0] == "black":
            lv = max(lv, s.tag[1])
    for _, t in m.inputs:
        if t[0] == "black":
            lv = max(lv, t[1])
    return lv


class Sweep:
    """All intermediate diagrams of one scan, built lazily."""

    def __init__(self, T: Diagram, param: ScanParameter, cabled: bool | None = None,
                 red_left: bool | None = None):
        if red_left is None:
            red_left = RED_LEFT
        tm = _morse_of(T)
        t_colors = [t[0] for _, t in tm.inputs]
        if any(d < 0 for d, _ in tm.inputs):
            raise ModelError("T must start with +x strands")
        if t_colors == ["green"]:
            t_cabled = False
        elif sorted(t_colors) == ["green", "red"]:
            t_cabled = True
        else:
            raise ModelError(f"T must be a long knot or its 2-cable, got inputs {t_colors}")
        if cabled is None:
            cabled = t_cabled
        if cabled and not t_cabled:
            tm = two_cable_morse(tm, red_left=red_left)[0]
        elif t_cabled and not cabled:
            raise ModelError("T is cabled but an uncabled scan was requested")
        self.cabled = cabled
        self.D = tm
        self.param = param
        self.widths = tm.widths()
        self.dirs = tm.directions()
        self.level = _level_tag(tm) + 1
        km = _morse_of(param.K)
        s = km.slices[param.c]
        sweeper_over = param.side == "under"
        self.rising = (s.over > 0) == sweeper_over
        if self.rising:
            self.sweep_over = 1 if sweeper_over else -1
        else:
            self.sweep_over = -1 if sweeper_over else 1
        p = s.pos
        if not cabled:
            self.K = km
            self.prefix = km.slices[:param.c]
            self.suffix = km.slices[param.c + 1:]
            self.P = p
            self.inputs = km.inputs
        else:
            kc, cmap = two_cable_morse(km, red_left=red_left)
            j = [e[0] for e in cmap[param.c]]
            self.K = kc
            self.P, before, other = _cabled_layout(kc, cmap[param.c], self.rising,
                                                   self.sweep_over, 2 * p, red_left)
            self.prefix = kc.slices[:j[0]] + (other if before else ())
            self.suffix = (() if before else other) + kc.slices[j[3] + 1:]
            self.inputs = kc.inputs
        self.L0 = len(self.prefix)
        self.n = len(tm.slices)
        self._cache = {}

    # slices of the box at sweep position s (sweeper between T slices s-1 and s)
    def box(self, s: int):
        w = self.widths[s]
        P, o = self.P, self.sweep_over
        D = self.D.slices
        if self.rising:
            pre = tuple(_shift(x, P + 1) for x in D[:s])
            sw = tuple(cross(P + k, o) for k in range(w))
            post = tuple(_shift(x, P) for x in D[s:])
        else:
            pre = tuple(_shift(x, P) for x in D[:s])
            sw = tuple(cross(P + w - 1 - k, o) for k in range(w))
            post = tuple(_shift(x, P + 1) for x in D[s:])
        return pre + sw + post

    def morse(self, s: int) -> Morse:
        if s not in self._cache:
            m = Morse(self.inputs, self.prefix + self.box(s) + self.suffix)
            self._cache[s] = m
        return self._cache[s]

    def diagram(self, s: int) -> Diagram:
        key = ("d", s)
        if key not in self._cache:
            self._cache[key] = from_morse(self.morse(s))
        return self._cache[key]

    def sweeper_slice(self, s: int, k: int) -> int:
        """Slice id of the crossing between the sweeper and T-strand k at position s."""
        w = self.widths[s]
        if not 0 <= k < w:
            raise IndexError(k)
        j = k if self.rising else w - 1 - k
        return self.L0 + s + j

    def t_slice(self, s: int, i: int) -> int:
        return self.L0 + i + (0 if i < s else self.widths[s])

    def start_trace(self) -> int:
        """T-strand position (at the end of T) whose sweeper crossing is c."""
        return _output_colors(self.D).index("green")


def _output_colors(m: Morse):
    cur = [t[0] for _, t in m.inputs]
    for s in m.slices:
        if s.kind == "cup":
            cur[s.pos:s.pos] = [s.tag[0], s.tag[0]]
        elif s.kind == "cap":
            del cur[s.pos:s.pos + 2]
        else:
            cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
    return cur


def _cabled_layout(kc: Morse, entries, rising: bool, over: int, base: int, red_left: bool):
    """Rearrange the four crossings of a cabled c so the green sweeper's two are adjacent.

    Returns (P, others_before, other_slices).  The other branch's crossings go
    after the box when that is an isotopy, so T starts before both branches.
    """
    from .braid import equal
    j = [e[0] for e in entries]
    sl = [kc.slices[i] for i in j]
    key = 1 if rising else 2
    sweep = [k for k, e in enumerate(entries) if e[key] == "green"]
    other = tuple(sl[k] for k in range(4) if k not in sweep)

    def local(seq):
        return BraidWord(4, tuple((x.pos - base + 1, -x.over) for x in seq))

    # labels 0..3 at base..base+3: A pair then B pair; green is the lower of a +x pair
    g = 0 if red_left else 1
    sweeper = g if rising else 2 + g
    target = local(sl)
    for before in (False, True):
        for P in range(base, base + 2):
            if rising:
                box = (cross(P, over), cross(P + 1, over))
            else:
                box = (cross(P + 1, over), cross(P, over))
            seq = other + box if before else box + other
            if not equal(local(seq), target):
                continue
            cur = list(range(4))
            for x in (other if before else ()):
                q = x.pos - base
                cur[q], cur[q + 1] = cur[q + 1], cur[q]
            at = P - base if rising else P - base + 2
            if cur[at] == sweeper:
                return P, before, other
    raise ModelError("cannot isolate the green branch of c")


def _shift(x, k):
    from dataclasses import replace
    return replace(x, pos=x.pos + k)


def _local_word(m: Morse, slices: Sequence[int]):
    """The 3-braid word read off three crossing slices of m, in slice order."""
    slices = sorted(slices)
    cur = [("in", i) for i in range(len(m.inputs))]
    ids = None
    out = []
    for idx in range(slices[-1] + 1):
        s = m.slices[idx]
        if s.kind == "cup":
            cur[s.pos:s.pos] = [("cup", idx, 0), ("cup", idx, 1)]
            continue
        if s.kind == "cap":
            del cur[s.pos:s.pos + 2]
            continue
        if idx in slices:
            a, b = cur[s.pos], cur[s.pos + 1]
            if ids is None:
                ids = {a, b}
            else:
                ids |= {a, b}
            out.append((idx, a, b, s.over))
        cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
    if len(ids) != 3:
        raise ModelError("three crossings do not form a triple point")
    # replay to get local positions
    cur = [("in", i) for i in range(len(m.inputs))]
    word = []
    for idx in range(slices[-1] + 1):
        s = m.slices[idx]
        if s.kind == "cup":
            cur[s.pos:s.pos] = [("cup", idx, 0), ("cup", idx, 1)]
            continue
        if s.kind == "cap":
            del cur[s.pos:s.pos + 2]
            continue
        if idx in slices:
            order = [x for x in cur if x in ids]
            r = order.index(cur[s.pos])
            if order[r + 1] != cur[s.pos + 1]:
                raise ModelError("triple crossing strands are not adjacent")
            word.append((r + 1, -s.over))
        cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
    return tuple(word)


def _colors_at(d: Diagram, q: int):
    over, under = d.crossing_components(q)
    return d.components[over].color, d.components[under].color


def _d_class(d: Diagram, q: int):
    try:
        return crossing_class(d, q)
    except DiagramError:
        return None


def enumerate_moves(T: Diagram, param: ScanParameter, cabled: bool | None = None,
                    sweep: Sweep | None = None) -> list:
    """All moves of the scan of T w.r.t. param, in sweep order."""
    sw = sweep or Sweep(T, param, cabled)
    D = sw.D
    events = []
    side_under = param.side == "under"
    for idx in range(sw.n - 1, -1, -1):
        sl = D.slices[idx]
        if sl.kind == "cross":
            ev = _riii_event(sw, idx, side_under)
        else:
            ev = _rii_event(sw, idx)
        ev.index = len(events)
        events.append(ev)
    return events


def _riii_event(sw: Sweep, idx: int, side_under: bool) -> MoveEvent:
    D = sw.D
    q = D.slices[idx].pos
    dirs = sw.dirs[idx]
    if dirs[q] < 0 or dirs[q + 1] < 0:
        raise ModelError(f"crossing {idx} of T is not braid-like relative to the sweep")
    b_state, a_state = idx + 1, idx
    bm, am = sw.morse(b_state), sw.morse(a_state)
    bx = sw.t_slice(b_state, idx)
    ax = sw.t_slice(a_state, idx)
    # before the move the crossing sits at T-level idx+1 positions q, q+1
    b_s = [sw.sweeper_slice(b_state, q), sw.sweeper_slice(b_state, q + 1)]
    a_s = [sw.sweeper_slice(a_state, q), sw.sweeper_slice(a_state, q + 1)]
    before = _local_word(bm, [bx] + b_s)
    after = _local_word(am, [ax] + a_s)
    t, sign = classify_and_sign(before, after)
    bd = sw.diagram(b_state)
    x_over, x_under = bd.crossing_components(bx)
    # d joins the sweeper to the lowest (side under) or highest strand of x
    k_d = _strand_of_x_at(sw, idx, want_over=not side_under)
    d_b = sw.sweeper_slice(b_state, k_d)
    # after the move that strand has passed x
    d_a = sw.sweeper_slice(a_state, 2 * q + 1 - k_d)
    sweeper_color = bd.components[bd.crossing_components(d_b)[0 if side_under else 1]].color
    roles = {"middle": bd.components[x_over if side_under else x_under].color}
    if side_under:
        roles["highest"], roles["lowest"] = sweeper_color, bd.components[x_under].color
    else:
        roles["highest"], roles["lowest"] = bd.components[x_over].color, sweeper_color
    ev = MoveEvent(0, "RIII", sign, idx, t, _colors_at(bd, d_b), _d_class(bd, d_b), roles,
                   (before, after), (k_d,))
    w = _TYPE_WEIGHT[t]
    ev._terms = ((w, "before", b_state, d_b), (-w, "after", a_state, d_a))
    return ev


def _strand_of_x_at(sw: Sweep, idx: int, want_over: bool) -> int:
    """Position (at T-level idx+1) of the over or under strand of T's crossing idx."""
    s = sw.D.slices[idx]
    q = s.pos
    # before the crossing the rising strand is at q; afterwards at q+1
    rising_over = s.over > 0
    if want_over == rising_over:
        return q + 1
    return q


def _rii_event(sw: Sweep, idx: int) -> MoveEvent:
    D = sw.D
    sl = D.slices[idx]
    q = sl.pos
    if sl.kind == "cup":
        state, sign = idx + 1, -1
        tip_up = sl.up > 0
    else:
        state, sign = idx, 1
        tip_up = sw.dirs[idx][q] > 0
    identical = tip_up == sw.rising
    d = sw.diagram(state)
    s1, s2 = sw.sweeper_slice(state, q), sw.sweeper_slice(state, q + 1)
    kind = "RII-identical" if identical else "RII-opposite"
    ev = MoveEvent(0, kind, sign, idx, None, _colors_at(d, s1), _d_class(d, s1), {},
                   (), (q, q + 1))
    if identical:
        neg, pos = (s1, s2) if d.crossings[s1].sign < 0 else (s2, s1)
        if d.crossings[neg].sign != -1 or d.crossings[pos].sign != 1:
            raise ModelError("auto-tangency crossings do not have opposite signs")
        ev._terms = ((sign, "smooth-negative", state, neg), (-sign, "smooth-positive", state, pos))
    return ev


# --------------------------------------------------------------------------
# evaluation

def _passes(ev: MoveEvent, d_green: bool, d_class, drop_middle_red: bool) -> bool:
    if not ev.contributing:
        return False
    if d_green and not ev.d_green:
        return False
    if d_class not in (None, "any") and ev.d_class != int(d_class):
        return False
    if drop_middle_red and ev.kind == "RIII" and ev.roles.get("middle") == "red" \
            and ev.local_type in MIDDLE_RED_TYPES:
        return False
    return True


def evaluate(T: Diagram, param: ScanParameter, d_green: bool = False, d_class="any",
             drop_middle_red: bool = False, cabled: bool | None = None,
             events: list | None = None) -> CocycleValue:
    """The value of the cocycle on the scan of T, as a list of signed terms."""
    sw = Sweep(T, param, cabled)
    evs = enumerate_moves(T, param, sweep=sw)
    tag = ("black", sw.level)
    terms = []
    for ev in evs:
        if not _passes(ev, d_green, d_class, drop_middle_red):
            continue
        for coef, which, state, q in ev._terms:
            m = smooth_morse(sw.morse(state), q, new_tag=tag)
            terms.append(Term(coef, simplify(from_morse(m)), m, ev.index, which,
                              ev.local_type, param.label()))
    if events is not None:
        events.extend(evs)
    return CocycleValue(terms, evs)


def trace_distinguished(events: list, widths: Sequence[int], D: Morse, start: int = 0,
                        d_green: bool = True) -> bool:
    """True iff every contributing d lies on the trace component of c.

    Traces are sweeper crossings indexed by T-strand positions: they follow
    their strand through triple crossings, are born in pairs at caps and die
    in pairs at cups.  With d_green only green distinguished crossings count.
    """
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    counter = [0]

    def new():
        counter[0] += 1
        return counter[0]

    n = len(widths) - 1
    cur = [new() for _ in range(widths[n])]
    c = cur[start] if cur else None
    checks = []
    for ev in events:
        idx = ev.location
        counts = ev.contributing and (ev.d_green or not d_green)
        # cur is indexed by positions at level idx+1
        if ev.kind == "RIII":
            if counts:
                checks.append(cur[ev.trace[0]])
            q = D.slices[idx].pos
            cur[q], cur[q + 1] = cur[q + 1], cur[q]
        elif D.slices[idx].kind == "cup":
            q = ev.trace[0]
            a, b = cur[q], cur[q + 1]
            parent[find(b)] = find(a)
            if counts:
                checks.append(a)
            del cur[q:q + 2]
        else:
            q = ev.trace[0]
            a = new()
            cur[q:q] = [a, a]
            if counts:
                checks.append(a)
        if len(cur) != widths[idx]:
            raise ModelError("trace bookkeeping lost track of the sweep")
    return all(find(x) == find(c) for x in checks)


def scan_traces(T: Diagram, param: ScanParameter, cabled: bool | None = None,
                d_green: bool = True) -> bool:
    """trace_distinguished for the scan of T."""
    sw = Sweep(T, param, cabled)
    evs = enumerate_moves(T, param, sweep=sw)
    return trace_distinguished(evs, sw.widths, sw.D, sw.start_trace(), d_green)


def term_vector(t: Term):
    from .invariants import alexander_vector
    return alexander_vector(t.diagram)


def cancel_by_vector(v: CocycleValue) -> CocycleValue:
    """Merge terms with equal Alexander vectors (and linking data); drop zero sums."""
    groups = {}
    order = []
    for t in v.terms:
        k = term_vector(t).key()
        if k not in groups:
            groups[k] = [0, t]
            order.append(k)
        groups[k][0] += t.coefficient
    out = []
    for k in order:
        coef, t = groups[k]
        if coef:
            out.append(replace(t, coefficient=coef))
    return CocycleValue(out, v.events)


def vector_multiset(v: CocycleValue) -> dict:
    """{vector key: total multiplicity} with zeros dropped."""
    acc = {}
    for t in v.terms:
        k = term_vector(t).key()
        acc[k] = acc.get(k, 0) + t.coefficient
    return {k: c for k, c in acc.items() if c}


# --------------------------------------------------------------------------
# bracket cycles

def one_crossings(K: Diagram) -> list:
    """1-crossings of a long knot whose two branches both run in +x."""
    m = _morse_of(K)
    dirs = m.directions()
    out = []
    for q in sorted(K.crossings):
        s = m.slices[q]
        if dirs[q][s.pos] > 0 and dirs[q][s.pos + 1] > 0 and crossing_class(K, q) == 1:
            out.append(q)
    return out


def _pick_one_crossing(K: Diagram, c):
    if c is not None:
        return c
    cs = one_crossings(K)
    if not cs:
        raise ModelError("no braid-like 1-crossing to scan through")
    return cs[0]


def bracket_cycle(d1: Diagram, d2: Diagram, cabled: bool = False, c=None, cbar=None,
                  d_class=1, d_green: bool | None = None,
                  drop_middle_red: bool = False) -> CocycleValue:
    """The cocycle on the bracket loop of d1 and d2: four scans added up.

    d1 is pushed under the over-branch and over the under-branch of the
    1-crossing c of d2, then d2 likewise through the 1-crossing cbar of d1.
    """
    if d_green is None:
        d_green = cabled
    c = _pick_one_crossing(d2, c)
    cbar = _pick_one_crossing(d1, cbar)
    total = CocycleValue()
    for T, K, q, tag in ((d1, d2, c, "c"), (d2, d1, cbar, "cbar")):
        for side in ("under", "over"):
            p = ScanParameter(K, q, side, name=f"{tag}:{side}")
            total = total + evaluate(T, p, d_green=d_green, d_class=d_class,
                                     drop_middle_red=drop_middle_red, cabled=cabled)
    return total
