"""Oriented link/tangle diagrams.

Two representations live here.  ``Morse`` is a sequence of x-slices (cups,
caps, crossings) and is what the constructions build.  ``Diagram`` is a
planar-diagram (PD) view: each crossing stores its four edges counterclockwise
starting at the incoming under-edge, which is the rotation system.  Long
components run from the left boundary (x = -inf) to the right boundary.

Positions in a slice are counted from the bottom (0) upwards.  At a crossing
slice ``pos`` the strand at ``pos`` rises to ``pos + 1`` and the strand at
``pos + 1`` falls; ``over = +1`` puts the rising strand on top.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .braid import BraidWord

COLOR_RANK = {"green": 0, "red": 1, "black": 2, "uncolored": 3}


class DiagramError(ValueError):
    pass


# --------------------------------------------------------------------------
# Morse presentations

@dataclass(frozen=True)
class Slice:
    kind: str  # "cup", "cap" or "cross"
    pos: int
    over: int = 1  # cross only
    up: int = 1  # cup only: direction (+1 = +x) of the upper new strand
    tag: tuple = ("uncolored", 0)  # cup only: (color, level)


def cup(pos, up=1, tag=("uncolored", 0)):
    return Slice("cup", pos, up=up, tag=tag)


def cap(pos):
    return Slice("cap", pos)


def cross(pos, over):
    return Slice("cross", pos, over=over)


@dataclass(frozen=True)
class Morse:
    """Left boundary strands (bottom to top) as (direction, tag) plus slices."""

    inputs: tuple[tuple[int, tuple], ...]
    slices: tuple[Slice, ...]

    def widths(self) -> list[int]:
        w = [len(self.inputs)]
        for s in self.slices:
            cur = w[-1]
            if s.kind == "cup":
                if not 0 <= s.pos <= cur:
                    raise DiagramError(f"cup at {s.pos} with {cur} strands")
                w.append(cur + 2)
            elif s.kind == "cap":
                if not 0 <= s.pos < cur - 1:
                    raise DiagramError(f"cap at {s.pos} with {cur} strands")
                w.append(cur - 2)
            elif s.kind == "cross":
                if not 0 <= s.pos < cur - 1:
                    raise DiagramError(f"crossing at {s.pos} with {cur} strands")
                w.append(cur)
            else:
                raise DiagramError(f"unknown slice {s.kind}")
        return w

    def directions(self) -> list[list[int]]:
        """Strand directions (+1/-1) at every level; checks cap consistency."""
        cur = [d for d, _ in self.inputs]
        out = [list(cur)]
        for s in self.slices:
            if s.kind == "cup":
                cur[s.pos:s.pos] = [-s.up, s.up]
            elif s.kind == "cap":
                if cur[s.pos] == cur[s.pos + 1]:
                    raise DiagramError("cap joins two strands of the same direction")
                del cur[s.pos:s.pos + 2]
            else:
                cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
            out.append(list(cur))
        return out

    def __add__(self, other: "Morse") -> "Morse":
        """Stack side by side; right boundary of self must match other's inputs."""
        d = self.directions()[-1]
        if [x for x, _ in other.inputs] != d:
            raise DiagramError("boundary mismatch when concatenating")
        return Morse(self.inputs, self.slices + other.slices)

    def shifted(self, k: int) -> tuple[Slice, ...]:
        return tuple(replace(s, pos=s.pos + k) for s in self.slices)

    def n_crossings(self):
        return sum(1 for s in self.slices if s.kind == "cross")


def morse_from_braid(w: BraidWord, mode: str = "closed", tag=("green", 0)) -> Morse:
    """Braid closure.  ``long`` opens the top strand; the rest close underneath."""
    n = w.strands
    if mode == "closed":
        # nested cups; the upper halves carry the braid strands in +x
        slices = [cup(k, up=1, tag=tag) for k in range(n)]
        # after these cups: returns n-1..0 at the bottom, braid strands above
        # strand j (1-based) sits at position n - 1 + j
        off = n - 1
        slices += [cross(off + i, -e) for i, e in w.letters]
        slices += [cap(off - k) for k in range(n)]
        return Morse((), tuple(slices))
    if mode in ("long", "long-open-top"):
        m = n - 1
        slices = [cup(k, up=1, tag=tag) for k in range(m)]
        off = m - 1
        slices += [cross(off + i, -e) for i, e in w.letters]
        slices += [cap(off - k) for k in range(m)]
        return Morse(((1, tag),), tuple(slices))
    raise DiagramError(f"unknown closure mode {mode}")


# --------------------------------------------------------------------------
# PD diagrams

@dataclass(frozen=True)
class Crossing:
    id: int
    slots: tuple[int, int, int, int]
    sign: int

    @property
    def ui(self):
        return self.slots[0]

    @property
    def uo(self):
        return self.slots[2]

    @property
    def oi(self):
        return self.slots[3] if self.sign > 0 else self.slots[1]

    @property
    def oo(self):
        return self.slots[1] if self.sign > 0 else self.slots[3]

    def in_slots(self):
        return (0, 3) if self.sign > 0 else (0, 1)


@dataclass(frozen=True)
class Component:
    color: str = "uncolored"
    kind: str = "closed"
    index: int = 0
    level: int = 0


@dataclass
class Diagram:
    crossings: dict[int, Crossing]
    components: tuple[Component, ...]
    paths: tuple[tuple[int, ...], ...]  # edges of each component in orientation order
    left: tuple[int, ...] = ()  # component index per left boundary end, bottom to top
    right: tuple[int, ...] = ()
    morse: Morse | None = field(default=None, repr=False, compare=False)

    # ---- derived lookups
    def __post_init__(self):
        self._edge_comp = {}
        for ci, p in enumerate(self.paths):
            for e in p:
                self._edge_comp[e] = ci
        self._head = {}
        self._tail = {}
        for x in self.crossings.values():
            for k, e in enumerate(x.slots):
                if k in x.in_slots():
                    if e in self._head:
                        raise DiagramError(f"edge {e} enters two slots")
                    self._head[e] = (x.id, k)
                else:
                    if e in self._tail:
                        raise DiagramError(f"edge {e} leaves two slots")
                    self._tail[e] = (x.id, k)

    def validate(self):
        for ci, (comp, p) in enumerate(zip(self.components, self.paths)):
            if not p:
                raise DiagramError("empty component")
            for a, b in zip(p, p[1:]):
                if self.next_edge(a) != b:
                    raise DiagramError(f"component {ci} path broken at {a}")
            if comp.kind == "closed":
                if self._head.get(p[-1]) is not None and self.next_edge(p[-1]) != p[0]:
                    raise DiagramError(f"component {ci} does not close")
            else:
                if p[0] in self._tail or p[-1] in self._head:
                    raise DiagramError(f"long component {ci} has no free ends")
        for x in self.crossings.values():
            if len(x.slots) != 4 or x.sign not in (1, -1):
                raise DiagramError("bad crossing")
        return True

    def edge_component(self, e):
        return self._edge_comp[e]

    def next_edge(self, e):
        h = self._head.get(e)
        if h is None:
            return None
        x = self.crossings[h[0]]
        return x.uo if h[1] == 0 else x.oo

    def n_crossings(self):
        return len(self.crossings)

    def crossing_components(self, q) -> tuple[int, int]:
        """(component of the over strand, component of the under strand)."""
        x = self.crossings[q]
        return self._edge_comp[x.oi], self._edge_comp[x.ui]

    def writhe(self, comp: int | None = None) -> int:
        if comp is None:
            return sum(x.sign for x in self.crossings.values())
        return sum(x.sign for x in self.crossings.values()
                   if self.crossing_components(x.id) == (comp, comp))

    def colors(self):
        return [c.color for c in self.components]

    def is_long(self):
        return any(c.kind == "long" for c in self.components)

    def component_index(self, color: str, kind: str | None = None) -> int:
        for i, c in enumerate(self.components):
            if c.color == color and (kind is None or c.kind == kind):
                return i
        raise DiagramError(f"no {color} component")

    # ---- construction from arbitrary edge data
    @classmethod
    def build(cls, crossings: Iterable[Crossing], comp_edges: Sequence[Sequence[int]],
              comps: Sequence[Component], left=(), right=(), morse=None,
              relabel=True) -> "Diagram":
        crossings = list(crossings)
        if not relabel:
            return cls({x.id: x for x in crossings}, tuple(comps),
                       tuple(tuple(p) for p in comp_edges), tuple(left), tuple(right), morse)
        # order components: colour, level, then given order; relabel edges 1..E
        order = sorted(range(len(comps)),
                       key=lambda i: (COLOR_RANK.get(comps[i].color, 9), comps[i].level, i))
        remap = {}
        new_paths = []
        new_comps = []
        lab = 1
        for new_i, i in enumerate(order):
            p = []
            for e in comp_edges[i]:
                remap[e] = lab
                p.append(lab)
                lab += 1
            new_paths.append(tuple(p))
            new_comps.append(replace(comps[i], index=new_i))
        inv = {i: new_i for new_i, i in enumerate(order)}
        xs = {x.id: Crossing(x.id, tuple(remap[e] for e in x.slots), x.sign) for x in crossings}
        out = cls(xs, tuple(new_comps), tuple(new_paths),
                  tuple(inv[c] for c in left), tuple(inv[c] for c in right), morse)
        out.relabel_map = remap
        return out

    # ---- generic re-tracing after edges were merged
    @classmethod
    def _retrace(cls, crossings: list[Crossing], edges: set[int], starts: list[int],
                 left_ends: list[int], right_ends: list[int], meta) -> "Diagram":
        """Rebuild components from crossings.

        ``edges`` is every edge id still alive (including crossing-free loops),
        ``left_ends``/``right_ends`` the boundary edges bottom to top, and
        ``meta(edge_list, kind)`` returns the Component for a traced path.
        """
        head = {}
        nxt = {}
        for x in crossings:
            head[x.ui] = x
            head[x.oi] = x
            nxt[x.ui] = x.uo
            nxt[x.oi] = x.oo
        seen = set()
        paths, comps = [], []
        left_comp = []
        right_comp_of_edge = {}
        for e in left_ends:
            p = [e]
            seen.add(e)
            while p[-1] in nxt:
                p.append(nxt[p[-1]])
                seen.add(p[-1])
            right_comp_of_edge[p[-1]] = len(paths)
            left_comp.append(len(paths))
            paths.append(p)
            comps.append(meta(p, "long"))
        for e in list(starts) + sorted(edges):
            if e in seen:
                continue
            p = [e]
            seen.add(e)
            while p[-1] in nxt and nxt[p[-1]] not in seen:
                p.append(nxt[p[-1]])
                seen.add(p[-1])
            paths.append(p)
            comps.append(meta(p, "closed"))
        right = [right_comp_of_edge[e] for e in right_ends]
        return cls.build(crossings, paths, comps, left_comp, right)

    # ---- PD text
    def pd_code(self) -> list[tuple[int, int, int, int]]:
        return [self.crossings[k].slots for k in sorted(self.crossings)]

    def to_json(self) -> dict:
        return {
            "crossings": [{"id": x.id, "pd": list(x.slots), "sign": x.sign}
                          for x in sorted(self.crossings.values(), key=lambda x: x.id)],
            "components": [{"color": c.color, "kind": c.kind, "index": c.index,
                            "level": c.level, "edges": list(p)}
                           for c, p in zip(self.components, self.paths)],
            "left": list(self.left),
            "right": list(self.right),
        }

    # ---- PD-level operations
    def _merged(self, remove: set[int], joins: list[tuple[int, int]], meta_fn) -> "Diagram":
        parent = {}

        def find(a):
            while parent.get(a, a) != a:
                parent[a] = parent.get(parent[a], parent[a])
                a = parent[a]
            return a

        for a, b in joins:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        xs = [Crossing(x.id, tuple(find(e) for e in x.slots), x.sign)
              for x in self.crossings.values() if x.id not in remove]
        alive = {find(e) for p in self.paths for e in p}
        left_ends = [find(self.paths[c][0]) for c in self.left]
        right_ends = [find(self.paths[c][-1]) for c in self.right]
        old_of = defaultdict(set)
        for p_i, p in enumerate(self.paths):
            for e in p:
                old_of[find(e)].add(p_i)
        starts = [find(p[0]) for p in self.paths]
        return Diagram._retrace(xs, alive, starts, left_ends, right_ends,
                                lambda path, kind: meta_fn(path, kind, old_of))

    def smooth_crossing(self, q: int, new_color: str | None = None, level: int | None = None) -> "Diagram":
        """Oriented smoothing at q.

        When a component splits, the piece that keeps the old long end (or
        the one through the old starting edge) keeps the old colour; the other
        gets ``new_color`` (default: same colour).
        """
        if q not in self.crossings:
            raise DiagramError(f"unknown crossing {q}")
        x = self.crossings[q]
        joins = [(x.ui, x.oo), (x.oi, x.uo)]
        old_first = {p[0] for p in self.paths}
        used_parent = set()

        def meta(path, kind, old_of):
            parents = set()
            for e in path:
                parents |= old_of[e]
            par = min(parents, key=lambda i: (COLOR_RANK.get(self.components[i].color, 9), i))
            c = self.components[par]
            keep = kind == "long" or any(e in old_first for e in path) or len(parents) > 1
            if not keep and par not in used_parent and self.components[par].kind == "closed":
                keep = True
            if keep:
                used_parent.add(par)
                return Component(c.color, kind, 0, c.level)
            return Component(new_color or c.color, kind, 0, c.level if level is None else level)

        # long pieces first so they claim the colour
        return self._merged({q}, joins, meta)

    def switch_crossing(self, q: int) -> "Diagram":
        x = self.crossings[q]
        s = x.slots
        # rotate so the old over-in becomes slot 0
        if x.sign > 0:
            new = Crossing(q, (s[3], s[0], s[1], s[2]), -1)
        else:
            new = Crossing(q, (s[1], s[2], s[3], s[0]), 1)
        xs = dict(self.crossings)
        xs[q] = new
        return Diagram(xs, self.components, self.paths, self.left, self.right)

    def sublink(self, keep: Sequence[int]) -> "Diagram":
        """Delete every component not listed in keep."""
        keep = set(keep)
        drop = set()
        joins = []
        for x in self.crossings.values():
            co, cu = self.crossing_components(x.id)
            if co in keep and cu in keep:
                continue
            drop.add(x.id)
            if co in keep:
                joins.append((x.oi, x.oo))
            if cu in keep:
                joins.append((x.ui, x.uo))
        parent = {}

        def find(a):
            while parent.get(a, a) != a:
                a = parent[a]
            return a

        for a, b in joins:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        xs = [Crossing(x.id, tuple(find(e) for e in x.slots), x.sign)
              for x in self.crossings.values() if x.id not in drop]
        paths, comps = [], []
        for i, (c, p) in enumerate(zip(self.components, self.paths)):
            if i not in keep:
                continue
            q = []
            for e in p:
                f = find(e)
                if not q or q[-1] != f:
                    q.append(f)
            if len(q) > 1 and q[0] == q[-1] and c.kind == "closed":
                q.pop()
            paths.append(q)
            comps.append(c)
        kept = [i for i in range(len(self.components)) if i in keep]
        idx = {old: new for new, old in enumerate(kept)}
        left = [idx[c] for c in self.left if c in keep]
        right = [idx[c] for c in self.right if c in keep]
        d = Diagram.build(xs, paths, comps, left, right, relabel=False)
        return d._relabelled()

    def _relabelled(self) -> "Diagram":
        return Diagram.build(list(self.crossings.values()), self.paths, self.components,
                             self.left, self.right)

    def recolored(self, colors: dict[int, str]) -> "Diagram":
        comps = [replace(c, color=colors.get(i, c.color)) for i, c in enumerate(self.components)]
        return Diagram.build(list(self.crossings.values()), self.paths, comps,
                             self.left, self.right, morse=self.morse)

    def standard_closure(self) -> "Diagram":
        """Close long components by nested arcs outside everything."""
        if len(self.left) != len(self.right):
            raise DiagramError("odd or unmatched endpoint count")
        if list(self.left) != list(self.right):
            raise DiagramError("endpoint orders differ; a planar nested closure needs matching order")
        joins = []
        for c in self.left:
            p = self.paths[c]
            joins.append((p[0], p[-1]))
        comps = list(self.components)

        def meta(path, kind, old_of):
            parents = set()
            for e in path:
                parents |= old_of[e]
            par = min(parents)
            c = comps[par]
            return Component(c.color, "closed", 0, c.level)

        d = Diagram(self.crossings, self.components, self.paths, (), ())
        return d._merged(set(), joins, meta)

    def split_pieces(self) -> list[set[int]]:
        """Components grouped by diagram connectivity (shared crossings)."""
        parent = list(range(len(self.components)))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for x in self.crossings.values():
            a, b = self.crossing_components(x.id)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups = defaultdict(set)
        for i in range(len(self.components)):
            groups[find(i)].add(i)
        return list(groups.values())


def linking_number(d: Diagram, a: int, b: int) -> int:
    if a == b:
        raise DiagramError("linking number needs two different components")
    n = len(d.components)
    if not (0 <= a < n and 0 <= b < n):
        raise DiagramError("unknown component")
    tot = 0
    for x in d.crossings.values():
        if set(d.crossing_components(x.id)) == {a, b}:
            tot += x.sign
    return tot // 2


# --------------------------------------------------------------------------
# Morse -> PD

def from_morse(m: Morse) -> Diagram:
    m.widths()
    parent: dict[int, int] = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    counter = [0]

    def new_piece():
        counter[0] += 1
        return counter[0]

    piece_tag = {}
    strands = []  # [piece, dir, tag]
    left_pieces = []
    for d, tag in m.inputs:
        p = new_piece()
        piece_tag[p] = tag
        strands.append([p, d, tag])
        left_pieces.append((p, d))
    raw = []  # (id, ccw pieces rotated, sign)
    cup_pieces = []
    cup_slices = []
    turns = []  # (piece, half-turns counterclockwise)
    for idx, s in enumerate(m.slices):
        if s.kind == "cup":
            p = new_piece()
            piece_tag[p] = s.tag
            strands[s.pos:s.pos] = [[p, -s.up, s.tag], [p, s.up, s.tag]]
            cup_pieces.append(p)
            cup_slices.append(idx)
            turns.append((p, -s.up))
        elif s.kind == "cap":
            a, b = strands[s.pos], strands[s.pos + 1]
            if a[1] == b[1]:
                raise DiagramError(f"slice {idx}: cap joins co-oriented strands")
            turns.append((a[0], -b[1]))
            ra, rb = find(a[0]), find(b[0])
            if ra != rb:
                parent[rb] = ra
            del strands[s.pos:s.pos + 2]
        else:
            A, B = strands[s.pos], strands[s.pos + 1]
            A2, B2 = new_piece(), new_piece()
            piece_tag[A2], piece_tag[B2] = A[2], B[2]
            ccw = [A2, B[0], A[0], B2]  # NE, NW, SW, SE
            # work with slot positions: pieces may repeat at a crossing
            a_in, a_out = (2, 0) if A[1] > 0 else (0, 2)
            b_in, b_out = (1, 3) if B[1] > 0 else (3, 1)
            if s.over > 0:
                u_in, o_out = b_in, a_out
            else:
                u_in, o_out = a_in, b_out
            rot = [ccw[(u_in + j) % 4] for j in range(4)]
            sign = 1 if (u_in + 1) % 4 == o_out else -1
            raw.append((idx, rot, sign))
            strands[s.pos] = [B2, B[1], B[2]]
            strands[s.pos + 1] = [A2, A[1], A[2]]
    right_pieces = [(p, d) for p, d, _ in strands]
    xs = [Crossing(idx, tuple(find(p) for p in rot), sign) for idx, rot, sign in raw]
    edges = {find(p) for p in range(1, counter[0] + 1)}
    # boundary: +x strands start on the left, end on the right
    starts_l = [find(p) for p, d in left_pieces if d > 0]
    ends_r = [find(p) for p, d in right_pieces if d > 0]
    if any(d < 0 for _, d in left_pieces) or any(d < 0 for _, d in right_pieces):
        raise DiagramError("long strands must run left to right")
    tag_of = {}
    for p, t in piece_tag.items():
        tag_of.setdefault(find(p), t)
    first_cup = [find(p) for p in cup_pieces]

    def meta(path, kind):
        # colour from the input strand or from the leftmost cup of the component
        if kind == "long":
            t = tag_of[path[0]]
        else:
            ps = set(path)
            t = next((tag_of[e] for e in first_cup if e in ps), tag_of[path[0]])
        return Component(t[0], kind, 0, t[1])

    d = Diagram._retrace(xs, edges, first_cup, starts_l, ends_r, meta)
    d.morse = m
    half = defaultdict(int)
    for p, h in turns:
        half[d.edge_component(d.relabel_map[find(p)])] += h
    d.whitney = {c: half[c] // 2 for c in range(len(d.components))}
    d.cup_component = {i: d.edge_component(d.relabel_map[find(p)])
                       for i, p in zip(cup_slices, cup_pieces)}
    return d


def smooth_morse(m: Morse, idx: int, new_tag=("black", 1)) -> Morse:
    """Oriented smoothing of crossing slice idx, keeping the Morse form.

    If a component splits, the closed piece cut off from it gets new_tag
    (for a closed component, the piece without its first cup).
    """
    s = m.slices[idx]
    if s.kind != "cross":
        raise DiagramError(f"slice {idx} is not a crossing")
    dirs = m.directions()[idx]
    q = s.pos
    before = from_morse(m)
    g = before.crossing_components(idx)
    if dirs[q] == dirs[q + 1]:
        repl = ()
    else:
        t = before.components[g[0]]
        repl = (cap(q), cup(q, up=dirs[q], tag=(t.color, t.level)))
    new = Morse(m.inputs, m.slices[:idx] + repl + m.slices[idx + 1:])
    nd = from_morse(new)
    if len(nd.components) == len(before.components):
        return new
    shift = len(repl) - 1
    inserted = set(range(idx, idx + len(repl)))
    old_cups = defaultdict(set)  # new component -> old components of its cups
    for i, comp in nd.cup_component.items():
        if i not in inserted:
            old_cups[comp].add(before.cup_component[i if i < idx else i - shift])
    comp = g[0]
    first = min((i for i, c in before.cup_component.items() if c == comp), default=None)
    cand = []
    for c in range(len(nd.components)):
        if nd.components[c].kind != "closed":
            continue
        owners = old_cups.get(c, set())
        if owners - {comp}:
            continue
        cups_here = {i if i < idx else i - shift for i, cc in nd.cup_component.items()
                     if cc == c and i not in inserted}
        if before.components[comp].kind == "closed" and first in cups_here:
            continue
        cand.append(c)
    if len(cand) != 1:
        raise DiagramError("cannot identify the split-off component")
    slices = list(new.slices)
    for i, c in nd.cup_component.items():
        if c == cand[0]:
            slices[i] = replace(slices[i], tag=new_tag)
    return Morse(m.inputs, tuple(slices))


def from_braid(w: BraidWord, mode: str = "closed", color: str = "green") -> Diagram:
    return from_morse(morse_from_braid(w, mode, (color, 0)))


# --------------------------------------------------------------------------
# PD text input

def parse_pd(text_or_list, color: str = "uncolored") -> Diagram:
    """PD code: 4-tuples of edge labels, counterclockwise from the incoming under-edge.

    Over-strand direction is inferred from orientation propagation; where it
    cannot be inferred, labels are assumed to increase along the orientation.
    """
    if isinstance(text_or_list, str):
        import re
        nums = [int(t) for t in re.findall(r"-?\d+", text_or_list)]
        if len(nums) % 4:
            raise DiagramError("PD code length is not a multiple of 4")
        tuples = [tuple(nums[i:i + 4]) for i in range(0, len(nums), 4)]
    else:
        tuples = [tuple(t) for t in text_or_list]
    if not tuples:
        return Diagram({}, (Component(color, "closed", 0),), ((1,),))
    count = defaultdict(int)
    for t in tuples:
        if len(t) != 4:
            raise DiagramError("PD entries need four labels")
        for e in t:
            count[e] += 1
    if any(v != 2 for v in count.values()):
        raise DiagramError("every PD label must occur exactly twice")
    # heads/tails of edges; under strand is slot0 -> slot2
    incoming = {}
    outgoing = {}
    for i, t in enumerate(tuples):
        incoming.setdefault(t[0], []).append((i, 0))
        outgoing.setdefault(t[2], []).append((i, 2))
    over_dir = {}  # crossing -> True if slot1 -> slot3
    changed = True
    while changed or len(over_dir) < len(tuples):
        if not changed:
            # only over-passing strands left: guess one crossing, then propagate
            i = next(i for i in range(len(tuples)) if i not in over_dir)
            b, d = tuples[i][1], tuples[i][3]
            over_dir[i] = (d - b == 1) or (b - d > 1)
        changed = False
        for i, t in enumerate(tuples):
            if i in over_dir:
                continue
            b, d = t[1], t[3]
            # b is incoming here iff b leaves some other slot as an outgoing end
            def is_out_elsewhere(e, slot):
                for j, u in enumerate(tuples):
                    for k, f in enumerate(u):
                        if f == e and (j, k) != (i, slot):
                            if k == 2:
                                return True
                            if k == 0:
                                return False
                            if j in over_dir:
                                return (k == 3) == over_dir[j]
                return None
            r = is_out_elsewhere(b, 1)
            if r is None:
                r2 = is_out_elsewhere(d, 3)
                if r2 is not None:
                    r = not r2
            if r is not None:
                over_dir[i] = r
                changed = True
    xs = []
    for i, t in enumerate(tuples):
        # over goes slot1 -> slot3 means over-in at slot 1: negative
        sign = -1 if over_dir[i] else 1
        xs.append(Crossing(i, t, sign))
    edges = set(count)

    def meta(path, kind):
        return Component(color, kind, 0, 0)

    d = Diagram._retrace(xs, edges, sorted(edges), [], [], meta)
    d.validate()
    return d


# --------------------------------------------------------------------------
# DT input

DT_MAX = 20


def _count_faces(tuples) -> int:
    ends = defaultdict(list)
    for i, t in enumerate(tuples):
        for k, e in enumerate(t):
            ends[e].append((i, k))
    seen = set()
    n = 0
    for i in range(len(tuples)):
        for k in range(4):
            if (i, k) in seen:
                continue
            n += 1
            v = (i, k)
            while v not in seen:
                seen.add(v)
                a, b = ends[tuples[v[0]][v[1]]]
                o = b if a == v else a
                v = (o[0], (o[1] + 1) % 4)
    return n


def parse_dt(text_or_list, color: str = "uncolored") -> Diagram:
    """Dowker-Thistlethwaite code of a knot: even integers paired with 1, 3, 5, ...

    A negative entry means the strand with the even label passes over.
    The planar realization is found by search over the crossing
    orientations; the first crossing's orientation fixes the mirror choice
    (crossing 1 always uses the first of the two cyclic orders).
    """
    if isinstance(text_or_list, str):
        import re
        vals = [int(t) for t in re.findall(r"-?\d+", text_or_list)]
    else:
        vals = [int(v) for v in text_or_list]
    n = len(vals)
    if n == 0:
        return parse_pd([], color)
    if n > DT_MAX:
        raise DiagramError(f"DT realization limited to {DT_MAX} crossings")
    evens = [abs(v) for v in vals]
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise DiagramError("DT code must use each even label 2..2n once")
    N = 2 * n

    def e_in(p):
        return (p - 2) % N + 1

    def e_out(p):
        return p

    base = []
    for i, v in enumerate(vals):
        base.append((2 * i + 1, abs(v), v < 0))
    import itertools
    for bits in itertools.product((0, 1), repeat=n - 1):
        bits = (0,) + bits
        tuples = []
        signs = []
        for (a, b, even_over), bit in zip(base, bits):
            # counterclockwise cycle around the crossing, by geometry
            if bit == 0:
                cyc = [e_in(a), e_out(b), e_out(a), e_in(b)]
            else:
                cyc = [e_in(a), e_in(b), e_out(a), e_out(b)]
            under_in, over_in = (e_in(a), e_in(b)) if even_over else (e_in(b), e_in(a))
            k = cyc.index(under_in)
            t = tuple(cyc[k:] + cyc[:k])
            tuples.append(t)
            signs.append(1 if t[3] == over_in else -1)
        if _count_faces(tuples) == n + 2:
            xs = [Crossing(i, t, sg) for i, (t, sg) in enumerate(zip(tuples, signs))]

            def meta(path, kind):
                return Component(color, kind, 0, 0)
            d = Diagram._retrace(xs, set(range(1, N + 1)), [1], [], [], meta)
            d.validate()
            return d
    raise DiagramError("DT code is not realizable")


# --------------------------------------------------------------------------
# faces and simplification

def _edge_ends(d: Diagram):
    """edge -> list of its two ends; an end is (crossing id, slot) or ("inf", k)."""
    ends = defaultdict(list)
    for x in d.crossings.values():
        for k, e in enumerate(x.slots):
            ends[e].append((x.id, k))
    inf = _infinity_order(d)
    for k, e in enumerate(inf):
        ends[e].append(("inf", k))
    return ends, len(inf)


def _infinity_order(d: Diagram) -> list[int]:
    # boundary ends seen counterclockwise around the point at infinity
    lefts = [d.paths[c][0] for c in d.left]
    rights = [d.paths[c][-1] for c in d.right]
    return lefts + rights[::-1]


def faces(d: Diagram) -> list[list[tuple]]:
    """Faces as cyclic lists of darts (vertex, slot); a dart leaves its vertex along an edge."""
    ends, ninf = _edge_ends(d)

    def edge_at(v):
        if v[0] == "inf":
            return _infinity_order(d)[v[1]]
        return d.crossings[v[0]].slots[v[1]]

    inf_edges = _infinity_order(d)
    darts = [(x.id, k) for x in d.crossings.values() for k in range(4)]
    darts += [("inf", k) for k in range(ninf)]
    seen = set()
    out = []
    for start in darts:
        if start in seen:
            continue
        face = []
        v = start
        while v not in seen:
            seen.add(v)
            face.append(v)
            e = edge_at(v)
            a, b = ends[e]
            other = b if a == v else a
            if other[0] == "inf":
                v = ("inf", (other[1] + 1) % ninf)
            else:
                v = (other[0], (other[1] + 1) % 4)
        out.append(face)
    return out


def face_edges(d: Diagram, face) -> list[int]:
    inf = _infinity_order(d)
    return [inf[v[1]] if v[0] == "inf" else d.crossings[v[0]].slots[v[1]] for v in face]


def remove_straight(d: Diagram, ids: Iterable[int]) -> Diagram:
    """Delete crossings letting both strands pass straight through (R I / R II removal)."""
    ids = set(ids)
    joins = []
    for q in ids:
        x = d.crossings[q]
        joins += [(x.ui, x.uo), (x.oi, x.oo)]

    def meta(path, kind, old_of):
        par = min(old_of[path[0]])
        c = d.components[par]
        return Component(c.color, kind, 0, c.level)

    out = d._merged(ids, joins, meta)
    return out


def find_r1(d: Diagram):
    for x in sorted(d.crossings.values(), key=lambda x: x.id):
        s = x.slots
        for k in range(4):
            if s[k] == s[(k + 1) % 4]:
                return x.id
    return None


def find_r2(d: Diagram):
    for f in faces(d):
        if len(f) != 2 or f[0][0] == "inf" or f[1][0] == "inf":
            continue
        a, b = f[0][0], f[1][0]
        if a == b:
            continue
        x, y = d.crossings[a], d.crossings[b]
        e, g = face_edges(d, f)
        over_x = {x.oi, x.oo}
        over_y = {y.oi, y.oo}
        if (e in over_x) == (e in over_y) and (g in over_x) == (g in over_y):
            return a, b
    return None


def simplify(d: Diagram) -> Diagram:
    """Greedy crossing-decreasing R I / R II reduction."""
    while True:
        q = find_r1(d)
        if q is not None:
            d = remove_straight(d, [q])
            continue
        pair = find_r2(d)
        if pair is not None:
            d = remove_straight(d, pair)
            continue
        return d


def random_morse(rng, crossings: int, max_width: int = 6, tag=("uncolored", 0),
                 p_cup: float = 0.25, p_cap: float = 0.1) -> Morse:
    """A random closed Morse diagram with the given number of crossings."""
    dirs: list[int] = []
    slices = []
    made = 0
    while made < crossings:
        w = len(dirs)
        caps = [p for p in range(w - 1) if dirs[p] != dirs[p + 1]]
        r = rng.random()
        if w < 2 or (w < max_width and r < p_cup):
            p = rng.randint(0, w)
            up = rng.choice((1, -1))
            slices.append(cup(p, up, tag))
            dirs[p:p] = [-up, up]
        elif caps and r < p_cup + p_cap:
            p = rng.choice(caps)
            slices.append(cap(p))
            del dirs[p:p + 2]
        else:
            p = rng.randint(0, w - 2)
            slices.append(cross(p, rng.choice((1, -1))))
            dirs[p], dirs[p + 1] = dirs[p + 1], dirs[p]
            made += 1
    while dirs:
        p = next(p for p in range(len(dirs) - 1) if dirs[p] != dirs[p + 1])
        slices.append(cap(p))
        del dirs[p:p + 2]
    return Morse((), tuple(slices))


# --------------------------------------------------------------------------
# PD -> Morse: planar straight-line drawing, then an x-sweep

def _subdivided_graph(d: Diagram, crossings: set[int], close_long: bool):
    """Simple plane graph of one connected piece of d.

    Every edge becomes a path with two (or more) subdivision nodes.  For a
    long piece the two boundary edges are joined into one path through
    infinity that carries the designated bottom edge (s1, s2).
    Returns (rotation, orient, slot_of, bottom) where orient[(a, b)] is True
    when the component runs a -> b.
    """
    rot = defaultdict(list)
    orient = {}
    slot_of = {}
    ends = defaultdict(list)
    for q in crossings:
        for k, e in enumerate(d.crossings[q].slots):
            ends[e].append((q, k))
    counter = [0]

    def node():
        counter[0] += 1
        return ("s", counter[0])

    def chain(tail, head, n_mid, mark=None):
        mids = [node() for _ in range(n_mid)]
        seq = [tail] + mids + [head]
        for a, b in zip(seq, seq[1:]):
            orient[(a, b)] = True
            orient[(b, a)] = False
        return seq, mids

    bottom = None
    long_edges = set()
    if close_long:
        long_edges = {d.paths[c][0] for c in d.left} | {d.paths[c][-1] for c in d.right}
    # edge e: tail slot (out) and head slot (in)
    for e, es in ends.items():
        if e in long_edges:
            continue
        head = tail = None
        for q, k in es:
            if k in d.crossings[q].in_slots():
                head = (q, k)
            else:
                tail = (q, k)
        seq, mids = chain(("x", tail[0]), ("x", head[0]), 2)
        slot_of[(("x", tail[0]), seq[1])] = tail[1]
        slot_of[(("x", head[0]), seq[-2])] = head[1]
    if close_long:
        (el,), (er,) = [d.paths[c][0] for c in d.left], [d.paths[c][-1] for c in d.right]
        (hq, hk), = ends[el]
        (tq, tk), = ends[er]
        seq, mids = chain(("x", tq), ("x", hq), 4)
        slot_of[(("x", tq), seq[1])] = tk
        slot_of[(("x", hq), seq[-2])] = hk
        bottom = (mids[2], mids[1])  # s1 (left), s2 (right); orientation s2 -> s1
    for (v, w), k in slot_of.items():
        rot[v].append((k, w))
    for v in list(rot):
        rot[v] = [w for _, w in sorted(rot[v])]
    for (a, b) in orient:
        if a[0] == "s":
            if b not in rot[a]:
                rot[a].append(b)
    return rot, orient, slot_of, bottom


def _draw(rot, bottom):
    """Integer straight-line positions respecting the rotation system.

    ``bottom = (s1, s2)`` becomes the lowest edge with s1 leftmost and s2
    rightmost.
    """
    import networkx as nx
    from networkx.algorithms import planar_drawing as pdraw

    emb = nx.PlanarEmbedding()
    for v, nbrs in rot.items():
        prev = None
        for w in nbrs:
            if prev is None:
                emb.add_half_edge(v, w)
            else:
                emb.add_half_edge(v, w, cw=prev)
            prev = w
    emb.check_structure()
    s1, s2 = bottom

    def triangulate(embedding, fully_triangulate=False):
        embedding = nx.PlanarEmbedding(embedding)
        faces, seen = [], set()
        for v in list(embedding.nodes()):
            for w in list(embedding.neighbors_cw_order(v)):
                f = pdraw.make_bi_connected(embedding, v, w, seen)
                if f:
                    faces.append(f)
        outer = None
        for f in faces:
            n = len(f)
            for i in range(n):
                if f[i] == s1 and f[(i + 1) % n] == s2:
                    outer = f[i:] + f[:i]
        if outer is None:
            raise DiagramError("layout: bottom edge not found")
        for f in faces:
            if f[0] not in outer or set(f) != set(outer) or len(f) != len(outer):
                pdraw.triangulate_face(embedding, f[0], f[1])
        return embedding, outer

    saved = pdraw.triangulate_embedding
    pdraw.triangulate_embedding = triangulate
    try:
        pos = pdraw.combinatorial_embedding_to_pos(emb)
    finally:
        pdraw.triangulate_embedding = saved
    return pos


def _sweep(rot, orient, slot_of, pos, crossings: dict, tag, ghost=None, tags=None):
    """Read Morse slices off a straight-line drawing."""
    from fractions import Fraction
    ys = [y for _, y in pos.values()]
    K = max(ys) - min(ys) + 1
    X = {v: x * K + y for v, (x, y) in pos.items()}
    Y = {v: y for v, (x, y) in pos.items()}
    order = sorted(X, key=X.get)

    def direction(a, b):
        # +1 if the strand runs left to right along the graph edge {a, b}
        l, r = (a, b) if X[a] < X[b] else (b, a)
        return 1 if orient[(l, r)] else -1

    def tag_of(a, b):
        return tags[(a, b)] if tags is not None else tag

    def slope(v, w):
        return Fraction(Y[w] - Y[v], X[w] - X[v])

    active = []  # (left node, right node), bottom to top
    slices = []
    off = 0  # positions hidden below the ghost strand
    for v in order:
        nb = rot[v]
        left = [w for w in nb if X[w] < X[v]]
        right = sorted((w for w in nb if X[w] > X[v]), key=lambda w: slope(v, w))
        L = [(w, v) for w in left]
        if L:
            idx = sorted(active.index(e) for e in L)
            if idx != list(range(idx[0], idx[0] + len(idx))):
                raise DiagramError("layout: left edges not contiguous")
            p = idx[0]
        else:
            p = 0
            for (a, b) in active:
                ya = Y[a] + Fraction(Y[b] - Y[a], X[b] - X[a]) * (X[v] - X[a])
                if ya < Y[v]:
                    p += 1
        R = [(v, w) for w in right]
        lefts = [active[i] for i in range(p, p + len(L))]
        new = R
        if ghost is not None and v in ghost:
            # endpoints of the hidden bottom edge
            if not L:
                off = 1
            active[p:p + len(L)] = new
            continue
        q = p - off
        if v[0] == "s":
            if len(L) == 0:
                slices.append(cup(q, up=direction(*R[1]), tag=tag_of(*R[1])))
            elif len(L) == 2:
                slices.append(cap(q))
        else:
            xq = crossings[v[1]]

            def over(e):
                a, b = e
                w = b if a == v else a
                return slot_of[(v, w)] in (1, 3)
            k = len(L)
            if k == 2:
                slices.append(cross(q, 1 if over(lefts[0]) else -1))
            elif k == 1:
                slices.append(cup(q, up=direction(*R[2]), tag=tag_of(*R[2])))
                slices.append(cross(q + 1, 1 if over(R[0]) else -1))
            elif k == 3:
                slices.append(cross(q + 1, 1 if over(lefts[1]) else -1))
                slices.append(cap(q))
            elif k == 0:
                slices.append(cup(q, up=direction(*R[2]), tag=tag_of(*R[2])))
                slices.append(cup(q + 1, up=direction(*R[3]), tag=tag_of(*R[3])))
                slices.append(cross(q + 2, 1 if over(R[1]) else -1))
            else:
                slices.append(cross(q + 1, 1 if over(lefts[1]) else -1))
                slices.append(cap(q))
                slices.append(cap(q))
            del xq
        active[p:p + len(L)] = new
    return slices


def to_morse(d: Diagram) -> Morse:
    """A Morse presentation of d with the same crossings and components."""
    if d.morse is not None:
        return d.morse
    if len(d.left) > 1 or len(d.right) > 1:
        raise DiagramError("to_morse handles at most one long component")
    # connected pieces through shared crossings
    parent = list(range(len(d.components)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for q in d.crossings:
        a, b = d.crossing_components(q)
        parent[find(a)] = find(b)
    pieces = defaultdict(list)
    for c in range(len(d.components)):
        pieces[find(c)].append(c)
    long_c = d.left[0] if d.left else None
    ordered = sorted(pieces.values(), key=lambda cs: (long_c not in cs, min(cs)))
    inputs = ()
    slices = []
    for cs in ordered:
        comp_tag = {c: (d.components[c].color, d.components[c].level) for c in cs}
        xs = {q for q in d.crossings if d.crossing_components(q)[0] in cs}
        base = 1 if (long_c is not None and long_c not in cs) else 0
        if not xs:
            for c in cs:
                if c == long_c:
                    inputs = ((1, comp_tag[c]),)
                else:
                    slices += [cup(base, up=1, tag=comp_tag[c]), cap(base)]
            continue
        is_long = long_c in cs
        rot, orient, slot_of, bottom = _subdivided_graph(d, xs, is_long)
        if bottom is None:
            # any subdivision edge will do as the bottom of a closed piece
            a = next(v for v in rot if v[0] == "s")
            bottom = (a, rot[a][0])
        pos = _draw(rot, bottom)
        # colour of every graph edge from the PD edge it subdivides
        tags = _edge_tags(d, rot, orient, slot_of, comp_tag)
        ghost = set(bottom) if is_long else None
        sl = _sweep(rot, orient, slot_of, pos, d.crossings, None, ghost, tags)
        if is_long:
            inputs = ((1, comp_tag[long_c]),)
        slices += [replace(s, pos=s.pos + base) for s in sl]
    m = Morse(inputs, tuple(slices))
    m.widths()
    m.directions()
    return m


def _edge_tags(d, rot, orient, slot_of, comp_tag):
    """Component tag for every graph edge, by walking subdivision chains."""
    tags = {}
    for (v, w), k in slot_of.items():
        e = d.crossings[v[1]].slots[k]
        t = comp_tag[d.edge_component(e)]
        prev, cur = v, w
        tags[(prev, cur)] = tags[(cur, prev)] = t
        while cur[0] == "s":
            nxt = next(u for u in rot[cur] if u != prev)
            tags[(cur, nxt)] = tags[(nxt, cur)] = t
            prev, cur = cur, nxt
    return tags


# --------------------------------------------------------------------------
# constructions on long diagrams

def _morse_of(d: Diagram) -> Morse:
    if d.morse is None:
        d.morse = to_morse(d)
    return d.morse


def _require_long(d: Diagram, what: str):
    if len(d.left) != 1 or len(d.right) != 1:
        raise DiagramError(f"{what} needs a long knot diagram")


def open_knot(d: Diagram, edge: int | None = None, color: str | None = None) -> Diagram:
    """Long knot obtained by cutting a closed knot diagram at an edge.

    The cut point goes to infinity; the result is rebuilt in Morse position.
    """
    if d.left or d.right or len(d.components) != 1:
        raise DiagramError("open_knot needs a closed knot diagram")
    color = color or d.components[0].color
    tag = (color, 0)
    if not d.crossings:
        return from_morse(Morse(((1, tag),), ()))
    path = d.paths[0]
    e = path[0] if edge is None else edge
    if e not in path:
        raise DiagramError(f"unknown edge {e}")
    xid, slot = d._tail[e]
    new = max(d._edge_comp) + 1
    xs = []
    for x in d.crossings.values():
        if x.id == xid:
            s = list(x.slots)
            s[slot] = new
            x = Crossing(x.id, tuple(s), x.sign)
        xs.append(x)
    edges = set(d._edge_comp) | {new}

    def meta(p, kind):
        return Component(color, kind, 0, 0)

    long_d = Diagram._retrace(xs, edges, [], [e], [new], meta)
    long_d.validate()
    return from_morse(to_morse(long_d))


def product(d1: Diagram, d2: Diagram) -> Diagram:
    """Connected sum of long knots: d2 glued to the right end of d1."""
    _require_long(d1, "product")
    _require_long(d2, "product")
    m1, m2 = _morse_of(d1), _morse_of(d2)
    return from_morse(Morse(m1.inputs, m1.slices + m2.slices))


def curl_slices(sign: int, p: int = 0, tag=("uncolored", 0), loop: str | None = None) -> tuple[Slice, ...]:
    """A kink on the +x strand at position p; its crossing is a 0-crossing.

    ``loop`` puts the small loop "above" or "below" the strand; the default
    is above for negative and below for positive kinks.  The two placements
    change the Whitney index in opposite directions.
    """
    if loop is None:
        loop = "above" if sign < 0 else "below"
    if loop == "above":
        return (cup(p + 1, up=-1, tag=tag), cross(p, -sign), cap(p + 1))
    if loop == "below":
        return (cup(p, up=1, tag=tag), cross(p + 1, -sign), cap(p))
    raise DiagramError(f"unknown loop side {loop}")


def add_curl(d: Diagram, sign: int, end: str = "right", loop: str | None = None) -> Diagram:
    _require_long(d, "add_curl")
    m = _morse_of(d)
    tag = m.inputs[0][1]
    kink = curl_slices(sign, 0, tag, loop)
    if end == "right":
        return from_morse(Morse(m.inputs, m.slices + kink))
    if end == "left":
        return from_morse(Morse(m.inputs, kink + m.slices))
    raise DiagramError(f"unknown end {end}")


def invert_morse(m: Morse) -> Morse:
    """Rotate by pi about the vertical axis and reverse the orientation."""
    levels = m.directions()
    tags = [list(t for _, t in m.inputs)]
    cur = [t for _, t in m.inputs]
    for s in m.slices:
        if s.kind == "cup":
            cur[s.pos:s.pos] = [s.tag, s.tag]
        elif s.kind == "cap":
            del cur[s.pos:s.pos + 2]
        else:
            cur[s.pos], cur[s.pos + 1] = cur[s.pos + 1], cur[s.pos]
        tags.append(list(cur))
    out = []
    for k in range(len(m.slices) - 1, -1, -1):
        s = m.slices[k]
        before = levels[k]
        if s.kind == "cap":
            out.append(cup(s.pos, up=before[s.pos + 1], tag=tags[k][s.pos]))
        elif s.kind == "cup":
            out.append(cap(s.pos))
        else:
            out.append(cross(s.pos, s.over))
    right = levels[-1]
    return Morse(tuple(zip(right, tags[-1])), tuple(out))


def invert(d: Diagram) -> Diagram:
    _require_long(d, "invert")
    return from_morse(invert_morse(_morse_of(d)))


def two_cable_morse(m: Morse, red=("red", 0), red_left: bool = False):
    """Blackboard 2-cable with the red copy on the right of the orientation.

    ``red_left=True`` puts it on the left.
    Returns the cabled Morse and a map: old slice index -> list of
    (new slice index, colour of rising strand, colour of falling strand).
    """
    dirs = [d for d, _ in m.inputs]
    tags = [t for _, t in m.inputs]

    def pair(d, t):
        g, r = (d, t), (d, red)
        return [g, r] if (d > 0) == red_left else [r, g]

    inputs = []
    for d, t in zip(dirs, tags):
        inputs += pair(d, t)
    out = []
    cmap = {}
    colors = []
    for d, t in zip(dirs, tags):
        colors += [c[1][0] for c in pair(d, t)]
    for idx, s in enumerate(m.slices):
        p = s.pos
        if s.kind == "cup":
            lower, upper = -s.up, s.up
            outer_red = (upper > 0) == red_left
            tag_outer = red if outer_red else s.tag
            tag_inner = s.tag if outer_red else red
            out.append(cup(2 * p, up=s.up, tag=tag_outer))
            out.append(cup(2 * p + 1, up=s.up, tag=tag_inner))
            dirs[p:p] = [lower, upper]
            tags[p:p] = [s.tag, s.tag]
            new_cols = [tag_outer[0], tag_inner[0], tag_inner[0], tag_outer[0]]
            colors[2 * p:2 * p] = new_cols
        elif s.kind == "cap":
            out.append(cap(2 * p + 1))
            out.append(cap(2 * p))
            del dirs[p:p + 2]
            del tags[p:p + 2]
            del colors[2 * p:2 * p + 4]
        else:
            entries = []
            for q in (2 * p + 1, 2 * p, 2 * p + 2, 2 * p + 1):
                entries.append((len(out), colors[q], colors[q + 1]))
                out.append(cross(q, s.over))
                colors[q], colors[q + 1] = colors[q + 1], colors[q]
            cmap[idx] = entries
            dirs[p], dirs[p + 1] = dirs[p + 1], dirs[p]
            tags[p], tags[p + 1] = tags[p + 1], tags[p]
    return Morse(tuple(inputs), tuple(out)), cmap


def two_cable(d: Diagram, red_left: bool = False) -> Diagram:
    _require_long(d, "two_cable")
    m, cmap = two_cable_morse(_morse_of(d), red_left=red_left)
    out = from_morse(m)
    out.cable_map = cmap
    return out


def crossing_class(d: Diagram, q: int) -> int:
    """1 if q is a 1-crossing of its long component, else 0."""
    if q not in d.crossings:
        raise DiagramError(f"unknown crossing {q}")
    co, cu = d.crossing_components(q)
    if co != cu or d.components[co].kind != "long":
        raise DiagramError("crossing_class needs a self-crossing of a long component")
    x = d.crossings[q]
    for e in d.paths[co]:
        if e == x.ui:
            return 1
        if e == x.oi:
            return 0
    raise DiagramError("crossing not found on its component")


def writhe_and_whitney(d: Diagram, comp: int = 0) -> tuple[int, int]:
    if not 0 <= comp < len(d.components):
        raise DiagramError("unknown component")
    w = d.writhe(comp)
    if getattr(d, "whitney", None) is None or d.morse is None:
        md = from_morse(_morse_of(d))
        # component order is canonical, so indices agree
        return w, md.whitney[comp]
    return w, d.whitney[comp]


# --------------------------------------------------------------------------
# SVG

SVG_COLORS = {"green": "#1a9850", "red": "#d73027", "black": "#000000", "uncolored": "#4d4d4d"}


def render_svg(d, step: int = 28, gap: int = 22) -> str:
    """SVG picture of a Morse presentation (or of a diagram's Morse form).

    Strands are horizontal lines at their positions, crossings are X's with
    the under strand broken, cups and caps are half circles.
    """
    m = d if isinstance(d, Morse) else _morse_of(d)
    widths = m.widths()
    hmax = max(widths) if widths else 1
    ncol = len(m.slices) + 2
    W, H = ncol * step, (hmax + 1) * gap

    def Y(p):
        return H - gap * (p + 1) + gap // 2

    parts = []

    def line(x1, y1, x2, y2, col):
        parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{col}" '
                     f'stroke-width="2" stroke-linecap="round"/>')

    def arc(x, y1, y2, sweep, col):
        r = abs(y2 - y1) / 2
        parts.append(f'<path d="M {x} {y1} A {r} {r} 0 0 {sweep} {x} {y2}" fill="none" '
                     f'stroke="{col}" stroke-width="2"/>')

    cols = [SVG_COLORS.get(t[0], "#4d4d4d") for _, t in m.inputs]
    x = 0
    for p, c in enumerate(cols):
        line(x, Y(p), x + step, Y(p), c)
    for s in m.slices:
        x0, x1 = x + step, x + 2 * step
        mid = (x0 + x1) // 2
        if s.kind == "cup":
            c = SVG_COLORS.get(s.tag[0], "#4d4d4d")
            for p, cc in enumerate(cols):
                q = p if p < s.pos else p + 2
                line(x0, Y(q), x1, Y(q), cc)
            arc(mid, Y(s.pos), Y(s.pos + 1), 1, c)
            line(mid, Y(s.pos), x1, Y(s.pos), c)
            line(mid, Y(s.pos + 1), x1, Y(s.pos + 1), c)
            cols[s.pos:s.pos] = [c, c]
        elif s.kind == "cap":
            c = cols[s.pos]
            for p, cc in enumerate(cols):
                if p in (s.pos, s.pos + 1):
                    continue
                q = p if p < s.pos else p - 2
                line(x0, Y(p), x1, Y(q), cc)
            line(x0, Y(s.pos), mid, Y(s.pos), c)
            line(x0, Y(s.pos + 1), mid, Y(s.pos + 1), cols[s.pos + 1])
            arc(mid, Y(s.pos + 1), Y(s.pos), 1, c)
            del cols[s.pos:s.pos + 2]
        else:
            p = s.pos
            for q, cc in enumerate(cols):
                if q not in (p, p + 1):
                    line(x0, Y(q), x1, Y(q), cc)
            rise, fall = cols[p], cols[p + 1]
            ym = (Y(p) + Y(p + 1)) / 2
            if s.over > 0:
                line(x0, Y(p), x1, Y(p + 1), rise)
                line(x0, Y(p + 1), mid - 4, ym - 3, fall)
                line(mid + 4, ym + 3, x1, Y(p), fall)
            else:
                line(x0, Y(p + 1), x1, Y(p), fall)
                line(x0, Y(p), mid - 4, ym + 3, rise)
                line(mid + 4, ym - 3, x1, Y(p + 1), rise)
            cols[p], cols[p + 1] = fall, rise
        x += step
    for p, c in enumerate(cols):
        line(x + step, Y(p), x + 2 * step, Y(p), c)
    body = "\n  ".join(parts)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
            f'viewBox="0 0 {W} {H}">\n  {body}\n</svg>\n')
