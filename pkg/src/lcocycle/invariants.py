"""Link invariants: linking numbers, Seifert matrices, Conway/Alexander polynomials, v2."""
from __future__ import annotations

import heapq
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .diagram import Crossing, Diagram, DiagramError, linking_number, simplify, faces, face_edges
from .poly import LaurentPolynomial, conway_to_alexander, symmetric_to_z

Z = LaurentPolynomial.monomial(1, 1, "z")
ONE = LaurentPolynomial.const(1, "z")
ZERO = LaurentPolynomial({}, "z")


class SkeinBoundError(RuntimeError):
    pass


class InvariantError(ValueError):
    pass


def closed(d: Diagram) -> Diagram:
    return d.standard_closure() if d.left else d


def pd_key(d: Diagram):
    """Hashable description of a closed diagram (edge labels as stored)."""
    return (tuple(sorted((x.slots, x.sign) for x in d.crossings.values())),
            tuple(len(p) for p in d.paths))


def is_split(d: Diagram) -> bool:
    return len(d.split_pieces()) > 1


# --------------------------------------------------------------------------
# skein oracle

def _first_bad_crossing(d: Diagram):
    """First crossing met as an under-crossing in the descending traversal."""
    seen = set()
    for p in d.paths:
        for e in p:
            h = d._head.get(e)
            if h is None:
                continue
            q, slot = h
            if q in seen:
                continue
            seen.add(q)
            if slot == 0:
                return q
    return None


def conway_skein_oracle(d: Diagram, bound: int = 14) -> LaurentPolynomial:
    """Conway polynomial by skein recursion on descending diagrams (exponential time)."""
    d = closed(d)
    if d.n_crossings() > bound:
        raise SkeinBoundError(f"{d.n_crossings()} crossings exceeds skein bound {bound}")
    memo = {}

    def rec(d):
        key = pd_key(d)
        if key in memo:
            return memo[key]
        q = _first_bad_crossing(d)
        if q is None:
            out = ONE if len(d.components) == 1 else ZERO
        else:
            s = d.crossings[q].sign
            out = rec(d.switch_crossing(q)) + (s * Z) * rec(d.smooth_crossing(q))
        memo[key] = out
        return out

    return rec(d)


# --------------------------------------------------------------------------
# Seifert circles, Vogel moves and braid reading

def seifert_circles(d: Diagram) -> dict[int, int]:
    """edge -> Seifert circle index for a closed diagram."""
    nxt = {}
    for x in d.crossings.values():
        nxt[x.ui] = x.oo
        nxt[x.oi] = x.uo
    circ = {}
    k = 0
    for p in d.paths:
        for e in p:
            if e in circ:
                continue
            f = e
            while f not in circ:
                circ[f] = k
                f = nxt.get(f, f)
            k += 1
    return circ


def _face_sides(d: Diagram):
    """Yield (face index, edge, side) with side = +1 when the face lies left of the edge."""
    out = []
    for fi, face in enumerate(faces(d)):
        for v, k in face:
            x = d.crossings[v]
            e = x.slots[k]
            forward = k not in x.in_slots()
            # faces lie right of the traversal direction
            out.append((fi, e, -1 if forward else 1))
    return out


def _find_defect(d: Diagram, circ):
    by_face = defaultdict(list)
    for fi, e, side in _face_sides(d):
        by_face[fi].append((e, side))
    for fi in sorted(by_face):
        items = by_face[fi]
        for i, (e1, s1) in enumerate(items):
            for e2, s2 in items[i + 1:]:
                if s1 == s2 and circ[e1] != circ[e2]:
                    return e1, e2, s1 > 0
    return None


def _vogel_move(d: Diagram, e1: int, e2: int, left: bool) -> Diagram:
    """R II move pushing e1 over e2 through a shared face (increases crossings by two)."""
    m = max(e for p in d.paths for e in p)
    e1a, e1b, e1c = e1, m + 1, m + 2
    e2a, e2b, e2c = e2, m + 3, m + 4
    comp = {e: d.edge_component(e) for p in d.paths for e in p}
    comp.update({e1b: comp[e1], e1c: comp[e1], e2b: comp[e2], e2c: comp[e2]})
    xs = []
    for x in d.crossings.values():
        s = list(x.slots)
        ins = x.in_slots()
        for k in ins:
            if s[k] == e1:
                s[k] = e1c
            elif s[k] == e2:
                s[k] = e2c
        xs.append(Crossing(x.id, tuple(s), x.sign))
    q = max(d.crossings) + 1
    if left:
        xs.append(Crossing(q, (e2b, e1b, e2c, e1a), 1))
        xs.append(Crossing(q + 1, (e2a, e1b, e2b, e1c), -1))
    else:
        xs.append(Crossing(q, (e2b, e1a, e2c, e1b), -1))
        xs.append(Crossing(q + 1, (e2a, e1c, e2b, e1b), 1))
    comps = d.components
    starts = [p[0] for p in d.paths]

    def meta(path, kind):
        return comps[comp[path[0]]]

    return Diagram._retrace(xs, set(comp), starts, [], [], meta)


def braided(d: Diagram, max_moves: int = 10000) -> Diagram:
    """Apply Vogel moves until the Seifert circles are coherently nested."""
    for _ in range(max_moves):
        circ = seifert_circles(d)
        hit = _find_defect(d, circ)
        if hit is None:
            return d
        d = _vogel_move(d, *hit)
    raise InvariantError("Vogel reduction did not terminate")


def read_braid(d: Diagram):
    """Braid word (strands, [(index, sign)]) of a braided, connected closed diagram."""
    circ = seifert_circles(d)
    n = len(set(circ.values()))
    if n == 1:
        if d.crossings:
            raise InvariantError("single Seifert circle with crossings")
        return 1, []
    # circle adjacency through crossings
    adj = defaultdict(set)
    cross_circ = {}
    for x in d.crossings.values():
        a, b = circ[x.ui], circ[x.oi]
        if a == b:
            raise InvariantError("crossing joins a Seifert circle to itself")
        adj[a].add(b)
        adj[b].add(a)
        cross_circ[x.id] = (a, b)
    ends = [c for c in adj if len(adj[c]) == 1]
    if len(ends) != 2 or any(len(v) > 2 for v in adj.values()) or len(adj) != n:
        raise InvariantError("Seifert graph is not a path; diagram not braided")
    chain = [min(ends)]
    while len(chain) < n:
        nxt = [c for c in adj[chain[-1]] if c not in chain]
        chain.append(nxt[0])
    level = {c: i for i, c in enumerate(chain)}
    # faces on both sides of every edge
    sides = defaultdict(dict)
    face_edges_ = defaultdict(list)
    for fi, e, side in _face_sides(d):
        sides[e][side] = fi
        face_edges_[fi].append(e)
    # cut: an edge of the first circle, then an edge of the next circle on the far face, ...
    cut = {}
    e = next(e for e in circ if circ[e] == chain[0])
    # orient: the face of e not touching chain[1]
    f_far = None
    for s in (1, -1):
        f = sides[e][s]
        if any(circ[g] == chain[1] for g in face_edges_[f]):
            f_far = f
    if f_far is None:
        raise InvariantError("braid cut failed")
    cut[chain[0]] = e
    for k in range(1, n):
        cands = [g for g in face_edges_[f_far] if circ[g] == chain[k]]
        if not cands:
            raise InvariantError("braid cut failed")
        g = cands[0]
        cut[chain[k]] = g
        other = [sides[g][s] for s in (1, -1) if sides[g][s] != f_far]
        f_far = other[0] if other else f_far
    # crossing order along each circle, starting after the cut edge
    nxt = {}
    head = {}
    for x in d.crossings.values():
        nxt[x.ui] = x.oo
        nxt[x.oi] = x.uo
        head[x.ui] = x.id
        head[x.oi] = x.id
    order_edges = defaultdict(list)
    for c in chain:
        e0 = cut[c]
        e = e0
        seq = []
        while True:
            seq.append(head[e])
            e = nxt[e]
            if e == e0:
                break
        order_edges[c] = seq
    # merge the per-circle orders with a topological sort
    succ = defaultdict(set)
    indeg = {q: 0 for q in d.crossings}
    for seq in order_edges.values():
        for a, b in zip(seq, seq[1:]):
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    ready = sorted(q for q, k in indeg.items() if k == 0)
    word = []
    heapq.heapify(ready)
    while ready:
        q = heapq.heappop(ready)
        a, b = cross_circ[q]
        word.append((min(level[a], level[b]) + 1, d.crossings[q].sign))
        for r in succ[q]:
            indeg[r] -= 1
            if indeg[r] == 0:
                heapq.heappush(ready, r)
    if len(word) != len(d.crossings):
        raise InvariantError("inconsistent crossing order; diagram not braided")
    return n, word


# --------------------------------------------------------------------------
# Seifert matrices and the Conway polynomial

@dataclass
class SeifertData:
    circles: int
    rank: int
    matrix: list  # rank x rank integer rows
    braid: tuple = field(default=(), repr=False)


def braid_seifert_matrix(strands: int, word) -> list[list[int]]:
    """Seifert matrix of a braid closure (disks per strand, bands per letter).

    Generators are loops through consecutive bands of the same generator.
    """
    signs = [e for _, e in word]
    loops = []
    for i in range(1, strands):
        pos = [k for k, (j, _) in enumerate(word) if j == i]
        loops += [(i, a, b) for a, b in zip(pos, pos[1:])]
    r = len(loops)
    V = [[0] * r for _ in range(r)]
    for u, (i, a, b) in enumerate(loops):
        V[u][u] = (signs[a] + signs[b]) // 2
        for v, (j, c, e) in enumerate(loops):
            if u == v:
                continue
            if i == j and b == c:
                # loops sharing the band b
                if signs[b] > 0:
                    V[u][v] = -1
                else:
                    V[v][u] = 1
            elif j == i + 1:
                if a < c < b < e:
                    V[u][v] = -1
                elif c < a < e < b:
                    V[u][v] = 1
    return V


def seifert_matrix(d: Diagram) -> SeifertData:
    d = closed(d)
    if is_split(d):
        raise InvariantError("seifert_matrix needs a connected diagram")
    circles = len(set(seifert_circles(d).values()))
    b = braided(d)
    n, word = read_braid(b)
    V = braid_seifert_matrix(n, word)
    return SeifertData(circles, len(V), V, (n, tuple(word)))


def _det_poly_bareiss(M):
    """Fraction-free determinant of a square matrix of fmpz_poly entries."""
    import flint
    n = len(M)
    if n == 0:
        return flint.fmpz_poly([1])
    A = [list(row) for row in M]
    sign = 1
    prev = flint.fmpz_poly([1])
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return flint.fmpz_poly([])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _det_pencil_charpoly(V):
    """det(t V - V^T) via the characteristic polynomial of M_a^{-1} V."""
    import flint
    r = len(V)
    Vm = flint.fmpz_mat(V)
    VT = Vm.transpose()
    for a in (1, -1, 2, -2, 3, -3, 5, 7, 11, 13):
        Ma = a * Vm - VT
        dm = Ma.det()
        if dm != 0:
            break
    else:
        # pencil identically singular in a sample: fall back to interpolation
        return _det_pencil_interp(V)
    A = flint.fmpq_mat(Ma).inv() * flint.fmpq_mat(Vm)
    chi = A.charpoly()  # det(l I - A)
    coeffs = [chi[k] for k in range(r + 1)]
    # det(I + sA) = sum_k c_{r-k} (-1)^k ... written as polynomial in s
    q = [flint.fmpq(0)] * (r + 1)
    for k in range(r + 1):
        q[k] = coeffs[r - k] * (-1) ** k
    qs = flint.fmpq_poly(q)
    # substitute s = t - a
    shift = flint.fmpq_poly([-a, 1])
    out = flint.fmpq_poly([0])
    for k in range(r, -1, -1):
        out = out * shift + q[k]
    out = out * dm
    return flint.fmpz_poly([int(out[k]) for k in range(out.degree() + 1)]) if out.degree() >= 0 else flint.fmpz_poly([])


def _det_pencil_interp(V):
    """Exact interpolation of det(tV - V^T) through r+1 integer points."""
    import flint
    r = len(V)
    Vm = flint.fmpz_mat(V)
    VT = Vm.transpose()
    xs = list(range(-(r // 2), r - r // 2 + 1))
    ys = [(t * Vm - VT).det() for t in xs]
    if not any(ys):
        return flint.fmpz_poly([])
    A = flint.fmpq_mat([[flint.fmpq(x) ** k for k in range(r + 1)] for x in xs])
    b = flint.fmpq_mat([[y] for y in ys])
    sol = A.solve(b)
    return flint.fmpz_poly([int(sol[k, 0]) for k in range(r + 1)])


BAREISS_LIMIT = 10


def pencil_det(V, method: str = "auto"):
    """Coefficient list of P(t) = det(tV - V^T)."""
    import flint
    r = len(V)
    if r == 0:
        return [1]
    if method == "bareiss" or (method == "auto" and r <= BAREISS_LIMIT):
        M = [[flint.fmpz_poly([-V[j][i], V[i][j]]) for j in range(r)] for i in range(r)]
        p = _det_poly_bareiss(M)
    else:
        p = _det_pencil_charpoly(V)
    return [int(p[k]) for k in range(r + 1)]


def conway_from_seifert(V) -> LaurentPolynomial:
    """det(xV - x^{-1}V^T) rewritten in z = x - 1/x."""
    r = len(V)
    P = pencil_det(V)
    sym = {2 * k - r: c for k, c in enumerate(P) if c}
    return symmetric_to_z(sym)


_CONWAY_CACHE: dict = {}


def conway(d: Diagram) -> LaurentPolynomial:
    d = simplify(closed(d))
    if is_split(d):
        return ZERO
    if not d.crossings:
        return ONE
    key = pd_key(d)
    hit = _CONWAY_CACHE.get(key)
    if hit is not None:
        return hit
    V = seifert_matrix(d).matrix
    out = conway_from_seifert(V)
    if len(_CONWAY_CACHE) < 200000:
        _CONWAY_CACHE[key] = out
    return out


def alexander(d: Diagram) -> LaurentPolynomial:
    return conway_to_alexander(conway(d))


# --------------------------------------------------------------------------
# v2 from the Gauss diagram

def gauss_sequence(d: Diagram, comp: int = 0) -> list[tuple[int, bool]]:
    """Crossings met along a component from its base point: (id, is_under)."""
    out = []
    for e in d.paths[comp]:
        h = d._head.get(e)
        if h is not None:
            out.append((h[0], h[1] == 0))
    return out


def v2(d: Diagram, comp: int | None = None) -> int:
    """Second Vassiliev invariant of one component (Polyak-Viro arrow formula).

    Counts pairs of self-crossings met in the interleaved order a b a b with
    a first met as an under-passage and b first met as an over-passage.
    """
    if comp is None:
        if len(d.components) != 1:
            raise InvariantError("v2 needs a knot or a component index")
        comp = 0
    if len(d.components) > 1:
        d = d.sublink([comp])
        comp = 0
    seq = gauss_sequence(d, comp)
    first, second, under_first = {}, {}, {}
    for i, (q, under) in enumerate(seq):
        if q in first:
            second[q] = i
        else:
            first[q] = i
            under_first[q] = under
    tot = 0
    qs = [q for q in first if q in second]
    for a in qs:
        if not under_first[a]:
            continue
        for b in qs:
            if b == a or under_first[b]:
                continue
            if first[a] < first[b] < second[a] < second[b]:
                tot += d.crossings[a].sign * d.crossings[b].sign
    return tot


# --------------------------------------------------------------------------
# Alexander vectors of coloured tangles

def _component_order(d: Diagram) -> list[int]:
    """green first, then blacks by level, then red, then anything else."""
    rank = {"green": 0, "black": 1, "red": 2}
    return sorted(range(len(d.components)),
                  key=lambda i: (rank.get(d.components[i].color, 3), d.components[i].level, i))


def _label(d: Diagram, i: int) -> str:
    c = d.components[i]
    return f"black{c.level}" if c.color == "black" and c.level > 1 else c.color


@dataclass(frozen=True)
class AlexanderVector:
    """Conway polynomials of the whole link, every two-component sublink, every component.

    For a green/black/red tangle the order is (whole, green-black, green-red,
    red-black, green, black, red); linking numbers ride along as metadata.
    """

    labels: tuple
    polys: tuple
    linking: tuple = ()

    def key(self):
        return (self.labels, self.polys, self.linking)

    def alexander(self):
        return tuple(conway_to_alexander(p) for p in self.polys)

    def entry(self, label: str):
        return self.polys[self.labels.index(label)]

    def lk(self, a: str, b: str) -> int:
        for (x, y), v in self.linking:
            if {x, y} == {a, b}:
                return v
        raise KeyError((a, b))

    def as_dict(self):
        return {"entries": {lab: str(p) for lab, p in zip(self.labels, self.polys)},
                "linking": {f"{a}-{b}": v for (a, b), v in self.linking}}


_VECTOR_CACHE: dict = {}


def alexander_vector(d: Diagram) -> AlexanderVector:
    if not d.components:
        raise InvariantError("empty diagram")
    if any(c.color == "uncolored" for c in d.components) and len(d.components) > 1:
        raise InvariantError("Alexander vectors need coloured components")
    key = pd_key(d) + (tuple((c.color, c.level, c.kind) for c in d.components),
                       tuple(d.left), tuple(d.right))
    hit = _VECTOR_CACHE.get(key)
    if hit is not None:
        return hit
    order = _component_order(d)
    names = [_label(d, i) for i in order]
    labels = ["whole"]
    polys = [conway(d)]
    if len(order) > 2:
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                labels.append(f"{names[a]}-{names[b]}")
                polys.append(conway(d.sublink([order[a], order[b]])))
    if len(order) > 1:
        for a in range(len(order)):
            labels.append(names[a])
            polys.append(conway(d.sublink([order[a]])))
    links = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            links.append(((names[a], names[b]), linking_number(d, order[a], order[b])))
    out = AlexanderVector(tuple(labels), tuple(polys), tuple(links))
    if len(_VECTOR_CACHE) < 100000:
        _VECTOR_CACHE[key] = out
    return out
