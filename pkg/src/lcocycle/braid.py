"""Braid words, the Garside word problem, and formal integer sums of braids.

Letters are pairs ``(i, e)`` meaning sigma_i ** e with ``1 <= i < n`` and
``e`` in ``{1, -1}``.  Words compose left to right in reading order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("strand count must be positive")
        for i, e in self.letters:
            if not 1 <= i < self.strands:
                raise BraidError(f"generator {i} out of range for B_{self.strands}")
            if e not in (1, -1):
                raise BraidError(f"bad exponent {e}")

    @classmethod
    def from_ints(cls, ints: Iterable[int], strands: int | None = None) -> "BraidWord":
        ints = list(ints)
        if any(k == 0 for k in ints):
            raise BraidError("zero is not a braid letter")
        n = strands if strands is not None else max([abs(k) for k in ints], default=0) + 1
        return cls(n, tuple((abs(k), 1 if k > 0 else -1) for k in ints))

    def ints(self) -> list[int]:
        return [i * e for i, e in self.letters]

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        n = max(self.strands, other.strands)
        return BraidWord(n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def reversed(self) -> "BraidWord":
        """Same letters read backwards (the word of the inverted long knot)."""
        return BraidWord(self.strands, tuple(reversed(self.letters)))

    def writhe(self) -> int:
        return sum(e for _, e in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """p[j] = end position of the strand starting at position j (0-based)."""
        at = list(range(self.strands))
        for i, _ in self.letters:
            at[i - 1], at[i] = at[i], at[i - 1]
        p = [0] * self.strands
        for pos, s in enumerate(at):
            p[s] = pos
        return tuple(p)

    def __str__(self):
        return " ".join(str(k) for k in self.ints()) or "(empty)"


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    toks = text.split()
    ints = []
    for t in toks:
        try:
            k = int(t)
        except ValueError:
            raise BraidError(f"not an integer: {t!r}") from None
        if k == 0:
            raise BraidError("zero is not a braid letter")
        ints.append(k)
    if strands is not None and any(abs(k) >= strands for k in ints):
        raise BraidError(f"generator index out of range for {strands} strands")
    return BraidWord.from_ints(ints, strands)


def word(*ints: int, strands: int | None = None) -> BraidWord:
    return BraidWord.from_ints(ints, strands)


# --- Garside left normal form ---------------------------------------------
# A simple (permutation) braid is stored as the tuple p with p[j] the final
# position of the strand that starts at position j.  Product AB has
# p_AB = p_B o p_A.

Perm = tuple[int, ...]


def _compose(pa: Perm, pb: Perm) -> Perm:
    return tuple(pb[x] for x in pa)


def _swap_after(p: Perm, i: int) -> Perm:
    # A * sigma_i   (i is 0-based position of the lower strand)
    q = list(p)
    for j, x in enumerate(q):
        if x == i:
            q[j] = i + 1
        elif x == i + 1:
            q[j] = i
    return tuple(q)


def _swap_before(p: Perm, i: int) -> Perm:
    # sigma_i^{-1} * B  ==  B with its first two inputs exchanged
    q = list(p)
    q[i], q[i + 1] = q[i + 1], q[i]
    return tuple(q)


def _left_desc(p: Perm) -> set[int]:
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _right_desc(p: Perm) -> set[int]:
    inv = [0] * len(p)
    for j, x in enumerate(p):
        inv[x] = j
    return {i for i in range(len(p) - 1) if inv[i] > inv[i + 1]}


def _tau(p: Perm) -> Perm:
    n = len(p)
    return tuple(n - 1 - p[n - 1 - j] for j in range(n))


@dataclass(frozen=True, order=True)
class NormalForm:
    strands: int
    inf: int
    factors: tuple[Perm, ...]

    def to_word(self) -> BraidWord:
        n = self.strands
        delta = _perm_word(tuple(range(n - 1, -1, -1)))
        ints: list[int] = []
        if self.inf >= 0:
            ints += delta * self.inf
        else:
            ints += [-k for k in reversed(delta)] * (-self.inf)
        for f in self.factors:
            ints += _perm_word(f)
        return BraidWord.from_ints(ints, n)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors


def _perm_word(p: Perm) -> list[int]:
    """A positive word for the simple braid p (bubble sort of end positions)."""
    at = sorted(range(len(p)), key=lambda j: p[j])  # strand sitting at each end
    # sort starting from identity towards `at` using adjacent swaps
    cur = list(range(len(p)))
    out = []
    target = {s: pos for pos, s in enumerate(at)}
    changed = True
    while changed:
        changed = False
        for i in range(len(cur) - 1):
            if target[cur[i]] > target[cur[i + 1]]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                out.append(i + 1)
                changed = True
    return out


def normal_form(w: BraidWord) -> NormalForm:
    n = w.strands
    ident = tuple(range(n))
    delta = tuple(range(n - 1, -1, -1))
    inf = 0
    facs: list[Perm] = []
    for i, e in w.letters:
        if e > 0:
            facs.append(_swap_after(ident, i - 1))
        else:
            # sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}); slide Delta^{-1} left
            inf -= 1
            facs = [_tau(f) for f in facs]
            facs.append(_delta_minus(delta, i - 1))
    facs = [f for f in facs if f != ident]
    # make every adjacent pair left-weighted
    changed = True
    while changed:
        changed = False
        for k in range(len(facs) - 1, 0, -1):
            a, b = facs[k - 1], facs[k]
            if a == ident or b == ident:
                continue
            bad = _left_desc(b) - _right_desc(a)
            while bad:
                i = min(bad)
                a, b = _swap_after(a, i), _swap_before(b, i)
                bad = _left_desc(b) - _right_desc(a)
                changed = True
            facs[k - 1], facs[k] = a, b
        facs = [f for f in facs if f != ident]
    while facs and facs[0] == delta:
        facs.pop(0)
        inf += 1
    return NormalForm(n, inf, tuple(facs))


def _delta_minus(delta: Perm, i: int) -> Perm:
    # Delta * sigma_i^{-1}: remove a final sigma_i from Delta
    return _swap_after(delta, i)


def equal(w1: BraidWord, w2: BraidWord) -> bool:
    n = max(w1.strands, w2.strands)
    return normal_form(BraidWord(n, w1.letters)) == normal_form(BraidWord(n, w2.letters))


# --- formal sums -----------------------------------------------------------

class FormalBraidSum(dict):
    """NormalForm -> nonzero integer.  Keeps one readable word per key."""

    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self.words: dict[NormalForm, BraidWord] = {}

    def add(self, coeff: int, w: BraidWord):
        nf = normal_form(w)
        c = self.get(nf, 0) + coeff
        if c:
            self[nf] = c
            self.words.setdefault(nf, w)
        else:
            self.pop(nf, None)
            self.words.pop(nf, None)
        return self

    def terms(self) -> list[tuple[int, BraidWord]]:
        return [(c, self.words[nf]) for nf, c in sorted(self.items())]

    def __str__(self):
        if not self:
            return "0"
        return " ".join(f"{c:+d}[{w}]" for c, w in self.terms())


def sum_reduce(terms: Iterable[tuple[int, BraidWord]]) -> FormalBraidSum:
    terms = list(terms)
    ns = {w.strands for _, w in terms}
    if len(ns) > 1:
        raise BraidError(f"mixed strand counts {sorted(ns)}")
    out = FormalBraidSum()
    for c, w in terms:
        out.add(c, w)
    return out


# --- tetrahedron ---------------------------------------------------------
# Each stratum contributes sign * (A s_i^2 B - A s_{i+1}^2 B).  The P1, P1bar,
# P4, P4bar entries are the ones written out by hand in the source; the two
# remaining pairs come from the octagon of reduced words of the B4 half twist
# (see the decisions ledger).

def _w(*ints):
    return BraidWord.from_ints(ints, 4)


TETRAHEDRON_STRATA: dict[str, list[tuple[int, BraidWord]]] = {
    "P1": [(-1, _w(1, 2, 2, 1, 2)), (+1, _w(1, 3, 3, 1, 2))],
    "P1bar": [(+1, _w(2, 3, 1, 1, 3)), (-1, _w(2, 3, 2, 2, 3))],
    "P4": [(+1, _w(2, 1, 2, 2, 1)), (-1, _w(2, 1, 3, 3, 1))],
    "P4bar": [(-1, _w(3, 1, 1, 3, 2)), (+1, _w(3, 2, 2, 3, 2))],
    # branch 0 remote
    "P2": [(-1, _w(1, 2, 3, 1, 1)), (+1, _w(1, 2, 3, 2, 2))],
    "P2bar": [(+1, _w(2, 2, 1, 2, 3)), (-1, _w(3, 3, 1, 2, 3))],
    # branch 3 remote
    "P3": [(+1, _w(1, 1, 3, 2, 1)), (-1, _w(2, 2, 3, 2, 1))],
    "P3bar": [(-1, _w(3, 2, 1, 2, 2)), (+1, _w(3, 2, 1, 3, 3))],
}


def tetrahedron_sum(exclude: Sequence[str] = ()) -> FormalBraidSum:
    terms = []
    for name, block in TETRAHEDRON_STRATA.items():
        if name not in exclude:
            terms += block
    return sum_reduce(terms)


# --- cube equator edges ------------------------------------------------------
# Written as in the source: bracketed partial smoothings with braid context.
# Where the source leaves the move sign implicit, the second R III move carries
# the opposite sign of the first.

def _b(*ints):
    return BraidWord.from_ints(ints, 3)


CUBE_EDGES: dict[str, list[tuple[int, BraidWord]]] = {
    "1-7": [
        (+1, _b(1, 1, -1)), (-1, _b(2, 2, -1)),
        (-1, _b(2, -2, 1)), (+1, _b(2, 2, -1)),
    ],
    "7-4": [
        (+1, _b(-2, 1, 2)), (-1, _b(-2, 1, -2)),
        (+1, _b(-2, 1, -2)), (-1, _b(2, -1, -2)),
        (-1, _b(1, 2, -1)), (+1, _b(1, -2, 1)),
        (-1, _b(1, -2, 1)), (+1, _b(-1, -2, 1)),
    ],
    "4-8": [
        (+1, _b(2, -1, -1)), (-1, _b(-2, 1, -1)),
        (-1, _b(2, -1, -1)), (+1, _b(2, -2, -2)),
    ],
    "8-3": [
        (+1, _b(1, -1, -1)), (-1, _b(1, -2, -2)),
        (-1, _b(-1, 2, -2)), (+1, _b(1, -2, -2)),
    ],
    "3-5": [
        (+1, _b(2, -1, 2)), (-1, _b(-2, -1, 2)),
        (-1, _b(2, -1, 2)), (+1, _b(2, 1, -2)),
        (+1, _b(1, -2, -1)), (-1, _b(-1, 2, -1)),
        (-1, _b(-1, 2, 1)), (+1, _b(-1, 2, -1)),
    ],
    "1-5": [
        (+1, _b(1, 1, -2)), (-1, _b(2, 2, -2)),
        (-1, _b(1, 1, -2)), (+1, _b(1, -1, 2)),
    ],
}


def cube_edge_sum(edge: str) -> FormalBraidSum:
    key = edge.replace(" ", "")
    if key in ("5-3",):
        key = "3-5"
    if key not in CUBE_EDGES:
        if "2" in key.split("-") or "6" in key.split("-"):
            raise BraidError(f"edge {edge} touches a pole (types 2/6); unsupported")
        raise BraidError(f"unknown equator edge {edge}")
    return sum_reduce(CUBE_EDGES[key])
