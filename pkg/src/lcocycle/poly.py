"""Integer Laurent polynomials in one variable."""
from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Mapping[int, int] | None = None, var: str = "z"):
        self.var = var
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    # construction helpers
    @classmethod
    def const(cls, c: int, var: str = "z"):
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, e: int, c: int = 1, var: str = "z"):
        return cls({e: c}, var)

    @classmethod
    def from_pairs(cls, pairs: Iterable, var: str = "z"):
        return cls({int(e): int(c) for e, c in pairs}, var)

    @classmethod
    def from_list(cls, cs: Iterable[int], low: int = 0, var: str = "z"):
        return cls({low + k: c for k, c in enumerate(cs)}, var)

    # basic queries
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def low_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, e):
        return self.coeffs.get(e, 0)

    def pairs(self):
        return sorted(self.coeffs.items())

    def lowest_coefficient(self):
        return self.coeffs[min(self.coeffs)] if self.coeffs else 0

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial.const(other, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LaurentPolynomial.const(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int):
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()}, self.var)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.pairs()))

    def __call__(self, x):
        return sum(c * x ** e for e, c in self.coeffs.items())

    # normalisation for Alexander polynomials
    def normalized(self):
        """Unit-normalised representative: lowest exponent 0, positive leading term."""
        if not self.coeffs:
            return self
        p = self.shift(-self.low_degree())
        if p.coeffs[p.degree()] < 0:
            p = -p
        return p

    def equal_up_to_units(self, other):
        return self.normalized() == other.normalized()

    def __repr__(self):
        return f"LaurentPolynomial({self.pairs()}, {self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                mono = str(abs(c))
            else:
                v = self.var if e == 1 else f"{self.var}^{e}"
                mono = v if abs(c) == 1 else f"{abs(c)}{v}"
            parts.append(("-" if c < 0 else "+", mono))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, m in parts[1:]:
            s += f" {sg} {m}"
        return s

    def to_json(self):
        return [[e, c] for e, c in self.pairs()]


def conway_to_alexander(nabla: LaurentPolynomial) -> LaurentPolynomial:
    """Substitute z = t^(1/2) - t^(-1/2); return the unit-normalised result in t."""
    # work in s = t^(1/2)
    zs = LaurentPolynomial({1: 1, -1: -1}, "s")
    acc = LaurentPolynomial({}, "s")
    for e, c in nabla.coeffs.items():
        acc = acc + c * zs ** e
    if acc.is_zero():
        return LaurentPolynomial({}, "t")
    low = acc.low_degree()
    out = {}
    for e, c in acc.coeffs.items():
        out[(e - low) // 2] = c
    return LaurentPolynomial(out, "t").normalized()


def symmetric_to_z(sym: dict[int, int]) -> LaurentPolynomial:
    """Rewrite a Laurent polynomial in x (x -> -1/x symmetric) as a polynomial in z = x - 1/x."""
    rem = {e: c for e, c in sym.items() if c}
    out: dict[int, int] = {}
    zpow_cache: dict[int, dict[int, int]] = {0: {0: 1}}

    def zpow(k):
        if k not in zpow_cache:
            prev = zpow(k - 1)
            nxt: dict[int, int] = {}
            for e, c in prev.items():
                nxt[e + 1] = nxt.get(e + 1, 0) + c
                nxt[e - 1] = nxt.get(e - 1, 0) - c
            zpow_cache[k] = nxt
        return zpow_cache[k]

    while rem:
        top = max(rem)
        if top < 0:
            raise ValueError("not a polynomial in x - 1/x")
        c = rem[top]
        out[top] = c
        for e, cc in zpow(top).items():
            v = rem.get(e, 0) - c * cc
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return LaurentPolynomial(out, "z")
