"""
Exact multivariate polynomials in ``t_1, ..., t_n`` over the rationals.

Coefficients are ``int`` or :class:`fractions.Fraction`; floats are refused.
Exponent vectors are tuples of length ``n`` (``t_1`` first).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "MultiPoly", "monomials", "monomial_index", "num_monomials",
    "permute_vars", "substitute", "divisible_by_difference", "replace_var",
    "drop_last_var",
]


def _check(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficient {c!r} is not an exact rational")
    return c


class MultiPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.n = n
        self.terms: dict[tuple[int, ...], Rational] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for n={n}")
                if _check(c) != 0:
                    self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def zero(cls, n: int) -> MultiPoly:
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> MultiPoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> MultiPoly:
        """The variable ``t_i`` (1-based)."""
        if not 1 <= i <= n:
            raise IndexError(i)
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1})

    @classmethod
    def linear(cls, n: int, coeffs: Mapping[int, object]) -> MultiPoly:
        """``sum c_i t_i`` from a 1-based map ``i -> c_i``."""
        terms = {}
        for i, c in coeffs.items():
            if _check(c) != 0:
                e = [0] * n
                e[i - 1] = 1
                terms[tuple(e)] = terms.get(tuple(e), 0) + c
        return cls._raw(n, {e: c for e, c in terms.items() if c != 0})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.n, other)
        return isinstance(other, MultiPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def _same(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("polynomials live in different rings")
            return other
        return MultiPoly.constant(self.n, _check(other))

    def __add__(self, other) -> MultiPoly:
        other = self._same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._same(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._same(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = _check(other)
            if c == 0:
                return MultiPoly.zero(self.n)
            return MultiPoly._raw(self.n, {e: v * c for e, v in self.terms.items()})
        other = self._same(other)
        terms: dict[tuple[int, ...], Rational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.n, {e: c for e, c in terms.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        out = MultiPoly.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def max_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def min_degree(self) -> int:
        return min(self.degrees(), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def evaluate(self, point: Sequence[object]):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total += term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(f"t{i + 1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self})"


def permute_vars(p: MultiPoly, sigma: Sequence[int]) -> MultiPoly:
    """Apply ``t_i -> t_{sigma(i)}`` (``sigma`` in one-line notation, 1-based)."""
    n = p.n
    if len(sigma) != n:
        raise ValueError("permutation size does not match the ring")
    terms = {}
    for e, c in p.terms.items():
        new = [0] * n
        for i, k in enumerate(e):
            new[sigma[i] - 1] = k
        terms[tuple(new)] = c
    return MultiPoly._raw(n, terms)


def substitute(p: MultiPoly, a: int, b: int) -> MultiPoly:
    """Set ``t_a := t_b``."""
    ia, ib = a - 1, b - 1
    terms: dict[tuple[int, ...], Rational] = {}
    for e, c in p.terms.items():
        new = list(e)
        new[ib] += new[ia]
        new[ia] = 0
        key = tuple(new)
        terms[key] = terms.get(key, 0) + c
    return MultiPoly._raw(p.n, {e: c for e, c in terms.items() if c != 0})


def divisible_by_difference(p: MultiPoly, a: int, b: int) -> bool:
    """Membership of ``p`` in the principal ideal ``(t_a - t_b)``."""
    if a == b:
        raise ValueError("need a != b")
    return substitute(p, a, b).is_zero()


def replace_var(p: MultiPoly, i: int, q: MultiPoly) -> MultiPoly:
    """Substitute the polynomial ``q`` for ``t_i``."""
    out = MultiPoly.zero(p.n)
    powers = [MultiPoly.constant(p.n, 1)]
    for e, c in p.terms.items():
        k = e[i - 1]
        while len(powers) <= k:
            powers.append(powers[-1] * q)
        rest = list(e)
        rest[i - 1] = 0
        out = out + MultiPoly._raw(p.n, {tuple(rest): c}) * powers[k]
    return out


def drop_last_var(p: MultiPoly) -> MultiPoly:
    """View a polynomial not involving ``t_n`` as one in ``t_1..t_{n-1}``."""
    terms = {}
    for e, c in p.terms.items():
        if e[-1]:
            raise ValueError(f"{p} involves t{p.n}")
        terms[e[:-1]] = c
    return MultiPoly._raw(p.n - 1, terms)


def num_monomials(n: int, d: int) -> int:
    return comb(d + n - 1, n - 1)


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree ``d`` in colex order.

    Colex compares exponent vectors from the last variable backwards, so
    ``t_1^d`` comes first and ``t_n^d`` last.
    """
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    if n == 0:
        return ((),) if d == 0 else ()
    rec([], d, n)
    out.sort(key=lambda e: e[::-1])
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {e: k for k, e in enumerate(monomials(n, d))}


def from_items(n: int, items: Iterable[tuple[tuple[int, ...], object]]) -> MultiPoly:
    terms: dict[tuple[int, ...], Rational] = {}
    for e, c in items:
        terms[e] = terms.get(e, 0) + c
    return MultiPoly._raw(n, {e: c for e, c in terms.items() if c != 0})
