"""
Integer polynomials in ``q``: q-integers, Poincare polynomials and the
Hilbert-series bounds for the lollipop-adjacent family ``(2, n-1, ..., n-1, n, n)``.

All Poincare and Hilbert series are in the variable ``q`` standing for a
class of cohomological degree two, so the coefficient of ``q^k`` is the
``2k``-th Betti number.

>>> str(q_fact(3))
'1+2q+2q^2+q^3'
>>> str(poincare_direct(validate((2, 3, 3))))
'1+4q+q^2'
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .hessfn import HessenbergFunction, minor, validate

__all__ = [
    "QPoly", "q_int", "q_fact", "ell_h", "poincare_direct", "poincare_recursive",
    "poincare_h1_closed", "family_function", "F_n", "lollipop_Pn", "Qn",
    "hilb_invariants", "subring_bound_components", "subring_upper_bound",
]


class QPoly:
    """Univariate polynomial with exact integer coefficients, stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> QPoly:
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str) -> QPoly:
        """Inverse of :meth:`serialize` (``"c0,c1,..."``)."""
        text = text.strip()
        return cls(int(c) for c in text.split(",")) if text else cls()

    def serialize(self) -> str:
        return ",".join(map(str, self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> QPoly:
        other = _coerce(other)
        m = max(len(self), len(other))
        return QPoly(self[k] + other[k] for k in range(m))

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> QPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> QPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> QPoly:
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPoly:
        out = QPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, q):
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def truncate(self, k: int) -> QPoly:
        """Reduction modulo ``q^k``."""
        return QPoly(self.coeffs[:k])

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def dominated_by(self, other: QPoly) -> bool:
        """Coefficientwise ``self <= other``."""
        m = max(len(self), len(other))
        return all(self[k] <= other[k] for k in range(m))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"


def _coerce(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as QPoly")


ONE = QPoly([1])
Q = QPoly([0, 1])


def q_int(m: int) -> QPoly:
    if m < 0:
        raise ValueError("q-integers are defined for m >= 0")
    return QPoly([1] * m)


@lru_cache(maxsize=None)
def q_fact(m: int) -> QPoly:
    if m < 0:
        raise ValueError("q-factorials are defined for m >= 0")
    return ONE if m == 0 else q_fact(m - 1) * q_int(m)


def ell_h(h: HessenbergFunction, w: Sequence[int]) -> int:
    """Number of pairs ``j < i <= h(j)`` with ``w(j) > w(i)``."""
    n = len(w)
    count = 0
    for j in range(1, n):
        wj = w[j - 1]
        for i in range(j + 1, h[j] + 1):
            if wj > w[i - 1]:
                count += 1
    return count


def poincare_direct(h: HessenbergFunction) -> QPoly:
    """Betti numbers by sweeping the symmetric group with the ``ell_h`` statistic."""
    counts = [0] * (sum(h[j] - j for j in range(1, h.n + 1)) + 1)
    for w in permutations(range(1, h.n + 1)):
        counts[ell_h(h, w)] += 1
    return QPoly(counts)


@lru_cache(maxsize=None)
def poincare_recursive(h: HessenbergFunction) -> QPoly:
    """Sum over the position of the largest value: ``q^{h(j)-j}`` times the minor at ``j``."""
    if h.n == 1:
        return ONE
    total = QPoly()
    for j in range(1, h.n + 1):
        total = total + QPoly.monomial(h[j] - j) * poincare_recursive(minor(h, j))
    return total


def poincare_h1_closed(n: int, h1: int) -> QPoly:
    """Closed form for ``h = (h1, n, ..., n)``."""
    if not 2 <= h1 <= n:
        raise ValueError("need 2 <= h1 <= n")
    return (q_int(h1) * q_fact(n - 1)
            + (n - 1) * QPoly.monomial(h1 - 1) * q_int(n - h1) * q_fact(n - 2))


def family_function(n: int) -> HessenbergFunction:
    """``(2, n-1, ..., n-1, n, n)``, the smallest non-lollipop with ``h(1) = 2``."""
    if n < 4:
        raise ValueError("the family starts at n = 4")
    return validate((2,) + (n - 1,) * (n - 3) + (n, n))


def F_n(n: int) -> QPoly:
    """Poincare polynomial of ``(2, n, ..., n)``."""
    return (1 + Q) * q_fact(n - 1) + (n - 1) * Q * q_int(n - 2) * q_fact(n - 2)


@lru_cache(maxsize=None)
def lollipop_Pn(n: int) -> QPoly:
    """Poincare polynomial of :func:`family_function`, by the size recurrence for ``n >= 5``."""
    if n < 4:
        raise ValueError("n >= 4 required")
    if n == 4:
        return poincare_direct(family_function(4))
    geometric = QPoly([0] + [1] * (n - 4))
    return ((1 + Q) ** 2 * q_fact(n - 2)
            + (n - 2) * (Q + Q * Q) * q_int(n - 3) * q_fact(n - 3)
            + (n - 1) * (Q + QPoly.monomial(n - 3))
            * ((1 + Q) * q_fact(n - 3) + (n - 3) * Q * q_int(n - 4) * q_fact(n - 4))
            + geometric * lollipop_Pn(n - 1))


def Qn(n: int) -> QPoly:
    if n < 4:
        raise ValueError("n >= 4 required")
    return (QPoly([1, 2 * n, n * (n - 1)]) * q_fact(n - 2)
            + QPoly.monomial(n - 3, n * (n - 3) // 2))


def hilb_invariants(h: HessenbergFunction) -> QPoly:
    """Hilbert series of the ring of invariants, ``prod_{j<n} [h(j)-j+1]_q``."""
    out = ONE
    for j in range(1, h.n):
        out = out * q_int(h[j] - j + 1)
    return out


def subring_bound_components(n: int) -> dict[str, QPoly]:
    """Bounds on the four summands of the degree-two subring for :func:`family_function`."""
    if n < 4:
        raise ValueError("n >= 4 required")
    base = q_fact(n - 2)
    bc = (n - 1) * (Q + Q * Q) * base
    return {
        "A": (1 + Q) ** 2 * base,
        "B": bc,
        "C": bc,
        "D": (n * n - 3 * n + 1) * Q * Q * base,
    }


def subring_upper_bound(n: int) -> QPoly:
    parts = subring_bound_components(n)
    return parts["A"] + parts["B"] + parts["C"] + parts["D"]
