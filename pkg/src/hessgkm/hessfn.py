"""
Hessenberg functions and their staircase diagrams.

A Hessenberg function of size ``n`` is a non-decreasing map ``h: [n] -> [n]``
with ``h(j) >= j``.  Values are stored 1-based in a tuple, so ``h(j)`` is
``h[j]`` (see :meth:`HessenbergFunction.__getitem__`).

The box ``(i, j)`` (row ``i``, column ``j``) of the ``n x n`` grid is shaded
when ``i <= h(j)``.

>>> h = validate((2, 3, 3))
>>> h.n, is_connected(h), dimension(h)
(3, True, 2)
>>> flip(validate((2, 4, 4, 4)))
HessenbergFunction(3,3,4,4)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "HessenbergError", "NotMonotone", "BelowDiagonal", "OutOfRange",
    "SizeTooSmall", "AlreadyConnected",
    "HessenbergFunction", "LollipopShape",
    "validate", "parse", "is_connected", "dimension", "boxes",
    "bottom_and_ell_sets", "h_star", "minor", "flip", "from_boxes",
    "lollipop", "lollipop_form", "forbidden_families", "minor_closure",
    "has_forbidden_minor", "enumerate_functions", "decompose_disconnected",
]


class HessenbergError(ValueError):
    pass


class NotMonotone(HessenbergError):
    pass


class BelowDiagonal(HessenbergError):
    pass


class OutOfRange(HessenbergError):
    pass


class SizeTooSmall(HessenbergError):
    pass


class AlreadyConnected(HessenbergError):
    pass


@dataclass(frozen=True, order=True)
class HessenbergFunction:
    values: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        """``h[j]`` is h(j) for 1 <= j <= n; ``h[0]`` is the convention h(0) = 1."""
        if j == 0:
            return 1
        if not 1 <= j <= self.n:
            raise IndexError(j)
        return self.values[j - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return ",".join(map(str, self.values))

    def __repr__(self) -> str:
        return f"HessenbergFunction({self})"


class LollipopShape(NamedTuple):
    a: int
    b: int


def validate(values: Sequence[int]) -> HessenbergFunction:
    vals = tuple(int(v) for v in values)
    if not vals:
        raise SizeTooSmall("empty Hessenberg function")
    n = len(vals)
    for j, v in enumerate(vals, start=1):
        if v < j:
            raise BelowDiagonal(f"h({j}) = {v} < {j}")
        if v > n:
            raise OutOfRange(f"h({j}) = {v} > n = {n}")
    for j in range(1, n):
        if vals[j] < vals[j - 1]:
            raise NotMonotone(f"h({j + 1}) = {vals[j]} < h({j}) = {vals[j - 1]}")
    return HessenbergFunction(vals)


def parse(text: str) -> HessenbergFunction:
    """Parse the comma-separated form, e.g. ``"2,3,4,4"``."""
    parts = [p for p in text.replace(" ", "").strip("()").split(",") if p]
    try:
        return validate([int(p) for p in parts])
    except ValueError as exc:
        if isinstance(exc, HessenbergError):
            raise
        raise HessenbergError(f"cannot parse {text!r}") from exc


def is_connected(h: HessenbergFunction) -> bool:
    return all(h[j] >= j + 1 for j in range(1, h.n))


def dimension(h: HessenbergFunction) -> int:
    return sum(h[j] - j for j in range(1, h.n + 1))


def boxes(h: HessenbergFunction) -> frozenset[tuple[int, int]]:
    """All shaded boxes ``(row, column)``."""
    return frozenset((i, j) for j in range(1, h.n + 1) for i in range(1, h[j] + 1))


def from_boxes(n: int, shaded: frozenset[tuple[int, int]]) -> HessenbergFunction:
    vals = []
    for j in range(1, n + 1):
        col = [i for (i, jj) in shaded if jj == j]
        vals.append(max(col) if col else 0)
    return validate(vals)


def bottom_and_ell_sets(h: HessenbergFunction) -> tuple[frozenset[int], frozenset[int]]:
    bottom = frozenset(j for j in range(1, h.n) if h[j - 1] == h[j] == j + 1)
    ell = frozenset(j for j in range(1, h.n) if h[j - 1] == j and h[j] == j + 1)
    return bottom, ell


def h_star(h: HessenbergFunction, i: int) -> int:
    """Smallest column whose shading reaches row ``i``."""
    if not 1 <= i <= h.n:
        raise IndexError(i)
    return min(j for j in range(1, h.n + 1) if h[j] >= i)


def minor(h: HessenbergFunction, j: int) -> HessenbergFunction:
    """Delete row ``j`` and column ``j`` of the diagram."""
    n = h.n
    if n < 2:
        raise SizeTooSmall("cannot take a minor of a size-1 function")
    if not 1 <= j <= n:
        raise IndexError(j)
    vals = []
    for i in range(1, n):
        if i < j:
            vals.append(h[i] if h[i] < j else h[i] - 1)
        else:
            vals.append(h[i + 1] - 1)
    return validate(vals)


def flip(h: HessenbergFunction) -> HessenbergFunction:
    """Reflect the diagram along the anti-diagonal."""
    n = h.n
    shaded = boxes(h)
    return from_boxes(n, frozenset((n + 1 - j, n + 1 - i) for (i, j) in shaded))


def lollipop(n: int, a: int, b: int) -> HessenbergFunction:
    """The function that is ``a+1`` on ``[1, a]``, ``j+1`` on ``(a, b)`` and ``n`` on ``[b, n]``."""
    if not 1 <= a < b <= n:
        raise HessenbergError(f"need 1 <= a < b <= n, got a={a}, b={b}, n={n}")
    vals = []
    for j in range(1, n + 1):
        if j <= a:
            vals.append(a + 1)
        elif j < b:
            vals.append(j + 1)
        else:
            vals.append(n)
    return validate(vals)


def lollipop_form(h: HessenbergFunction) -> LollipopShape | None:
    n = h.n
    a = h[1] - 1
    if a < 1:
        return None
    first_full = min(j for j in range(1, n + 1) if h[j] == n)
    b = first_full if first_full > a else a + 1
    if b > n:
        return None
    if lollipop(n, a, b) != h:
        return None
    return LollipopShape(a, b)


@lru_cache(maxsize=None)
def forbidden_families(n: int) -> frozenset[HessenbergFunction]:
    """All members of size ``n`` of the three excluded families."""
    found = set()
    beta = n
    for alpha in range(3, beta):
        found.add(validate((alpha,) + (beta,) * (beta - 1)))
        found.add(validate((beta - 1,) * (beta - alpha) + (beta,) * alpha))
    gamma = n
    if gamma >= 5:
        found.add(validate((2,) + (gamma - 1,) * (gamma - 3) + (gamma, gamma)))
    return frozenset(found)


@lru_cache(maxsize=None)
def minor_closure(h: HessenbergFunction) -> frozenset[HessenbergFunction]:
    """``h`` together with everything reachable by deleting the first or last row/column."""
    seen = {h}
    stack = [h]
    while stack:
        g = stack.pop()
        if g.n < 2:
            continue
        for m in (minor(g, 1), minor(g, g.n)):
            if m not in seen:
                seen.add(m)
                stack.append(m)
    return frozenset(seen)


def has_forbidden_minor(h: HessenbergFunction) -> bool:
    return any(m in forbidden_families(m.n) for m in minor_closure(h))


def enumerate_functions(n: int, connected_only: bool = False) -> list[HessenbergFunction]:
    """All Hessenberg functions of size ``n`` in lexicographic order."""
    if n < 1:
        raise HessenbergError("n must be positive")
    out = []
    for vals in combinations_with_replacement(range(1, n + 1), n):
        if all(v >= j for j, v in enumerate(vals, start=1)):
            h = HessenbergFunction(vals)
            if not connected_only or is_connected(h):
                out.append(h)
    return out


def decompose_disconnected(h: HessenbergFunction) -> tuple[HessenbergFunction, HessenbergFunction, int]:
    """Split at the smallest ``k < n`` with ``h(k) = k``.

    Returns the restriction to ``[k]``, the shifted restriction to
    ``[k+1, n]`` and the number ``C(n, k)`` of copies of the product.
    """
    n = h.n
    for k in range(1, n):
        if h[k] == k:
            left = validate(h.values[:k])
            right = validate([h[i] - k for i in range(k + 1, n + 1)])
            return left, right, comb(n, k)
    raise AlreadyConnected(str(h))
