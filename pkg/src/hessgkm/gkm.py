"""
The labeled graph of a regular semisimple Hessenberg variety and its
graph cohomology.

Permutations are tuples in one-line notation with values ``1..n``.
Composition is ``(u*v)(i) = u(v(i))`` and ``w(i,j)`` means ``w`` composed
with the transposition of positions ``i`` and ``j``, i.e. the entries in
positions ``i`` and ``j`` are swapped.

The edge ``{w, w(i,j)}`` (``j < i <= h(j)``) carries the label
``t_{w(i)} - t_{w(j)}``.  Labels are never stored as polynomials: an edge
keeps the positions ``(i, j)`` and the values ``(w(i), w(j))``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, NamedTuple, Sequence

from .hessfn import HessenbergFunction, minor
from .polyring import MultiPoly, divisible_by_difference, permute_vars

__all__ = [
    "TooLarge", "MAX_GRAPH_N", "Perm", "all_perms", "perm_index", "compose",
    "inverse", "swap_positions", "longest", "cycle", "identity",
    "Edge", "LabeledGraph", "Cochain", "build_graph", "edge_pairs",
    "is_gkm_class", "first_gkm_failure", "dot_action", "involution_vee",
    "fixed_level_components", "phi_r_check", "export_dot", "export_json",
]

MAX_GRAPH_N = 8

Perm = tuple[int, ...]


class TooLarge(RuntimeError):
    """A computation would exceed the configured resource gate."""


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    """All of ``S_n`` in lexicographic one-line order."""
    return tuple(permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def perm_index(n: int) -> dict[Perm, int]:
    return {w: k for k, w in enumerate(all_perms(n))}


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(u: Perm, v: Perm) -> Perm:
    return tuple(u[x - 1] for x in v)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w, start=1):
        out[x - 1] = i
    return tuple(out)


def swap_positions(w: Perm, i: int, j: int) -> Perm:
    lst = list(w)
    lst[i - 1], lst[j - 1] = lst[j - 1], lst[i - 1]
    return tuple(lst)


def longest(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def cycle(n: int, r: int) -> Perm:
    """The cycle ``r -> r+1 -> ... -> n -> r``."""
    return tuple(range(1, r)) + tuple(range(r + 1, n + 1)) + (r,)


def edge_pairs(h: HessenbergFunction) -> list[tuple[int, int]]:
    """Position pairs ``(i, j)`` with ``j < i <= h(j)``."""
    return [(i, j) for j in range(1, h.n + 1) for i in range(j + 1, h[j] + 1)]


class Edge(NamedTuple):
    u: int       # vertex index of w
    v: int       # vertex index of w(i,j)
    i: int
    j: int
    a: int       # w(i)
    b: int       # w(j); the label is t_a - t_b

    @property
    def label(self) -> tuple[int, int]:
        return (self.a, self.b)

    def unordered_label(self) -> frozenset[int]:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    vertices: tuple[int, ...]          # indices into all_perms(n)
    edges: tuple[Edge, ...]

    def perms(self) -> list[Perm]:
        ps = all_perms(self.n)
        return [ps[k] for k in self.vertices]

    def degree_sequence(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj

    def induced(self, keep: Iterable[int]) -> LabeledGraph:
        keep = frozenset(keep)
        return LabeledGraph(
            self.n,
            tuple(sorted(keep)),
            tuple(e for e in self.edges if e.u in keep and e.v in keep),
        )

    def components(self) -> list[LabeledGraph]:
        adj = self.adjacency()
        seen: set[int] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(self.induced(comp))
        return out


def build_graph(h: HessenbergFunction, max_n: int = MAX_GRAPH_N) -> LabeledGraph:
    n = h.n
    if n > max_n:
        raise TooLarge(f"graph on {n}! vertices exceeds the gate n <= {max_n}")
    index = perm_index(n)
    pairs = edge_pairs(h)
    edges = []
    for k, w in enumerate(all_perms(n)):
        for i, j in pairs:
            v = swap_positions(w, i, j)
            kv = index[v]
            if k < kv:
                edges.append(Edge(k, kv, i, j, w[i - 1], w[j - 1]))
    return LabeledGraph(n, tuple(range(len(index))), tuple(edges))


@dataclass
class Cochain:
    """A map from ``S_n`` to homogeneous polynomials of one degree; zeros are not stored."""

    n: int
    degree: int
    values: dict[Perm, MultiPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {w: p for w, p in self.values.items() if not p.is_zero()}
        for w, p in self.values.items():
            if not p.is_homogeneous(self.degree):
                raise ValueError(f"value at {w} is not homogeneous of degree {self.degree}: {p}")

    @classmethod
    def from_function(cls, n: int, degree: int, fn) -> Cochain:
        return cls(n, degree, {w: fn(w) for w in all_perms(n)})

    @classmethod
    def constant(cls, n: int, p: MultiPoly) -> Cochain:
        degree = p.max_degree() if not p.is_zero() else 0
        return cls(n, degree, {w: p for w in all_perms(n)})

    @classmethod
    def zero(cls, n: int, degree: int) -> Cochain:
        return cls(n, degree, {})

    def __call__(self, w: Perm) -> MultiPoly:
        return self.values.get(tuple(w), MultiPoly.zero(self.n))

    def is_zero(self) -> bool:
        return not self.values

    def _match(self, other: Cochain):
        if self.n != other.n:
            raise ValueError("cochains on different symmetric groups")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: Cochain) -> Cochain:
        self._match(other)
        vals = dict(self.values)
        for w, p in other.values.items():
            vals[w] = vals[w] + p if w in vals else p
        deg = self.degree if not self.is_zero() else other.degree
        return Cochain(self.n, deg, vals)

    def __neg__(self) -> Cochain:
        return Cochain(self.n, self.degree, {w: -p for w, p in self.values.items()})

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)

    def __mul__(self, other) -> Cochain:
        if isinstance(other, Cochain):
            if self.n != other.n:
                raise ValueError("cochains on different symmetric groups")
            vals = {w: p * other.values[w] for w, p in self.values.items() if w in other.values}
            return Cochain(self.n, self.degree + other.degree, vals)
        if isinstance(other, MultiPoly):
            deg = other.max_degree() if not other.is_zero() else 0
            return Cochain(self.n, self.degree + deg, {w: p * other for w, p in self.values.items()})
        return Cochain(self.n, self.degree, {w: p * other for w, p in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.n == other.n
                and self.values == other.values
                and (self.degree == other.degree or not self.values))

    def evaluate(self, point: Sequence[object]) -> list:
        """Values at ``t = point`` listed in :func:`all_perms` order."""
        zero = 0
        return [self.values[w].evaluate(point) if w in self.values else zero
                for w in all_perms(self.n)]

    def __repr__(self) -> str:
        shown = ", ".join(f"{''.join(map(str, w))}: {p}" for w, p in sorted(self.values.items()))
        return f"Cochain(n={self.n}, deg={self.degree}, {{{shown}}})"


def first_gkm_failure(h: HessenbergFunction, f: Cochain, graph: LabeledGraph | None = None) -> Edge | None:
    g = graph if graph is not None else build_graph(h)
    ps = all_perms(h.n)
    for e in g.edges:
        diff = f(ps[e.u]) - f(ps[e.v])
        if not divisible_by_difference(diff, e.a, e.b):
            return e
    return None


def is_gkm_class(h: HessenbergFunction, f: Cochain, graph: LabeledGraph | None = None) -> bool:
    if f.n != h.n:
        raise ValueError("cochain and Hessenberg function have different sizes")
    return first_gkm_failure(h, f, graph) is None


def dot_action(sigma: Perm, f: Cochain) -> Cochain:
    """``(sigma . f)(w) = sigma(f(sigma^{-1} w))``."""
    if len(sigma) != f.n:
        raise ValueError("size mismatch")
    return Cochain(f.n, f.degree,
                   {compose(sigma, u): permute_vars(p, sigma) for u, p in f.values.items()})


def involution_vee(f: Cochain) -> Cochain:
    """``f^vee(w) = f(w w_0)``."""
    w0 = longest(f.n)
    return Cochain(f.n, f.degree, {compose(u, w0): p for u, p in f.values.items()})


def fixed_level_components(h: HessenbergFunction, r: int,
                           graph: LabeledGraph | None = None) -> list[LabeledGraph]:
    """Components of the subgraph induced on ``{w : w(r) = n}``."""
    n = h.n
    if not 1 <= r <= n:
        raise IndexError(r)
    g = graph if graph is not None else build_graph(h)
    ps = all_perms(n)
    level = [k for k in g.vertices if ps[k][r - 1] == n]
    return g.induced(level).components()


def phi_r_check(h: HessenbergFunction, r: int, component: LabeledGraph) -> bool:
    """Is ``w -> w c_r`` a label-preserving isomorphism onto a component for the minor at ``r``?"""
    n = h.n
    ps = all_perms(n)
    small = minor(h, r)
    small_graph = build_graph(small)
    small_index = perm_index(n - 1)
    cr = cycle(n, r)

    image: dict[int, int] = {}
    for k in component.vertices:
        w = ps[k]
        if w[r - 1] != n:
            return False
        wc = compose(w, cr)
        if wc[-1] != n:
            return False
        image[k] = small_index[wc[:-1]]
    if len(set(image.values())) != len(image):
        return False

    target_vertices = set(image.values())
    target_edges = {}
    for e in small_graph.edges:
        if e.u in target_vertices or e.v in target_vertices:
            if not (e.u in target_vertices and e.v in target_vertices):
                return False            # image is not closed under adjacency
            target_edges[frozenset((e.u, e.v))] = e.unordered_label()
    mapped = {}
    for e in component.edges:
        key = frozenset((image[e.u], image[e.v]))
        if key not in target_edges or target_edges[key] != e.unordered_label():
            return False
        mapped[key] = True
    if len(mapped) != len(target_edges):
        return False
    # the image must be a single connected component of the small graph
    return len(small_graph.induced(target_vertices).components()) == 1


def export_dot(g: LabeledGraph, name: str = "G") -> str:
    ps = all_perms(g.n)
    lines = [f"graph {name} {{"]
    for k in sorted(g.vertices, key=lambda k: ps[k]):
        lines.append(f'  "{"".join(map(str, ps[k]))}";')
    for e in sorted(g.edges, key=lambda e: (ps[e.u], ps[e.v])):
        u = "".join(map(str, ps[e.u]))
        v = "".join(map(str, ps[e.v]))
        lines.append(f'  "{u}" -- "{v}" [label="t{e.a}-t{e.b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: LabeledGraph) -> str:
    ps = all_perms(g.n)
    word = lambda k: "".join(map(str, ps[k]))  # noqa: E731
    data = {
        "vertices": [word(k) for k in sorted(g.vertices, key=lambda k: ps[k])],
        "edges": [{"u": word(e.u), "v": word(e.v), "label": [e.a, e.b]}
                  for e in sorted(g.edges, key=lambda e: (ps[e.u], ps[e.v]))],
    }
    return json.dumps(data, sort_keys=True)
