"""
Graded spans inside the graph cohomology, and the degree-two generation test.

Two models of the same question are available.

``"equivariant"``
    Cochains of polynomial degree ``d`` are coordinate vectors indexed by
    (vertex, monomial).  The subalgebra generated by the degree-two classes
    and the constants ``t_i`` is built degree by degree and its rank is
    compared with the free-module rank of the graph cohomology.  Exact, but
    the coordinate space has ``n! * C(d+n-1, n-1)`` columns.

``"evaluation"``
    Every class is evaluated at the point ``t = (1, 2, ..., n)``.  Because the
    coordinates are distinct, evaluation identifies the graph cohomology
    tensored with that point with all functions ``S_n -> Q``, and the image
    ``V_d`` of classes of degree ``<= d`` has dimension ``b_0 + ... + b_d``.
    Writing ``W_d`` for the span of evaluated products of at most ``d``
    degree-two classes, ``V_d / V_{d-1}`` is the ordinary cohomology in
    degree ``2d`` and the ring is generated in degree two exactly when
    ``W_d = V_d`` for every ``d``.  Vectors have ``n!`` entries, which makes
    ``n = 5`` (and ``n = 6``) cheap.

Degrees ``d`` below are polynomial degrees; the cohomological degree is ``2d``.
"""

from __future__ import annotations

import json
from itertools import combinations
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .classes import ClassSpec, build_class
from .gkm import Cochain, TooLarge, all_perms, build_graph, is_gkm_class
from .hessfn import HessenbergFunction, bottom_and_ell_sets, dimension, is_connected
from .linalg import EchelonBasis, SparseVec
from .polyring import MultiPoly, drop_last_var, monomial_index, monomials, num_monomials, replace_var
from .qseries import QPoly, poincare_direct

__all__ = [
    "Disconnected", "MAX_EQUIVARIANT_COLUMNS", "MAX_EVALUATION_N",
    "degree2_specs", "degree2_spanning_set", "equivariant_rank_oracle",
    "cochain_to_vec", "vec_to_cochain", "equivariant_kernel_basis",
    "product_span_ranks", "evaluation_spans", "DegreeRow", "GradedReport",
    "is_degree2_generated", "subring_hilbert", "presentation_generators",
    "invariant_quotient_hilbert", "evaluation_point",
]

MAX_EQUIVARIANT_COLUMNS = 12_000
MAX_EVALUATION_N = 6


class Disconnected(ValueError):
    pass


def _require_connected(h: HessenbergFunction):
    if not is_connected(h):
        raise Disconnected(f"{h} is not connected")


def degree2_specs(h: HessenbergFunction) -> list[ClassSpec]:
    """Generators of the degree-two part (constants excluded)."""
    _require_connected(h)
    n = h.n
    bottom, ell = bottom_and_ell_sets(h)
    specs = [ClassSpec.x(k) for k in range(1, n + 1)]
    for j in sorted(bottom - {n - 1}):
        specs += [ClassSpec.y(j, k) for k in range(1, n + 1)]
    for m in sorted(ell - {n - 1}):
        specs += [ClassSpec.tau(a) for a in combinations(range(1, n + 1), m)]
    return specs


def degree2_spanning_set(h: HessenbergFunction, check: bool = False) -> list[Cochain]:
    """The x, y, tau classes for ``h`` followed by the constants ``t_1, ..., t_n``."""
    n = h.n
    out = [build_class(n, s) for s in degree2_specs(h)]
    out += [Cochain.constant(n, MultiPoly.var(n, i)) for i in range(1, n + 1)]
    if check:
        graph = build_graph(h)
        for f in out:
            if not is_gkm_class(h, f, graph):
                raise AssertionError(f"spanning class {f} fails the edge conditions of {h}")
    return out


def equivariant_rank_oracle(h: HessenbergFunction, d: int) -> int:
    """Rank of the degree-``d`` piece of a free ``Q[t]``-module with the Betti numbers of ``h``."""
    n = h.n
    b = poincare_direct(h)
    return sum(b[e] * comb(d - e + n - 1, n - 1) for e in range(d + 1))


def _columns(n: int, d: int) -> int:
    return factorial(n) * num_monomials(n, d)


def _gate(n: int, d: int, limit: int):
    cols = _columns(n, d)
    if cols > limit:
        raise TooLarge(f"{cols} coordinates in degree {d} exceed the gate {limit}")


def cochain_to_vec(f: Cochain, d: int | None = None) -> SparseVec:
    d = f.degree if d is None else d
    n = f.n
    idx = monomial_index(n, d)
    m = len(idx)
    entries = {}
    for k, w in enumerate(all_perms(n)):
        p = f.values.get(w)
        if p is None:
            continue
        for e, c in p.terms.items():
            entries[k * m + idx[e]] = c
    return SparseVec(entries)


def vec_to_cochain(n: int, d: int, v: SparseVec) -> Cochain:
    monos = monomials(n, d)
    m = len(monos)
    ps = all_perms(n)
    vals: dict = {}
    for col, c in v:
        k, e = divmod(col, m)
        vals.setdefault(ps[k], {})[monos[e]] = c
    return Cochain(n, d, {w: MultiPoly(n, t) for w, t in vals.items()})


@lru_cache(maxsize=None)
def _substitution_groups(n: int, d: int, a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Monomial indices of degree ``d`` grouped by their image under ``t_a := t_b``."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for k, e in enumerate(monomials(n, d)):
        img = list(e)
        img[b - 1] += img[a - 1]
        img[a - 1] = 0
        groups.setdefault(tuple(img), []).append(k)
    return tuple(tuple(g) for _, g in sorted(groups.items()))


def equivariant_kernel_basis(h: HessenbergFunction, d: int,
                             max_columns: int = MAX_EQUIVARIANT_COLUMNS) -> EchelonBasis:
    """Basis of the degree-``d`` graph cohomology as the kernel of the edge constraints.

    Each edge ``{w, v}`` labelled ``t_a - t_b`` contributes one row per
    monomial of the substituted ring: ``f(w) - f(v)`` must vanish after
    ``t_a := t_b``.
    """
    _require_connected(h)
    n = h.n
    _gate(n, d, max_columns)
    m = num_monomials(n, d)
    constraints = EchelonBasis()
    for e in build_graph(h).edges:
        for group in _substitution_groups(n, d, e.a, e.b):
            row = {}
            for k in group:
                row[e.u * m + k] = 1
                row[e.v * m + k] = -1
            constraints.insert(row)
    return EchelonBasis.from_reduced(constraints.kernel_rows(factorial(n) * m))


def _linear_forms(n: int, gens: Sequence[Cochain]) -> list[list[dict[int, Fraction]]]:
    """Per generator, per vertex index: the linear form as ``{variable index (0-based): coeff}``."""
    ps = all_perms(n)
    out = []
    for g in gens:
        if g.degree != 1:
            raise ValueError("generators must be linear")
        forms = []
        for w in ps:
            p = g.values.get(w)
            forms.append({} if p is None else {e.index(1): c for e, c in p.terms.items()})
        out.append(forms)
    return out


def _multiply(n: int, d_from: int, v: SparseVec, forms: list[dict[int, Fraction]]) -> dict[int, Fraction]:
    """Coordinates of ``g * v`` in degree ``d_from + 1``."""
    monos = monomials(n, d_from)
    m_from = len(monos)
    idx_to = monomial_index(n, d_from + 1)
    m_to = len(idx_to)
    out: dict[int, Fraction] = {}
    for col, c in v:
        k, e = divmod(col, m_from)
        form = forms[k]
        if not form:
            continue
        base = monos[e]
        for i, a in form.items():
            new = list(base)
            new[i] += 1
            key = k * m_to + idx_to[tuple(new)]
            val = out.get(key, 0) + a * c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def product_span_ranks(h: HessenbergFunction, d_max: int,
                       max_columns: int = MAX_EQUIVARIANT_COLUMNS,
                       bases: list | None = None) -> list[int]:
    """Ranks of the degree-two-generated subalgebra in degrees ``0..d_max`` (equivariant model).

    ``B_0`` is the constant 1 and ``B_d`` is spanned by products of the
    spanning set with ``B_{d-1}``.  When ``bases`` is a list, the echelon
    bases are appended to it.
    """
    _require_connected(h)
    n = h.n
    gens = degree2_spanning_set(h)
    forms = _linear_forms(n, gens)
    current = EchelonBasis()
    current.insert({k: 1 for k in range(factorial(n))})
    ranks = [current.rank]
    if bases is not None:
        bases.append(current)
    for d in range(1, d_max + 1):
        _gate(n, d, max_columns)
        nxt = EchelonBasis()
        for v in current.vectors():
            for fm in forms:
                nxt.insert(_multiply(n, d - 1, v, fm))
        ranks.append(nxt.rank)
        if bases is not None:
            bases.append(nxt)
        current = nxt
    return ranks


def evaluation_point(n: int) -> tuple[int, ...]:
    """The point ``(1, 2, ..., n)``: distinct coordinates, so no edge label vanishes."""
    return tuple(range(1, n + 1))


def _eval_gens(h: HessenbergFunction) -> list[dict[int, int]]:
    n = h.n
    point = evaluation_point(n)
    out = []
    for s in degree2_specs(h):
        vals = build_class(n, s).evaluate(point)
        out.append({k: x for k, x in enumerate(vals) if x})
    return out


def _times(g: dict[int, object], v: SparseVec) -> dict[int, object]:
    return {c: g[c] * x for c, x in v if c in g}


def evaluation_spans(h: HessenbergFunction, d_max: int,
                     max_n: int = MAX_EVALUATION_N) -> list[EchelonBasis]:
    """Echelon bases of ``W_0 ⊆ W_1 ⊆ ... ⊆ W_{d_max}`` in ``Q^{n!}``."""
    _require_connected(h)
    n = h.n
    if n > max_n:
        raise TooLarge(f"evaluation model gated to n <= {max_n}")
    gens = _eval_gens(h)
    full = factorial(n)
    basis = EchelonBasis()
    basis.insert({k: 1 for k in range(full)})
    spans = [basis.copy()]
    fresh = basis.vectors()
    for _ in range(1, d_max + 1):
        added = []
        if basis.rank < full:
            for v in fresh:
                for g in gens:
                    prod = _times(g, v)
                    if prod and basis.insert(prod):
                        added.append(SparseVec(prod))
        spans.append(basis.copy())
        fresh = added
    return spans


@dataclass
class DegreeRow:
    d: int
    span: int
    oracle: int

    @property
    def ok(self) -> bool:
        return self.span == self.oracle

    def to_dict(self) -> dict:
        return {"d": self.d, "span": self.span, "oracle": self.oracle, "ok": self.ok}


@dataclass
class GradedReport:
    h: HessenbergFunction
    method: str
    degrees: list[DegreeRow] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return dimension(self.h)

    @property
    def verdict(self) -> bool:
        return all(row.ok for row in self.degrees)

    def first_failure(self) -> int | None:
        """Cohomological degree ``2d`` of the first disagreement."""
        for row in self.degrees:
            if not row.ok:
                return 2 * row.d
        return None

    def to_dict(self) -> dict:
        return {
            "h": str(self.h),
            "dim": self.dim,
            "method": self.method,
            "degrees": [row.to_dict() for row in self.degrees],
            "generated_in_degree_2": self.verdict,
            "first_failure": self.first_failure(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def is_degree2_generated(h: HessenbergFunction, method: str = "evaluation",
                         extra_degree: bool = False,
                         max_columns: int = MAX_EQUIVARIANT_COLUMNS,
                         max_n: int = MAX_EVALUATION_N) -> GradedReport:
    """Compare degree-two spans with the oracle in every degree up to ``dim(h)``.

    In the ``"evaluation"`` model the span is ``dim W_d`` and the oracle is
    ``b_0 + ... + b_d``; in the ``"equivariant"`` model the span is the rank of
    ``B_d`` and the oracle is :func:`equivariant_rank_oracle`.
    """
    _require_connected(h)
    top = dimension(h) + (1 if extra_degree else 0)
    report = GradedReport(h, method)
    if method == "evaluation":
        betti = poincare_direct(h)
        spans = evaluation_spans(h, top, max_n=max_n)
        cum = 0
        for d in range(top + 1):
            cum += betti[d]
            report.degrees.append(DegreeRow(d, spans[d].rank, cum))
    elif method == "equivariant":
        ranks = product_span_ranks(h, top, max_columns=max_columns)
        for d, r in enumerate(ranks):
            report.degrees.append(DegreeRow(d, r, equivariant_rank_oracle(h, d)))
    else:
        raise ValueError(f"unknown method {method!r}")
    return report


def _evaluate_kernel(h: HessenbergFunction, d: int, max_columns: int) -> list[dict[int, Fraction]]:
    n = h.n
    point = evaluation_point(n)
    monos = monomials(n, d)
    m = len(monos)
    mono_vals = [MultiPoly(n, {e: 1}).evaluate(point) for e in monos]
    out = []
    for v in equivariant_kernel_basis(h, d, max_columns).vectors():
        vals: dict[int, Fraction] = {}
        for col, c in v:
            k, e = divmod(col, m)
            vals[k] = vals.get(k, 0) + c * mono_vals[e]
        out.append({k: x for k, x in vals.items() if x})
    return out


def subring_hilbert(h: HessenbergFunction, d_max: int | None = None,
                    method: str = "evaluation",
                    max_columns: int = MAX_EQUIVARIANT_COLUMNS,
                    allow_large: bool = False) -> QPoly:
    """Hilbert series of the subring of ordinary cohomology generated in degree two.

    ``"equivariant"``: coefficient ``d`` is ``rank(P_d + I_d) - rank(I_d)``
    with ``P_d`` the product span and ``I_d = sum_i t_i H_T^{d-1}``.

    ``"evaluation"``: coefficient ``d`` is ``dim(W_d + V_{d-1}) - dim V_{d-1}``;
    ``V_{d-1}`` is ``W_{d-1}`` while generation still holds, and otherwise the
    evaluated kernel basis in degree ``d-1``.

    Gated to ``n <= 5`` unless ``allow_large``.
    """
    _require_connected(h)
    n = h.n
    if n > 5 and not allow_large:
        raise TooLarge("subring_hilbert is gated to n <= 5")
    top = dimension(h) if d_max is None else d_max
    coeffs = [1]
    if method == "evaluation":
        betti = poincare_direct(h)
        spans = evaluation_spans(h, top, max_n=max(n, MAX_EVALUATION_N))
        cum = [0]
        for d in range(top + 1):
            cum.append(cum[-1] + betti[d])
        for d in range(1, top + 1):
            prev = spans[d - 1]
            if prev.rank == cum[d]:
                lower = prev
            else:
                lower = EchelonBasis()
                lower.extend(_evaluate_kernel(h, d - 1, max_columns))
            combined = lower.copy()
            combined.extend(spans[d].vectors())
            coeffs.append(combined.rank - lower.rank)
    elif method == "equivariant":
        bases: list[EchelonBasis] = []
        product_span_ranks(h, top, max_columns=max_columns, bases=bases)
        forms = _linear_forms(n, [Cochain.constant(n, MultiPoly.var(n, i)) for i in range(1, n + 1)])
        for d in range(1, top + 1):
            ideal = EchelonBasis()
            for v in equivariant_kernel_basis(h, d - 1, max_columns).vectors():
                for fm in forms:
                    ideal.insert(_multiply(n, d - 1, v, fm))
            combined = ideal.copy()
            combined.extend(bases[d].vectors())
            coeffs.append(combined.rank - ideal.rank)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QPoly(coeffs)


def presentation_generators(h: HessenbergFunction) -> list[MultiPoly]:
    """``f_{h(j),j} = sum_{k<=j} x_k prod_{l=j+1}^{h(j)} (x_k - x_l)`` for ``j = 1..n``."""
    n = h.n
    x = [MultiPoly.var(n, i) for i in range(1, n + 1)]
    gens = []
    for j in range(1, n + 1):
        f = MultiPoly.zero(n)
        for k in range(1, j + 1):
            term = x[k - 1]
            for l in range(j + 1, h[j] + 1):
                term = term * (x[k - 1] - x[l - 1])
            f = f + term
        gens.append(f)
    return gens


def _quotient_dims(gens: Sequence[MultiPoly], nvars: int, top: int) -> list[int]:
    out = []
    for d in range(top + 1):
        idx = monomial_index(nvars, d)
        basis = EchelonBasis()
        for f in gens:
            deg = f.max_degree()
            if deg > d or basis.rank == len(idx):
                continue
            for m in monomials(nvars, d - deg):
                row = {}
                for e, c in f.terms.items():
                    key = idx[tuple(a + b for a, b in zip(e, m))]
                    row[key] = row.get(key, 0) + c
                basis.insert(row)
                if basis.rank == len(idx):
                    break
        out.append(len(idx) - basis.rank)
    return out


def invariant_quotient_hilbert(h: HessenbergFunction, d_max: int | None = None,
                               eliminate_linear: bool = True) -> QPoly:
    """Hilbert series of ``Q[x_1..x_n] / (f_{h(1),1}, ..., f_{h(n),n})`` up to degree ``d_max``.

    The last generator is ``x_1 + ... + x_n``; with ``eliminate_linear`` it is
    used to substitute ``x_n = -(x_1 + ... + x_{n-1})`` in the others, which
    leaves the quotient unchanged and drops one variable from the linear
    algebra.
    """
    _require_connected(h)
    n = h.n
    top = dimension(h) if d_max is None else d_max
    gens = presentation_generators(h)
    if not eliminate_linear or n == 1:
        return QPoly(_quotient_dims(gens, n, top))
    minus_sum = MultiPoly.linear(n, {i: -1 for i in range(1, n)})
    reduced = [drop_last_var(replace_var(f, n, minus_sum)) for f in gens[:-1]]
    return QPoly(_quotient_dims([f for f in reduced if not f.is_zero()], n - 1, top))
